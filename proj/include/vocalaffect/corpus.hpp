// Copyright 2026 The vocalaffect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOCALAFFECT_CORPUS_HPP_
#define VOCALAFFECT_CORPUS_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vocalaffect/classifier.hpp"
#include "vocalaffect/error.hpp"
#include "vocalaffect/features.hpp"
#include "vocalaffect/wav.hpp"

namespace vocalaffect {

namespace fs = std::filesystem;

/// One file of an EMO-DB style corpus: `SSTTTEV.wav`, e.g. 03a01Wa.wav
/// (speaker 03, text a01, emotion W, version a).
struct CorpusEntry {
  std::string path;
  std::string speaker_id;
  std::string text_code;
  char emotion_letter = '?';
  std::optional<Emotion> emotion;  // empty for fear
  std::string version;

  bool excluded() const noexcept { return !emotion.has_value(); }
};

/// W anger, L boredom, E disgust, A fear (excluded), F happy, T sad, N neutral.
inline CorpusEntry ParseEmodbFilename(std::string_view path) {
  const std::string name = fs::path(std::string(path)).filename().string();
  auto bad = [&] { return Error(ErrorCode::kMalformedName, name); };
  if (name.size() != 11 || name.substr(7) != ".wav") throw bad();
  auto digit = [&](std::size_t i) { return std::isdigit(static_cast<unsigned char>(name[i])) != 0; };
  auto lower = [&](std::size_t i) { return std::islower(static_cast<unsigned char>(name[i])) != 0; };
  if (!digit(0) || !digit(1) || !lower(2) || !digit(3) || !digit(4) ||
      !std::isalpha(static_cast<unsigned char>(name[5])) || !lower(6))
    throw bad();

  CorpusEntry entry;
  entry.path = std::string(path);
  entry.speaker_id = name.substr(0, 2);
  entry.text_code = name.substr(2, 3);
  entry.emotion_letter = name[5];
  entry.version = name.substr(6, 1);
  switch (entry.emotion_letter) {
    case 'W': entry.emotion = Emotion::kAnger; break;
    case 'L': entry.emotion = Emotion::kBoredom; break;
    case 'E': entry.emotion = Emotion::kDisgust; break;
    case 'A': entry.emotion = std::nullopt; break;
    case 'F': entry.emotion = Emotion::kHappy; break;
    case 'T': entry.emotion = Emotion::kSad; break;
    case 'N': entry.emotion = Emotion::kNeutral; break;
    default:
      throw Error(ErrorCode::kUnknownEmotionLetter,
                  name + ": '" + std::string(1, entry.emotion_letter) + "'");
  }
  return entry;
}

inline bool HasWavExtension(const fs::path &p) {
  std::string ext = p.extension().string();
  for (char &c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".wav";
}

/// Files as given plus every *.wav below each directory, sorted, de-duplicated
/// only within directory expansion.
inline std::vector<std::string> ExpandInputs(const std::vector<std::string> &inputs) {
  std::vector<std::string> out;
  for (const auto &in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto &e : fs::recursive_directory_iterator(in))
        if (e.is_regular_file() && HasWavExtension(e.path())) found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  std::stable_sort(out.begin(), out.end());
  return out;
}

/// Runs fn(i) for i in [0, n) on `jobs` workers. Results are written by index,
/// so output order never depends on scheduling.
inline void ParallelFor(std::size_t n, unsigned jobs, const std::function<void(std::size_t)> &fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, n))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto &t : workers) t.join();
}

struct FileFeatures {
  std::string path;
  std::optional<FeatureVector> features;
  std::string error;
};

inline std::vector<FileFeatures> ExtractBatch(const std::vector<std::string> &paths,
                                              const AnalysisParams &params, unsigned jobs = 1) {
  std::vector<FileFeatures> out(paths.size());
  ParallelFor(paths.size(), jobs, [&](std::size_t i) {
    out[i].path = paths[i];
    try {
      out[i].features = ExtractFeatures(LoadWav(paths[i]), params);
    } catch (const std::exception &e) {
      out[i].error = e.what();
    }
  });
  return out;
}

inline std::string FormatNumber(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

/// `significant` digits, re-parsed so the JSON writer prints the short form.
inline double RoundSignificant(double v, int significant = 6) {
  return std::strtod(FormatNumber(v, significant).c_str(), nullptr);
}

inline std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// path,z1,f1_hz,vt_bw,duration_s,mfcc_mean,error - one row per input path,
/// rows ordered by path; failed files have empty feature columns.
inline std::string FeaturesCsv(const std::vector<FileFeatures> &rows) {
  std::vector<const FileFeatures *> sorted;
  for (const auto &r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const FileFeatures *a, const FileFeatures *b) { return a->path < b->path; });
  std::string out = "path,z1,f1_hz,vt_bw,duration_s,mfcc_mean,error\n";
  for (const FileFeatures *r : sorted) {
    out += CsvField(r->path);
    if (r->features) {
      const FeatureVector &v = *r->features;
      for (double x : {v.z1, v.f1_hz, v.vt_bw, v.duration_s, v.mfcc_mean}) out += "," + FormatNumber(x, 9);
      out += ",\n";
    } else {
      out += ",,,,,," + CsvField(r->error) + "\n";
    }
  }
  return out;
}

inline std::string RunExtract(const std::vector<std::string> &inputs, const AnalysisParams &params,
                              unsigned jobs = 1) {
  return FeaturesCsv(ExtractBatch(ExpandInputs(inputs), params, jobs));
}

struct FileOutcome {
  std::string path;  // relative to the corpus root
  Emotion truth = Emotion::kNeutral;
  Emotion predicted = Emotion::kNeutral;
  FeatureVector features;
  ClassificationTrace trace;
};

struct FileProblem {
  std::string path;
  std::string error;
};

struct ClassMetrics {
  std::optional<double> precision;  // empty when nothing was predicted as the class
  std::optional<double> recall;     // empty when the class has no files
  std::size_t support = 0;
};

struct EvaluationReport {
  std::vector<FileOutcome> files;
  std::vector<std::string> excluded;  // fear files
  std::vector<FileProblem> errors;    // unreadable files, bad names
  std::array<std::array<std::size_t, 6>, 6> confusion{};  // [truth][predicted]
  std::array<ClassMetrics, 6> per_class{};
  double accuracy = 0.0;
  ThresholdConfig config;

  std::size_t classified() const noexcept { return files.size(); }
};

/// Corpus files grouped by what happens to them.
struct CorpusListing {
  std::vector<CorpusEntry> usable;
  std::vector<std::string> excluded;
  std::vector<FileProblem> rejected;
};

inline CorpusListing ListCorpus(const fs::path &root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error(ErrorCode::kFileNotFound, "corpus directory " + root.string());
  std::vector<fs::path> files;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file() && HasWavExtension(e.path())) files.push_back(e.path());
  std::sort(files.begin(), files.end(), [&](const fs::path &a, const fs::path &b) {
    return a.lexically_relative(root).generic_string() < b.lexically_relative(root).generic_string();
  });
  CorpusListing listing;
  for (const auto &p : files) {
    const std::string rel = p.lexically_relative(root).generic_string();
    try {
      CorpusEntry entry = ParseEmodbFilename(p.string());
      entry.path = rel;
      if (entry.excluded()) listing.excluded.push_back(rel);
      else listing.usable.push_back(std::move(entry));
    } catch (const Error &e) {
      listing.rejected.push_back({rel, e.what()});
    }
  }
  if (listing.usable.empty())
    throw Error(ErrorCode::kEmptyCorpus,
                root.string() + " has no classifiable files (" + std::to_string(listing.excluded.size()) +
                    " excluded, " + std::to_string(listing.rejected.size()) + " rejected)");
  return listing;
}

namespace corpus_detail {

inline std::vector<FileFeatures> ExtractListing(const fs::path &root, const CorpusListing &listing,
                                                const AnalysisParams &params, unsigned jobs) {
  std::vector<std::string> paths;
  for (const auto &e : listing.usable) paths.push_back((root / e.path).string());
  auto rows = ExtractBatch(paths, params, jobs);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].path = listing.usable[i].path;
  return rows;
}

}  // namespace corpus_detail

inline EvaluationReport EvaluateCorpus(const fs::path &root, const ThresholdConfig &config,
                                       const AnalysisParams &params = {}, unsigned jobs = 1) {
  const CorpusListing listing = ListCorpus(root);
  const auto rows = corpus_detail::ExtractListing(root, listing, params, jobs);
  EvaluationReport report;
  report.config = config;
  report.excluded = listing.excluded;
  report.errors = listing.rejected;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].features) {
      report.errors.push_back({rows[i].path, rows[i].error});
      continue;
    }
    FileOutcome outcome;
    outcome.path = rows[i].path;
    outcome.truth = *listing.usable[i].emotion;
    outcome.features = *rows[i].features;
    outcome.trace = Classify(outcome.features, config);
    outcome.predicted = outcome.trace.label;
    ++report.confusion[EmotionIndex(outcome.truth)][EmotionIndex(outcome.predicted)];
    report.files.push_back(std::move(outcome));
  }
  std::sort(report.errors.begin(), report.errors.end(),
            [](const FileProblem &a, const FileProblem &b) { return a.path < b.path; });

  std::size_t correct = 0;
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t row = 0, col = 0;
    for (std::size_t k = 0; k < 6; ++k) {
      row += report.confusion[c][k];
      col += report.confusion[k][c];
    }
    correct += report.confusion[c][c];
    auto &m = report.per_class[c];
    m.support = row;
    if (col > 0) m.precision = static_cast<double>(report.confusion[c][c]) / col;
    if (row > 0) m.recall = static_cast<double>(report.confusion[c][c]) / row;
  }
  if (report.classified() > 0)
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.classified());
  return report;
}

inline nlohmann::json TraceJson(const ClassificationTrace &trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto &st : trace.steps)
    steps.push_back({{"stage", StageName(st.stage)},
                     {"feature", StageFeatureName(st.stage)},
                     {"value", RoundSignificant(st.value)},
                     {"threshold", RoundSignificant(st.threshold)},
                     {"direction", DirectionName(st.direction)},
                     {"marked", st.marked},
                     {"branch", st.branch}});
  return steps;
}

inline nlohmann::json FeaturesJson(const FeatureVector &v) {
  return {{"z1", RoundSignificant(v.z1)},
          {"f1_hz", RoundSignificant(v.f1_hz)},
          {"vt_bw", RoundSignificant(v.vt_bw)},
          {"duration_s", RoundSignificant(v.duration_s)},
          {"mfcc_mean", RoundSignificant(v.mfcc_mean)}};
}

/// Keys sorted, numbers at 6 significant digits: identical inputs give
/// byte-identical text.
inline std::string ReportJson(const EvaluationReport &report) {
  nlohmann::json j;
  nlohmann::json classes = nlohmann::json::array();
  for (Emotion e : kAllEmotions) classes.push_back(EmotionName(e));
  j["classes"] = classes;
  j["confusion"] = report.confusion;
  j["accuracy"] = RoundSignificant(report.accuracy);
  j["classified"] = report.classified();
  nlohmann::json per_class = nlohmann::json::object();
  for (Emotion e : kAllEmotions) {
    const auto &m = report.per_class[EmotionIndex(e)];
    per_class[std::string(EmotionName(e))] = {
        {"precision", m.precision ? nlohmann::json(RoundSignificant(*m.precision)) : nlohmann::json()},
        {"recall", m.recall ? nlohmann::json(RoundSignificant(*m.recall)) : nlohmann::json()},
        {"support", m.support}};
  }
  j["per_class"] = per_class;
  nlohmann::json files = nlohmann::json::array();
  for (const auto &f : report.files)
    files.push_back({{"path", f.path},
                     {"truth", EmotionName(f.truth)},
                     {"predicted", EmotionName(f.predicted)},
                     {"features", FeaturesJson(f.features)},
                     {"trace", TraceJson(f.trace)},
                     {"warnings", f.trace.warnings}});
  j["files"] = files;
  j["excluded"] = report.excluded;
  nlohmann::json errors = nlohmann::json::array();
  for (const auto &e : report.errors) errors.push_back({{"path", e.path}, {"error", e.error}});
  j["errors"] = errors;
  nlohmann::json config = nlohmann::json::object();
  for (Stage s : kAllStages) {
    config[std::string(ThresholdKey(s))] = RoundSignificant(report.config.Threshold(s));
    config["direction." + std::string(StageName(s))] = DirectionName(report.config.GetDirection(s));
  }
  j["config"] = config;
  return j.dump(2) + "\n";
}

/// Human-readable confusion matrix (rows = truth, columns = prediction).
inline std::string ConfusionTable(const EvaluationReport &report) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "truth\\pred";
  for (Emotion e : kAllEmotions) os << std::right << std::setw(9) << EmotionName(e);
  os << std::right << std::setw(9) << "recall" << "\n";
  for (Emotion t : kAllEmotions) {
    os << std::left << std::setw(10) << EmotionName(t);
    for (Emotion p : kAllEmotions)
      os << std::right << std::setw(9) << report.confusion[EmotionIndex(t)][EmotionIndex(p)];
    const auto &m = report.per_class[EmotionIndex(t)];
    os << std::right << std::setw(9) << (m.recall ? FormatNumber(*m.recall, 3) : std::string("-")) << "\n";
  }
  os << "classified " << report.classified() << ", excluded " << report.excluded.size() << ", errors "
     << report.errors.size() << ", accuracy " << FormatNumber(report.accuracy, 4) << "\n";
  return os.str();
}

struct CorpusCalibration {
  CalibrationResult result;
  std::vector<FileProblem> errors;
  std::size_t used = 0;
};

inline CorpusCalibration CalibrateCorpus(const fs::path &root, const AnalysisParams &params = {},
                                         unsigned jobs = 1) {
  const CorpusListing listing = ListCorpus(root);
  const auto rows = corpus_detail::ExtractListing(root, listing, params, jobs);
  CorpusCalibration out;
  out.errors = listing.rejected;
  std::vector<LabeledFeatures> labeled;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].features) {
      out.errors.push_back({rows[i].path, rows[i].error});
      continue;
    }
    labeled.push_back({*rows[i].features, *listing.usable[i].emotion});
  }
  out.used = labeled.size();
  out.result = Calibrate(labeled);
  return out;
}

inline ThresholdConfig LoadConfig(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

inline void WriteTextFile(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_CORPUS_HPP_
