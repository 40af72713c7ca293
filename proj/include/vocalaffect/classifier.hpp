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

#ifndef VOCALAFFECT_CLASSIFIER_HPP_
#define VOCALAFFECT_CLASSIFIER_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vocalaffect/error.hpp"

namespace vocalaffect {

enum class Emotion { kNeutral, kHappy, kDisgust, kSad, kBoredom, kAnger };

inline constexpr std::array<Emotion, 6> kAllEmotions = {
    Emotion::kNeutral, Emotion::kHappy,   Emotion::kDisgust,
    Emotion::kSad,     Emotion::kBoredom, Emotion::kAnger};

inline std::string_view EmotionName(Emotion e) {
  switch (e) {
    case Emotion::kNeutral: return "neutral";
    case Emotion::kHappy: return "happy";
    case Emotion::kDisgust: return "disgust";
    case Emotion::kSad: return "sad";
    case Emotion::kBoredom: return "boredom";
    case Emotion::kAnger: return "anger";
  }
  return "?";
}

inline std::optional<Emotion> ParseEmotion(std::string_view name) {
  for (Emotion e : kAllEmotions)
    if (EmotionName(e) == name) return e;
  return std::nullopt;
}

inline std::size_t EmotionIndex(Emotion e) { return static_cast<std::size_t>(e); }

struct FeatureVector {
  double z1 = 0.0;          // TEO-CB-Auto-Env aggregate
  double f1_hz = 0.0;       // median first formant; 0 when no voiced frame
  double vt_bw = 0.0;       // vocal-tract spectrum bandwidth, Hz
  double duration_s = 0.0;  // total speech duration
  double mfcc_mean = 0.0;

  bool AllFinite() const {
    return std::isfinite(z1) && std::isfinite(f1_hz) && std::isfinite(vt_bw) &&
           std::isfinite(duration_s) && std::isfinite(mfcc_mean);
  }
};

enum class Direction { kGreater, kLess };

inline std::string_view DirectionName(Direction d) {
  return d == Direction::kGreater ? "gt" : "lt";
}

/// Strict comparison: a value equal to the threshold is never "marked".
inline bool Marked(double value, double threshold, Direction d) {
  return d == Direction::kGreater ? value > threshold : value < threshold;
}

enum class Stage { kTeo, kFormant, kVtbw, kDuration, kMfcc };

inline constexpr std::array<Stage, 5> kAllStages = {
    Stage::kTeo, Stage::kFormant, Stage::kVtbw, Stage::kDuration, Stage::kMfcc};

inline std::string_view StageName(Stage s) {
  switch (s) {
    case Stage::kTeo: return "teo";
    case Stage::kFormant: return "formant";
    case Stage::kVtbw: return "vtbw";
    case Stage::kDuration: return "duration";
    case Stage::kMfcc: return "mfcc";
  }
  return "?";
}

inline std::string_view StageFeatureName(Stage s) {
  switch (s) {
    case Stage::kTeo: return "z1";
    case Stage::kFormant: return "f1_hz";
    case Stage::kVtbw: return "vt_bw";
    case Stage::kDuration: return "duration_s";
    case Stage::kMfcc: return "mfcc_mean";
  }
  return "?";
}

inline double StageFeature(const FeatureVector &v, Stage s) {
  switch (s) {
    case Stage::kTeo: return v.z1;
    case Stage::kFormant: return v.f1_hz;
    case Stage::kVtbw: return v.vt_bw;
    case Stage::kDuration: return v.duration_s;
    case Stage::kMfcc: return v.mfcc_mean;
  }
  return 0.0;
}

/// Stages whose direction is a property of the method, not of the data.
inline bool DirectionIsFixed(Stage s) {
  return s == Stage::kTeo || s == Stage::kFormant || s == Stage::kMfcc;
}

// Positive ("marked") side of each binary split, and the classes that reach it.
inline Emotion StagePositive(Stage s) {
  switch (s) {
    case Stage::kTeo: return Emotion::kAnger;  // stands for {anger, disgust}
    case Stage::kFormant: return Emotion::kAnger;
    case Stage::kVtbw: return Emotion::kHappy;
    case Stage::kDuration: return Emotion::kSad;
    case Stage::kMfcc: return Emotion::kBoredom;
  }
  return Emotion::kNeutral;
}

/// Thresholds of the five cascade stages. th_teo, th_formant_f1 and th_mfcc
/// always compare with ">"; the vt_bw and duration directions are learned.
struct ThresholdConfig {
  double th_teo = 0.0;
  double th_formant_f1 = 0.0;
  double th_vtbw = 0.0;
  double th_duration = 0.0;
  double th_mfcc = 0.0;
  Direction vtbw_direction = Direction::kGreater;
  Direction duration_direction = Direction::kGreater;

  double Threshold(Stage s) const { return const_cast<ThresholdConfig &>(*this).Threshold(s); }
  double &Threshold(Stage s) {
    switch (s) {
      case Stage::kTeo: return th_teo;
      case Stage::kFormant: return th_formant_f1;
      case Stage::kVtbw: return th_vtbw;
      case Stage::kDuration: return th_duration;
      case Stage::kMfcc: break;
    }
    return th_mfcc;
  }
  Direction GetDirection(Stage s) const {
    if (s == Stage::kVtbw) return vtbw_direction;
    if (s == Stage::kDuration) return duration_direction;
    return Direction::kGreater;
  }
  void SetDirection(Stage s, Direction d) {
    if (s == Stage::kVtbw) vtbw_direction = d;
    else if (s == Stage::kDuration) duration_direction = d;
    else if (d != Direction::kGreater)
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(StageName(s)) + " direction is fixed to gt");
  }

  bool operator==(const ThresholdConfig &) const = default;
};

inline std::string_view ThresholdKey(Stage s) {
  switch (s) {
    case Stage::kTeo: return "th_teo";
    case Stage::kFormant: return "th_formant_f1";
    case Stage::kVtbw: return "th_vtbw";
    case Stage::kDuration: return "th_duration";
    case Stage::kMfcc: return "th_mfcc";
  }
  return "?";
}

/// Shortest decimal that parses back to the same double.
inline std::string FormatRoundTrip(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Flat `name = value` text, one per line; directions as `direction.<stage>`.
inline std::string SerializeConfig(const ThresholdConfig &config) {
  std::string out = "# vocalaffect threshold config\n";
  for (Stage s : kAllStages)
    out += std::string(ThresholdKey(s)) + " = " + FormatRoundTrip(config.Threshold(s)) + "\n";
  for (Stage s : kAllStages)
    out += "direction." + std::string(StageName(s)) + " = " +
           std::string(DirectionName(config.GetDirection(s))) + "\n";
  return out;
}

inline ThresholdConfig ParseConfig(std::string_view text) {
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::kConfigParseError, "line " + std::to_string(line_no) + ": missing '='");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kv.emplace(key, value).second)
      throw Error(ErrorCode::kConfigParseError, "duplicate key " + key);
  }

  ThresholdConfig config;
  for (Stage s : kAllStages) {
    const auto it = kv.find(ThresholdKey(s));
    if (it == kv.end())
      throw Error(ErrorCode::kConfigParseError, "missing " + std::string(ThresholdKey(s)));
    double v = 0.0;
    const char *first = it->second.data();
    const char *last = first + it->second.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
      throw Error(ErrorCode::kConfigParseError, "bad number for " + it->first + ": " + it->second);
    config.Threshold(s) = v;
    kv.erase(it);

    const std::string dkey = "direction." + std::string(StageName(s));
    const auto dit = kv.find(dkey);
    if (dit == kv.end()) {
      if (!DirectionIsFixed(s)) throw Error(ErrorCode::kConfigParseError, "missing " + dkey);
      continue;
    }
    Direction d;
    if (dit->second == "gt") d = Direction::kGreater;
    else if (dit->second == "lt") d = Direction::kLess;
    else throw Error(ErrorCode::kConfigParseError, dkey + " must be gt or lt");
    if (DirectionIsFixed(s) && d != Direction::kGreater)
      throw Error(ErrorCode::kConfigParseError, dkey + " is fixed to gt");
    config.SetDirection(s, d);
    kv.erase(dit);
  }
  if (!kv.empty())
    throw Error(ErrorCode::kConfigParseError, "unknown key " + kv.begin()->first);
  return config;
}

struct TraceStep {
  Stage stage = Stage::kTeo;
  double value = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::kGreater;
  bool marked = false;
  std::string branch;  // label set (or final label) the decision leads to
};

struct ClassificationTrace {
  std::vector<TraceStep> steps;
  std::vector<std::string> warnings;
  Emotion label = Emotion::kNeutral;
};

/// TEO stage first; {anger, disgust} split by F1, the calm branch by
/// vt_bw (happy), duration (sad), then MFCC mean (boredom vs neutral).
inline ClassificationTrace Classify(const FeatureVector &v, const ThresholdConfig &config) {
  if (!v.AllFinite()) throw Error(ErrorCode::kNonFiniteFeature, "feature vector has NaN/Inf");
  ClassificationTrace trace;
  auto decide = [&](Stage s, const char *marked_branch, const char *other_branch) {
    TraceStep step;
    step.stage = s;
    step.value = StageFeature(v, s);
    step.threshold = config.Threshold(s);
    step.direction = config.GetDirection(s);
    step.marked = Marked(step.value, step.threshold, step.direction);
    step.branch = step.marked ? marked_branch : other_branch;
    trace.steps.push_back(step);
    return step.marked;
  };

  if (decide(Stage::kTeo, "disgust/anger", "neutral/boredom/sad/happy")) {
    if (!(v.f1_hz > 0.0))
      trace.warnings.push_back("no formants found; anger branch defaults to disgust");
    trace.label = decide(Stage::kFormant, "anger", "disgust") ? Emotion::kAnger : Emotion::kDisgust;
    return trace;
  }
  if (decide(Stage::kVtbw, "happy", "boredom/sad/neutral")) {
    trace.label = Emotion::kHappy;
  } else if (decide(Stage::kDuration, "sad", "neutral/boredom")) {
    trace.label = Emotion::kSad;
  } else {
    trace.label = decide(Stage::kMfcc, "boredom", "neutral") ? Emotion::kBoredom : Emotion::kNeutral;
  }
  return trace;
}

/// Re-derives the label from the recorded comparisons alone.
inline std::optional<Emotion> ReplayTrace(const ClassificationTrace &trace) {
  std::size_t i = 0;
  auto next = [&](Stage s) -> std::optional<bool> {
    if (i >= trace.steps.size() || trace.steps[i].stage != s) return std::nullopt;
    const auto &st = trace.steps[i++];
    return Marked(st.value, st.threshold, st.direction);
  };
  const auto teo = next(Stage::kTeo);
  if (!teo) return std::nullopt;
  std::optional<Emotion> label;
  if (*teo) {
    if (const auto f = next(Stage::kFormant)) label = *f ? Emotion::kAnger : Emotion::kDisgust;
  } else if (const auto h = next(Stage::kVtbw)) {
    if (*h) {
      label = Emotion::kHappy;
    } else if (const auto d = next(Stage::kDuration)) {
      if (*d) label = Emotion::kSad;
      else if (const auto m = next(Stage::kMfcc)) label = *m ? Emotion::kBoredom : Emotion::kNeutral;
    }
  }
  if (i != trace.steps.size()) return std::nullopt;
  return label;
}

/// Printable trace in the style of the original console output.
inline std::string FormatTrace(const ClassificationTrace &trace) {
  std::ostringstream os;
  for (const auto &st : trace.steps) {
    os << StageFeatureName(st.stage) << " = " << st.value << "  ("
       << (st.direction == Direction::kGreater ? ">" : "<") << " " << st.threshold
       << ": " << (st.marked ? "yes" : "no") << ")\n";
    os << "Speech signal indicates ";
    std::string upper = st.branch;
    for (char &c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << upper << " emotion\n";
  }
  for (const auto &w : trace.warnings) os << "warning: " << w << "\n";
  return os.str();
}

struct LabeledFeatures {
  FeatureVector features;
  Emotion label = Emotion::kNeutral;
};

struct StageCalibration {
  Stage stage = Stage::kTeo;
  double threshold = 0.0;
  Direction direction = Direction::kGreater;
  double accuracy = 0.0;
  std::size_t examples = 0;
  // Fixed-direction stage whose data would be split better the other way.
  bool direction_suspect = false;
};

struct CalibrationResult {
  ThresholdConfig config;
  std::vector<StageCalibration> stages;
};

/// Which examples take part in a stage's decision, and whether each is on
/// the marked side. Returns {value, positive} pairs.
inline std::vector<std::pair<double, bool>> StageExamples(std::span<const LabeledFeatures> data,
                                                          Stage s) {
  std::vector<std::pair<double, bool>> out;
  for (const auto &ex : data) {
    const Emotion e = ex.label;
    const bool aroused = e == Emotion::kAnger || e == Emotion::kDisgust;
    bool include = false, positive = false;
    switch (s) {
      case Stage::kTeo: include = true; positive = aroused; break;
      case Stage::kFormant: include = aroused; positive = e == Emotion::kAnger; break;
      case Stage::kVtbw: include = !aroused; positive = e == Emotion::kHappy; break;
      case Stage::kDuration:
        include = !aroused && e != Emotion::kHappy;
        positive = e == Emotion::kSad;
        break;
      case Stage::kMfcc:
        include = e == Emotion::kNeutral || e == Emotion::kBoredom;
        positive = e == Emotion::kBoredom;
        break;
    }
    if (include) out.emplace_back(StageFeature(ex.features, s), positive);
  }
  return out;
}

inline double SplitAccuracy(const std::vector<std::pair<double, bool>> &examples,
                            double threshold, Direction d) {
  if (examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto &[value, positive] : examples)
    if (Marked(value, threshold, d) == positive) ++correct;
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

struct SplitChoice {
  double threshold = 0.0;
  double accuracy = -1.0;
};

/// Candidates are the midpoints of adjacent distinct values plus the two
/// extremes; the lowest threshold among maximizers wins.
inline SplitChoice BestSplit(const std::vector<std::pair<double, bool>> &examples, Direction d) {
  std::vector<double> values;
  for (const auto &ex : examples) values.push_back(ex.first);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> candidates{values.front()};
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    candidates.push_back(0.5 * (values[i] + values[i + 1]));
  if (values.size() > 1) candidates.push_back(values.back());
  SplitChoice best;
  for (double t : candidates) {
    const double acc = SplitAccuracy(examples, t, d);
    if (acc > best.accuracy) best = {t, acc};
  }
  return best;
}

/// Per-stage threshold search on the stage's own subset of the data.
inline CalibrationResult Calibrate(std::span<const LabeledFeatures> data) {
  for (const auto &ex : data)
    if (!ex.features.AllFinite())
      throw Error(ErrorCode::kNonFiniteFeature, "calibration example has NaN/Inf");
  CalibrationResult result;
  for (Stage s : kAllStages) {
    const auto examples = StageExamples(data, s);
    const auto positives = static_cast<std::size_t>(
        std::count_if(examples.begin(), examples.end(), [](const auto &e) { return e.second; }));
    if (positives == 0 || positives == examples.size())
      throw Error(ErrorCode::kInsufficientClassCoverage,
                  std::string(StageName(s)) + " stage needs examples on both sides (" +
                      std::to_string(positives) + " of " + std::to_string(examples.size()) +
                      " on the " + std::string(s == Stage::kTeo ? "disgust/anger" : EmotionName(StagePositive(s))) + " side)",
                  std::string(StageName(s)));
    StageCalibration cal;
    cal.stage = s;
    cal.examples = examples.size();
    const SplitChoice gt = BestSplit(examples, Direction::kGreater);
    const SplitChoice lt = BestSplit(examples, Direction::kLess);
    if (DirectionIsFixed(s)) {
      cal.direction = Direction::kGreater;
      cal.threshold = gt.threshold;
      cal.accuracy = gt.accuracy;
      cal.direction_suspect = lt.accuracy > gt.accuracy;
    } else {
      const bool use_lt = lt.accuracy > gt.accuracy;
      cal.direction = use_lt ? Direction::kLess : Direction::kGreater;
      cal.threshold = use_lt ? lt.threshold : gt.threshold;
      cal.accuracy = use_lt ? lt.accuracy : gt.accuracy;
    }
    result.config.Threshold(s) = cal.threshold;
    result.config.SetDirection(s, cal.direction);
    result.stages.push_back(cal);
  }
  return result;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_CLASSIFIER_HPP_
