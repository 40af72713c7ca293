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

// vocalaffect command-line front end: extract, classify, evaluate, calibrate.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vocalaffect.hpp"

namespace {

using namespace vocalaffect;

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kConfig = 3 };

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigParseError:
    case ErrorCode::kInsufficientClassCoverage:
      return kConfig;
    case ErrorCode::kInvalidArgument:
      return kUsage;
    default:
      return kIo;
  }
}

struct CommonOptions {
  std::optional<double> frame_ms;
  std::optional<int> lpc_order;
  std::optional<int> n_bands;
  std::optional<double> threshold_db;
  std::optional<double> pre_emphasis;
  unsigned jobs = 1;
  std::string out;

  AnalysisParams Params() const {
    AnalysisParams p;
    if (frame_ms) p.SetAnalysisFrame(*frame_ms);
    if (lpc_order) p.lpc.order = *lpc_order;
    if (n_bands) p.teo.n_bands = *n_bands;
    if (threshold_db) p.bandwidth_threshold_db = *threshold_db;
    if (pre_emphasis) p.lpc.pre_emphasis = *pre_emphasis;
    return p;
  }
};

void AddCommon(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--frame-ms", o.frame_ms, "analysis frame length in ms (hop is half)")
      ->check(CLI::Range(5.0, 200.0));
  cmd->add_option("--lpc-order", o.lpc_order, "LPC order")->check(CLI::Range(2, 64));
  cmd->add_option("--n-bands", o.n_bands, "critical bands for the TEO feature")->check(CLI::Range(1, 32));
  cmd->add_option("--threshold-db", o.threshold_db, "vocal-tract bandwidth peak threshold (dB, < 0)")
      ->check(CLI::Range(-200.0, -0.001));
  cmd->add_option("--pre-emphasis", o.pre_emphasis, "pre-emphasis coefficient before LPC")
      ->check(CLI::Range(0.0, 0.999));
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
}

void Emit(const std::string &out_path, const std::string &text) {
  if (out_path.empty()) std::cout << text;
  else WriteTextFile(out_path, text);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Emotion recognition from speech: feature extraction and cascade classification"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::vector<std::string> inputs;
  std::string corpus_dir;
  std::string config_path;

  auto *extract = app.add_subcommand("extract", "write per-file features as CSV");
  AddCommon(extract, opt);
  extract->add_option("inputs", inputs, "WAV files or directories")->required();

  auto *classify = app.add_subcommand("classify", "classify WAV files and print decision traces");
  AddCommon(classify, opt);
  classify->add_option("inputs", inputs, "WAV files or directories")->required();
  classify->add_option("--config", config_path, "threshold config (defaults when omitted)");

  auto *evaluate = app.add_subcommand("evaluate", "classify an EMO-DB style corpus and report");
  AddCommon(evaluate, opt);
  evaluate->add_option("corpus", corpus_dir, "corpus directory")->required();
  evaluate->add_option("--config", config_path, "threshold config")->required();

  auto *calibrate = app.add_subcommand("calibrate", "fit thresholds on a labelled corpus");
  AddCommon(calibrate, opt);
  calibrate->add_option("corpus", corpus_dir, "corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const AnalysisParams params = opt.Params();

    if (*extract) {
      Emit(opt.out, RunExtract(inputs, params, opt.jobs));
      return kOk;
    }

    if (*classify) {
      const ThresholdConfig config = config_path.empty() ? ThresholdConfig{} : LoadConfig(config_path);
      const auto rows = ExtractBatch(ExpandInputs(inputs), params, opt.jobs);
      nlohmann::json files = nlohmann::json::array();
      bool any_failed = false;
      for (const auto &row : rows) {
        if (!row.features) {
          any_failed = true;
          std::cerr << row.path << ": " << row.error << "\n";
          files.push_back({{"path", row.path}, {"error", row.error}});
          continue;
        }
        const ClassificationTrace trace = Classify(*row.features, config);
        if (!opt.out.empty() || rows.size() > 1) std::cout << row.path << "\n";
        std::cout << FormatTrace(trace) << "\n";
        files.push_back({{"path", row.path},
                         {"predicted", EmotionName(trace.label)},
                         {"features", FeaturesJson(*row.features)},
                         {"trace", TraceJson(trace)},
                         {"warnings", trace.warnings}});
      }
      if (!opt.out.empty()) WriteTextFile(opt.out, nlohmann::json{{"files", files}}.dump(2) + "\n");
      return any_failed ? kIo : kOk;
    }

    if (*evaluate) {
      const ThresholdConfig config = LoadConfig(config_path);
      const EvaluationReport report = EvaluateCorpus(corpus_dir, config, params, opt.jobs);
      std::cout << ConfusionTable(report);
      for (const auto &e : report.errors) std::cerr << e.path << ": " << e.error << "\n";
      if (!opt.out.empty()) WriteTextFile(opt.out, ReportJson(report));
      else std::cout << ReportJson(report);
      return kOk;
    }

    if (*calibrate) {
      const CorpusCalibration cal = CalibrateCorpus(corpus_dir, params, opt.jobs);
      for (const auto &e : cal.errors) std::cerr << e.path << ": " << e.error << "\n";
      for (const auto &s : cal.result.stages) {
        std::cout << StageName(s.stage) << ": threshold " << FormatRoundTrip(s.threshold) << " "
                  << DirectionName(s.direction) << ", accuracy " << FormatNumber(s.accuracy, 6) << " on "
                  << s.examples << " files";
        if (s.direction_suspect) std::cout << " (direction suspect)";
        std::cout << "\n";
      }
      Emit(opt.out, SerializeConfig(cal.result.config));
      return kOk;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}
