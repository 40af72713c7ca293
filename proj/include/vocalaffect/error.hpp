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

#ifndef VOCALAFFECT_ERROR_HPP_
#define VOCALAFFECT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vocalaffect {

enum class ErrorCode {
  kInvalidArgument,
  kFileNotFound,
  kUnsupportedFormat,
  kCorruptHeader,
  kEmptySignal,
  kNonPowerOfTwoSize,
  kLagTooLarge,
  kSingularAutocorrelation,
  kRootFindingDivergence,
  kNegativeFrequency,
  kSilentSignal,
  kSignalTooShort,
  kTrackLengthMismatch,
  kSequenceTooShort,
  kBandCountTooLarge,
  kAllSilentFrames,
  kNonFiniteFeature,
  kInsufficientClassCoverage,
  kMalformedName,
  kUnknownEmotionLetter,
  kEmptyCorpus,
  kConfigParseError,
  kIoError,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kEmptySignal: return "EmptySignal";
    case ErrorCode::kNonPowerOfTwoSize: return "NonPowerOfTwoSize";
    case ErrorCode::kLagTooLarge: return "LagTooLarge";
    case ErrorCode::kSingularAutocorrelation: return "SingularAutocorrelation";
    case ErrorCode::kRootFindingDivergence: return "RootFindingDivergence";
    case ErrorCode::kNegativeFrequency: return "NegativeFrequency";
    case ErrorCode::kSilentSignal: return "SilentSignal";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kTrackLengthMismatch: return "TrackLengthMismatch";
    case ErrorCode::kSequenceTooShort: return "SequenceTooShort";
    case ErrorCode::kBandCountTooLarge: return "BandCountTooLarge";
    case ErrorCode::kAllSilentFrames: return "AllSilentFrames";
    case ErrorCode::kNonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::kInsufficientClassCoverage: return "InsufficientClassCoverage";
    case ErrorCode::kMalformedName: return "MalformedName";
    case ErrorCode::kUnknownEmotionLetter: return "UnknownEmotionLetter";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kConfigParseError: return "ConfigParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `stage()` is set when the error
/// crossed a pipeline boundary (e.g. "spectral", "teo") on its way out of
/// ExtractFeatures.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, std::string stage = {})
      : std::runtime_error(Compose(code, message, stage)),
        code_(code),
        detail_(message),
        stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string &detail() const noexcept { return detail_; }
  const std::string &stage() const noexcept { return stage_; }

  Error WithStage(std::string stage) const {
    return Error(code_, detail_, std::move(stage));
  }

 private:
  static std::string Compose(ErrorCode code, const std::string &message,
                             const std::string &stage) {
    std::string out;
    if (!stage.empty()) out += "[" + stage + "] ";
    out += ErrorCodeName(code);
    if (!message.empty()) out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  std::string stage_;
};

}  // namespace vocalaffect

#endif  // VOCALAFFECT_ERROR_HPP_
