// Copyright 2026 The aidef Authors.
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

#ifndef AIDEF_ERRORS_HPP_
#define AIDEF_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aidef {

enum class Errc {
  kKindMismatch,
  kForbiddenUndef,
  kForbiddenNothing,
  kPrecondition,
  kDuplicateIncorrectMove,
  kSchemaViolation,
  kInfiniteOutputSpace,
  kPriorityMismatch,
  kSchemaMismatch,
  kLifeComplete,
  kEmptyLife,
  kUnknownSignal,
  kAgentViolation,
  kNoUntriedMoves,
  kFormatVersionMismatch,
  kCorruptTrace,
  kUnknownWorld,
  kIo,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kKindMismatch: return "KindMismatch";
    case Errc::kForbiddenUndef: return "ForbiddenUndef";
    case Errc::kForbiddenNothing: return "ForbiddenNothing";
    case Errc::kPrecondition: return "Precondition";
    case Errc::kDuplicateIncorrectMove: return "DuplicateIncorrectMove";
    case Errc::kSchemaViolation: return "SchemaViolation";
    case Errc::kInfiniteOutputSpace: return "InfiniteOutputSpace";
    case Errc::kPriorityMismatch: return "PriorityMismatch";
    case Errc::kSchemaMismatch: return "SchemaMismatch";
    case Errc::kLifeComplete: return "LifeComplete";
    case Errc::kEmptyLife: return "EmptyLife";
    case Errc::kUnknownSignal: return "UnknownSignal";
    case Errc::kAgentViolation: return "AgentViolation";
    case Errc::kNoUntriedMoves: return "NoUntriedMoves";
    case Errc::kFormatVersionMismatch: return "FormatVersionMismatch";
    case Errc::kCorruptTrace: return "CorruptTrace";
    case Errc::kUnknownWorld: return "UnknownWorld";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure kind;
/// `line()` is the 1-based trace line for format errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace aidef

#endif  // AIDEF_ERRORS_HPP_
