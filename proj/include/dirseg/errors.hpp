// include/dirseg/errors.hpp

// Copyright 2026  The dirseg authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dirseg {

enum class ErrorCode {
  UnsupportedFormat,
  CorruptHeader,
  IoFailure,
  SampleRateMismatch,
  SilentInput,
  InvalidSpec,
  InvalidArgument,
  ClipTooShort,
  EmptySpectrogram,
  DimensionTooSmall,
  NumericalOverflow,
  DimensionMismatch,
  NotUnitNorm,
  DegenerateComponent,
  TooFewPoints,
  AllDegenerate,
  KeepOutOfRange,
  NotADistribution,
  LengthMismatch,
  TooFewColumns,
  BudgetTooLarge,
  DegenerateCurve,
  SingleClassInput,
  EvenMedianLength,
  MalformedRow,
  NegativeDuration,
  NoVocalizationFrames,
  ParseError,
  VersionMismatch,
  UnknownKey,
};

const char *to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for errors caused by bad user input (CLI exit status 2).
bool is_input_error(ErrorCode code);

}  // namespace dirseg
