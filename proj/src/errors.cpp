// src/errors.cpp

// Copyright 2026  The dirseg authors

// See ../COPYING for clarification regarding multiple authors
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

#include "dirseg/errors.hpp"

namespace dirseg {

const char *to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::SampleRateMismatch: return "SampleRateMismatch";
    case ErrorCode::SilentInput: return "SilentInput";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ClipTooShort: return "ClipTooShort";
    case ErrorCode::EmptySpectrogram: return "EmptySpectrogram";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NumericalOverflow: return "NumericalOverflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnitNorm: return "NotUnitNorm";
    case ErrorCode::DegenerateComponent: return "DegenerateComponent";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::AllDegenerate: return "AllDegenerate";
    case ErrorCode::KeepOutOfRange: return "KeepOutOfRange";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewColumns: return "TooFewColumns";
    case ErrorCode::BudgetTooLarge: return "BudgetTooLarge";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::SingleClassInput: return "SingleClassInput";
    case ErrorCode::EvenMedianLength: return "EvenMedianLength";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::NoVocalizationFrames: return "NoVocalizationFrames";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptHeader:
    case ErrorCode::SampleRateMismatch:
    case ErrorCode::SilentInput:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ClipTooShort:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::KeepOutOfRange:
    case ErrorCode::TooFewPoints:
    case ErrorCode::EvenMedianLength:
    case ErrorCode::MalformedRow:
    case ErrorCode::NegativeDuration:
    case ErrorCode::NoVocalizationFrames:
    case ErrorCode::ParseError:
    case ErrorCode::VersionMismatch:
    case ErrorCode::UnknownKey:
    case ErrorCode::LengthMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace dirseg
