// Copyright 2026 The DIGAT Authors.
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

#include "digat/errors.h"

#include <iostream>

namespace digat {
namespace {

void DefaultSink(std::string_view message) {
  std::cerr << "warning: " << message << '\n';
}

WarningSink g_sink = &DefaultSink;

}  // namespace

std::string_view CategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig:
      return "config";
    case ErrorCategory::kParse:
      return "parse";
    case ErrorCategory::kNumeric:
      return "numeric";
    case ErrorCategory::kLookup:
      return "lookup";
    case ErrorCategory::kContract:
      return "contract";
    case ErrorCategory::kShape:
      return "shape";
    case ErrorCategory::kDomain:
      return "domain";
    case ErrorCategory::kStaleTape:
      return "stale-tape";
    case ErrorCategory::kIo:
      return "io";
  }
  return "unknown";
}

Error::Error(ErrorCategory category, const std::string& message)
    : std::runtime_error(std::string(CategoryName(category)) + " error: " +
                         message),
      category_(category) {}

int ExitCodeFor(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig:
      return 2;
    case ErrorCategory::kParse:
      return 3;
    case ErrorCategory::kNumeric:
      return 4;
    case ErrorCategory::kLookup:
      return 5;
    case ErrorCategory::kContract:
    case ErrorCategory::kShape:
    case ErrorCategory::kDomain:
    case ErrorCategory::kStaleTape:
      return 6;
    case ErrorCategory::kIo:
      return 7;
  }
  return 1;
}

void SetWarningSink(WarningSink sink) { g_sink = sink ? sink : &DefaultSink; }

void Warn(std::string_view message) { g_sink(message); }

}  // namespace digat
