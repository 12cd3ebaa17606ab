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

#ifndef DIGAT_ERRORS_H_
#define DIGAT_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace digat {

// Broad failure classes. The command-line tool maps each one to its own
// process exit code.
enum class ErrorCategory {
  kConfig,
  kParse,
  kNumeric,
  kLookup,
  kContract,
  kShape,
  kDomain,
  kStaleTape,
  kIo,
};

std::string_view CategoryName(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message);

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

#define DIGAT_DECLARE_ERROR(Name, Category)                 \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& message)               \
        : Error(ErrorCategory::Category, message) {}        \
  }

DIGAT_DECLARE_ERROR(ConfigError, kConfig);
DIGAT_DECLARE_ERROR(ParseError, kParse);
DIGAT_DECLARE_ERROR(NumericError, kNumeric);
DIGAT_DECLARE_ERROR(LookupError, kLookup);
DIGAT_DECLARE_ERROR(ContractError, kContract);
DIGAT_DECLARE_ERROR(ShapeError, kShape);
DIGAT_DECLARE_ERROR(DomainError, kDomain);
DIGAT_DECLARE_ERROR(StaleTapeError, kStaleTape);
DIGAT_DECLARE_ERROR(IoError, kIo);

#undef DIGAT_DECLARE_ERROR

// Process exit code for an error category; 0 is reserved for success and 1
// for uncategorized failures.
int ExitCodeFor(ErrorCategory category);

// Warnings go through a replaceable sink so tests can capture them.
using WarningSink = void (*)(std::string_view message);
void SetWarningSink(WarningSink sink);
void Warn(std::string_view message);

}  // namespace digat

#endif  // DIGAT_ERRORS_H_
