// Copyright 2026 The segrobust Authors.
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

#ifndef SEGROBUST_ERRORS_H_
#define SEGROBUST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace segrobust {

// Caller supplied a value that violates an operation's contract
// (out-of-range boundary, malformed file line, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent configuration: weights that do not sum to one, unknown corpus
// labels, rates outside their range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A ratio was requested whose denominator is zero (WER on an empty reference).
class UndefinedRateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An internal postcondition failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace segrobust

#endif  // SEGROBUST_ERRORS_H_
