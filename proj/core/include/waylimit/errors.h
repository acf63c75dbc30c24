// Copyright 2026 The waylimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WAYLIMIT_ERRORS_H_
#define WAYLIMIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace waylimit {

// Operand dimensions do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural invariant (hermiticity, unitarity, normalization, ...) fails.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its domain of validity, e.g. a bound that
// needs the conservation law on a model that breaks it.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace waylimit

#endif  // WAYLIMIT_ERRORS_H_
