// Copyright 2026 The OMG-RFTL Authors.
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

#ifndef OMG_ERRORS_H_
#define OMG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace omg {

// Bad shapes, bad parameters, malformed configuration files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of an operation
// (infeasible strategies, zero coordinates fed to a log, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a restricted simplex is requested with floor > 1/d.
class EmptySetError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative procedures that failed to reach their tolerance, or produced
// non-finite values.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double best_gap = -1.0)
      : std::runtime_error(what), best_gap_(best_gap) {}

  // Smallest duality gap seen before giving up; negative when not applicable.
  double best_gap() const { return best_gap_; }

 private:
  double best_gap_;
};

}  // namespace omg

#endif  // OMG_ERRORS_H_
