// Copyright 2026 The qkick Authors
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

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qkick {

// Input failed a documented precondition. The message names the predicate
// or field that was violated.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural relation that should hold by construction did not, e.g. a
// coefficient set that is not of unitary form or a trajectory that lost
// positivity.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string relation, double residual)
      : std::runtime_error(relation + " violated (residual " + format_residual(residual) + ")"),
        relation_(std::move(relation)),
        residual_(residual) {}

  const std::string& relation() const noexcept { return relation_; }
  double residual() const noexcept { return residual_; }

 private:
  static std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    return buf;
  }

  std::string relation_;
  double residual_;
};

// Matrix logarithm requested on a spectrum touching the branch cut.
class BranchError : public std::domain_error {
 public:
  explicit BranchError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qkick
