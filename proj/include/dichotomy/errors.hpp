// Copyright 2026 The Dichotomy Authors
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

#ifndef DICHOTOMY_ERRORS_HPP
#define DICHOTOMY_ERRORS_HPP

#include <stdexcept>
#include <string>

// Domain and range violations use std::domain_error / std::out_of_range.
// The types below cover the failure modes that have no standard counterpart.
namespace dichotomy {

/// An iterative routine ran out of iterations before meeting its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational expression hit a zero denominator.
class singular_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The request exceeds an enumeration cap (e.g. 2^n subsets for large n).
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A mathematical guarantee failed to hold numerically; always a library defect.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Hyperparameters solved from a policy are not a valid prior (θ ≤ 0 or ρ ≤ 0).
class infeasible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dichotomy

#endif  // DICHOTOMY_ERRORS_HPP
