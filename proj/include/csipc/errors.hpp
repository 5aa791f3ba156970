// Copyright 2026 The csipc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSIPC_ERRORS_HPP
#define CSIPC_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace csipc {

// Every error the library raises derives from one of the std exception
// families so callers can catch broadly or precisely.

/// Bad argument or configuration value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precoder could not be built because a channel column is zero.
class DegenerateChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Channel matrix is (numerically) rank deficient.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its domain (e.g. log of a non-positive
/// argument).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver hit its iteration cap without certifying optimality.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Eigen::VectorXd last_iterate)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }

 private:
  Eigen::VectorXd last_iterate_;
};

/// The problem instance admits no meaningful solution (e.g. no user can be
/// served at any positive SINR target).
class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runtime failure inside a Monte Carlo campaign, tagged with the work unit.
class CampaignError : public std::runtime_error {
 public:
  CampaignError(const std::string& what, int drop, int realization)
      : std::runtime_error(what), drop_(drop), realization_(realization) {}

  int drop() const noexcept { return drop_; }
  /// -1 when the failure happened outside the per-realization loop.
  int realization() const noexcept { return realization_; }

 private:
  int drop_;
  int realization_;
};

}  // namespace csipc

#endif  // CSIPC_ERRORS_HPP
