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

#ifndef CSIPC_CLI_COMMANDS_HPP
#define CSIPC_CLI_COMMANDS_HPP

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "csipc/experiments.hpp"
#include "csipc/performance.hpp"

namespace csipc::cli {

/// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Shortest decimal text that round-trips to the same double, independent of
/// the global locale.
std::string format_double(double value);

inline constexpr const char* kCdfHeader = "throughput_bits_per_s,cdf_probability";
inline constexpr const char* kSummaryHeader = "scenario_id,design,scheme,model,M,median,p05";

void write_cdf_csv(std::ostream& out, const ThroughputCdf& cdf);

struct SummaryRow {
  std::string scenario_id;
  std::string design;
  std::string scheme;
  std::string model;
  int M = 0;
  double median = 0.0;
  double p05 = 0.0;
};

SummaryRow summarize(const Scenario& s, const ThroughputCdf& cdf);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// Parses the terms format used by `solve`:
///
///   rho_d,<value>
///   a,<a_1>,...,<a_K>
///   b,<b_11>,...,<b_1K>      ; row t lists b_t1 .. b_tK, K rows
///   flavor,statistical       ; optional
///
/// Without a flavor line the terms are instantaneous iff every b_kk is zero.
SinrTerms parse_terms(std::istream& in);

int cmd_run(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
            std::optional<std::uint64_t> seed, int threads, std::ostream& out, std::ostream& err);

int cmd_hardening(const std::string& model, int keyholes, const std::vector<int>& antennas,
                  int samples, std::uint64_t seed,
                  const std::optional<std::filesystem::path>& out_file, std::ostream& out,
                  std::ostream& err);

int cmd_solve(const std::filesystem::path& terms_file, const std::string& objective,
              std::ostream& out, std::ostream& err);

/// Writes the report `cmd_solve` prints for already-parsed terms.
void print_solution(std::ostream& out, const SinrTerms& terms, const std::string& objective);

int cmd_overhead(const NrNumerology& numerology, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csipc::cli

#endif  // CSIPC_CLI_COMMANDS_HPP
