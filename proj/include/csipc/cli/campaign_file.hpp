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

#ifndef CSIPC_CLI_CAMPAIGN_FILE_HPP
#define CSIPC_CLI_CAMPAIGN_FILE_HPP

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "csipc/errors.hpp"
#include "csipc/experiments.hpp"

namespace csipc::cli {

/// Configuration problem in a campaign or terms file. `line` is 0 when the
/// problem is not tied to a single line.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& what, int line, std::string key)
      : InvalidArgument(what), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

struct CampaignFile {
  std::string output_dir;  // empty: caller decides
  std::string summary_name = "summary.csv";
  std::vector<Scenario> scenarios;
};

/// Parses the flat key-value campaign format:
///
///   # comment
///   [output]
///   dir = results
///   summary = summary.csv
///
///   [defaults]            ; keys shared by every scenario below
///   K = 5
///
///   [scenario fig1a]
///   M = 6, 50, 100        ; comma lists expand to one scenario per value
///   design = statistical, instantaneous
///   model = rayleigh      ; rayleigh | keyhole | deterministic
///   scheme = zf           ; mr | zf
///   objective = sum_rate  ; sum_rate | max_min
///
/// Every scenario needs M, model, scheme, objective and design; keyhole
/// scenarios also need `keyholes`. Unknown keys and sections are rejected
/// with the offending line and key.
CampaignFile parse_campaign(std::istream& in);

CampaignFile load_campaign(const std::filesystem::path& path);

/// Keys accepted inside [defaults] and [scenario ...] sections.
const std::vector<std::string>& scenario_keys();

}  // namespace csipc::cli

#endif  // CSIPC_CLI_CAMPAIGN_FILE_HPP
