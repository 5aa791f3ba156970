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

#include "csipc/cli/campaign_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace csipc::cli {
namespace {

struct Entry {
  std::vector<std::string> values;
  int line = 0;
};

// Insertion order matters for scenario id suffixes.
using Section = std::vector<std::pair<std::string, Entry>>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

const Entry* find(const Section& s, const std::string& key) {
  for (const auto& [k, e] : s)
    if (k == key) return &e;
  return nullptr;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key, int line) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(at_line(line) + "key '" + key + "': cannot parse '" + text + "' as " +
                          (std::is_integral_v<T> ? "an integer" : "a number"),
                      line, key);
  }
  return value;
}

bool is_numeric_key(const std::string& key) {
  static const std::vector<std::string> textual = {"model", "scheme", "objective", "design",
                                                   "warm_start"};
  return std::find(textual.begin(), textual.end(), key) == textual.end();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

using Assignment = std::map<std::string, std::pair<std::string, int>>;

Scenario build_scenario(const std::string& id, const Assignment& kv) {
  Scenario s;
  s.id = id;
  auto get = [&](const std::string& key) -> const std::pair<std::string, int>* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  for (const char* req : {"M", "model", "scheme", "objective", "design"}) {
    if (!get(req)) {
      throw ConfigError("scenario '" + id + "': missing required key '" + req + "'", 0, req);
    }
  }
  auto set_int = [&](const char* key, int& dst) {
    if (auto* v = get(key)) dst = parse_number<int>(v->first, key, v->second);
  };
  auto set_double = [&](const char* key, double& dst) {
    if (auto* v = get(key)) dst = parse_number<double>(v->first, key, v->second);
  };
  auto choice = [&](const char* key, std::initializer_list<const char*> allowed) {
    const auto* v = get(key);
    const std::string value = lower(v->first);
    for (const char* a : allowed)
      if (value == a) return value;
    std::string msg = at_line(v->second) + "key '" + key + "': unknown value '" + v->first +
                      "' (expected";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw ConfigError(msg + ")", v->second, key);
  };

  SystemConfig& c = s.cfg;
  set_int("M", c.M);
  set_int("K", c.K);
  c.tau_u = c.K;
  c.tau_d = c.K;
  set_double("D", c.D);
  set_double("bandwidth", c.B);
  set_double("bs_power", c.bs_power);
  set_double("noise_power_dbm", c.noise_power_dbm);
  set_double("pilot_power", c.pilot_power);
  set_int("tau_c", c.tau_c);
  set_int("tau_u", c.tau_u);
  set_int("tau_d", c.tau_d);
  if (auto* v = get("seed")) c.rng_seed = parse_number<std::uint64_t>(v->first, "seed", v->second);
  set_double("shadowing_sigma_db", c.shadowing_sigma_db);
  set_double("pathloss_d0", c.pathloss.d0);
  set_double("pathloss_d1", c.pathloss.d1);
  set_double("pathloss_exponent_far", c.pathloss.exponent_far);
  set_double("pathloss_exponent_mid", c.pathloss.exponent_mid);
  set_double("pathloss_ref_db", c.pathloss.reference_loss_db);

  set_int("n_drops", s.n_drops);
  set_int("n_smallscale", s.n_smallscale);
  set_int("n_mc_stat", s.n_mc_stat);
  set_double("epsilon", s.solver.epsilon);
  set_double("bisection_width", s.solver.bisection_width);
  set_int("max_outer_iters", s.solver.max_outer_iters);
  set_double("inner_tolerance", s.solver.inner_tolerance);
  set_int("inner_max_iters", s.solver.inner_max_iters);
  if (get("warm_start")) s.warm_start = choice("warm_start", {"true", "false"}) == "true";

  s.scheme = choice("scheme", {"mr", "zf"}) == "mr" ? Scheme::kMR : Scheme::kZF;
  s.objective =
      choice("objective", {"sum_rate", "max_min"}) == "sum_rate" ? Objective::kSumRate
                                                                 : Objective::kMaxMin;
  s.design = choice("design", {"statistical", "instantaneous"}) == "statistical"
                 ? CsiFlavor::kStatistical
                 : CsiFlavor::kInstantaneous;

  const std::string model = choice("model", {"rayleigh", "keyhole", "deterministic"});
  if (model == "keyhole") {
    const auto* v = get("keyholes");
    if (!v) throw ConfigError("scenario '" + id + "': missing required key 'keyholes'", 0, "keyholes");
    const int o = parse_number<int>(v->first, "keyholes", v->second);
    if (o < 1) {
      throw ConfigError(at_line(v->second) + "key 'keyholes': must be at least 1", v->second,
                        "keyholes");
    }
    if (c.K < 1) throw ConfigError("scenario '" + id + "': K must be at least 1", 0, "K");
    s.model = KeyholeModel{KeyholeSpec::equal_gains(c.K, o)};
  } else if (model == "deterministic") {
    s.model = DeterministicModel{};
  } else {
    s.model = RayleighModel{};
  }

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario '" + id + "': " + e.what(), 0, "");
  }
  return s;
}

void expand(const std::string& name, const Section& defaults, const Section& section,
            std::vector<Scenario>& out) {
  Assignment base;
  for (const auto& [k, e] : defaults) {
    if (e.values.size() != 1) {
      throw ConfigError(at_line(e.line) + "key '" + k + "': lists are only allowed in scenario sections",
                        e.line, k);
    }
    base[k] = {e.values[0], e.line};
  }
  std::vector<std::pair<std::string, const Entry*>> lists;
  for (const auto& [k, e] : section) {
    if (e.values.size() == 1) {
      base[k] = {e.values[0], e.line};
    } else {
      lists.emplace_back(k, &e);
    }
  }
  std::vector<std::size_t> idx(lists.size(), 0);
  while (true) {
    Assignment kv = base;
    std::string id = name;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      const auto& [key, entry] = lists[i];
      const std::string& value = entry->values[idx[i]];
      kv[key] = {value, entry->line};
      id += "_" + (is_numeric_key(key) ? key + value : value);
    }
    out.push_back(build_scenario(id, kv));
    std::size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++idx[i] < lists[i].second->values.size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (lists.empty()) return;
  }
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "M",          "K",          "D",          "bandwidth",
      "bs_power",   "noise_power_dbm",          "pilot_power",
      "tau_c",      "tau_u",      "tau_d",      "seed",
      "shadowing_sigma_db",       "pathloss_d0", "pathloss_d1",
      "pathloss_exponent_far",    "pathloss_exponent_mid",
      "pathloss_ref_db",          "model",      "keyholes",
      "scheme",     "objective",  "design",     "n_drops",
      "n_smallscale",             "n_mc_stat",  "epsilon",  "bisection_width",
      "max_outer_iters",          "inner_tolerance",
      "inner_max_iters",          "warm_start"};
  return keys;
}

CampaignFile parse_campaign(std::istream& in) {
  CampaignFile file;
  Section defaults;
  std::vector<std::pair<std::string, Section>> scenarios;

  enum class Where { kNone, kOutput, kDefaults, kScenario } where = Where::kNone;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(at_line(line_no) + "unterminated section header", line_no, "");
      }
      const std::string header = trim(std::string_view(line).substr(1, line.size() - 2));
      if (header == "output") {
        where = Where::kOutput;
      } else if (header == "defaults") {
        where = Where::kDefaults;
      } else if (header.rfind("scenario", 0) == 0 && header.size() > 8 &&
                 (header[8] == ' ' || header[8] == '\t')) {
        const std::string name = trim(std::string_view(header).substr(8));
        for (const auto& [n, _] : scenarios) {
          if (n == name) {
            throw ConfigError(at_line(line_no) + "duplicate scenario '" + name + "'", line_no, "");
          }
        }
        scenarios.emplace_back(name, Section{});
        where = Where::kScenario;
      } else {
        throw ConfigError(at_line(line_no) + "unknown section '" + header + "'", line_no, "");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(at_line(line_no) + "expected 'key = value'", line_no, "");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(at_line(line_no) + "empty key", line_no, "");

    if (where == Where::kNone) {
      throw ConfigError(at_line(line_no) + "key '" + key + "' outside of any section", line_no, key);
    }
    if (where == Where::kOutput) {
      if (key == "dir") {
        file.output_dir = value;
      } else if (key == "summary") {
        if (value.empty()) throw ConfigError(at_line(line_no) + "key 'summary': empty value", line_no, key);
        file.summary_name = value;
      } else {
        throw ConfigError(at_line(line_no) + "unknown key '" + key + "' in [output]", line_no, key);
      }
      continue;
    }

    const auto& known = scenario_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(at_line(line_no) + "unknown key '" + key + "'", line_no, key);
    }
    Section& target = where == Where::kDefaults ? defaults : scenarios.back().second;
    if (find(target, key)) {
      throw ConfigError(at_line(line_no) + "duplicate key '" + key + "'", line_no, key);
    }
    Entry e{split_list(value), line_no};
    for (const auto& v : e.values) {
      if (v.empty()) {
        throw ConfigError(at_line(line_no) + "key '" + key + "': empty value", line_no, key);
      }
    }
    target.emplace_back(key, std::move(e));
  }

  if (scenarios.empty()) throw ConfigError("no [scenario ...] section found", 0, "");
  for (const auto& [name, section] : scenarios) expand(name, defaults, section, file.scenarios);

  for (std::size_t i = 0; i < file.scenarios.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (file.scenarios[i].id == file.scenarios[j].id) {
        throw ConfigError("duplicate scenario id '" + file.scenarios[i].id + "'", 0, "");
      }
    }
  }
  return file;
}

CampaignFile load_campaign(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'", 0, "");
  return parse_campaign(in);
}

}  // namespace csipc::cli
