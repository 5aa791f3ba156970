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

#include "csipc/cli/commands.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "csipc/cli/campaign_file.hpp"
#include "csipc/errors.hpp"

namespace csipc::cli {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string{} : cell.substr(a, b - a + 1));
  }
  return out;
}

double to_double(const std::string& text, int line) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("line " + std::to_string(line) + ": cannot parse '" + text + "' as a number",
                      line, "");
  }
  return v;
}

void write_vector(std::ostream& out, const char* label, const Eigen::VectorXd& v) {
  out << label;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << format_double(v[i]);
  out << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_cdf_csv(std::ostream& out, const ThroughputCdf& cdf) {
  out << kCdfHeader << '\n';
  for (std::size_t i = 0; i < cdf.samples.size(); ++i) {
    out << format_double(cdf.samples[i]) << ',' << format_double(cdf.probabilities[i]) << '\n';
  }
}

SummaryRow summarize(const Scenario& s, const ThroughputCdf& cdf) {
  return {s.id,  to_string(s.design), to_string(s.scheme), to_string(kind_of(s.model)),
          s.cfg.M, cdf.median,        cdf.p05};
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario_id << ',' << r.design << ',' << r.scheme << ',' << r.model << ',' << std::to_string(r.M)
        << ',' << format_double(r.median) << ',' << format_double(r.p05) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw ConfigError("summary: unexpected header", 1, "");
  }
  std::vector<SummaryRow> rows;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 7) {
      throw ConfigError("summary line " + std::to_string(n) + ": expected 7 columns", n, "");
    }
    SummaryRow r;
    r.scenario_id = c[0];
    r.design = c[1];
    r.scheme = c[2];
    r.model = c[3];
    r.M = static_cast<int>(to_double(c[4], n));
    r.median = to_double(c[5], n);
    r.p05 = to_double(c[6], n);
    rows.push_back(std::move(r));
  }
  return rows;
}

SinrTerms parse_terms(std::istream& in) {
  std::optional<double> rho;
  std::optional<std::vector<double>> a;
  std::vector<std::vector<double>> b_rows;
  std::optional<CsiFlavor> flavor;

  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto cells = split_csv(line);
    const std::string& tag = cells[0];
    auto values = [&] {
      std::vector<double> v;
      for (std::size_t i = 1; i < cells.size(); ++i) v.push_back(to_double(cells[i], n));
      return v;
    };
    if (tag == "rho_d") {
      const auto v = values();
      if (v.size() != 1) throw ConfigError("line " + std::to_string(n) + ": rho_d takes one value", n, tag);
      rho = v[0];
    } else if (tag == "a") {
      a = values();
    } else if (tag == "b") {
      b_rows.push_back(values());
    } else if (tag == "flavor") {
      if (cells.size() != 2) throw ConfigError("line " + std::to_string(n) + ": flavor takes one value", n, tag);
      if (cells[1] == "statistical") {
        flavor = CsiFlavor::kStatistical;
      } else if (cells[1] == "instantaneous") {
        flavor = CsiFlavor::kInstantaneous;
      } else {
        throw ConfigError("line " + std::to_string(n) + ": unknown flavor '" + cells[1] + "'", n, tag);
      }
    } else {
      throw ConfigError("line " + std::to_string(n) + ": unknown row '" + tag + "'", n, tag);
    }
  }
  if (!rho) throw ConfigError("terms: missing rho_d row", 0, "rho_d");
  if (!a || a->empty()) throw ConfigError("terms: missing a row", 0, "a");
  const std::size_t K = a->size();
  if (b_rows.size() != K) {
    throw ConfigError("terms: dimension mismatch, a has " + std::to_string(K) + " entries but " +
                          std::to_string(b_rows.size()) + " b rows were given",
                      0, "b");
  }
  SinrTerms t;
  t.rho_d = *rho;
  t.a = Eigen::Map<const Eigen::VectorXd>(a->data(), static_cast<Eigen::Index>(K));
  t.b.resize(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (std::size_t r = 0; r < K; ++r) {
    if (b_rows[r].size() != K) {
      throw ConfigError("terms: dimension mismatch, b row " + std::to_string(r + 1) + " has " +
                            std::to_string(b_rows[r].size()) + " entries, expected " +
                            std::to_string(K),
                        0, "b");
    }
    for (std::size_t c = 0; c < K; ++c) t.b(r, c) = b_rows[r][c];
  }
  t.flavor = flavor.value_or(t.b.diagonal().isZero(0.0) ? CsiFlavor::kInstantaneous
                                                          : CsiFlavor::kStatistical);
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("terms: ") + e.what(), 0, "");
  }
  return t;
}

int cmd_run(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
            std::optional<std::uint64_t> seed, int threads, std::ostream& out, std::ostream& err) {
  CampaignFile file;
  try {
    file = load_campaign(config);
    if (seed) {
      for (auto& s : file.scenarios) s.cfg.rng_seed = *seed;
    }
    if (threads < 1) throw ConfigError("--threads must be at least 1", 0, "threads");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::filesystem::path dir =
      out_dir ? *out_dir : std::filesystem::path(file.output_dir.empty() ? "." : file.output_dir);
  std::vector<SummaryRow> rows;
  try {
    std::filesystem::create_directories(dir);
    for (const auto& s : file.scenarios) {
      const ScenarioResult result = run_scenario(s, threads);
      auto f = open_output(dir / (s.id + ".csv"));
      write_cdf_csv(f, result.cdf);
      rows.push_back(summarize(s, result.cdf));
      out << s.id << ": median " << format_double(result.cdf.median) << " bit/s\n";
    }
    auto f = open_output(dir / file.summary_name);
    write_summary_csv(f, rows);
  } catch (const CampaignError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_hardening(const std::string& model, int keyholes, const std::vector<int>& antennas,
                  int samples, std::uint64_t seed,
                  const std::optional<std::filesystem::path>& out_file, std::ostream& out,
                  std::ostream& err) {
  ChannelModel m;
  try {
    if (model == "rayleigh") {
      m = RayleighModel{};
    } else if (model == "keyhole") {
      if (keyholes < 1) throw ConfigError("--keyholes must be at least 1", 0, "keyholes");
      m = KeyholeModel{KeyholeSpec::equal_gains(1, keyholes)};
    } else if (model == "deterministic") {
      m = DeterministicModel{};
    } else {
      throw ConfigError("unknown model '" + model + "'", 0, "model");
    }
    if (antennas.empty()) throw ConfigError("--M needs at least one value", 0, "M");
    for (int M : antennas) {
      if (M < 1) throw ConfigError("--M values must be positive", 0, "M");
    }
    if (samples < 2) throw ConfigError("--samples must be at least 2", 0, "samples");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::ostringstream csv;
    csv << "M,HC\n";
    const auto drop = LargeScaleDrop::from_betas(Eigen::VectorXd::Ones(1));
    RandomStream root(seed);
    for (std::size_t i = 0; i < antennas.size(); ++i) {
      RandomStream rng = root.split(i);
      const double hc = hardening_coefficient(m, drop, antennas[i], samples, rng)[0];
      csv << std::to_string(antennas[i]) << ',' << format_double(hc) << '\n';
    }
    if (out_file) {
      auto f = open_output(*out_file);
      f << csv.str();
    } else {
      out << csv.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

void print_solution(std::ostream& out, const SinrTerms& terms, const std::string& objective) {
  PowerAllocation alloc;
  RateResult rates;
  std::optional<double> zeta;
  if (objective == "sum_rate") {
    const auto r = solve_sum_rate(terms);
    alloc = r.alloc;
    rates = r.rates;
  } else {
    const auto r = solve_max_min(terms);
    alloc = r.alloc;
    rates = r.rates;
    zeta = r.zeta;
  }
  out << "objective," << objective << '\n';
  write_vector(out, "eta", alloc.eta);
  write_vector(out, "sinr", sinr_all(terms, alloc));
  write_vector(out, "rate", rates.per_user_rate);
  out << "sum_rate," << format_double(rates.sum_rate) << '\n';
  out << "min_rate," << format_double(rates.min_rate) << '\n';
  if (zeta) out << "zeta," << format_double(*zeta) << '\n';
}

int cmd_solve(const std::filesystem::path& terms_file, const std::string& objective,
              std::ostream& out, std::ostream& err) {
  SinrTerms terms;
  try {
    if (objective != "sum_rate" && objective != "max_min") {
      throw ConfigError("unknown objective '" + objective + "'", 0, "objective");
    }
    std::ifstream in(terms_file);
    if (!in) throw ConfigError("cannot open terms file '" + terms_file.string() + "'", 0, "");
    terms = parse_terms(in);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    std::ostringstream report;
    print_solution(report, terms, objective);
    out << report.str();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_overhead(const NrNumerology& numerology, std::ostream& out, std::ostream& err) {
  RecomputeCounts c;
  try {
    c = recompute_counts(numerology);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  out << "per_tti," << std::to_string(c.per_tti) << '\n'
      << "per_frame," << std::to_string(c.per_frame) << '\n'
      << "per_n_frames," << std::to_string(c.per_n_frames) << '\n';
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistical versus instantaneous CSI power allocation in massive MIMO"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::uint64_t seed = 1;
  int threads = 1;
  auto* run = app.add_subcommand("run", "Run every scenario in a campaign file");
  run->add_option("--config", config, "Campaign file")->required();
  run->add_option("--out", out_path, "Output directory (overrides [output] dir)");
  auto* run_seed = run->add_option("--seed", seed, "Override every scenario seed");
  run->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::string model = "rayleigh";
  int keyholes = 1;
  std::vector<int> antennas{6, 50, 100};
  int samples = 10000;
  auto* hard = app.add_subcommand("hardening", "Estimate the hardening coefficient versus M");
  hard->add_option("--model", model, "rayleigh | keyhole | deterministic")->capture_default_str();
  hard->add_option("--keyholes", keyholes, "Keyholes per user")->capture_default_str();
  hard->add_option("--M", antennas, "Antenna counts, comma separated")->delimiter(',');
  hard->add_option("--samples", samples, "Monte Carlo samples per M")->capture_default_str();
  hard->add_option("--seed", seed, "Random seed")->capture_default_str();
  hard->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string terms_file;
  std::string objective = "sum_rate";
  auto* solve = app.add_subcommand("solve", "Solve power control for a terms file");
  solve->add_option("--terms", terms_file, "Terms CSV")->required();
  solve->add_option("--objective", objective, "sum_rate | max_min")->capture_default_str();

  NrNumerology nr;
  auto* over = app.add_subcommand("overhead", "Count power-control recomputations");
  over->add_option("--bandwidth", nr.bandwidth_hz, "Bandwidth [Hz]")->capture_default_str();
  over->add_option("--spacing", nr.subcarrier_spacing_hz, "Subcarrier spacing [Hz]")
      ->capture_default_str();
  over->add_option("--subcarriers", nr.subcarriers_per_granularity,
                   "Subcarriers per frequency granularity interval")
      ->capture_default_str();
  over->add_option("--ttis", nr.ttis_per_frame, "TTIs per frame")->capture_default_str();
  over->add_option("--frames", nr.frames, "Frames")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::optional<std::filesystem::path> out_opt;
  if (!out_path.empty()) out_opt = out_path;
  if (*run) {
    std::optional<std::uint64_t> s;
    if (run_seed->count() > 0) s = seed;
    return cmd_run(config, out_opt, s, threads, out, err);
  }
  if (*hard) return cmd_hardening(model, keyholes, antennas, samples, seed, out_opt, out, err);
  if (*solve) return cmd_solve(terms_file, objective, out, err);
  return cmd_overhead(nr, out, err);
}

}  // namespace csipc::cli
