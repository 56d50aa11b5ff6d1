// kgtrans command-line front end: regime reports, density/wave series on a
// time grid, wavefront delay measurements, beat analysis and the
// relativistic-vs-Schrodinger comparison. Series go to CSV, reports to JSON.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kgtrans/kgtrans.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAnalysis = 4;

struct PolicyConfig {
  double rel_tol = 1e-12;
  long max_terms = 20000;
  int consecutive_small = 4;
  double front_guard = 1e-6;
};

struct RunConfig {
  std::string solver = "source";
  double E = 1.0;
  double V = 0.0;
  double x = 0.0;
  double t_start = 0.0;
  double t_end = 1.0;
  long n_samples = 1024;
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  PolicyConfig policy{};
  std::string format = "csv";
};

void to_json(json& j, const PolicyConfig& p) {
  j = json{{"rel_tol", p.rel_tol},
           {"max_terms", p.max_terms},
           {"consecutive_small", p.consecutive_small},
           {"front_guard", p.front_guard}};
}

void from_json(const json& j, PolicyConfig& p) {
  p.rel_tol = j.value("rel_tol", p.rel_tol);
  p.max_terms = j.value("max_terms", p.max_terms);
  p.consecutive_small = j.value("consecutive_small", p.consecutive_small);
  p.front_guard = j.value("front_guard", p.front_guard);
}

void to_json(json& j, const RunConfig& cfg) {
  j = json{{"solver", cfg.solver},   {"E", cfg.E},
           {"V", cfg.V},             {"x", cfg.x},
           {"t_start", cfg.t_start}, {"t_end", cfg.t_end},
           {"n_samples", cfg.n_samples}, {"hbar", cfg.hbar},
           {"mass", cfg.mass},       {"c", cfg.c},
           {"policy", cfg.policy},   {"format", cfg.format}};
}

void from_json(const json& j, RunConfig& cfg) {
  cfg.solver = j.value("solver", cfg.solver);
  cfg.E = j.value("E", cfg.E);
  cfg.V = j.value("V", cfg.V);
  cfg.x = j.value("x", cfg.x);
  cfg.t_start = j.value("t_start", cfg.t_start);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.n_samples = j.value("n_samples", cfg.n_samples);
  cfg.hbar = j.value("hbar", cfg.hbar);
  cfg.mass = j.value("mass", cfg.mass);
  cfg.c = j.value("c", cfg.c);
  if (j.contains("policy")) cfg.policy = j.at("policy").get<PolicyConfig>();
  cfg.format = j.value("format", cfg.format);
}

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

kgt_solver_kind solver_kind(const std::string& name) {
  if (name == "source") return KGT_SOLVER_SOURCE;
  if (name == "kg_shutter") return KGT_SOLVER_KG_SHUTTER;
  if (name == "dirac_shutter") return KGT_SOLVER_DIRAC_SHUTTER;
  if (name == "schrodinger") return KGT_SOLVER_SCHRODINGER;
  throw UsageError("unknown solver '" + name + "'");
}

const char* delay_name(int c) {
  switch (c) {
    case KGT_DELAY: return "delay";
    case KGT_ADVANCE: return "advance";
    case KGT_ZERO: return "zero";
    default: return "not_applicable";
  }
}

const char* regime_name(int r) {
  switch (r) {
    case KGT_REGIME_PROPAGATION: return "propagation";
    case KGT_REGIME_EVANESCENT: return "evanescent";
    case KGT_REGIME_KLEIN: return "klein_tunneling";
    case KGT_REGIME_BOUNDARY_UPPER: return "boundary_upper";
    case KGT_REGIME_BOUNDARY_LOWER: return "boundary_lower";
    default: return "unknown";
  }
}

// "a..b" -> (a, b)
std::pair<double, double> parse_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) throw UsageError("time range must look like '30..200'");
  try {
    return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 2))};
  } catch (const std::exception&) {
    throw UsageError("could not parse time range '" + text + "'");
  }
}

struct Preset {
  RunConfig config;
};

std::optional<Preset> lookup_preset(const std::string& name) {
  RunConfig cfg;
  cfg.x = 10.0;
  cfg.n_samples = 2048;
  cfg.t_start = 9.0;
  cfg.t_end = 60.0;
  if (name == "fig2a") {
    cfg.solver = "source";
    cfg.E = 1.6;
    cfg.V = 0.2;
    return Preset{cfg};
  }
  if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
    cfg.solver = "source";
    cfg.V = 3.0;
    cfg.E = name == "fig3a" ? 1.8 : (name == "fig3b" ? 1.2 : 1.5);
    return Preset{cfg};
  }
  cfg.t_start = 30.0;
  cfg.t_end = 200.0;
  cfg.n_samples = 4096;
  if (name == "fig4a") {
    cfg.solver = "source";
    cfg.E = 10.0;
    cfg.V = 0.5;
    return Preset{cfg};
  }
  if (name == "fig5a" || name == "fig5b") {
    cfg.solver = name == "fig5a" ? "kg_shutter" : "dirac_shutter";
    cfg.E = 10.0;
    cfg.V = 0.0;
    return Preset{cfg};
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_status(kgt_status rc) {
  if (rc == KGT_OK) return;
  std::ostringstream msg;
  msg << kgt_status_message(rc) << ": " << kgt_last_error();
  switch (rc) {
    case KGT_ERR_TRUNCATION: throw std::runtime_error("numerical: " + msg.str());
    case KGT_ERR_NO_PEAK:
    case KGT_ERR_INSUFFICIENT_PERIODS:
    case KGT_ERR_FLAT_SIGNAL: throw std::runtime_error("analysis: " + msg.str());
    default: throw UsageError(msg.str());
  }
}

int exit_code_for(const std::exception& e) {
  const std::string what = e.what();
  if (what.rfind("numerical: ", 0) == 0) return kExitNumerical;
  if (what.rfind("analysis: ", 0) == 0) return kExitAnalysis;
  return kExitUsage;
}

// Output path: --out wins; otherwise KGTRANS_OUT_DIR (default ".") + name.
// "-" means stdout.
std::ostream& open_output(const std::string& out_opt, const std::string& default_name,
                          std::ofstream& file) {
  std::string path = out_opt;
  if (path.empty()) {
    const char* dir = std::getenv("KGTRANS_OUT_DIR");
    path = (std::filesystem::path(dir ? dir : ".") / default_name).string();
  }
  if (path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  std::cerr << "writing " << path << "\n";
  return file;
}

struct SolverHandle {
  kgt_solver* ptr = nullptr;
  explicit SolverHandle(const RunConfig& cfg) {
    ptr = kgt_solver_new(solver_kind(cfg.solver), cfg.E, cfg.V, cfg.hbar, cfg.mass, cfg.c);
    if (!ptr) throw UsageError(std::string("bad solver configuration: ") + kgt_last_error());
    check_status(kgt_solver_set_policy(ptr, cfg.policy.rel_tol, cfg.policy.max_terms,
                                       cfg.policy.consecutive_small, cfg.policy.front_guard));
  }
  ~SolverHandle() { kgt_solver_free(ptr); }
  SolverHandle(const SolverHandle&) = delete;
  SolverHandle& operator=(const SolverHandle&) = delete;
};

std::vector<kgt_sample> run_grid(const RunConfig& cfg) {
  SolverHandle solver(cfg);
  std::vector<kgt_sample> grid(static_cast<std::size_t>(cfg.n_samples));
  kgt_eval_diag diag;
  const kgt_status rc = kgt_solver_eval_grid(solver.ptr, cfg.x, cfg.t_start, cfg.t_end,
                                             cfg.n_samples, grid.data(), &diag);
  if (rc == KGT_ERR_TRUNCATION) {
    std::ostringstream msg;
    msg << "numerical: series truncation at row " << diag.fail_index << " (residual "
        << diag.attained_residual << " after " << diag.terms_used
        << " terms): " << kgt_last_error();
    throw std::runtime_error(msg.str());
  }
  check_status(rc);
  return grid;
}

void write_series(std::ostream& os, const RunConfig& cfg, const std::vector<kgt_sample>& grid) {
  const bool dirac = cfg.solver == "dirac_shutter";
  const double dt = (cfg.t_end - cfg.t_start) / static_cast<double>(cfg.n_samples - 1);
  if (cfg.format == "json") {
    json j;
    j["config"] = cfg;
    json rows = json::array();
    for (long i = 0; i < cfg.n_samples; ++i) {
      const auto& s = grid[static_cast<std::size_t>(i)];
      json row{{"t", cfg.t_start + dt * static_cast<double>(i)},
               {"psi_re", s.psi_re},
               {"psi_im", s.psi_im},
               {"rho", s.rho}};
      if (dirac) {
        row["psi2_re"] = s.psi2_re;
        row["psi2_im"] = s.psi2_im;
      }
      rows.push_back(std::move(row));
    }
    j["samples"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  json cfg_json = cfg;
  os << "# kgtrans evolve\n";
  os << "# config: " << cfg_json.dump() << "\n";
  if (dirac) {
    os << "# columns: t,psi1_re,psi1_im,psi2_re,psi2_im,rho\n";
  } else {
    os << "# columns: t,psi_re,psi_im,rho\n";
  }
  for (long i = 0; i < cfg.n_samples; ++i) {
    const auto& s = grid[static_cast<std::size_t>(i)];
    const double t = cfg.t_start + dt * static_cast<double>(i);
    os << format_double(t) << ',' << format_double(s.psi_re) << ',' << format_double(s.psi_im);
    if (dirac) os << ',' << format_double(s.psi2_re) << ',' << format_double(s.psi2_im);
    os << ',' << format_double(s.rho) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct CommonOptions {
  RunConfig cfg;
  std::string preset;
  std::string config_path;
  std::string t_range;
  std::string out;
  CLI::Option* opt_t = nullptr;
  CLI::Option* opt_n = nullptr;
  // options that participate in the defaults < config < preset < flags layering
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&, const RunConfig&)>>> layered;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_solver) {
  auto layered = [&opts](CLI::Option* opt, auto member) {
    opts.layered.emplace_back(opt, [member](RunConfig& dst, const RunConfig& src) {
      dst.*member = src.*member;
    });
  };
  if (with_solver) {
    layered(cmd->add_option("--solver", opts.cfg.solver,
                            "source|kg_shutter|dirac_shutter|schrodinger"),
            &RunConfig::solver);
  }
  layered(cmd->add_option("--E", opts.cfg.E, "source energy (reciprocal length)"), &RunConfig::E);
  layered(cmd->add_option("--V", opts.cfg.V, "step height (reciprocal length)"), &RunConfig::V);
  layered(cmd->add_option("--x", opts.cfg.x, "observation position"), &RunConfig::x);
  opts.opt_t = cmd->add_option("--t", opts.t_range, "time range, e.g. 30..200");
  opts.opt_n = cmd->add_option("--n", opts.cfg.n_samples, "number of samples");
  layered(opts.opt_n, &RunConfig::n_samples);
  layered(cmd->add_option("--hbar", opts.cfg.hbar, "Planck constant"), &RunConfig::hbar);
  layered(cmd->add_option("--mass", opts.cfg.mass, "particle mass"), &RunConfig::mass);
  layered(cmd->add_option("--c", opts.cfg.c, "speed of light"), &RunConfig::c);
  layered(cmd->add_option("--format", opts.cfg.format, "csv|json (series only)"),
          &RunConfig::format);

  auto layered_policy = [&opts](CLI::Option* opt, auto member) {
    opts.layered.emplace_back(opt, [member](RunConfig& dst, const RunConfig& src) {
      dst.policy.*member = src.policy.*member;
    });
  };
  layered_policy(cmd->add_option("--rel-tol", opts.cfg.policy.rel_tol,
                                 "series relative tolerance"),
                 &PolicyConfig::rel_tol);
  layered_policy(cmd->add_option("--max-terms", opts.cfg.policy.max_terms, "series term cap"),
                 &PolicyConfig::max_terms);
  layered_policy(cmd->add_option("--consecutive-small", opts.cfg.policy.consecutive_small,
                                 "small terms required to truncate"),
                 &PolicyConfig::consecutive_small);
  layered_policy(cmd->add_option("--front-guard", opts.cfg.policy.front_guard,
                                 "front window in units of 1/mu"),
                 &PolicyConfig::front_guard);
  cmd->add_option("--preset", opts.preset,
                  "fig2a|fig3a|fig3b|fig3c|fig4a|fig5a|fig5b parameter set");
  cmd->add_option("--config", opts.config_path, "JSON run configuration file");
  cmd->add_option("--out", opts.out, "output path ('-' for stdout)");
}

// Layering: defaults < --config < --preset < explicit flags.
void resolve_config(CommonOptions& opts) {
  if (!opts.config_path.empty() || !opts.preset.empty()) {
    RunConfig base;
    if (!opts.config_path.empty()) {
      std::ifstream in(opts.config_path);
      if (!in) throw UsageError("cannot read config file '" + opts.config_path + "'");
      json j;
      in >> j;
      base = j.get<RunConfig>();
    }
    if (!opts.preset.empty()) {
      const auto preset = lookup_preset(opts.preset);
      if (!preset) throw UsageError("unknown preset '" + opts.preset + "'");
      base = preset->config;
    }
    const RunConfig flags = opts.cfg;
    opts.cfg = base;
    for (const auto& [opt, apply] : opts.layered) {
      if (opt->count() > 0) apply(opts.cfg, flags);
    }
  }
  if (opts.opt_t->count() > 0) {
    const auto [a, b] = parse_range(opts.t_range);
    opts.cfg.t_start = a;
    opts.cfg.t_end = b;
  }
  if (opts.cfg.n_samples < 16) throw UsageError("n_samples must be >= 16");
  if (!(opts.cfg.t_end > opts.cfg.t_start)) throw UsageError("require t_end > t_start");
  if (opts.cfg.format != "csv" && opts.cfg.format != "json") {
    throw UsageError("format must be csv or json");
  }
}

int cmd_regime(double E, double V, double hbar, double mass, double c, bool as_json) {
  kgt_regime_info info;
  check_status(kgt_classify(E, V, hbar, mass, c, &info));
  if (as_json) {
    json j{{"E", E},
           {"V", V},
           {"regime", regime_name(info.regime)},
           {"k_re", info.k_re},
           {"k_im", info.k_im},
           {"z_plus_re", info.z_plus_re},
           {"z_plus_im", info.z_plus_im},
           {"z_minus_re", info.z_minus_re},
           {"z_minus_im", info.z_minus_im},
           {"epsilon", info.epsilon},
           {"mu", info.mu},
           {"omega_zbw", info.omega_zbw},
           {"predicted_delay", delay_name(info.predicted_delay)}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "regime: " << regime_name(info.regime) << "\n";
  std::cout << "k: " << format_double(info.k_re);
  if (info.k_im != 0.0) std::cout << " + " << format_double(info.k_im) << "i";
  std::cout << "\n";
  std::cout << "epsilon: " << format_double(info.epsilon) << "\n";
  std::cout << "z+: (" << format_double(info.z_plus_re) << ", " << format_double(info.z_plus_im)
            << ")  z-: (" << format_double(info.z_minus_re) << ", "
            << format_double(info.z_minus_im) << ")\n";
  std::cout << "omega_zbw: " << format_double(info.omega_zbw) << "\n";
  std::cout << "predicted delay class: " << delay_name(info.predicted_delay) << "\n";
  const bool super_klein =
      info.regime == KGT_REGIME_KLEIN && std::abs(std::abs(info.epsilon) - 0.5 * V) < 1e-12;
  if (super_klein) std::cout << "note: |epsilon| = V/2 (simultaneous wavefronts)\n";
  return kExitOk;
}

int cmd_evolve(CommonOptions& opts) {
  resolve_config(opts);
  const auto grid = run_grid(opts.cfg);
  std::ofstream file;
  std::ostringstream name;
  name << "evolve_" << opts.cfg.solver << "_E" << opts.cfg.E << "_V" << opts.cfg.V << "_x"
       << opts.cfg.x << (opts.cfg.format == "json" ? ".json" : ".csv");
  auto& os = open_output(opts.out, name.str(), file);
  write_series(os, opts.cfg, grid);
  return kExitOk;
}

int cmd_delay(CommonOptions& opts, double zero_tol) {
  resolve_config(opts);
  RunConfig stepped = opts.cfg;
  stepped.solver = "source";
  RunConfig free_cfg = stepped;
  free_cfg.V = 0.0;
  const auto rho_of = [](const std::vector<kgt_sample>& grid) {
    std::vector<double> rho(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rho[i] = grid[i].rho;
    return rho;
  };
  const auto rho_step = rho_of(run_grid(stepped));
  const auto rho_free = rho_of(run_grid(free_cfg));
  const double dt = (stepped.t_end - stepped.t_start) / static_cast<double>(stepped.n_samples - 1);

  kgt_delay_result result;
  check_status(kgt_measure_delay(stepped.x, stepped.c, stepped.t_start, dt, rho_free.data(),
                                 rho_step.data(), stepped.n_samples, zero_tol, &result));
  kgt_regime_info info;
  check_status(kgt_classify(stepped.E, stepped.V, stepped.hbar, stepped.mass, stepped.c, &info));

  json j{{"command", "delay"},
         {"config", stepped},
         {"t_free", result.t_free},
         {"t_step", result.t_step},
         {"delta_t", result.delta_t},
         {"classification", delay_name(result.classification)},
         {"predicted", delay_name(info.predicted_delay)},
         {"zero_tol", zero_tol > 0.0 ? zero_tol : 2.0 * dt}};
  std::ofstream file;
  std::ostringstream name;
  name << "delay_E" << stepped.E << "_V" << stepped.V << "_x" << stepped.x << ".json";
  auto& os = open_output(opts.out, name.str(), file);
  os << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_beats(CommonOptions& opts, double t_min, const std::string& synthetic) {
  json j{{"command", "beats"}};
  double t0 = 0, dt = 0;
  std::vector<double> rho;
  long n = 0;
  if (!synthetic.empty()) {
    double exponent = 0, omega = 0;
    if (std::sscanf(synthetic.c_str(), "t^%lf*cos(%lft)", &exponent, &omega) != 2) {
      throw UsageError("synthetic expression must look like 't^-1.5*cos(2t)'");
    }
    if (opts.opt_t->count() > 0) {
      const auto [a, b] = parse_range(opts.t_range);
      opts.cfg.t_start = a;
      opts.cfg.t_end = b;
    } else {
      opts.cfg.t_start = 50.0;
      opts.cfg.t_end = 200.0;
    }
    if (opts.opt_n->count() == 0) opts.cfg.n_samples = 4096;
    n = opts.cfg.n_samples;
    t0 = opts.cfg.t_start;
    dt = (opts.cfg.t_end - t0) / static_cast<double>(n - 1);
    rho.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      const double t = t0 + dt * static_cast<double>(i);
      rho[static_cast<std::size_t>(i)] = std::pow(t, exponent) * std::cos(omega * t);
    }
    j["synthetic"] = synthetic;
  } else {
    resolve_config(opts);
    const auto grid = run_grid(opts.cfg);
    n = opts.cfg.n_samples;
    t0 = opts.cfg.t_start;
    dt = (opts.cfg.t_end - t0) / static_cast<double>(n - 1);
    rho.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) rho[static_cast<std::size_t>(i)] = grid[static_cast<std::size_t>(i)].rho;
    j["config"] = opts.cfg;
  }
  if (t_min <= 0.0) t_min = t0;

  kgt_beats_result beats;
  check_status(kgt_extract_beats(t0, dt, rho.data(), n, t_min, &beats));
  j["t_min"] = t_min;
  j["omega_est"] = beats.omega_est;
  j["period_est"] = beats.period_est;
  j["decay_exponent"] = beats.decay_exponent;
  j["fit_residual"] = beats.fit_residual;
  j["n_periods_used"] = beats.n_periods_used;

  std::ofstream file;
  auto& os = open_output(opts.out, "beats.json", file);
  os << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_nonrel_check(const std::vector<double>& k_list, double x, long n, const std::string& out) {
  json entries = json::array();
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (double k : k_list) {
    if (!(k > 0.0)) throw UsageError("momenta must be positive");
    const double eps = std::sqrt(k * k + 1.0);
    const double wkin = 0.5 * k * k;
    const double t0 = 5.0 / wkin, t1 = 40.0 / wkin;

    RunConfig kg_cfg;
    kg_cfg.solver = "source";
    kg_cfg.E = eps;
    kg_cfg.V = 0.0;
    kg_cfg.x = x;
    kg_cfg.t_start = t0;
    kg_cfg.t_end = t1;
    kg_cfg.n_samples = n;
    RunConfig s_cfg = kg_cfg;
    s_cfg.solver = "schrodinger";

    const auto kg = run_grid(kg_cfg);
    const auto sc = run_grid(s_cfg);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(kg[static_cast<std::size_t>(i)].rho -
                                       sc[static_cast<std::size_t>(i)].rho));
    }
    monotone = monotone && worst < prev;
    prev = worst;
    entries.push_back(json{{"k", k},
                           {"kinetic_energy", wkin},
                           {"window", json{{"t_start", t0}, {"t_end", t1}}},
                           {"max_discrepancy", worst}});
  }
  json j{{"command", "nonrel_check"},
         {"x", x},
         {"n_samples", n},
         {"entries", entries},
         {"strictly_decreasing", monotone},
         {"rest_mass_phase", "exp(-i*mu*c*t)"},
         {"momentum_matching", "k_s = sqrt(2*mu*(eps-mu))"}};
  std::ofstream file;
  auto& os = open_output(out, "nonrel_check.json", file);
  os << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transient relativistic quantum waves for a step potential"};
  app.require_subcommand(1);

  // regime
  auto* regime = app.add_subcommand("regime", "classify a source/step configuration");
  double rg_E = 1.0, rg_V = 0.0, rg_hbar = 1.0, rg_mass = 1.0, rg_c = 1.0;
  bool rg_json = false;
  regime->add_option("--E", rg_E, "source energy")->required();
  regime->add_option("--V", rg_V, "step height");
  regime->add_option("--hbar", rg_hbar, "Planck constant");
  regime->add_option("--mass", rg_mass, "particle mass");
  regime->add_option("--c", rg_c, "speed of light");
  regime->add_flag("--json", rg_json, "emit JSON");

  // evolve
  auto* evolve = app.add_subcommand("evolve", "sample psi and rho on a time grid");
  CommonOptions evolve_opts;
  add_common(evolve, evolve_opts, true);

  // delay
  auto* delay = app.add_subcommand("delay", "stepped-vs-free wavefront delay");
  CommonOptions delay_opts;
  double zero_tol = 0.0;
  add_common(delay, delay_opts, false);
  delay->add_option("--zero-tol", zero_tol, "zero classification tolerance (default 2 steps)");

  // beats
  auto* beats = app.add_subcommand("beats", "beat frequency and envelope decay");
  CommonOptions beats_opts;
  double t_min = 0.0;
  std::string synthetic;
  add_common(beats, beats_opts, true);
  beats->add_option("--t-min", t_min, "start of the analysis window");
  beats->add_option("--synthetic", synthetic, "synthetic signal, e.g. 't^-1.5*cos(2t)'");

  // nonrel-check
  auto* nonrel = app.add_subcommand("nonrel-check", "relativistic vs Schrodinger comparison");
  std::vector<double> k_list{0.2, 0.1, 0.05};
  double nr_x = 2.0;
  long nr_n = 512;
  std::string nr_out;
  nonrel->add_option("--k", k_list, "momenta to sweep");
  nonrel->add_option("--x", nr_x, "observation position");
  nonrel->add_option("--n", nr_n, "samples per window");
  nonrel->add_option("--out", nr_out, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (regime->parsed()) return cmd_regime(rg_E, rg_V, rg_hbar, rg_mass, rg_c, rg_json);
    if (evolve->parsed()) return cmd_evolve(evolve_opts);
    if (delay->parsed()) return cmd_delay(delay_opts, zero_tol);
    if (beats->parsed()) return cmd_beats(beats_opts, t_min, synthetic);
    if (nonrel->parsed()) return cmd_nonrel_check(k_list, nr_x, nr_n, nr_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitUsage;
}
