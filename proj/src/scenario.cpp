#include "hypokinetic/scenario.hpp"

#include "hypokinetic/errors.hpp"
#include "hypokinetic/evolve.hpp"
#include "hypokinetic/io.hpp"
#include "hypokinetic/ops.hpp"
#include "hypokinetic/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace hypokinetic {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& v)
{
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ValidationError(field, "expected a number, got '" + v + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& field, const std::string& v)
{
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(field, "expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& field, const std::string& v)
{
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ValidationError(field, "expected true or false, got '" + v + "'");
}

std::optional<double> parse_auto(const std::string& field, const std::string& v)
{
  if (v == "auto") return std::nullopt;
  return parse_double(field, v);
}

using Setter = std::function<void(Scenario&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
  static const std::map<std::string, Setter> table{
      {"name", [](Scenario& s, const std::string&, const std::string& v) { s.name = v; }},
      {"case",
       [](Scenario& s, const std::string& k, const std::string& v) {
         if (v == "maxwellian") {
           s.equilibrium = EquilibriumCase::Maxwellian;
         } else if (v == "fast_diffusion") {
           s.equilibrium = EquilibriumCase::FastDiffusion;
         } else {
           throw ValidationError(k, "expected maxwellian or fast_diffusion, got '" + v + "'");
         }
       }},
      {"potential.k", [](Scenario& s, const std::string& k, const std::string& v) { s.potential_k = parse_double(k, v); }},
      {"potential.beta",
       [](Scenario& s, const std::string& k, const std::string& v) { s.potential_beta = parse_double(k, v); }},
      {"potential.C",
       [](Scenario& s, const std::string& k, const std::string& v) {
         if (v == "solve") {
           s.solve_C = true;
           s.potential_C.reset();
         } else {
           s.solve_C = false;
           s.potential_C = parse_double(k, v);
         }
       }},
      {"fast_diffusion.k", [](Scenario& s, const std::string& k, const std::string& v) { s.fd_k = parse_double(k, v); }},
      {"grid.nx", [](Scenario& s, const std::string& k, const std::string& v) { s.nx = parse_count(k, v); }},
      {"grid.nv", [](Scenario& s, const std::string& k, const std::string& v) { s.nv = parse_count(k, v); }},
      {"grid.lx", [](Scenario& s, const std::string& k, const std::string& v) { s.lx = parse_double(k, v); }},
      {"grid.lv", [](Scenario& s, const std::string& k, const std::string& v) { s.lv = parse_double(k, v); }},
      {"grid.v_quadrature",
       [](Scenario& s, const std::string& k, const std::string& v) {
         if (v == "uniform") {
           s.v_quadrature = VelocityQuadrature::Uniform;
         } else if (v == "gauss_hermite") {
           s.v_quadrature = VelocityQuadrature::GaussHermite;
         } else {
           throw ValidationError(k, "expected uniform or gauss_hermite, got '" + v + "'");
         }
       }},
      {"evolve.dt", [](Scenario& s, const std::string& k, const std::string& v) { s.dt = parse_double(k, v); }},
      {"evolve.t_end", [](Scenario& s, const std::string& k, const std::string& v) { s.t_end = parse_double(k, v); }},
      {"evolve.record_every",
       [](Scenario& s, const std::string& k, const std::string& v) { s.record_every = parse_count(k, v); }},
      {"evolve.transport",
       [](Scenario& s, const std::string& k, const std::string& v) { s.transport = parse_bool(k, v); }},
      {"hypo.eps", [](Scenario& s, const std::string& k, const std::string& v) { s.eps = parse_auto(k, v); }},
      {"hypo.a", [](Scenario& s, const std::string& k, const std::string& v) { s.a = parse_auto(k, v); }},
      {"hypo.lambda", [](Scenario& s, const std::string& k, const std::string& v) { s.lambda = parse_auto(k, v); }},
      {"hypo.theta",
       [](Scenario& s, const std::string& k, const std::string& v) {
         s.theta_grid.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) s.theta_grid.push_back(parse_double(k, trim(item)));
       }},
      {"hypo.c4_samples",
       [](Scenario& s, const std::string& k, const std::string& v) { s.c4_samples = parse_count(k, v); }},
      {"hypo.gap_safety",
       [](Scenario& s, const std::string& k, const std::string& v) { s.gap_safety = parse_double(k, v); }},
      {"initial.preset",
       [](Scenario& s, const std::string& k, const std::string& v) {
         if (v == "density_wave") {
           s.initial = InitialPreset::DensityWave;
         } else if (v == "shifted_maxwellian") {
           s.initial = InitialPreset::ShiftedMaxwellian;
         } else if (v == "odd_mode") {
           s.initial = InitialPreset::OddMode;
         } else {
           throw ValidationError(k, "expected density_wave, shifted_maxwellian or odd_mode, got '" + v + "'");
         }
       }},
      {"initial.amplitude",
       [](Scenario& s, const std::string& k, const std::string& v) { s.amplitude = parse_double(k, v); }},
      {"output.directory",
       [](Scenario& s, const std::string&, const std::string& v) { s.output_directory = v; }},
      {"output.dump_snapshots",
       [](Scenario& s, const std::string& k, const std::string& v) { s.dump_snapshots = parse_bool(k, v); }},
      {"output.snapshot_every",
       [](Scenario& s, const std::string& k, const std::string& v) { s.snapshot_every = parse_count(k, v); }},
      {"seed",
       [](Scenario& s, const std::string& k, const std::string& v) { s.seed = parse_count(k, v); }},
  };
  return table;
}

const char* case_name(EquilibriumCase c)
{
  return c == EquilibriumCase::Maxwellian ? "maxwellian" : "fast_diffusion";
}

const char* initial_name(InitialPreset p)
{
  switch (p) {
    case InitialPreset::DensityWave: return "density_wave";
    case InitialPreset::ShiftedMaxwellian: return "shifted_maxwellian";
    case InitialPreset::OddMode: return "odd_mode";
  }
  return "density_wave";
}

}  // namespace

void apply_defaults(Scenario& s)
{
  const bool md = s.equilibrium == EquilibriumCase::Maxwellian;
  if (s.nx == 0) s.nx = md ? 257 : 385;
  if (s.lx == 0.0) s.lx = md ? 8.0 : 12.0;
  if (s.nv == 0) s.nv = md ? 64 : 128;
  if (s.lv == 0.0) s.lv = md ? 8.0 : 16.0;
}

void validate(const Scenario& s)
{
  auto positive = [](const char* field, double v) {
    if (!(v > 0.0)) throw ValidationError(field, "must be positive");
  };
  positive("evolve.dt", s.dt);
  positive("evolve.t_end", s.t_end);
  positive("grid.lx", s.lx);
  positive("grid.lv", s.lv);
  if (s.nx < 3) throw ValidationError("grid.nx", "need at least 3 nodes");
  if (s.nv < 2) throw ValidationError("grid.nv", "need at least 2 nodes");
  if (s.record_every == 0) throw ValidationError("evolve.record_every", "must be positive");
  if (s.v_quadrature != VelocityQuadrature::Uniform) {
    throw ValidationError("grid.v_quadrature", "the transport and macroscopic operators need a uniform velocity axis");
  }
  if (s.equilibrium == EquilibriumCase::Maxwellian) {
    positive("potential.k", s.potential_k);
    if (s.potential_C) positive("potential.C", *s.potential_C);
  } else {
    positive("potential.beta", s.potential_beta);
    if (!(s.fd_k > 1.5)) {
      std::ostringstream os;
      os << "k > d/2+1 = 1.5 required, got " << s.fd_k;
      throw ValidationError("fast_diffusion.k", os.str());
    }
  }
  if (s.eps && !(*s.eps > 0.0 && *s.eps < 1.0)) throw ValidationError("hypo.eps", "must lie in (0, 1)");
  if (s.a) positive("hypo.a", *s.a);
  if (s.lambda && !(*s.lambda >= 0.0)) throw ValidationError("hypo.lambda", "must be nonnegative");
  if (s.theta_grid.empty()) throw ValidationError("hypo.theta", "empty theta grid");
  for (double t : s.theta_grid) {
    if (!(t > 0.0 && t < 1.0)) throw ValidationError("hypo.theta", "theta must lie in (0, 1)");
  }
  if (s.c4_samples == 0) throw ValidationError("hypo.c4_samples", "must be positive");
  if (!(s.gap_safety > 0.0 && s.gap_safety <= 1.0)) throw ValidationError("hypo.gap_safety", "must lie in (0, 1]");
  if (!(s.amplitude >= 0.0)) throw ValidationError("initial.amplitude", "must be nonnegative");
  if (s.dump_snapshots && s.snapshot_every == 0) throw ValidationError("output.snapshot_every", "must be positive");
}

Scenario parse_scenario(std::istream& is, const std::string& name)
{
  Scenario s;
  s.name = name;
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::string> seen;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
    }
    if (seen.count(key)) {
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'", lineno);
    }
    if (value.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": missing value for '" + key + "'", lineno);
    }
    seen[key] = value;
  }
  // the case decides the defaults, so it is applied first
  if (seen.count("case")) setters().at("case")(s, "case", seen.at("case"));
  for (const auto& [key, value] : seen) {
    if (key != "case") setters().at(key)(s, key, value);
  }
  apply_defaults(s);
  validate(s);
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path.string(), 0);
  return parse_scenario(is, path.stem().string());
}

std::string to_config_text(const Scenario& s)
{
  std::ostringstream os;
  os.precision(15);
  os << "name = " << s.name << '\n' << "case = " << case_name(s.equilibrium) << '\n';
  if (s.equilibrium == EquilibriumCase::Maxwellian) {
    os << "potential.k = " << s.potential_k << '\n';
    if (s.solve_C) {
      os << "potential.C = solve\n";
    } else if (s.potential_C) {
      os << "potential.C = " << *s.potential_C << '\n';
    }
  } else {
    os << "potential.beta = " << s.potential_beta << '\n' << "fast_diffusion.k = " << s.fd_k << '\n';
  }
  os << "grid.nx = " << s.nx << '\n'
     << "grid.nv = " << s.nv << '\n'
     << "grid.lx = " << s.lx << '\n'
     << "grid.lv = " << s.lv << '\n'
     << "grid.v_quadrature = " << (s.v_quadrature == VelocityQuadrature::Uniform ? "uniform" : "gauss_hermite") << '\n'
     << "evolve.dt = " << s.dt << '\n'
     << "evolve.t_end = " << s.t_end << '\n'
     << "evolve.record_every = " << s.record_every << '\n'
     << "evolve.transport = " << (s.transport ? "true" : "false") << '\n';
  auto opt = [&](const char* key, const std::optional<double>& v) {
    os << key << " = ";
    if (v) {
      os << *v;
    } else {
      os << "auto";
    }
    os << '\n';
  };
  opt("hypo.eps", s.eps);
  opt("hypo.a", s.a);
  opt("hypo.lambda", s.lambda);
  os << "hypo.theta = ";
  for (std::size_t i = 0; i < s.theta_grid.size(); ++i) os << (i ? "," : "") << s.theta_grid[i];
  os << '\n'
     << "hypo.c4_samples = " << s.c4_samples << '\n'
     << "hypo.gap_safety = " << s.gap_safety << '\n'
     << "initial.preset = " << initial_name(s.initial) << '\n'
     << "initial.amplitude = " << s.amplitude << '\n'
     << "output.directory = " << s.output_directory.string() << '\n'
     << "output.dump_snapshots = " << (s.dump_snapshots ? "true" : "false") << '\n'
     << "output.snapshot_every = " << s.snapshot_every << '\n'
     << "seed = " << s.seed << '\n';
  return os.str();
}

const std::vector<PresetInfo>& preset_catalog()
{
  static const std::vector<PresetInfo> catalog{
      {"maxwellian_quadratic", "Gaussian equilibrium, V = x^2/2 + ln(2 pi)/2, density wave, dt = 0.01, t_end = 20"},
      {"maxwellian_power", "Maxwellian with V = C (1 + x^2)^{3/4}, C solved for unit mass"},
      {"fast_diffusion_default", "fast-diffusion equilibrium, beta = 1.2, k = 3, L_x = 12, L_v = 16"},
      {"relaxation_only", "transport disabled, odd velocity mode; |f - F|^2 decays at rate 2"},
  };
  return catalog;
}

Scenario preset(const std::string& name)
{
  Scenario s;
  s.name = name;
  if (name == "maxwellian_quadratic") {
    s.potential_k = 2.0;
    s.potential_C = 0.5;
  } else if (name == "maxwellian_power") {
    s.potential_k = 1.5;
    s.solve_C = true;
  } else if (name == "fast_diffusion_default") {
    s.equilibrium = EquilibriumCase::FastDiffusion;
    s.potential_beta = 1.2;
    s.fd_k = 3.0;
  } else if (name == "relaxation_only") {
    s.potential_k = 2.0;
    s.potential_C = 0.5;
    s.transport = false;
    s.t_end = 5.0;
    s.initial = InitialPreset::OddMode;
  } else {
    throw ValidationError("preset", "unknown preset '" + name + "'");
  }
  s.output_directory = std::filesystem::path("out") / name;
  apply_defaults(s);
  validate(s);
  return s;
}

std::string list_presets()
{
  std::ostringstream os;
  for (const PresetInfo& p : preset_catalog()) os << p.name << "  " << p.description << '\n';
  return os.str();
}

PhaseField initial_datum(const Scenario& s, const EquilibriumModel& model, const PhaseGrid& grid)
{
  const PhaseField& F = model.F_table();
  PhaseField f(grid);
  const double A = s.amplitude;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x().nodes[i];
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      const double v = grid.v().nodes[j];
      switch (s.initial) {
        case InitialPreset::DensityWave:
          f(i, j) = F(i, j) * (1.0 + A * std::sin(std::numbers::pi * x / grid.x().half_width));
          break;
        case InitialPreset::ShiftedMaxwellian: f(i, j) = model.F(x, v - A); break;
        case InitialPreset::OddMode: f(i, j) = F(i, j) * (1.0 + A * v); break;
      }
    }
  }
  for (double fi : f.values()) {
    if (!(fi > 0.0)) throw ValidationError("initial.amplitude", "initial datum is not positive at every node");
  }
  f *= 1.0 / total_mass(f, grid);
  return f;
}

namespace {

CheckResult check(std::string name, double measured, const char* relation, double bound)
{
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.relation = relation;
  c.bound = bound;
  const std::string r = relation;
  if (r == "<=") {
    c.passed = measured <= bound;
  } else if (r == ">=") {
    c.passed = measured >= bound;
  } else if (r == "<") {
    c.passed = measured < bound;
  } else {
    c.passed = measured > bound;
  }
  return c;
}

void write_report(const std::filesystem::path& dir, const Scenario& s, const RunSummary& r)
{
  std::ofstream os(dir / "report.txt");
  os.precision(10);
  os << "# scenario " << s.name << ", seed " << s.seed << '\n';
  if (!r.message.empty()) os << "ERROR " << r.message << '\n';
  for (const CheckResult& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.measured << ' ' << c.relation << ' ' << c.bound
       << '\n';
  }
}

struct Pointwise
{
  double theta = 0.5;
  double c0 = 0.0;
  double c1 = 0.0;
};

/// theta = 1/2 pointwise constants of V on the grid (used for the fast-diffusion ledger).
Pointwise pointwise_constants(const EquilibriumModel& model)
{
  Pointwise p;
  p.c0 = 1e-12;
  p.c1 = 1e-12;
  for (std::size_t i = 0; i < model.V().size(); ++i) {
    const double g = model.dV()[i];
    const double h = model.d2V()[i];
    p.c0 = std::max(p.c0, h - 0.5 * p.theta * g * g);
    p.c1 = std::max(p.c1, std::abs(h) / (1.0 + std::abs(g)));
  }
  return p;
}

}  // namespace

RunSummary run_scenario(const Scenario& s, RunMode mode)
{
  RunSummary summary;
  std::error_code ec;
  std::filesystem::create_directories(s.output_directory, ec);
  try {
    validate(s);
    const PhaseGrid grid(s.nx, s.lx, s.nv, s.lv, s.v_quadrature);
    const bool maxwellian = s.equilibrium == EquilibriumCase::Maxwellian;
    const EquilibriumModel model =
        maxwellian ? build_equilibrium(EquilibriumCase::Maxwellian,
                                       Potential::power_quadratic(0.5 * s.potential_k, s.potential_C.value_or(0.5)), 1,
                                       0.0, grid,
                                       s.solve_C ? NormalizationMode::SolveConstant : NormalizationMode::Offset)
                   : build_equilibrium(EquilibriumCase::FastDiffusion,
                                       Potential::power_quadratic(s.potential_beta, 1.0), 1, s.fd_k, grid);
    const ops::KineticOperators ops(model, grid);
    auto& checks = summary.checks;
    std::ostringstream extra;
    extra.precision(12);

    LedgerInputs in;
    if (maxwellian) {
      const HypothesisReport hyp = check_hypotheses(model, grid, s.theta_grid, s.gap_safety);
      for (std::size_t h = 0; h < 6; ++h) {
        checks.push_back(check("hypothesis_H" + std::to_string(h + 1), hyp.satisfied[h] ? 1.0 : 0.0, ">=", 1.0));
      }
      hyp.require();
      in = {hyp.Lambda / s.gap_safety, hyp.theta, hyp.c0, hyp.c1, 0.0};
      extra << "Lambda_H3 = " << hyp.Lambda << '\n'
            << "gradV_moment = " << hyp.gradV_moment << '\n'
            << "normalization_defect = " << hyp.normalization_defect << '\n';
    } else {
      const spectrum::GapReport hp = spectrum::hardy_poincare_constant(model, grid);
      const double q = model.q_exponent();
      const Pointwise pw = pointwise_constants(model);
      in = {(q - 1.0) * hp.Lambda / s.gap_safety, pw.theta, pw.c0, pw.c1, 0.0};
      const spectrum::WeightedHardyReport wh =
          spectrum::weighted_hardy_check(model, 1.0 - 1.0 / s.potential_beta, grid, 100, s.seed);
      checks.push_back(check("hardy_poincare_gap", 1.0 / hp.Lambda, ">", 1e-12));
      checks.push_back(check("weighted_hardy_beta0", wh.beta0, ">", s.potential_beta));
      extra << "Lambda_hardy_poincare = " << hp.Lambda << '\n'
            << "q = " << q << '\n'
            << "beta0_hat = " << wh.beta0 << '\n'
            << "normalization_defect = " << model.normalization_defect() << '\n';
    }

    const C4Estimate c4 = estimate_c4(ops, s.c4_samples, s.seed);
    in.c4 = c4.c4;
    extra << "c4_sup_estimate = " << c4.sup_estimate << '\n' << "c4_sample_max = " << c4.sample_max << '\n';

    ConstantsLedger ledger;
    if (s.eps && s.a) {
      ledger = constants_ledger(in.Lambda, in.theta, in.c0, in.c1, in.c4, *s.a, *s.eps);
    } else if (s.a) {
      ledger = optimize_epsilon(in, *s.a);
    } else if (s.eps) {
      ledger = optimize_epsilon(in);
      ledger = constants_ledger(in.Lambda, in.theta, in.c0, in.c1, in.c4, ledger.a, *s.eps);
    } else {
      ledger = optimize_epsilon(in);
    }
    summary.ledger = ledger;
    checks.push_back(check("ledger_lambda_positive", ledger.lambda, ">", 0.0));
    const double lambda = s.lambda.value_or(ledger.lambda);

    if (maxwellian) {
      const auto ip = spectrum::improved_poincare_check(model, ledger.kappa, grid, 100, s.seed);
      checks.push_back(check("improved_poincare_min_slack", ip.min_slack, ">=", -1e-8));
    }

    {
      std::ofstream os(s.output_directory / "constants.txt");
      os << "# scenario " << s.name << '\n' << "seed = " << s.seed << '\n' << to_text(ledger) << extra.str()
         << "lambda_used = " << lambda << '\n'
         << "truncation_radius = " << grid.x().half_width << '\n'
         << "resolution = " << grid.nx() << "x" << grid.nv() << '\n';
    }

    if (mode == RunMode::Full) {
      const PhaseField f0 = initial_datum(s, model, grid);
      RunOptions ro;
      ro.t_end = s.t_end;
      ro.dt = s.dt;
      ro.record_every = s.record_every;
      ro.eps = ledger.eps;
      ro.lambda = lambda;
      ro.transport = s.transport;
      ro.snapshot_every = s.dump_snapshots ? s.snapshot_every : 0;
      const Trajectory tr = run(f0, ro, ops);
      {
        std::ofstream os(s.output_directory / "trajectory.csv");
        io::write_trajectory_csv(os, tr.reports);
      }
      if (s.dump_snapshots) {
        const auto dir = s.output_directory / "snapshots";
        std::filesystem::create_directories(dir);
        for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
          std::ostringstream name;
          name << "f_" << k << ".bin";
          io::write_binary(dir / name.str(), tr.snapshots[k].f, grid);
        }
      }

      const double n0 = tr.reports.front().norm2;
      checks.push_back(check("mass_drift", tr.max_mass_drift(), "<=", 1e-9));
      checks.push_back(check("norm_monotone_increase", tr.max_norm_increase(), "<=", 1e-8));
      const GronwallReport gr = check_gronwall(tr.reports, lambda);
      checks.push_back(check("dissipation_sign", gr.max_D, "<=", 1e-8 * n0));
      checks.push_back(check("gronwall_max_slack", gr.max_slack, "<=", gr.tolerance));
      if (s.transport && s.record_every == 1) {
        checks.push_back(
            check("hd_consistency", hd_consistency_defect(tr.reports), "<=", (1e-6 + 10.0 * tr.dt * tr.dt) * n0));
      }

      double envelope = 0.0;
      for (const HypoReport& r : tr.reports) {
        if (n0 > 0.0) envelope = std::max(envelope, r.norm2 * std::exp(lambda * r.t) / n0);
      }
      if (maxwellian) {
        checks.push_back(check("decay_envelope", envelope, "<=", (1.0 + ledger.eta) * (1.0 + 1e-3)));
      } else {
        checks.push_back(check("decay_envelope_constant", envelope, "<", std::numeric_limits<double>::infinity()));
      }
      const DecayFit fit = fit_decay_rate(tr.reports, 0.25 * s.t_end, s.t_end);
      checks.push_back(check("decay_rate", fit.rate, ">=", lambda));
      if (!s.transport) {
        checks.push_back(check("relaxation_rate_defect", std::abs(fit.rate - 2.0), "<=", 1e-3));
      }
      std::ofstream os(s.output_directory / "constants.txt", std::ios::app);
      os.precision(12);
      os << "lambda_obs = " << fit.rate << '\n'
         << "fit_r_squared = " << fit.r_squared << '\n'
         << "envelope_constant = " << envelope << '\n'
         << "dt = " << tr.dt << '\n';
    }
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    summary.exit_code = ok ? 0 : 1;
  } catch (const HypothesisFailed& e) {
    summary.exit_code = 1;
    summary.message = e.what();
  } catch (const Error& e) {
    summary.exit_code = 2;
    summary.message = e.what();
  } catch (const std::invalid_argument& e) {
    summary.exit_code = 2;
    summary.message = e.what();
  }
  if (!ec) write_report(s.output_directory, s, summary);
  return summary;
}

int run_batch(const std::filesystem::path& dir, const std::filesystem::path& output_root,
              std::optional<std::uint64_t> seed)
{
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::future<int>> jobs;
  for (const auto& file : files) {
    jobs.push_back(std::async(std::launch::async, [file, output_root, seed] {
      try {
        Scenario s = parse_scenario(file);
        s.output_directory = output_root / file.stem();
        if (seed) s.seed = *seed;
        return run_scenario(s).exit_code;
      } catch (const Error&) {
        return 2;
      }
    }));
  }
  int worst = 0;
  for (auto& j : jobs) worst = std::max(worst, j.get());
  return worst;
}

}  // namespace hypokinetic
