#include "hypokinetic/evolve.hpp"
#include "hypokinetic/hypo.hpp"
#include "hypokinetic/random_fields.hpp"
#include "hypokinetic/scenario.hpp"
#include "hypokinetic/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

using namespace hypokinetic;
using ops::KineticOperators;

namespace {

struct Outcome
{
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body)
{
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.passed && secs < time_limit;
  if (!ok) ++failures;
  std::ostringstream time;
  time << std::fixed << std::setprecision(2) << secs << " s";
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " " << title << ": " << o.detail << " [" << time.str()
            << " < " << time_limit << " s]" << std::endl;
}

std::string str(double x)
{
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

const CheckResult& find_check(const RunSummary& r, const std::string& name)
{
  for (const CheckResult& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name);
}

std::filesystem::path scratch(const std::string& name)
{
  return std::filesystem::temp_directory_path() / ("hypokinetic_acceptance_" + name);
}

struct Maxwell
{
  PhaseGrid grid{257, 8.0, 64, 8.0};
  EquilibriumModel model = build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, grid);
  KineticOperators ops{model, grid};
};

struct FastDiffusion
{
  PhaseGrid grid{385, 12.0, 128, 16.0};
  EquilibriumModel model =
      build_equilibrium(EquilibriumCase::FastDiffusion, Potential::power_quadratic(1.2, 1.0), 1, 3.0, grid);
  KineticOperators ops{model, grid};
};

}  // namespace

int main()
{
  const Maxwell mx;
  RunSummary quadratic;
  RunSummary fast_run;

  criterion(1, "relaxation-only rate 2", 5.0, [] {
    Scenario s = preset("relaxation_only");
    s.output_directory = scratch("relaxation_only");
    const PhaseGrid grid(s.nx, s.lx, s.nv, s.lv);
    const EquilibriumModel model = build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, grid);
    const KineticOperators ops(model, grid);
    RunOptions opt;
    opt.t_end = s.t_end;
    opt.dt = s.dt;
    opt.transport = false;
    const Trajectory tr = run(initial_datum(s, model, grid), opt, ops);
    const DecayFit fit = fit_decay_rate(tr.reports, 0.0, s.t_end);
    return Outcome{std::abs(fit.rate - 2.0) <= 1e-3, "fitted rate " + str(fit.rate) + ", |rate - 2| <= 1e-3"};
  });

  criterion(2, "Gaussian Poincare gap", 1.0, [&] {
    const spectrum::GapReport r = spectrum::poincare_constant(spectrum::boltzmann_problem(mx.model), mx.grid);
    const double err = std::abs(r.Lambda - 1.0);
    return Outcome{err <= 1e-3, "Lambda " + str(r.Lambda) + ", relative error " + str(err) + " <= 1e-3"};
  });

  criterion(3, "key operator estimate, both cases", 30.0, [&] {
    const FastDiffusion fd;
    double worst = 1.0;
    for (const KineticOperators* op : {&mx.ops, &fd.ops}) {
      std::mt19937_64 rng(2024);
      for (int k = 0; k < 100; ++k) {
        const PhaseField f = random_phase_field(op->model(), op->grid(), rng);
        worst = std::min(worst, check_operator_estimate(*op, f) / op->norm2(f));
      }
    }
    return Outcome{worst >= -1e-6, "min slack / |f|^2 over 200 fields " + str(worst) + " >= -1e-6"};
  });

  criterion(4, "macroscopic coercivity", 30.0, [&] {
    const spectrum::GapReport r = spectrum::poincare_constant(spectrum::macroscopic_problem(mx.model), mx.grid);
    const double gap = 0.99 * r.mu1;
    std::mt19937_64 rng(4048);
    double worst = 1.0;
    for (int k = 0; k < 100; ++k) {
      const PhaseField f = random_perturbation(mx.model, mx.grid, rng);
      worst = std::min(worst, macroscopic_coercivity_slack(mx.ops, f, gap) / mx.ops.norm2(f));
    }
    return Outcome{worst >= -1e-6, "gap " + str(gap) + ", min slack / |f|^2 " + str(worst) + " >= -1e-6"};
  });

  criterion(5, "Gronwall inequality on maxwellian_quadratic", 60.0, [&] {
    Scenario s = preset("maxwellian_quadratic");
    s.output_directory = scratch("maxwellian_quadratic");
    quadratic = run_scenario(s);
    const CheckResult& c = find_check(quadratic, "gronwall_max_slack");
    return Outcome{c.passed && quadratic.ledger.feasible,
                   "eps* " + str(quadratic.ledger.eps) + ", lambda " + str(quadratic.ledger.lambda) +
                       ", max (D + lambda H) " + str(c.measured) + " <= " + str(c.bound)};
  });

  criterion(6, "Maxwellian decay envelope and rate", 60.0, [&] {
    const CheckResult& env = find_check(quadratic, "decay_envelope");
    const CheckResult& rate = find_check(quadratic, "decay_rate");
    return Outcome{env.passed && rate.passed, "max ratio to e^{-lambda t} " + str(env.measured) + " <= (1 + eta)(1 + 1e-3) = " +
                                                  str(env.bound) + ", lambda_obs " + str(rate.measured) +
                                                  " >= " + str(rate.bound)};
  });

  criterion(7, "fast-diffusion exponential decay", 120.0, [&] {
    Scenario s = preset("fast_diffusion_default");
    s.output_directory = scratch("fast_diffusion_default");
    fast_run = run_scenario(s);
    const CheckResult& rate = find_check(fast_run, "decay_rate");
    const CheckResult& env = find_check(fast_run, "decay_envelope_constant");
    return Outcome{fast_run.exit_code == 0 && rate.passed && env.passed,
                   "ledger Lambda " + str(fast_run.ledger.Lambda) + ", lambda_obs " + str(rate.measured) +
                       " >= ledger lambda " + str(rate.bound) + ", envelope C " + str(env.measured)};
  });

  criterion(8, "dual-norm coefficient 2 e^{-V}", 5.0, [&] {
    const SpatialField c = mx.ops.dual_norm_coefficient();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double e = 2.0 * std::exp(-mx.model.V()[i]);
      worst = std::max(worst, std::abs(c[i] - e) / e);
    }
    return Outcome{worst <= 1e-8, "max relative deviation " + str(worst) + " <= 1e-8"};
  });

  criterion(9, "improved Poincare with ledger kappa", 10.0, [&] {
    const HypothesisReport h = check_hypotheses(mx.model, mx.grid);
    const spectrum::ImprovedPoincareReport r = spectrum::improved_poincare_check(mx.model, h.kappa, mx.grid, 100);
    return Outcome{r.passed && r.samples == 100 && r.min_slack >= -1e-8,
                   "kappa " + str(h.kappa) + ", min slack " + str(r.min_slack) + " >= -1e-8"};
  });

  criterion(10, "structural identities", 60.0, [&] {
    bool ok = true;
    std::ostringstream d;
    double drift = 0.0, increase = 0.0;
    for (const RunSummary* r : {&quadratic, &fast_run}) {
      drift = std::max(drift, find_check(*r, "mass_drift").measured);
      increase = std::max(increase, find_check(*r, "norm_monotone_increase").measured);
      ok = ok && find_check(*r, "hd_consistency").passed;
    }
    ok = ok && drift <= 1e-9 && increase <= 1e-8;
    d << "mass drift " << str(drift) << ", norm increase " << str(increase);

    // the H-D defect is the splitting error of the time stepper: second order in dt
    Scenario s = preset("maxwellian_quadratic");
    const PhaseField f0 = initial_datum(s, mx.model, mx.grid);
    auto defect = [&](double dt) {
      RunOptions opt;
      opt.t_end = 2.0;
      opt.dt = dt;
      opt.eps = quadratic.ledger.eps;
      opt.lambda = quadratic.ledger.lambda;
      const Trajectory tr = run(f0, opt, mx.ops);
      return hd_consistency_defect(tr.reports) / tr.reports.front().norm2;
    };
    const double d1 = defect(0.02);
    const double d2 = defect(0.01);
    const double order = std::log2(d1 / d2);
    ok = ok && d2 <= 1e-6 + 10.0 * 0.01 * 0.01 && order >= 1.8;
    d << ", relative H-D defect " << str(d2) << " (order " << str(order) << ")";

    std::mt19937_64 rng(99);
    double adj = 0.0;
    for (int k = 0; k < 20; ++k) {
      const PhaseField f = random_phase_field(mx.model, mx.grid, rng);
      const PhaseField g = random_phase_field(mx.model, mx.grid, rng);
      const double a = mx.ops.inner(mx.ops.apply_A(f), g) - mx.ops.inner(f, mx.ops.apply_A_star(g));
      adj = std::max(adj, std::abs(a) / std::sqrt(mx.ops.norm2(f) * mx.ops.norm2(g)));
    }
    ok = ok && adj <= 1e-8;
    d << ", adjoint defect " << str(adj);
    return Outcome{ok, d.str()};
  });

  criterion(11, "Strang splitting order", 60.0, [&] {
    Scenario s = preset("maxwellian_quadratic");
    const PhaseField f0 = initial_datum(s, mx.model, mx.grid);
    auto advance = [&](double dt) {
      PhaseField f = f0;
      const int n = static_cast<int>(std::lround(1.0 / dt));
      for (int k = 0; k < n; ++k) f = step_strang(f, dt, mx.ops);
      return f;
    };
    const PhaseField a = advance(0.04);
    const PhaseField b = advance(0.02);
    const PhaseField c = advance(0.01);
    const double order = std::log2(std::sqrt(mx.ops.norm2(a - b) / mx.ops.norm2(b - c)));
    return Outcome{order >= 1.9, "Richardson order " + str(order) + " >= 1.9"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
