#include "hypokinetic/errors.hpp"
#include "hypokinetic/hypo.hpp"
#include "hypokinetic/random_fields.hpp"
#include "hypokinetic/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace hypokinetic;
using ops::KineticOperators;

namespace {

struct Setup
{
  PhaseGrid grid;
  EquilibriumModel model;
  KineticOperators ops;

  explicit Setup(bool fast)
      : grid(fast ? PhaseGrid(385, 12.0, 128, 16.0) : PhaseGrid(257, 8.0, 64, 8.0))
      , model(fast ? build_equilibrium(EquilibriumCase::FastDiffusion, Potential::power_quadratic(1.2, 1.0), 1, 3.0, grid)
                   : build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, grid))
      , ops(model, grid)
  {
  }
};

const Setup& maxwell()
{
  static const Setup s(false);
  return s;
}

const Setup& fast()
{
  static const Setup s(true);
  return s;
}

}  // namespace

TEST_CASE("D is the exact derivative of H along the semi-discrete flow")
{
  for (const Setup* sp : {&maxwell(), &fast()}) {
    const Setup& s = *sp;
    std::mt19937_64 rng(31);
    for (int k = 0; k < 5; ++k) {
      const PhaseField g = random_perturbation(s.model, s.grid, rng);
      const double eps = 0.15;
      const PhaseField rhs = s.ops.apply_L(g) - s.ops.apply_T(g);
      // H is quadratic, so the central difference is exact up to rounding
      const double d = 1e-3;
      PhaseField gp = g;
      gp.axpy(d, rhs);
      PhaseField gm = g;
      gm.axpy(-d, rhs);
      const double dH = (lyapunov_H(s.ops, gp, eps) - lyapunov_H(s.ops, gm, eps)) / (2.0 * d);
      const Dissipation D = dissipation_D(s.ops, g, eps);
      CHECK(D.total == doctest::Approx(dH).epsilon(1e-8).scale(s.ops.norm2(g)));
      double sum = 0.0;
      for (double t : D.terms) sum += t;
      CHECK(sum == doctest::Approx(D.total).epsilon(1e-14));
      CHECK(D.terms[0] == doctest::Approx(-s.ops.norm2(s.ops.apply_perp(g))).epsilon(1e-12));
    }
  }
}

TEST_CASE("H is equivalent to the squared norm")
{
  const Setup& s = maxwell();
  std::mt19937_64 rng(1);
  const double eps = 0.3;
  for (int k = 0; k < 20; ++k) {
    const PhaseField g = random_perturbation(s.model, s.grid, rng);
    const double n = s.ops.norm2(g);
    const double H = lyapunov_H(s.ops, g, eps);
    CHECK(H >= 0.5 * (1.0 - eps) * n - 1e-14 * n);
    CHECK(H <= 0.5 * (1.0 + eps) * n + 1e-14 * n);
  }
}

TEST_CASE("observe reports consistent observables")
{
  const Setup& s = maxwell();
  std::mt19937_64 rng(8);
  const PhaseField g = random_perturbation(s.model, s.grid, rng);
  const HypoReport r = observe(s.ops, g, 0.1, 0.05, 2.5);
  CHECK(r.t == 2.5);
  CHECK(r.norm2 == doctest::Approx(r.pi_norm2 + r.perp_norm2).epsilon(1e-12));
  CHECK(r.gronwall_slack == doctest::Approx(r.D_total + 0.05 * r.H).epsilon(1e-14));
  CHECK(r.D_total < 0.0);
}

TEST_CASE("key estimate and macroscopic coercivity on 100 random perturbations")
{
  const Setup& s = maxwell();
  const double Lambda = spectrum::poincare_constant(spectrum::macroscopic_problem(s.model), s.grid).Lambda;
  const double gap = 0.99 / Lambda;
  std::mt19937_64 rng(13);
  double worst_key = 1.0, worst_coercive = 1.0;
  for (int k = 0; k < 100; ++k) {
    const PhaseField g = random_perturbation(s.model, s.grid, rng);
    const double n = s.ops.norm2(g);
    worst_key = std::min(worst_key, check_operator_estimate(s.ops, g) / n);
    worst_coercive = std::min(worst_coercive, macroscopic_coercivity_slack(s.ops, g, gap) / n);
  }
  CHECK(worst_key >= -1e-6);
  CHECK(worst_coercive >= -1e-6);
}

TEST_CASE("macroscopic coercivity fails for a gap well above the true one")
{
  const Setup& s = maxwell();
  // Pi g = x F is the slowest macroscopic mode, its ratio is exactly gap/(1+gap) with gap = 1
  PhaseField g(s.grid);
  for (std::size_t i = 0; i < s.grid.nx(); ++i) {
    for (std::size_t j = 0; j < s.grid.nv(); ++j) g(i, j) = s.grid.x().nodes[i] * s.model.F_table()(i, j);
  }
  CHECK(macroscopic_coercivity_slack(s.ops, g, 2.0) < -1e-3 * s.ops.norm2(g));
  CHECK(macroscopic_coercivity_slack(s.ops, g, 0.95) > 0.0);
}

TEST_CASE("constant chain: formulas, feasibility and optimization")
{
  const ConstantsLedger l = evaluate_ledger(1.0, 0.1, 1.0, 1.0, 2.0, 2.0, 0.1);
  CHECK(l.kappa == doctest::Approx(0.9 / 6.0));
  CHECK(l.c2 == doctest::Approx(0.2));
  CHECK(l.gap() == doctest::Approx(1.0));
  CHECK(l.a_min() == doctest::Approx(1.0));
  CHECK(l.lambda1 == doctest::Approx(1.0 - 0.5 * 0.2 * 2.0 - 0.25));
  CHECK(l.lambda2 == doctest::Approx(0.1 / 2.0 - 0.01 / 0.4));
  CHECK(l.lambda == doctest::Approx(std::min(l.lambda1, l.lambda2)));
  CHECK(l.eta == doctest::Approx(0.2 / 0.9));
  CHECK(l.feasible);
  CHECK(to_text(l).find("lambda = ") != std::string::npos);

  CHECK_THROWS_AS(constants_ledger(1.0, 0.1, 1.0, 1.0, 2.0, 0.9, 0.1), Infeasible);
  CHECK_THROWS_AS(constants_ledger(1.0, 0.1, 1.0, 1.0, 2.0, 2.0, 0.9), Infeasible);
  CHECK_FALSE(evaluate_ledger(1.0, 0.1, 1.0, 1.0, 2.0, 2.0, 0.9).feasible);

  LedgerInputs in;
  in.Lambda = 1.0 / 0.99;
  in.theta = 0.1;
  in.c4 = 2.2;
  const ConstantsLedger best = optimize_epsilon(in);
  CHECK(best.feasible);
  for (double a : {1.5, 2.0, 3.0, 5.0}) {
    const ConstantsLedger fixed = optimize_epsilon(in, a);
    CHECK(fixed.lambda <= best.lambda * (1.0 + 1e-6));
    for (double e : {0.5 * fixed.eps, 0.9 * fixed.eps, 1.1 * fixed.eps}) {
      CHECK(evaluate_ledger(in.Lambda, in.theta, in.c0, in.c1, in.c4, a, e).lambda <= fixed.lambda + 1e-9);
    }
  }
}

TEST_CASE("c4: power iteration bounds the samples")
{
  const Setup& s = maxwell();
  const C4Estimate c = estimate_c4(s.ops, 20);
  CHECK(c.samples == 20);
  CHECK(c.sup_estimate >= c.sample_max * (1.0 - 1e-9));
  CHECK(c.c4 == doctest::Approx(kC4Safety * std::max(c.sup_estimate, c.sample_max)));
  std::mt19937_64 rng(77);
  for (int k = 0; k < 10; ++k) {
    const PhaseField f = random_phase_field(s.model, s.grid, rng);
    CHECK(s.ops.dual_norm_AT_perp(f) <= c.c4 * s.ops.norm2(f));
  }
}

TEST_CASE("Gronwall, decay fit and H-D consistency on synthetic reports")
{
  std::vector<HypoReport> reports;
  std::vector<double> t, n2;
  for (int k = 0; k <= 100; ++k) {
    HypoReport r;
    r.t = 0.1 * k;
    r.norm2 = std::exp(-0.7 * r.t);
    r.H = 0.5 * r.norm2;
    r.D_total = -0.35 * r.norm2;
    reports.push_back(r);
    t.push_back(r.t);
    n2.push_back(r.norm2);
  }
  const DecayFit fit = fit_decay_rate(t, n2, 0.0, 10.0);
  CHECK(fit.rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.samples == 101);
  CHECK(fit_decay_rate(reports, 2.0, 5.0).rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS_AS(fit_decay_rate(t, n2, 0.0, 0.5), DegenerateWindow);

  CHECK(check_gronwall(reports, 0.7).passed);
  CHECK(check_gronwall(reports, 0.69).max_slack < 0.0);
  const GronwallReport bad = check_gronwall(reports, 0.8);
  CHECK_FALSE(bad.passed);
  CHECK(bad.worst_t == 0.0);
  CHECK(bad.max_D < 0.0);

  // dH/dt of 0.5 e^{-0.7 t} by central differences
  const double defect = hd_consistency_defect(reports);
  CHECK(defect <= 0.5 * 0.343 * 0.01 / 6.0);
  CHECK(defect > 0.0);
}
