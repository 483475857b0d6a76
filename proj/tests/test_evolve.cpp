#include "hypokinetic/errors.hpp"
#include "hypokinetic/evolve.hpp"
#include "hypokinetic/random_fields.hpp"

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

  Setup(std::size_t nx, std::size_t nv)
      : grid(nx, 6.0, nv, 6.0)
      , model(build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, grid))
      , ops(model, grid)
  {
  }
};

const Setup& small()
{
  static const Setup s(65, 32);
  return s;
}

PhaseField perturbed(const Setup& s, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  PhaseField f = random_perturbation(s.model, s.grid, rng);
  const double scale = 0.1 / std::sqrt(s.ops.norm2(f));
  for (double& x : f.values()) x *= scale;
  return s.model.F_table() + f;
}

}  // namespace

TEST_CASE("relax_step is the exact flow of L")
{
  const Setup& s = small();
  const PhaseField f = perturbed(s, 1);
  const PhaseField g = relax_step(f, 0.3, s.ops);
  const PhaseField pf = s.ops.apply_Pi(f);
  const PhaseField expected = pf + std::exp(-0.3) * (f - pf);
  for (std::size_t a = 0; a < f.size(); ++a) CHECK(g[a] == doctest::Approx(expected[a]).epsilon(1e-14));
  const PhaseField twice = relax_step(relax_step(f, 0.15, s.ops), 0.15, s.ops);
  for (std::size_t a = 0; a < f.size(); a += 7) CHECK(twice[a] == doctest::Approx(g[a]).epsilon(1e-13));
  CHECK(total_mass(g, s.grid) == doctest::Approx(total_mass(f, s.grid)).epsilon(1e-14));
}

TEST_CASE("transport step: conserves mass, contracts, fixes F, rejects CFL violations")
{
  const Setup& s = small();
  const double cfl = s.ops.cfl_bound();
  const PhaseField f = perturbed(s, 2);
  const PhaseField g = transport_step(f, 0.9 * cfl, s.ops);
  CHECK(std::abs(total_mass(g, s.grid) - total_mass(f, s.grid)) <= 1e-13);
  const PhaseField& F = s.model.F_table();
  CHECK(s.ops.norm2(g - F) <= s.ops.norm2(f - F) * (1.0 + 1e-14));
  const PhaseField Fs = transport_step(F, 0.9 * cfl, s.ops);
  CHECK(std::sqrt(s.ops.norm2(Fs - F)) <= 1e-14);
  CHECK_THROWS_AS(transport_step(f, 1.5 * cfl, s.ops), CFLViolation);
  CHECK_NOTHROW(transport_flow(f, 10.0 * cfl, s.ops));
}

TEST_CASE("Strang step without transport equals the relaxation flow")
{
  const Setup& s = small();
  const PhaseField f = perturbed(s, 3);
  const PhaseField a = step_strang(f, 0.05, s.ops, false);
  const PhaseField b = relax_step(f, 0.05, s.ops);
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
}

TEST_CASE("Strang splitting is second order in time")
{
  const Setup& s = small();
  const PhaseField f0 = perturbed(s, 4);
  auto advance = [&](double dt) {
    PhaseField f = f0;
    const int n = static_cast<int>(std::lround(0.8 / dt));
    for (int k = 0; k < n; ++k) f = step_strang(f, dt, s.ops);
    return f;
  };
  const PhaseField a = advance(0.04);
  const PhaseField b = advance(0.02);
  const PhaseField c = advance(0.01);
  const double order = std::log2(std::sqrt(s.ops.norm2(a - b) / s.ops.norm2(b - c)));
  MESSAGE("splitting order " << order);
  CHECK(order >= 1.9);
}

TEST_CASE("run: relaxation only decays at rate 2, mass is conserved")
{
  const Setup& s = small();
  PhaseField f0 = s.model.F_table();
  for (std::size_t i = 0; i < s.grid.nx(); ++i) {
    for (std::size_t j = 0; j < s.grid.nv(); ++j) f0(i, j) += 0.1 * s.grid.v().nodes[j] * s.model.F_table()(i, j);
  }
  RunOptions opt;
  opt.t_end = 3.0;
  opt.dt = 0.07;
  opt.transport = false;
  const Trajectory tr = run(f0, opt, s.ops);
  CHECK(tr.dt * std::round(3.0 / tr.dt) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(tr.dt <= 0.07);
  CHECK(tr.times.back() == doctest::Approx(3.0));
  const DecayFit fit = fit_decay_rate(tr.reports, 0.0, 3.0);
  CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(tr.max_mass_drift() <= 1e-13);
  CHECK(tr.max_norm_increase() <= 0.0);
}

TEST_CASE("run: full dynamics with records and snapshots")
{
  const Setup& s = small();
  RunOptions opt;
  opt.t_end = 1.0;
  opt.dt = 0.05;
  opt.record_every = 4;
  opt.snapshot_every = 10;
  opt.eps = 0.1;
  opt.lambda = 0.05;
  const Trajectory tr = run(perturbed(s, 5), opt, s.ops);
  CHECK(tr.times.size() == 6);
  CHECK(tr.reports.size() == 6);
  CHECK(tr.mass.size() == 21);
  CHECK(tr.deviation.size() == 21);
  CHECK(tr.snapshots.size() == 3);
  CHECK(tr.max_mass_drift() <= 1e-12);
  CHECK(tr.max_norm_increase() <= 1e-12);
  for (const HypoReport& r : tr.reports) CHECK(r.gronwall_slack <= 1e-10);
}

TEST_CASE("run: non-finite data is reported with its step")
{
  const Setup& s = small();
  PhaseField f0 = s.model.F_table();
  f0(10, 10) = std::nan("");
  RunOptions opt;
  opt.t_end = 0.1;
  opt.dt = 0.05;
  CHECK_THROWS_AS(run(f0, opt, s.ops), NonFinite);
}
