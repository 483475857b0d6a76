#include "hypokinetic/errors.hpp"
#include "hypokinetic/random_fields.hpp"
#include "hypokinetic/spectrum.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace hypokinetic;
using namespace hypokinetic::spectrum;

namespace {

const PhaseGrid& maxwell_grid()
{
  static const PhaseGrid g(257, 8.0, 64, 8.0);
  return g;
}

const EquilibriumModel& gaussian_model()
{
  static const EquilibriumModel m =
      build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, maxwell_grid());
  return m;
}

const PhaseGrid& fd_grid()
{
  static const PhaseGrid g(385, 12.0, 128, 16.0);
  return g;
}

const EquilibriumModel& fd_model()
{
  static const EquilibriumModel m =
      build_equilibrium(EquilibriumCase::FastDiffusion, Potential::power_quadratic(1.2, 1.0), 1, 3.0, fd_grid());
  return m;
}

SpatialField identity(const Axis& x)
{
  return SpatialField(x.nodes);
}

}  // namespace

TEST_CASE("Gaussian gap: Lambda = 1, eigenfunction u = x, residual and mean")
{
  const GapReport r = poincare_constant(boltzmann_problem(gaussian_model()), maxwell_grid());
  CHECK(r.Lambda == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.residual <= 1e-8);
  CHECK(std::abs(r.mean) <= 1e-10);
  CHECK(r.resolution == 257);
  CHECK(r.truncation_radius == 8.0);
  const Axis& x = maxwell_grid().x();
  // the eigenfunction is odd and proportional to x near the centre
  const double s = r.eigenfunction[160] / x.nodes[160];
  for (std::size_t i = 96; i <= 160; i += 8) {
    if (i == 128) continue;
    CHECK(r.eigenfunction[i] == doctest::Approx(s * x.nodes[i]).epsilon(1e-3));
  }
  CHECK(rayleigh_quotient(boltzmann_problem(gaussian_model()), x, identity(x)) == doctest::Approx(1.0).epsilon(1e-3));

  std::ostringstream os;
  write_gap_report(os, r);
  CHECK(os.str().find("Lambda = ") != std::string::npos);
  CHECK(os.str().find("residual = ") != std::string::npos);
}

TEST_CASE("gap: dense generalized eigenvalue oracle")
{
  const PhaseGrid g(41, 5.0, 8, 6.0);
  const EquilibriumModel m =
      build_equilibrium(EquilibriumCase::Maxwellian, Potential::power_quadratic(0.75, 1.0), 1, 0.0, g);
  const GapProblem p = boltzmann_problem(m);
  const Axis& x = g.x();
  const std::size_t n = x.size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x.nodes[i + 1] - x.nodes[i];
    const double w = 0.5 * (p.weight_grad[i] + p.weight_grad[i + 1]) / h;
    K(i, i) += w;
    K(i + 1, i + 1) += w;
    K(i, i + 1) -= w;
    K(i + 1, i) -= w;
  }
  for (std::size_t i = 0; i < n; ++i) M(i, i) = x.weights[i] * p.weight_num[i];
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  const double mu1 = es.eigenvalues()(1);
  const GapReport r = poincare_constant(p, x);
  CHECK(r.mu1 == doctest::Approx(mu1).epsilon(1e-9));
}

TEST_CASE("gap: invariance under scaling of both weights and refinement stability")
{
  const GapProblem p = boltzmann_problem(gaussian_model());
  GapProblem q = p;
  for (double& w : q.weight_num.values()) w *= 7.5;
  for (double& w : q.weight_grad.values()) w *= 7.5;
  const double L = poincare_constant(p, maxwell_grid()).Lambda;
  CHECK(poincare_constant(q, maxwell_grid()).Lambda == doctest::Approx(L).epsilon(1e-12));

  const PhaseGrid fine(513, 8.0, 64, 8.0);
  const EquilibriumModel mf = build_equilibrium(EquilibriumCase::Maxwellian, Potential::gaussian(), 1, 0.0, fine);
  CHECK(poincare_constant(boltzmann_problem(mf), fine).Lambda == doctest::Approx(L).epsilon(1e-3));
}

TEST_CASE("gap: variational upper bound on random samples")
{
  const GapProblem p = boltzmann_problem(gaussian_model());
  const GapReport r = poincare_constant(p, maxwell_grid());
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const SpatialField u = random_smooth_function(maxwell_grid().x(), rng);
    CHECK(rayleigh_quotient(p, maxwell_grid().x(), u) >= r.mu1 - 1e-10);
  }
}

TEST_CASE("gap: a flat weight pair without confinement has no gap")
{
  const Axis x = make_node_axis(65, 4.0);
  GapProblem p{SpatialField(x.size(), 1.0), SpatialField(x.size(), 1e-16)};
  CHECK_THROWS_AS(poincare_constant(p, x), NoGap);
}

TEST_CASE("Hardy-Poincare: finite, bounded below by the u = x quotient, monotone in the radius")
{
  const GapReport r = hardy_poincare_constant(fd_model(), fd_grid());
  CHECK(std::isfinite(r.Lambda));
  CHECK(r.Lambda > 0.0);
  CHECK(r.residual <= 1e-8);
  CHECK(std::abs(r.mean) <= 1e-10);
  const GapProblem p = hardy_poincare_problem(fd_model());
  const double rq = rayleigh_quotient(p, fd_grid().x(), identity(fd_grid().x()));
  CHECK(r.Lambda >= 1.0 / rq - 1e-12);
  CHECK_THROWS_AS(hardy_poincare_constant(gaussian_model(), maxwell_grid()), std::invalid_argument);

  const PhaseGrid small(257, 8.0, 128, 16.0);
  const EquilibriumModel ms =
      build_equilibrium(EquilibriumCase::FastDiffusion, Potential::power_quadratic(1.2, 1.0), 1, 3.0, small);
  const double Ls = hardy_poincare_constant(ms, small).Lambda;
  MESSAGE("Hardy-Poincare Lambda at radius 8: " << Ls << ", radius 12: " << r.Lambda);
  CHECK(r.Lambda >= Ls * (1.0 - 1e-3));
}

TEST_CASE("macroscopic problem of the Maxwellian coincides with the Boltzmann problem")
{
  const GapProblem a = boltzmann_problem(gaussian_model());
  const GapProblem b = macroscopic_problem(gaussian_model());
  for (std::size_t i = 0; i < a.weight_num.size(); i += 16) {
    CHECK(b.weight_num[i] == doctest::Approx(a.weight_num[i]).epsilon(1e-8));
    CHECK(b.weight_grad[i] == doctest::Approx(a.weight_grad[i]).epsilon(1e-8));
  }
}

TEST_CASE("improved Poincare: ledger kappa passes, kappa above 1/3 fails on u = x")
{
  const ImprovedPoincareReport r = improved_poincare_check(gaussian_model(), 1.0 / 12.0, maxwell_grid(), 100);
  CHECK(r.passed);
  CHECK(r.samples == 100);
  CHECK(r.min_slack >= -1e-8);
  const ImprovedPoincareReport bad = improved_poincare_check(gaussian_model(), 0.4, maxwell_grid(), 10);
  CHECK_FALSE(bad.passed);
  // u = x: |u'|^2 = 1 and |V' u|^2 = 3, so the ratio of sample 0 is 1/3
  CHECK(bad.min_ratio <= 1.0 / 3.0 + 1e-3);
}

TEST_CASE("weighted Hardy: empirical beta0 exceeds one and beta; resampling stability")
{
  const double alpha = 1.0 - 1.0 / 1.2;
  const WeightedHardyReport r = weighted_hardy_check(fd_model(), alpha, fd_grid(), 50);
  MESSAGE("constant " << r.constant << ", beta0 " << r.beta0 << ", sample beta0 " << r.sample_beta0);
  CHECK(r.beta0 > 1.0);
  CHECK(r.sample_beta0 >= r.beta0 - 1e-9);
  CHECK(r.sample_constant <= r.constant * (1.0 + 1e-9));
  CHECK(r.beta_below_beta0);
  const WeightedHardyReport r2 = weighted_hardy_check(fd_model(), alpha, fd_grid(), 100);
  CHECK(r2.sample_beta0 == doctest::Approx(r.sample_beta0).epsilon(5e-2));
}
