#pragma once

#include "hypokinetic/grid.hpp"
#include "hypokinetic/model.hpp"

#include <cstdint>
#include <iosfwd>

namespace hypokinetic::spectrum {

/// Weighted Poincare problem: the best Lambda in
///   sum w_num |u - <u>|^2 <= Lambda sum w_grad |u'|^2.
struct GapProblem
{
  SpatialField weight_num;
  SpatialField weight_grad;
};

/// (e^{-V}, e^{-V}) for the Maxwellian case.
GapProblem boltzmann_problem(const EquilibriumModel& model);
/// (w_0^2, w_1^2) with w_p^2 = omega0 V^{p-q}: the Hardy-Poincare weights.
GapProblem hardy_poincare_problem(const EquilibriumModel& model);
/// (rho_F, m_F / d): the weights of the macroscopic elliptic operator.
GapProblem macroscopic_problem(const EquilibriumModel& model);

struct GapReport
{
  double Lambda = 0.0;  ///< 1 / mu1
  double mu1 = 0.0;
  double residual = 0.0;  ///< ||K u - mu1 M u|| / ||mu1 M u||
  double mean = 0.0;      ///< sum w_x w_num u for the returned eigenfunction
  double truncation_radius = 0.0;
  std::size_t resolution = 0;
  SpatialField eigenfunction;  ///< normalized in the w_num norm
};

/// Smallest nonzero eigenvalue of the conservative pencil
///   -(w_grad u')' = mu w_num u
/// (same differencing as the macroscopic elliptic solver).  mu1 is located by
/// Sturm bisection, the eigenfunction by shift-invert iteration with the
/// constant mode deflated.  Throws NoGap if mu1 <= 1e-12.
GapReport poincare_constant(const GapProblem& problem, const PhaseGrid& grid);
GapReport poincare_constant(const GapProblem& problem, const Axis& x);

/// Fast-diffusion case only.
GapReport hardy_poincare_constant(const EquilibriumModel& model, const PhaseGrid& grid);

/// sum_half h w_grad (Du)^2 / sum w_x w_num |u - <u>|^2
double rayleigh_quotient(const GapProblem& problem, const Axis& x, const SpatialField& u);

void write_gap_report(std::ostream& os, const GapReport& report);

struct ImprovedPoincareReport
{
  double kappa = 0.0;
  double min_slack = 0.0;  ///< min over samples of ||u'||^2 - kappa ||V' u||^2, unit ||u||
  double min_ratio = 0.0;  ///< min over samples of ||u'||^2 / ||V' u||^2
  std::size_t samples = 0;
  bool passed = false;
};

/// Checks  kappa ||V' u||^2 <= ||u'||^2  (norms in L^2(e^{-V})) on seeded random
/// smooth functions projected to mean zero.  Pass iff the min slack >= -1e-8.
ImprovedPoincareReport improved_poincare_check(const EquilibriumModel& model, double kappa,
                                               const PhaseGrid& grid, std::size_t num_samples,
                                               std::uint64_t seed = 7);

struct WeightedHardyReport
{
  double alpha = 0.0;
  double beta = 0.0;
  /// best constant C in  Var_left(u) <= C sum w_right |u'|^2
  double constant = 0.0;          ///< from the eigenproblem on the grid
  double sample_constant = 0.0;   ///< sup of the ratio over the samples
  double beta0 = 0.0;             ///< 1 + 1 / (2 sqrt(constant))
  double sample_beta0 = 0.0;      ///< same from sample_constant
  std::size_t samples = 0;
  bool beta_below_beta0 = false;
};

/// Fast-diffusion case with V = (1 + x^2)^beta: the Hardy-Poincare inequality with
/// left weight V^{alpha+1-q-1/beta} and right weight V^{alpha+1-q}.
WeightedHardyReport weighted_hardy_check(const EquilibriumModel& model, double alpha,
                                         const PhaseGrid& grid, std::size_t num_samples,
                                         std::uint64_t seed = 11);

}  // namespace hypokinetic::spectrum
