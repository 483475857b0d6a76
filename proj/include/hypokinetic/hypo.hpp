#pragma once

#include "hypokinetic/ops.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypokinetic {

/// Observables of one state, evaluated at the recentered field g = f - F.
struct HypoReport
{
  double t = 0.0;
  double norm2 = 0.0;
  double pi_norm2 = 0.0;
  double perp_norm2 = 0.0;
  double H = 0.0;
  double D_total = 0.0;
  /// <g,Lg>, -eps<ATPi g,g>, -eps<AT(1-Pi)g,g>, eps<TAg,g>, eps<Lg,(A+A*)g>
  std::array<double, 5> D_terms{};
  double gronwall_slack = 0.0;
};

struct Dissipation
{
  double total = 0.0;
  std::array<double, 5> terms{};
};

/// H(g) = |g|^2 / 2 + eps <A g, g>
double lyapunov_H(const ops::KineticOperators& ops, const PhaseField& g, double eps);

/// The five-term dissipation D(g) = dH/dt along solutions of g_t + T g = L g.
/// AT is applied as the composition A(T(.)), so D is exactly the derivative of H
/// for the semi-discrete system.
Dissipation dissipation_D(const ops::KineticOperators& ops, const PhaseField& g, double eps);

/// All observables at g, with gronwall_slack = D + lambda H.
HypoReport observe(const ops::KineticOperators& ops, const PhaseField& g, double eps, double lambda,
                   double t = 0.0);

/// |(1 - Pi) g|^2 - 2 |A g|^2 - |T A g|^2
double check_operator_estimate(const ops::KineticOperators& ops, const PhaseField& g);

/// <A T Pi g, g> - gap / (1 + gap) |Pi g|^2
double macroscopic_coercivity_slack(const ops::KineticOperators& ops, const PhaseField& g, double gap);

/// The constant chain of the decay estimate.
///
/// Lambda is the Poincare constant (|u|^2 <= Lambda |u'|^2); the macroscopic
/// gap entering lambda2 and the admissibility bound on a is 1 / Lambda.
struct ConstantsLedger
{
  double Lambda = 0.0;
  double theta = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double kappa = 0.0;
  double a = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
  double eps = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  bool feasible = false;

  double gap() const noexcept { return 1.0 / Lambda; }
  /// 1/2 (1 + 1/gap): a must exceed this
  double a_min() const noexcept { return 0.5 * (1.0 + Lambda); }
};

/// Evaluates the chain without throwing; `feasible` is lambda1 > 0 and lambda2 > 0.
ConstantsLedger evaluate_ledger(double Lambda, double theta, double c0, double c1, double c4,
                                double a, double eps);

/// Same, throwing Infeasible naming the violated inequality.
ConstantsLedger constants_ledger(double Lambda, double theta, double c0, double c1, double c4,
                                 double a, double eps);

/// key = value lines
std::string to_text(const ConstantsLedger& ledger);

struct C4Estimate
{
  double c4 = 0.0;          ///< safety * max(sup_estimate, sample_max)
  double sup_estimate = 0.0;  ///< power iteration on the dual-norm quadratic form
  double sample_max = 0.0;
  std::size_t samples = 0;
};

inline constexpr double kC4Safety = 1.1;

/// sup_f |(A T (1 - Pi))^* f|^2 / |f|^2.  The closed form depends on f through
/// rho(f) only and |f| >= |Pi f|, so the sup is a generalized eigenvalue in x;
/// it is found by power iteration, and checked against random samples.
C4Estimate estimate_c4(const ops::KineticOperators& ops, std::size_t num_samples,
                       std::uint64_t seed = 3);

struct LedgerInputs
{
  double Lambda = 1.0;
  double theta = 0.5;
  double c0 = 1.0;
  double c1 = 1.0;
  double c4 = 1.0;
};

/// Maximizes min(lambda1, lambda2) over eps in (0, 1) by golden section, and over
/// a on a log grid above a_min.  Throws Infeasible if no (a, eps) gives lambda > 0.
ConstantsLedger optimize_epsilon(const LedgerInputs& in);
/// Same with a held fixed.
ConstantsLedger optimize_epsilon(const LedgerInputs& in, double a);

struct GronwallReport
{
  double lambda = 0.0;
  double tolerance = 0.0;
  double max_slack = 0.0;
  double worst_t = 0.0;
  double max_D = 0.0;  ///< max over steps of D (dissipation sign check)
  std::size_t steps = 0;
  bool passed = false;
};

/// Slack D + lambda H at every report; pass iff every slack <= 1e-6 norm2(0).
GronwallReport check_gronwall(const std::vector<HypoReport>& reports, double lambda);

struct DecayFit
{
  double rate = 0.0;  ///< minus the slope of log(norm2) against t
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log(norm2) over t in [t0, t1] on samples with
/// norm2 > 1e-25.  Throws DegenerateWindow with fewer than 10.
DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& norm2, double t0,
                        double t1);
DecayFit fit_decay_rate(const std::vector<HypoReport>& reports, double t0, double t1);

/// max over interior reports of |(H_{n+1} - H_{n-1}) / (t_{n+1} - t_{n-1}) - D_n|
double hd_consistency_defect(const std::vector<HypoReport>& reports);

}  // namespace hypokinetic
