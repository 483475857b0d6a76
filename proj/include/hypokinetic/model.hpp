#pragma once

#include "hypokinetic/grid.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hypokinetic {

/// External potential V(x) with its first two derivatives.
///
/// The PowerQuadratic family is V(x) = C (1 + x^2)^p + offset.  In the
/// Maxwellian case p = k/2; in the fast-diffusion case p = beta and C = 1.
class Potential
{
 public:
  enum class Family { PowerQuadratic, GeneralCallback };
  using Fn = std::function<double(double)>;

  static Potential power_quadratic(double power, double coefficient);
  /// x^2/2 + ln(2 pi)/2 up to the normalization offset, which build_equilibrium fixes.
  static Potential gaussian() { return power_quadratic(1.0, 0.5); }
  static Potential callback(Fn value, Fn gradient, Fn hessian);

  double value(double x) const;
  double gradient(double x) const;
  double hessian(double x) const;

  Family family() const noexcept { return family_; }
  double power() const noexcept { return power_; }
  double coefficient() const noexcept { return coefficient_; }
  double offset() const noexcept { return offset_; }

  Potential with_offset(double offset) const;
  Potential with_coefficient(double coefficient) const;

 private:
  Family family_ = Family::PowerQuadratic;
  double power_ = 1.0;
  double coefficient_ = 0.5;
  double offset_ = 0.0;
  Fn value_, gradient_, hessian_;
};

enum class EquilibriumCase { Maxwellian, FastDiffusion };

/// How the Maxwellian potential is normalized so that the integral of e^{-V} is one.
enum class NormalizationMode {
  Offset,         ///< keep C, add a constant to V
  SolveConstant,  ///< solve for C in C (1 + x^2)^p, no offset
};

/// Steady state F(x, v) tabulated on a phase grid, with its velocity moments.
/// Immutable after construction.
class EquilibriumModel
{
 public:
  EquilibriumCase equilibrium_case() const noexcept { return case_; }
  const Potential& potential() const noexcept { return potential_; }
  int dimension() const noexcept { return dim_; }
  /// Fast-diffusion exponent k in F = omega (|v|^2/2 + V)^{-(k+1)}.
  double k() const noexcept { return k_; }
  double omega() const noexcept { return omega_; }
  /// rho_F = omega0 V^{-q} in the fast-diffusion case.
  double omega0() const noexcept { return omega0_; }
  /// q = k + 1 - d/2 (fast diffusion only).
  double q_exponent() const noexcept { return k_ + 1.0 - 0.5 * dim_; }
  double truncation_radius() const noexcept { return truncation_radius_; }
  /// |sum w F - 1| on the grid.
  double normalization_defect() const noexcept { return normalization_defect_; }

  /// Analytic F(x, v).
  double F(double x, double v) const;
  /// Antiderivative of the energy profile: Psi(E) with dPsi/dE = F and Psi -> 0 as E -> infinity.
  double stream(double x, double v) const;

  const PhaseField& F_table() const noexcept { return F_; }
  const SpatialField& V() const noexcept { return V_; }
  const SpatialField& dV() const noexcept { return dV_; }
  const SpatialField& d2V() const noexcept { return d2V_; }
  const SpatialField& rho_F() const noexcept { return rho_F_; }
  const SpatialField& m_F() const noexcept { return m_F_; }
  const SpatialField& q_F() const noexcept { return q_F_; }

 private:
  friend EquilibriumModel build_equilibrium(EquilibriumCase, const Potential&, int, double,
                                            const PhaseGrid&, NormalizationMode);

  EquilibriumCase case_ = EquilibriumCase::Maxwellian;
  Potential potential_;
  int dim_ = 1;
  double k_ = 0.0;
  double omega_ = 1.0;
  double omega0_ = 1.0;
  double truncation_radius_ = 0.0;
  double normalization_defect_ = 0.0;
  PhaseField F_;
  SpatialField V_, dV_, d2V_, rho_F_, m_F_, q_F_;
};

/// Builds F on `grid`.  Throws InvalidExponent when k <= d/2 + 1 in the
/// fast-diffusion case and NonIntegrable when the mass changes when the
/// truncation radius is doubled.  Only d = 1 is discretized.
EquilibriumModel build_equilibrium(EquilibriumCase which, const Potential& potential, int d,
                                   double k, const PhaseGrid& grid,
                                   NormalizationMode mode = NormalizationMode::Offset);

/// inner_mu with F taken from the model.
double inner_mu(const PhaseField& f, const PhaseField& g, const PhaseGrid& grid,
                const EquilibriumModel& model);

struct MomentTables
{
  SpatialField rho_F, m_F, q_F;
};

MomentTables moment_tables(const EquilibriumModel& model, const PhaseGrid& grid);

/// CSV with columns x, rho_F, m_F, q_F.
void write_moments_csv(std::ostream& os, const PhaseGrid& grid, const MomentTables& tables);

struct PointwiseBound
{
  double value = 0.0;
  bool satisfied = true;
  /// first node (on the extended certification grid) where the bound is violated
  std::optional<double> violation_x;
};

struct ThetaCandidate
{
  double theta = 0.0;
  double c0 = 0.0;
  double kappa = 0.0;
};

/// Machine check of the regularity, normalization, gap, pointwise and growth
/// hypotheses on the truncated grid and on a grid of twice the radius.
struct HypothesisReport
{
  double truncation_radius = 0.0;
  double normalization_defect = 0.0;
  double Lambda = 0.0;  ///< Poincare constant of e^{-V} dx (gradient side)
  double theta = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double kappa = 0.0;
  double gradV_moment = 0.0;  ///< integral of |V'|^2 e^{-V}
  std::vector<ThetaCandidate> theta_scan;
  /// H1 .. H6
  std::array<bool, 6> satisfied{};
  std::array<std::string, 6> detail{};

  bool all_satisfied() const noexcept;
  /// Throws HypothesisFailed naming the first failed hypothesis.
  void require() const;
};

inline const std::vector<double>& default_theta_grid()
{
  static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return grid;
}

/// Maxwellian case only.  Lambda is computed with spectrum::poincare_constant;
/// `gap_safety` deflates the gap before it enters kappa.
HypothesisReport check_hypotheses(const EquilibriumModel& model, const PhaseGrid& grid,
                                  const std::vector<double>& theta_grid = default_theta_grid(),
                                  double gap_safety = 0.99);

/// kappa = (1 - theta) / (2 (2 + Lambda c0))
double improved_poincare_kappa(double Lambda, double theta, double c0);

}  // namespace hypokinetic
