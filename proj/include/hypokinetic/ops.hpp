#pragma once

#include "hypokinetic/elliptic.hpp"
#include "hypokinetic/grid.hpp"
#include "hypokinetic/model.hpp"

#include <vector>

namespace hypokinetic::ops {

/// The operator algebra of the relaxation equation  f_t + T f = L f  on one
/// (model, grid) pair.  Holds references to both; they must outlive it.
///
/// T is the conservative discretization of the Hamiltonian flow of
/// |v|^2/2 + V: cell fluxes come from corner values of the stream function
/// Psi(E) (dPsi/dE = F), shifted so that it vanishes on the outer boundary and
/// above the least boundary energy, where the flow is frozen.  The fluxes are
/// exactly divergence free, so T F = 0, T conserves mass, and T is exactly
/// skew-symmetric in L^2(dmu).
///
/// A, TA and A* use the closed forms: with j = flux(f),
///   rho_F u - (m_F u')' = -j'   (conservative, tridiagonal),   A f = u F.
class KineticOperators
{
 public:
  KineticOperators(const EquilibriumModel& model, const PhaseGrid& grid);

  const EquilibriumModel& model() const noexcept { return *model_; }
  const PhaseGrid& grid() const noexcept { return *grid_; }
  const EllipticSolver& macro_solver() const noexcept { return macro_; }

  double inner(const PhaseField& f, const PhaseField& g) const;
  double norm2(const PhaseField& f) const { return inner(f, f); }

  PhaseField apply_T(const PhaseField& f) const;
  PhaseField apply_Pi(const PhaseField& f) const;
  PhaseField apply_L(const PhaseField& f) const;
  /// (1 - Pi) f
  PhaseField apply_perp(const PhaseField& f) const;

  PhaseField apply_b(const PhaseField& f) const;
  PhaseField apply_a(const PhaseField& f) const;
  PhaseField apply_ahat(const PhaseField& f) const;

  /// u with A f = u F
  SpatialField macro_density_of_A(const PhaseField& f) const;
  PhaseField apply_A(const PhaseField& f) const;
  /// v F (u)' with u from apply_A
  PhaseField apply_TA(const PhaseField& f) const;
  PhaseField apply_A_star(const PhaseField& h) const;

  /// u solving rho_F u - (m_F u')' = rho(f): the resolvent (1 + ahat.a Pi)^{-1} f = u F.
  SpatialField resolvent_density(const PhaseField& f) const;

  /// q_F - m_F^2 / rho_F
  SpatialField dual_norm_coefficient() const;
  /// ||(A T (1 - Pi))^* f||^2 from the closed form  sum w_x (q_F - m_F^2/rho_F) |u''|^2.
  double dual_norm_AT_perp(const PhaseField& f) const;
  /// Same quantity by composing (1 - Pi) T A* explicitly.
  double dual_norm_AT_perp_by_composition(const PhaseField& f) const;

  /// Largest dt for which one RK4 transport step is stable and contractive.
  double cfl_bound() const noexcept { return cfl_dt_; }
  /// Upper bound on the spectral radius of T.
  double transport_spectral_bound() const noexcept { return spectral_bound_; }

 private:
  const EquilibriumModel* model_;
  const PhaseGrid* grid_;
  EllipticSolver macro_;
  /// x-face fluxes: fx_[c * nv + j], c = 0..nx (faces 0 and nx are the boundary)
  std::vector<double> fx_;
  /// v-face fluxes: fv_[i * (nv + 1) + e], e = 0..nv
  std::vector<double> fv_;
  double spectral_bound_ = 0.0;
  double cfl_dt_ = 0.0;
};

/// Stability limit |dt * lambda| of classical RK4 on the imaginary axis (2 sqrt 2), with margin.
inline constexpr double kRK4ImaginaryLimit = 2.8;

}  // namespace hypokinetic::ops
