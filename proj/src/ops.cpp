#include "hypokinetic/ops.hpp"

#include "hypokinetic/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hypokinetic::ops {

namespace {

SpatialField scaled(const SpatialField& u, double s)
{
  SpatialField out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i];
  return out;
}

}  // namespace

KineticOperators::KineticOperators(const EquilibriumModel& model, const PhaseGrid& grid)
    : model_(&model)
    , grid_(&grid)
    , macro_(ConservativeForm(model.rho_F(), scaled(model.m_F(), 1.0 / model.dimension()), grid.x()))
{
  require_shape(model.F_table(), grid, "KineticOperators");
  grid.require_uniform_velocity("KineticOperators");

  const std::size_t nx = grid.nx();
  const std::size_t nv = grid.nv();
  const auto& x = grid.x().nodes;

  // corner coordinates
  std::vector<double> xc(nx + 1), vc(nv + 1);
  xc[0] = -grid.x().half_width;
  xc[nx] = grid.x().half_width;
  for (std::size_t c = 1; c < nx; ++c) xc[c] = 0.5 * (x[c - 1] + x[c]);
  for (std::size_t e = 0; e <= nv; ++e) {
    vc[e] = -grid.v().half_width + static_cast<double>(e) * grid.hv();
  }
  vc[nv] = grid.v().half_width;

  // Psi is increasing in the energy; shifting by its least boundary value and
  // clamping at 0 makes it vanish on the whole boundary, freezing the flow on
  // the energy shells that leave the box.
  double psi_b = 0.0;
  for (std::size_t c = 0; c <= nx; ++c) {
    psi_b = std::min({psi_b, model.stream(xc[c], vc[0]), model.stream(xc[c], vc[nv])});
  }
  for (std::size_t e = 0; e <= nv; ++e) {
    psi_b = std::min({psi_b, model.stream(xc[0], vc[e]), model.stream(xc[nx], vc[e])});
  }
  std::vector<double> psi((nx + 1) * (nv + 1), 0.0);
  auto Psi = [&](std::size_t c, std::size_t e) -> double& { return psi[c * (nv + 1) + e]; };
  for (std::size_t c = 1; c < nx; ++c) {
    for (std::size_t e = 1; e < nv; ++e) Psi(c, e) = std::min(model.stream(xc[c], vc[e]) - psi_b, 0.0);
  }

  fx_.assign((nx + 1) * nv, 0.0);
  for (std::size_t c = 1; c < nx; ++c) {
    for (std::size_t j = 0; j < nv; ++j) fx_[c * nv + j] = Psi(c, j + 1) - Psi(c, j);
  }
  fv_.assign(nx * (nv + 1), 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t e = 1; e < nv; ++e) fv_[i * (nv + 1) + e] = -(Psi(i + 1, e) - Psi(i, e));
  }

  // Gershgorin bound on W^{-1/2} B W^{-1/2}, W = w_x w_v F
  const auto& F = model.F_table();
  const auto& wx = grid.x().weights;
  const auto& wv = grid.v().weights;
  auto W = [&](std::size_t i, std::size_t j) { return wx[i] * wv[j] * F(i, j); };
  double bound = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double wa = W(i, j);
      double row = 0.0;
      if (i + 1 < nx) row += std::abs(fx_[(i + 1) * nv + j]) / std::sqrt(wa * W(i + 1, j));
      if (i > 0) row += std::abs(fx_[i * nv + j]) / std::sqrt(wa * W(i - 1, j));
      if (j + 1 < nv) row += std::abs(fv_[i * (nv + 1) + j + 1]) / std::sqrt(wa * W(i, j + 1));
      if (j > 0) row += std::abs(fv_[i * (nv + 1) + j]) / std::sqrt(wa * W(i, j - 1));
      bound = std::max(bound, 0.5 * row);
    }
  }
  spectral_bound_ = bound;
  cfl_dt_ = bound > 0.0 ? kRK4ImaginaryLimit / bound : 1e300;
}

double KineticOperators::inner(const PhaseField& f, const PhaseField& g) const
{
  return inner_mu(f, g, *grid_, model_->F_table());
}

PhaseField KineticOperators::apply_T(const PhaseField& f) const
{
  require_shape(f, *grid_, "apply_T");
  const std::size_t nx = grid_->nx();
  const std::size_t nv = grid_->nv();
  const auto& F = model_->F_table();
  const auto& wx = grid_->x().weights;
  const auto& wv = grid_->v().weights;

  PhaseField g(nx, nv);
  for (std::size_t a = 0; a < f.size(); ++a) g[a] = f[a] / F[a];

  PhaseField out(nx, nv);
  for (std::size_t i = 0; i < nx; ++i) {
    const double* fxr = &fx_[(i + 1) * nv];
    const double* fxl = &fx_[i * nv];
    const double* fvr = &fv_[i * (nv + 1)];
    for (std::size_t j = 0; j < nv; ++j) {
      double s = 0.0;
      if (i + 1 < nx) s += fxr[j] * g(i + 1, j);
      if (i > 0) s -= fxl[j] * g(i - 1, j);
      if (j + 1 < nv) s += fvr[j + 1] * g(i, j + 1);
      if (j > 0) s -= fvr[j] * g(i, j - 1);
      out(i, j) = 0.5 * s / (wx[i] * wv[j]);
    }
  }
  return out;
}

PhaseField KineticOperators::apply_Pi(const PhaseField& f) const
{
  const SpatialField rho = density(f, *grid_);
  const auto& F = model_->F_table();
  const auto& rhoF = model_->rho_F();
  PhaseField out(grid_->nx(), grid_->nv());
  for (std::size_t i = 0; i < grid_->nx(); ++i) {
    const double r = rho[i] / rhoF[i];
    for (std::size_t j = 0; j < grid_->nv(); ++j) out(i, j) = r * F(i, j);
  }
  return out;
}

PhaseField KineticOperators::apply_L(const PhaseField& f) const
{
  PhaseField out = apply_Pi(f);
  out -= f;
  return out;
}

PhaseField KineticOperators::apply_perp(const PhaseField& f) const
{
  PhaseField out = f;
  out -= apply_Pi(f);
  return out;
}

namespace {

PhaseField spatial_times_F(const SpatialField& s, const PhaseField& F)
{
  PhaseField out(F.nx(), F.nv());
  for (std::size_t i = 0; i < F.nx(); ++i) {
    for (std::size_t j = 0; j < F.nv(); ++j) out(i, j) = s[i] * F(i, j);
  }
  return out;
}

PhaseField v_spatial_times_F(const SpatialField& s, const PhaseField& F, const std::vector<double>& v)
{
  PhaseField out(F.nx(), F.nv());
  for (std::size_t i = 0; i < F.nx(); ++i) {
    for (std::size_t j = 0; j < F.nv(); ++j) out(i, j) = v[j] * s[i] * F(i, j);
  }
  return out;
}

}  // namespace

PhaseField KineticOperators::apply_b(const PhaseField& f) const
{
  SpatialField j = flux(f, *grid_);
  for (std::size_t i = 0; i < j.size(); ++i) j[i] /= model_->rho_F()[i];
  return spatial_times_F(j, model_->F_table());
}

PhaseField KineticOperators::apply_a(const PhaseField& f) const
{
  const SpatialField second = velocity_moment(f, *grid_, 2);
  const SpatialField rho = density(f, *grid_);
  SpatialField s = nodal_gradient(second, grid_->x());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = (s[i] + rho[i] * model_->dV()[i]) / model_->rho_F()[i];
  }
  return spatial_times_F(s, model_->F_table());
}

PhaseField KineticOperators::apply_ahat(const PhaseField& f) const
{
  SpatialField s = nodal_gradient(density(f, *grid_), grid_->x());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -s[i] / model_->rho_F()[i];
  return spatial_times_F(s, model_->F_table());
}

SpatialField KineticOperators::macro_density_of_A(const PhaseField& f) const
{
  const SpatialField j = flux(f, *grid_);
  const std::size_t n = j.size();
  // b = W_x (-(j)'), with j averaged to the half nodes
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double jh = 0.5 * (j[i] + j[i + 1]);
    b[i] -= jh;
    b[i + 1] += jh;
  }
  return SpatialField(macro_.solve_symmetric(b));
}

PhaseField KineticOperators::apply_A(const PhaseField& f) const
{
  return spatial_times_F(macro_density_of_A(f), model_->F_table());
}

PhaseField KineticOperators::apply_TA(const PhaseField& f) const
{
  const SpatialField du = nodal_gradient(macro_density_of_A(f), grid_->x());
  return v_spatial_times_F(du, model_->F_table(), grid_->v().nodes);
}

SpatialField KineticOperators::resolvent_density(const PhaseField& f) const
{
  return macro_.solve(density(f, *grid_));
}

PhaseField KineticOperators::apply_A_star(const PhaseField& h) const
{
  SpatialField dz = nodal_gradient(resolvent_density(h), grid_->x());
  const auto& wx = grid_->x().weights;
  for (std::size_t i = 0; i < dz.size(); ++i) dz[i] *= grid_->hx() / wx[i];
  return v_spatial_times_F(dz, model_->F_table(), grid_->v().nodes);
}

SpatialField KineticOperators::dual_norm_coefficient() const
{
  const auto& rho = model_->rho_F();
  const auto& m = model_->m_F();
  const auto& q = model_->q_F();
  SpatialField c(rho.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = q[i] - m[i] * m[i] / rho[i];
  return c;
}

double KineticOperators::dual_norm_AT_perp(const PhaseField& f) const
{
  const SpatialField u2 = second_derivative(resolvent_density(f), grid_->x());
  const SpatialField c = dual_norm_coefficient();
  return inner_weighted(u2, u2, c, *grid_);
}

double KineticOperators::dual_norm_AT_perp_by_composition(const PhaseField& f) const
{
  // (A T (1-Pi))^* = (1-Pi) T^* A^* = -(1-Pi) T A^*
  const PhaseField g = apply_perp(apply_T(apply_A_star(f)));
  return norm2(g);
}

}  // namespace hypokinetic::ops
