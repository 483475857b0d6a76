#include "hypokinetic/model.hpp"

#include "hypokinetic/errors.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hypokinetic {

namespace {

constexpr double kIntegrabilityTolerance = 1e-3;

double maxwell_prefactor() { return 1.0 / std::sqrt(2.0 * std::numbers::pi); }

Axis doubled_node_axis(const Axis& x) { return make_node_axis(2 * (x.size() - 1) + 1, 2.0 * x.half_width); }

Axis doubled_cell_axis(const Axis& v) { return make_cell_axis(2 * v.size(), 2.0 * v.half_width); }

double boltzmann_mass(const Axis& x, const Potential& V)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x.weights[i] * std::exp(-V.value(x.nodes[i]));
  return s;
}

double fast_diffusion_mass(const Axis& x, const Axis& v, const Potential& V, double k)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double Vi = V.value(x.nodes[i]);
    double row = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      row += v.weights[j] * std::pow(0.5 * v.nodes[j] * v.nodes[j] + Vi, -(k + 1.0));
    }
    s += x.weights[i] * row;
  }
  return s;
}

void require_integrable(double inner, double outer, const char* what)
{
  if (!std::isfinite(inner) || !std::isfinite(outer) || !(inner > 0.0) ||
      std::abs(outer - inner) > kIntegrabilityTolerance * std::abs(outer)) {
    std::ostringstream os;
    os << what << ": mass " << inner << " on the grid vs " << outer
       << " at twice the truncation radius";
    throw NonIntegrable(os.str());
  }
}

/// integral over R of (1 + t^2)^{-(k+1)} dt = integral of cos^{2k} over (-pi/2, pi/2)
double velocity_profile_integral(double k)
{
  const std::size_t n = 4096;
  const double h = std::numbers::pi / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = -0.5 * std::numbers::pi + (static_cast<double>(i) + 0.5) * h;
    s += std::pow(std::cos(theta), 2.0 * k);
  }
  return s * h;
}

}  // namespace

Potential Potential::power_quadratic(double power, double coefficient)
{
  if (!(power > 0.0) || !(coefficient > 0.0)) {
    throw std::invalid_argument("power_quadratic: exponent and coefficient must be positive");
  }
  Potential p;
  p.family_ = Family::PowerQuadratic;
  p.power_ = power;
  p.coefficient_ = coefficient;
  return p;
}

Potential Potential::callback(Fn value, Fn gradient, Fn hessian)
{
  Potential p;
  p.family_ = Family::GeneralCallback;
  p.power_ = 0.0;
  p.coefficient_ = 0.0;
  p.value_ = std::move(value);
  p.gradient_ = std::move(gradient);
  p.hessian_ = std::move(hessian);
  return p;
}

double Potential::value(double x) const
{
  if (family_ == Family::GeneralCallback) return value_(x) + offset_;
  return coefficient_ * std::pow(1.0 + x * x, power_) + offset_;
}

double Potential::gradient(double x) const
{
  if (family_ == Family::GeneralCallback) return gradient_(x);
  return 2.0 * coefficient_ * power_ * x * std::pow(1.0 + x * x, power_ - 1.0);
}

double Potential::hessian(double x) const
{
  if (family_ == Family::GeneralCallback) return hessian_(x);
  const double r = 1.0 + x * x;
  return 2.0 * coefficient_ * power_ * std::pow(r, power_ - 2.0) * (1.0 + (2.0 * power_ - 1.0) * x * x);
}

Potential Potential::with_offset(double offset) const
{
  Potential p = *this;
  p.offset_ = offset;
  return p;
}

Potential Potential::with_coefficient(double coefficient) const
{
  Potential p = *this;
  p.coefficient_ = coefficient;
  return p;
}

double EquilibriumModel::F(double x, double v) const
{
  const double V = potential_.value(x);
  if (case_ == EquilibriumCase::Maxwellian) {
    return maxwell_prefactor() * std::exp(-0.5 * v * v - V);
  }
  return omega_ * std::pow(0.5 * v * v + V, -(k_ + 1.0));
}

double EquilibriumModel::stream(double x, double v) const
{
  const double E = 0.5 * v * v + potential_.value(x);
  if (case_ == EquilibriumCase::Maxwellian) return -maxwell_prefactor() * std::exp(-E);
  return -omega_ * std::pow(E, -k_) / k_;
}

EquilibriumModel build_equilibrium(EquilibriumCase which, const Potential& potential, int d,
                                   double k, const PhaseGrid& grid, NormalizationMode mode)
{
  if (d != 1) {
    throw std::invalid_argument("build_equilibrium: only d = 1 is discretized");
  }
  EquilibriumModel m;
  m.case_ = which;
  m.dim_ = d;
  m.truncation_radius_ = grid.x().half_width;

  const Axis& x = grid.x();
  const Axis x2 = doubled_node_axis(x);

  if (which == EquilibriumCase::Maxwellian) {
    Potential base = potential.with_offset(0.0);
    if (mode == NormalizationMode::SolveConstant) {
      if (base.family() != Potential::Family::PowerQuadratic) {
        throw std::invalid_argument("build_equilibrium: solving for C needs a PowerQuadratic potential");
      }
      auto mass_at = [&](double c) { return boltzmann_mass(x, base.with_coefficient(c)); };
      double lo = 1e-12;
      double hi = 1.0;
      if (!(mass_at(lo) > 1.0)) {
        throw NonIntegrable("build_equilibrium: domain too small to normalize e^{-V}");
      }
      while (mass_at(hi) > 1.0) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (mass_at(mid) > 1.0 ? lo : hi) = mid;
      }
      base = base.with_coefficient(std::sqrt(lo * hi));
    }
    const double inner = boltzmann_mass(x, base);
    require_integrable(inner, boltzmann_mass(x2, base), "build_equilibrium");
    m.potential_ = mode == NormalizationMode::SolveConstant ? base : base.with_offset(std::log(inner));
    m.k_ = k;
    m.omega_ = maxwell_prefactor();
    m.omega0_ = 1.0;
  } else {
    if (!(k > 0.5 * d + 1.0)) {
      std::ostringstream os;
      os << "build_equilibrium: fast diffusion needs k > d/2+1, got k = " << k;
      throw InvalidExponent(os.str());
    }
    if (grid.velocity_quadrature() != VelocityQuadrature::Uniform) {
      throw UnsupportedGrid("build_equilibrium: fast diffusion needs a uniform velocity axis");
    }
    m.potential_ = potential;
    m.k_ = k;
    for (double xi : x.nodes) {
      if (!(potential.value(xi) > 0.0)) {
        throw std::invalid_argument("build_equilibrium: fast diffusion needs V > 0");
      }
    }
    const double inner = fast_diffusion_mass(x, grid.v(), potential, k);
    require_integrable(inner, fast_diffusion_mass(x2, doubled_cell_axis(grid.v()), potential, k),
                       "build_equilibrium");
    m.omega_ = 1.0 / inner;
    m.omega0_ = m.omega_ * std::numbers::sqrt2 * velocity_profile_integral(k);
  }

  const std::size_t nx = grid.nx();
  m.V_ = SpatialField(nx);
  m.dV_ = SpatialField(nx);
  m.d2V_ = SpatialField(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    m.V_[i] = m.potential_.value(x.nodes[i]);
    m.dV_[i] = m.potential_.gradient(x.nodes[i]);
    m.d2V_[i] = m.potential_.hessian(x.nodes[i]);
  }
  m.F_ = PhaseField(grid);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      m.F_(i, j) = m.F(x.nodes[i], grid.v().nodes[j]);
    }
  }
  m.rho_F_ = density(m.F_, grid);
  m.m_F_ = velocity_moment(m.F_, grid, 2);
  m.q_F_ = velocity_moment(m.F_, grid, 4);
  m.normalization_defect_ = std::abs(total_mass(m.F_, grid) - 1.0);
  return m;
}

double inner_mu(const PhaseField& f, const PhaseField& g, const PhaseGrid& grid,
                const EquilibriumModel& model)
{
  return inner_mu(f, g, grid, model.F_table());
}

MomentTables moment_tables(const EquilibriumModel& model, const PhaseGrid& grid)
{
  require_shape(model.F_table(), grid, "moment_tables");
  return {model.rho_F(), model.m_F(), model.q_F()};
}

void write_moments_csv(std::ostream& os, const PhaseGrid& grid, const MomentTables& t)
{
  os << "x,rho_F,m_F,q_F\n";
  os.precision(17);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    os << grid.x().nodes[i] << ',' << t.rho_F[i] << ',' << t.m_F[i] << ',' << t.q_F[i] << '\n';
  }
}

double improved_poincare_kappa(double Lambda, double theta, double c0)
{
  return (1.0 - theta) / (2.0 * (2.0 + Lambda * c0));
}

}  // namespace hypokinetic
