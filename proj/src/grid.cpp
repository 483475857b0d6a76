#include "hypokinetic/grid.hpp"

#include "hypokinetic/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hypokinetic {

Axis make_node_axis(std::size_t n, double half_width)
{
  if (n < 3 || !(half_width > 0.0)) {
    throw std::invalid_argument("make_node_axis: need n >= 3 and L > 0");
  }
  Axis axis;
  axis.half_width = half_width;
  axis.spacing = 2.0 * half_width / static_cast<double>(n - 1);
  axis.nodes.resize(n);
  axis.weights.assign(n, axis.spacing);
  for (std::size_t i = 0; i < n; ++i) {
    axis.nodes[i] = -half_width + static_cast<double>(i) * axis.spacing;
  }
  // exact symmetry about the origin
  for (std::size_t i = 0; i < n / 2; ++i) {
    axis.nodes[n - 1 - i] = -axis.nodes[i];
  }
  if (n % 2 == 1) axis.nodes[n / 2] = 0.0;
  axis.weights.front() *= 0.5;
  axis.weights.back() *= 0.5;
  return axis;
}

Axis make_cell_axis(std::size_t n, double half_width)
{
  if (n < 2 || !(half_width > 0.0)) {
    throw std::invalid_argument("make_cell_axis: need n >= 2 and L > 0");
  }
  Axis axis;
  axis.half_width = half_width;
  axis.spacing = 2.0 * half_width / static_cast<double>(n);
  axis.nodes.resize(n);
  axis.weights.assign(n, axis.spacing);
  for (std::size_t j = 0; j < n; ++j) {
    axis.nodes[j] = -half_width + (static_cast<double>(j) + 0.5) * axis.spacing;
  }
  for (std::size_t j = 0; j < n / 2; ++j) {
    axis.nodes[n - 1 - j] = -axis.nodes[j];
  }
  if (n % 2 == 1) axis.nodes[n / 2] = 0.0;
  return axis;
}

Axis make_gauss_hermite_axis(std::size_t n)
{
  if (n < 2) throw std::invalid_argument("make_gauss_hermite_axis: need n >= 2");
  // Newton iteration on the orthonormal physicists' Hermite recurrence
  // (weight exp(-z^2)), then v = sqrt(2) z.
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  std::vector<double> z(n), wz(n);
  const std::size_t m = (n + 1) / 2;
  double root = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double nn = static_cast<double>(n);
    if (i == 0) {
      root = std::sqrt(2.0 * nn + 1.0) - 1.85575 * std::pow(2.0 * nn + 1.0, -0.16667);
    } else if (i == 1) {
      root -= 1.14 * std::pow(nn, 0.426) / root;
    } else if (i == 2) {
      root = 1.86 * root - 0.86 * z[0];
    } else if (i == 3) {
      root = 1.91 * root - 0.91 * z[1];
    } else {
      root = 2.0 * root - z[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = root * std::sqrt(2.0 / jd) * p2 - std::sqrt((jd - 1.0) / jd) * p3;
      }
      pp = std::sqrt(2.0 * nn) * p2;
      const double prev = root;
      root = prev - p1 / pp;
      if (std::abs(root - prev) <= 1e-15 * std::max(1.0, std::abs(root))) break;
    }
    z[i] = root;
    z[n - 1 - i] = -root;
    wz[i] = 2.0 / (pp * pp);
    wz[n - 1 - i] = wz[i];
  }
  Axis axis;
  axis.uniform = false;
  axis.spacing = 0.0;
  axis.nodes.resize(n);
  axis.weights.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    // ascending order
    const double zj = z[n - 1 - j];
    axis.nodes[j] = std::numbers::sqrt2 * zj;
    axis.weights[j] = std::numbers::sqrt2 * wz[n - 1 - j] * std::exp(zj * zj);
  }
  axis.half_width = axis.nodes.back();
  return axis;
}

PhaseGrid::PhaseGrid(std::size_t nx, double lx, std::size_t nv, double lv, VelocityQuadrature vq)
    : x_(make_node_axis(nx, lx))
    , v_(vq == VelocityQuadrature::Uniform ? make_cell_axis(nv, lv) : make_gauss_hermite_axis(nv))
    , vq_(vq)
{
}

void PhaseGrid::require_uniform_velocity(const char* who) const
{
  if (!v_.uniform) {
    throw UnsupportedGrid(std::string(who) + ": requires a uniform velocity axis");
  }
}

bool PhaseField::all_finite() const noexcept
{
  for (double a : values_) {
    if (!std::isfinite(a)) return false;
  }
  return true;
}

PhaseField& PhaseField::operator+=(const PhaseField& o)
{
  if (!same_shape(o)) throw ShapeMismatch("PhaseField +=");
  for (std::size_t a = 0; a < values_.size(); ++a) values_[a] += o.values_[a];
  return *this;
}

PhaseField& PhaseField::operator-=(const PhaseField& o)
{
  if (!same_shape(o)) throw ShapeMismatch("PhaseField -=");
  for (std::size_t a = 0; a < values_.size(); ++a) values_[a] -= o.values_[a];
  return *this;
}

PhaseField& PhaseField::operator*=(double s)
{
  for (double& a : values_) a *= s;
  return *this;
}

PhaseField& PhaseField::axpy(double s, const PhaseField& o)
{
  if (!same_shape(o)) throw ShapeMismatch("PhaseField axpy");
  for (std::size_t a = 0; a < values_.size(); ++a) values_[a] += s * o.values_[a];
  return *this;
}

PhaseField operator+(PhaseField a, const PhaseField& b) { return a += b; }
PhaseField operator-(PhaseField a, const PhaseField& b) { return a -= b; }
PhaseField operator*(double s, PhaseField a) { return a *= s; }

void require_shape(const PhaseField& f, const PhaseGrid& grid, const char* who)
{
  if (f.nx() != grid.nx() || f.nv() != grid.nv()) {
    throw ShapeMismatch(std::string(who) + ": phase field shape does not match the grid");
  }
}

void require_shape(const SpatialField& u, const PhaseGrid& grid, const char* who)
{
  if (u.size() != grid.nx()) {
    throw ShapeMismatch(std::string(who) + ": spatial field size does not match the grid");
  }
}

double inner_mu(const PhaseField& f, const PhaseField& g, const PhaseGrid& grid,
                const PhaseField& equilibrium)
{
  require_shape(f, grid, "inner_mu");
  require_shape(g, grid, "inner_mu");
  require_shape(equilibrium, grid, "inner_mu");
  const auto& wx = grid.x().weights;
  const auto& wv = grid.v().weights;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      row += wv[j] * f(i, j) * g(i, j) / equilibrium(i, j);
    }
    total += wx[i] * row;
  }
  return total;
}

SpatialField velocity_moment(const PhaseField& f, const PhaseGrid& grid, int power)
{
  require_shape(f, grid, "velocity_moment");
  const auto& v = grid.v().nodes;
  const auto& wv = grid.v().weights;
  SpatialField out(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      s += wv[j] * std::pow(v[j], power) * f(i, j);
    }
    out[i] = s;
  }
  return out;
}

SpatialField density(const PhaseField& f, const PhaseGrid& grid)
{
  require_shape(f, grid, "density");
  const auto& wv = grid.v().weights;
  SpatialField out(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) s += wv[j] * f(i, j);
    out[i] = s;
  }
  return out;
}

SpatialField flux(const PhaseField& f, const PhaseGrid& grid)
{
  require_shape(f, grid, "flux");
  const auto& v = grid.v().nodes;
  const auto& wv = grid.v().weights;
  SpatialField out(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) s += wv[j] * v[j] * f(i, j);
    out[i] = s;
  }
  return out;
}

double inner_weighted(const SpatialField& u, const SpatialField& w, const SpatialField& weight,
                      const PhaseGrid& grid)
{
  require_shape(u, grid, "inner_weighted");
  require_shape(w, grid, "inner_weighted");
  require_shape(weight, grid, "inner_weighted");
  const auto& wx = grid.x().weights;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) s += wx[i] * weight[i] * u[i] * w[i];
  return s;
}

double total_mass(const PhaseField& f, const PhaseGrid& grid)
{
  require_shape(f, grid, "total_mass");
  const auto& wx = grid.x().weights;
  const auto& wv = grid.v().weights;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) row += wv[j] * f(i, j);
    total += wx[i] * row;
  }
  return total;
}

}  // namespace hypokinetic
