#include "hypokinetic/elliptic.hpp"

#include "hypokinetic/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace hypokinetic::ops {

ConservativeForm::ConservativeForm(const SpatialField& weight0, const SpatialField& weight1,
                                   const Axis& x)
    : x_(&x)
{
  const std::size_t n = x.size();
  if (weight0.size() != n || weight1.size() != n) {
    throw ShapeMismatch("ConservativeForm: weights do not match the axis");
  }
  if (!x.uniform) throw UnsupportedGrid("ConservativeForm: needs a uniform x axis");
  const double h = x.spacing;
  half_weight_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) half_weight_[i] = 0.5 * (weight1[i] + weight1[i + 1]);
  diag_.resize(n);
  off_.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double d = x.weights[i] * weight0[i];
    if (i > 0) d += half_weight_[i - 1] / h;
    if (i + 1 < n) d += half_weight_[i] / h;
    diag_[i] = d;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) off_[i] = -half_weight_[i] / h;
}

std::vector<double> ConservativeForm::apply_symmetric(std::span<const double> u) const
{
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag_[i] * u[i];
    if (i > 0) s += off_[i - 1] * u[i - 1];
    if (i + 1 < n) s += off_[i] * u[i + 1];
    out[i] = s;
  }
  return out;
}

SpatialField ConservativeForm::apply(const SpatialField& u) const
{
  auto out = apply_symmetric(u.values());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= x_->weights[i];
  return SpatialField(std::move(out));
}

EllipticSolver::EllipticSolver(ConservativeForm form)
    : form_(std::move(form))
{
  const std::size_t n = form_.size();
  const auto& a = form_.diagonal();
  const auto& b = form_.off_diagonal();
  d_.resize(n);
  l_.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    double di = a[i];
    if (i > 0) di -= l_[i - 1] * l_[i - 1] * d_[i - 1];
    if (!(di > 0.0) || !std::isfinite(di)) {
      std::ostringstream os;
      os << "EllipticSolver: non-positive pivot " << di << " at node " << i;
      throw SingularSystem(os.str());
    }
    d_[i] = di;
    if (i + 1 < n) l_[i] = b[i] / di;
  }
}

std::vector<double> EllipticSolver::solve_symmetric(std::span<const double> rhs) const
{
  const std::size_t n = d_.size();
  std::vector<double> y(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) y[i] -= l_[i - 1] * y[i - 1];
  for (std::size_t i = 0; i < n; ++i) y[i] /= d_[i];
  for (std::size_t i = n - 1; i-- > 0;) y[i] -= l_[i] * y[i + 1];
  return y;
}

SpatialField EllipticSolver::solve(const SpatialField& rhs) const
{
  const auto& w = form_.axis().weights;
  std::vector<double> b(rhs.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = w[i] * rhs[i];
  return SpatialField(solve_symmetric(b));
}

double EllipticSolver::relative_residual(const SpatialField& u, const SpatialField& rhs) const
{
  const auto& w = form_.axis().weights;
  const auto lhs = form_.apply_symmetric(u.values());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double b = w[i] * rhs[i];
    num += (lhs[i] - b) * (lhs[i] - b);
    den += b * b;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

SpatialField solve_elliptic(const SpatialField& rhs, const SpatialField& weight0,
                            const SpatialField& weight1, const PhaseGrid& grid)
{
  require_shape(rhs, grid, "solve_elliptic");
  EllipticSolver solver(ConservativeForm(weight0, weight1, grid.x()));
  SpatialField u = solver.solve(rhs);
  const double res = solver.relative_residual(u, rhs);
  if (!(res <= 1e-10)) {
    std::ostringstream os;
    os << "solve_elliptic: residual " << res << " above 1e-10";
    throw SingularSystem(os.str());
  }
  return u;
}

void write_elliptic_csv(std::ostream& os, const Axis& x, const SpatialField& weight0,
                        const SpatialField& weight1, const SpatialField& rhs, const SpatialField& u)
{
  const auto old = os.precision(17);
  os << "node,weight0,weight1,rhs,u\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << x.nodes[i] << ',' << weight0[i] << ',' << weight1[i] << ',' << rhs[i] << ',' << u[i] << '\n';
  }
  os.precision(old);
}

std::vector<double> half_gradient(const SpatialField& u, const Axis& x)
{
  std::vector<double> g(u.size() - 1);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) g[i] = (u[i + 1] - u[i]) / x.spacing;
  return g;
}

SpatialField nodal_gradient(const SpatialField& u, const Axis& x)
{
  const auto g = half_gradient(u, x);
  const std::size_t n = u.size();
  SpatialField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? g[i - 1] : 0.0;
    const double right = i + 1 < n ? g[i] : 0.0;
    out[i] = 0.5 * (left + right);
  }
  return out;
}

SpatialField second_derivative(const SpatialField& u, const Axis& x)
{
  const auto g = half_gradient(u, x);
  const std::size_t n = u.size();
  SpatialField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? g[i - 1] : 0.0;
    const double right = i + 1 < n ? g[i] : 0.0;
    out[i] = (right - left) / x.spacing;
  }
  return out;
}

}  // namespace hypokinetic::ops
