#include "hypokinetic/spectrum.hpp"

#include "hypokinetic/elliptic.hpp"
#include "hypokinetic/errors.hpp"
#include "hypokinetic/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace hypokinetic::spectrum {

namespace {

/// C = M^{-1/2} K M^{-1/2}, symmetric tridiagonal.
struct ReducedPencil
{
  std::vector<double> diag, off, sqrt_mass;
};

ReducedPencil reduce(const GapProblem& p, const Axis& x)
{
  const std::size_t n = x.size();
  if (p.weight_num.size() != n || p.weight_grad.size() != n) {
    throw ShapeMismatch("poincare_constant: weights do not match the grid");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p.weight_num[i] > 0.0) || !(p.weight_grad[i] > 0.0)) {
      throw std::invalid_argument("poincare_constant: weights must be positive");
    }
  }
  const ops::ConservativeForm K(SpatialField(n, 0.0), p.weight_grad, x);
  ReducedPencil r;
  r.sqrt_mass.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.sqrt_mass[i] = std::sqrt(x.weights[i] * p.weight_num[i]);
  r.diag.resize(n);
  r.off.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) r.diag[i] = K.diagonal()[i] / (r.sqrt_mass[i] * r.sqrt_mass[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    r.off[i] = K.off_diagonal()[i] / (r.sqrt_mass[i] * r.sqrt_mass[i + 1]);
  }
  return r;
}

/// number of eigenvalues of C below s
std::size_t sturm_count(const ReducedPencil& c, double s)
{
  std::size_t neg = 0;
  double p = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < c.diag.size(); ++i) {
    p = (c.diag[i] - s) - (i > 0 ? c.off[i - 1] * c.off[i - 1] / p : 0.0);
    if (p == 0.0) p = -tiny;
    if (p < 0.0) ++neg;
  }
  return neg;
}

double second_eigenvalue(const ReducedPencil& c)
{
  double hi = 0.0;
  for (std::size_t i = 0; i < c.diag.size(); ++i) {
    double r = c.diag[i];
    if (i > 0) r += std::abs(c.off[i - 1]);
    if (i < c.off.size()) r += std::abs(c.off[i]);
    hi = std::max(hi, r);
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sturm_count(c, mid) >= 2 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// solves (C - s I) y = b by LDL^T without pivoting
std::vector<double> shifted_solve(const ReducedPencil& c, double s, std::vector<double> b)
{
  const std::size_t n = c.diag.size();
  std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
  const double tiny = 1e-300;
  for (std::size_t i = 0; i < n; ++i) {
    double di = c.diag[i] - s;
    if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
    if (std::abs(di) < tiny) di = tiny;
    d[i] = di;
    if (i + 1 < n) l[i] = c.off[i] / di;
  }
  for (std::size_t i = 1; i < n; ++i) b[i] -= l[i - 1] * b[i - 1];
  for (std::size_t i = 0; i < n; ++i) b[i] /= d[i];
  for (std::size_t i = n - 1; i-- > 0;) b[i] -= l[i] * b[i + 1];
  return b;
}

void deflate_and_normalize(std::vector<double>& y, const std::vector<double>& z)
{
  double dot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * z[i];
  double nrm = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] -= dot * z[i];
    nrm += y[i] * y[i];
  }
  nrm = std::sqrt(nrm);
  for (double& yi : y) yi /= nrm;
}

double weighted_mean(const SpatialField& u, const SpatialField& w, const Axis& x)
{
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x.weights[i] * w[i] * u[i];
    den += x.weights[i] * w[i];
  }
  return num / den;
}

SpatialField power_of(const SpatialField& V, double p, double scale)
{
  SpatialField out(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) out[i] = scale * std::pow(V[i], p);
  return out;
}

}  // namespace

GapProblem boltzmann_problem(const EquilibriumModel& model)
{
  SpatialField w(model.V().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-model.V()[i]);
  return {w, w};
}

GapProblem hardy_poincare_problem(const EquilibriumModel& model)
{
  if (model.equilibrium_case() != EquilibriumCase::FastDiffusion) {
    throw std::invalid_argument("hardy_poincare_problem: fast-diffusion model required");
  }
  const double q = model.q_exponent();
  return {power_of(model.V(), -q, model.omega0()), power_of(model.V(), 1.0 - q, model.omega0())};
}

GapProblem macroscopic_problem(const EquilibriumModel& model)
{
  SpatialField m = model.m_F();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] /= model.dimension();
  return {model.rho_F(), m};
}

GapReport poincare_constant(const GapProblem& problem, const PhaseGrid& grid)
{
  return poincare_constant(problem, grid.x());
}

GapReport poincare_constant(const GapProblem& problem, const Axis& x)
{
  const ReducedPencil c = reduce(problem, x);
  const std::size_t n = c.diag.size();
  const double mu1 = second_eigenvalue(c);
  if (!(mu1 > 1e-12)) {
    std::ostringstream os;
    os << "poincare_constant: spectral gap " << mu1 << " <= 1e-12";
    throw NoGap(os.str());
  }

  // constant mode in reduced coordinates
  std::vector<double> z = c.sqrt_mass;
  double zn = 0.0;
  for (double zi : z) zn += zi * zi;
  zn = std::sqrt(zn);
  for (double& zi : z) zi /= zn;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x.nodes[i] + 0.1;
  deflate_and_normalize(y, z);
  const double shift = mu1 * (1.0 - 1e-9);
  for (int it = 0; it < 4; ++it) {
    y = shifted_solve(c, shift, y);
    deflate_and_normalize(y, z);
  }

  double rn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double cy = c.diag[i] * y[i];
    if (i > 0) cy += c.off[i - 1] * y[i - 1];
    if (i + 1 < n) cy += c.off[i] * y[i + 1];
    rn += (cy - mu1 * y[i]) * (cy - mu1 * y[i]);
  }

  GapReport r;
  r.mu1 = mu1;
  r.Lambda = 1.0 / mu1;
  r.residual = std::sqrt(rn) / mu1;
  r.truncation_radius = x.half_width;
  r.resolution = n;
  r.eigenfunction = SpatialField(n);
  for (std::size_t i = 0; i < n; ++i) r.eigenfunction[i] = y[i] / c.sqrt_mass[i];
  if (r.eigenfunction[n - 1] < r.eigenfunction[0]) {
    for (std::size_t i = 0; i < n; ++i) r.eigenfunction[i] = -r.eigenfunction[i];
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += x.weights[i] * problem.weight_num[i] * r.eigenfunction[i];
  r.mean = mean;
  return r;
}

GapReport hardy_poincare_constant(const EquilibriumModel& model, const PhaseGrid& grid)
{
  return poincare_constant(hardy_poincare_problem(model), grid);
}

double rayleigh_quotient(const GapProblem& problem, const Axis& x, const SpatialField& u)
{
  const double mean = weighted_mean(u, problem.weight_num, x);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += x.weights[i] * problem.weight_num[i] * (u[i] - mean) * (u[i] - mean);
  }
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double g = (u[i + 1] - u[i]) / x.spacing;
    num += x.spacing * 0.5 * (problem.weight_grad[i] + problem.weight_grad[i + 1]) * g * g;
  }
  return num / den;
}

void write_gap_report(std::ostream& os, const GapReport& r)
{
  const auto old = os.precision(12);
  os << "Lambda = " << r.Lambda << '\n'
     << "mu1 = " << r.mu1 << '\n'
     << "residual = " << r.residual << '\n'
     << "truncation_radius = " << r.truncation_radius << '\n'
     << "resolution = " << r.resolution << '\n';
  os.precision(old);
}

ImprovedPoincareReport improved_poincare_check(const EquilibriumModel& model, double kappa,
                                               const PhaseGrid& grid, std::size_t num_samples,
                                               std::uint64_t seed)
{
  const Axis& x = grid.x();
  const GapProblem p = boltzmann_problem(model);
  const auto& dV = model.dV();
  std::mt19937_64 rng(seed);

  ImprovedPoincareReport r;
  r.kappa = kappa;
  r.min_slack = std::numeric_limits<double>::infinity();
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < num_samples; ++s) {
    SpatialField u = s == 0 ? SpatialField(std::vector<double>(x.nodes)) : random_smooth_function(x, rng);
    const double mean = weighted_mean(u, p.weight_num, x);
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      u[i] -= mean;
      norm += x.weights[i] * p.weight_num[i] * u[i] * u[i];
    }
    if (!(norm > 0.0)) continue;
    for (std::size_t i = 0; i < x.size(); ++i) u[i] /= std::sqrt(norm);
    double grad = 0.0;
    double wu = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double g = (u[i + 1] - u[i]) / x.spacing;
      grad += x.spacing * 0.5 * (p.weight_grad[i] + p.weight_grad[i + 1]) * g * g;
    }
    for (std::size_t i = 0; i < x.size(); ++i) wu += x.weights[i] * p.weight_num[i] * dV[i] * dV[i] * u[i] * u[i];
    r.min_slack = std::min(r.min_slack, grad - kappa * wu);
    r.min_ratio = std::min(r.min_ratio, grad / wu);
    ++r.samples;
  }
  r.passed = r.samples > 0 && r.min_slack >= -1e-8;
  return r;
}

WeightedHardyReport weighted_hardy_check(const EquilibriumModel& model, double alpha,
                                         const PhaseGrid& grid, std::size_t num_samples,
                                         std::uint64_t seed)
{
  if (model.equilibrium_case() != EquilibriumCase::FastDiffusion ||
      model.potential().family() != Potential::Family::PowerQuadratic) {
    throw std::invalid_argument("weighted_hardy_check: fast diffusion with V = (1 + x^2)^beta required");
  }
  const double beta = model.potential().power();
  const double q = model.q_exponent();
  const GapProblem p{power_of(model.V(), alpha + 1.0 - q - 1.0 / beta, 1.0),
                     power_of(model.V(), alpha + 1.0 - q, 1.0)};

  WeightedHardyReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.constant = poincare_constant(p, grid).Lambda;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < num_samples; ++s) {
    const SpatialField u = random_smooth_function(grid.x(), rng);
    const double rq = rayleigh_quotient(p, grid.x(), u);
    if (std::isfinite(rq) && rq > 0.0) r.sample_constant = std::max(r.sample_constant, 1.0 / rq);
    ++r.samples;
  }
  r.beta0 = 1.0 + 1.0 / (2.0 * std::sqrt(r.constant));
  r.sample_beta0 = r.sample_constant > 0.0 ? 1.0 + 1.0 / (2.0 * std::sqrt(r.sample_constant))
                                           : std::numeric_limits<double>::infinity();
  r.beta_below_beta0 = beta < r.beta0;
  return r;
}

}  // namespace hypokinetic::spectrum
