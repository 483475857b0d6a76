#include "hypokinetic/hypo.hpp"

#include "hypokinetic/errors.hpp"
#include "hypokinetic/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace hypokinetic {

double lyapunov_H(const ops::KineticOperators& ops, const PhaseField& g, double eps)
{
  double h = 0.5 * ops.norm2(g);
  if (eps != 0.0) h += eps * ops.inner(ops.apply_A(g), g);
  return h;
}

Dissipation dissipation_D(const ops::KineticOperators& ops, const PhaseField& g, double eps)
{
  Dissipation d;
  const PhaseField Lg = ops.apply_L(g);
  d.terms[0] = ops.inner(g, Lg);
  if (eps != 0.0) {
    const PhaseField pi = ops.apply_Pi(g);
    const PhaseField perp = g - pi;
    const PhaseField Ag = ops.apply_A(g);
    d.terms[1] = -eps * ops.inner(ops.apply_A(ops.apply_T(pi)), g);
    d.terms[2] = -eps * ops.inner(ops.apply_A(ops.apply_T(perp)), g);
    d.terms[3] = eps * ops.inner(ops.apply_T(Ag), g);
    d.terms[4] = eps * ops.inner(Lg, Ag + ops.apply_A_star(g));
  }
  for (double t : d.terms) d.total += t;
  return d;
}

HypoReport observe(const ops::KineticOperators& ops, const PhaseField& g, double eps, double lambda,
                   double t)
{
  HypoReport r;
  r.t = t;
  r.norm2 = ops.norm2(g);
  r.pi_norm2 = ops.norm2(ops.apply_Pi(g));
  r.perp_norm2 = ops.norm2(ops.apply_perp(g));
  r.H = lyapunov_H(ops, g, eps);
  const Dissipation d = dissipation_D(ops, g, eps);
  r.D_total = d.total;
  r.D_terms = d.terms;
  r.gronwall_slack = d.total + lambda * r.H;
  return r;
}

double check_operator_estimate(const ops::KineticOperators& ops, const PhaseField& g)
{
  return ops.norm2(ops.apply_perp(g)) - 2.0 * ops.norm2(ops.apply_A(g)) - ops.norm2(ops.apply_TA(g));
}

double macroscopic_coercivity_slack(const ops::KineticOperators& ops, const PhaseField& g, double gap)
{
  const PhaseField pi = ops.apply_Pi(g);
  return ops.inner(ops.apply_A(ops.apply_T(pi)), g) - gap / (1.0 + gap) * ops.norm2(pi);
}

ConstantsLedger evaluate_ledger(double Lambda, double theta, double c0, double c1, double c4,
                                double a, double eps)
{
  ConstantsLedger l;
  l.Lambda = Lambda;
  l.theta = theta;
  l.c0 = c0;
  l.c1 = c1;
  l.kappa = improved_poincare_kappa(Lambda, theta, c0);
  l.a = a;
  l.c2 = a * eps;
  l.c4 = c4;
  l.eps = eps;
  const double gap = 1.0 / Lambda;
  l.lambda1 = 1.0 - 0.5 * l.c2 * c4 - 2.5 * eps;
  l.lambda2 = gap * eps / (1.0 + gap) - eps * eps / (2.0 * l.c2);
  l.lambda = std::min(l.lambda1, l.lambda2);
  l.eta = 2.0 * eps / (1.0 - eps);
  l.feasible = l.lambda1 > 0.0 && l.lambda2 > 0.0;
  return l;
}

ConstantsLedger constants_ledger(double Lambda, double theta, double c0, double c1, double c4,
                                 double a, double eps)
{
  if (!(Lambda > 0.0) || !(c0 > 0.0) || !(c1 > 0.0) || !(c4 > 0.0) || !(a > 0.0)) {
    throw Infeasible("constants_ledger: Lambda, c0, c1, c4 and a must be positive");
  }
  if (!(theta > 0.0 && theta < 1.0) || !(eps > 0.0 && eps < 1.0)) {
    throw Infeasible("constants_ledger: theta and eps must lie in (0, 1)");
  }
  ConstantsLedger l = evaluate_ledger(Lambda, theta, c0, c1, c4, a, eps);
  std::ostringstream os;
  if (!(l.lambda1 > 0.0)) {
    os << "lambda1 = 1 - c2 c4 / 2 - 5 eps / 2 = " << l.lambda1 << " <= 0";
    throw Infeasible(os.str());
  }
  if (!(l.lambda2 > 0.0)) {
    os << "lambda2 = " << l.lambda2 << " <= 0 (a = " << a << ", need a > " << l.a_min() << ")";
    throw Infeasible(os.str());
  }
  return l;
}

std::string to_text(const ConstantsLedger& l)
{
  std::ostringstream os;
  os.precision(12);
  os << "Lambda = " << l.Lambda << '\n'
     << "theta = " << l.theta << '\n'
     << "c0 = " << l.c0 << '\n'
     << "c1 = " << l.c1 << '\n'
     << "kappa = " << l.kappa << '\n'
     << "a = " << l.a << '\n'
     << "c2 = " << l.c2 << '\n'
     << "c4 = " << l.c4 << '\n'
     << "eps = " << l.eps << '\n'
     << "lambda1 = " << l.lambda1 << '\n'
     << "lambda2 = " << l.lambda2 << '\n'
     << "lambda = " << l.lambda << '\n'
     << "eta = " << l.eta << '\n'
     << "feasible = " << (l.feasible ? "true" : "false") << '\n';
  return os.str();
}

namespace {

/// (D2^T z): adjoint of u -> (Du_{i+1/2} - Du_{i-1/2}) / h
SpatialField second_derivative_transpose(const SpatialField& z, double h)
{
  const std::size_t n = z.size();
  std::vector<double> y(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) y[k] = (z[k] - z[k + 1]) / h;
  SpatialField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? y[i - 1] : 0.0;
    const double right = i + 1 < n ? y[i] : 0.0;
    out[i] = (left - right) / h;
  }
  return out;
}

}  // namespace

C4Estimate estimate_c4(const ops::KineticOperators& ops, std::size_t num_samples, std::uint64_t seed)
{
  const PhaseGrid& grid = ops.grid();
  const Axis& x = grid.x();
  const std::size_t n = x.size();
  const auto& rhoF = ops.model().rho_F();
  const SpatialField c = ops.dual_norm_coefficient();
  const auto& solver = ops.macro_solver();

  // y = M^{1/2} rho, M = diag(w_x / rho_F); B y = M^{-1/2} S^T W_c S M^{-1/2} y
  std::vector<double> sm(n);
  for (std::size_t i = 0; i < n; ++i) sm[i] = std::sqrt(x.weights[i] / rhoF[i]);
  auto apply_B = [&](const std::vector<double>& y) {
    SpatialField rho(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = y[i] / sm[i];
    SpatialField z = ops::second_derivative(solver.solve(rho), x);
    for (std::size_t i = 0; i < n; ++i) z[i] *= x.weights[i] * c[i];
    const SpatialField t = second_derivative_transpose(z, x.spacing);
    std::vector<double> s = solver.solve_symmetric(t.values());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x.weights[i] * s[i] / sm[i];
    return out;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> y(n);
  for (double& yi : y) yi = normal(rng);
  double rq = 0.0;
  for (int it = 0; it < 400; ++it) {
    double nrm = 0.0;
    for (double yi : y) nrm += yi * yi;
    nrm = std::sqrt(nrm);
    for (double& yi : y) yi /= nrm;
    std::vector<double> by = apply_B(y);
    double next = 0.0;
    for (std::size_t i = 0; i < n; ++i) next += y[i] * by[i];
    y = std::move(by);
    const bool done = it > 10 && std::abs(next - rq) <= 1e-12 * std::abs(next);
    rq = next;
    if (done) break;
  }

  C4Estimate est;
  est.sup_estimate = rq;
  for (std::size_t s = 0; s < num_samples; ++s) {
    const PhaseField f = random_perturbation(ops.model(), grid, rng);
    const double den = ops.norm2(f);
    if (den > 0.0) est.sample_max = std::max(est.sample_max, ops.dual_norm_AT_perp(f) / den);
    ++est.samples;
  }
  est.c4 = kC4Safety * std::max(est.sup_estimate, est.sample_max);
  return est;
}

namespace {

template <class Fn>
double golden_max(Fn&& f, double lo, double hi, int iters = 200)
{
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - r * (hi - lo);
  double b = lo + r * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int it = 0; it < iters && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + r * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - r * (hi - lo);
      fa = f(a);
    }
  }
  return 0.5 * (lo + hi);
}

ConstantsLedger best_eps(const LedgerInputs& in, double a)
{
  auto lam = [&](double eps) {
    return evaluate_ledger(in.Lambda, in.theta, in.c0, in.c1, in.c4, a, eps).lambda;
  };
  const double eps = golden_max(lam, 1e-12, 1.0 - 1e-12);
  return evaluate_ledger(in.Lambda, in.theta, in.c0, in.c1, in.c4, a, eps);
}

}  // namespace

ConstantsLedger optimize_epsilon(const LedgerInputs& in, double a)
{
  ConstantsLedger l = best_eps(in, a);
  if (!l.feasible) {
    std::ostringstream os;
    os << "optimize_epsilon: no eps in (0, 1) gives lambda > 0 at a = " << a
       << " (a must exceed " << l.a_min() << ")";
    throw Infeasible(os.str());
  }
  return l;
}

ConstantsLedger optimize_epsilon(const LedgerInputs& in)
{
  const double a_min = 0.5 * (1.0 + in.Lambda);
  // a = a_min (1 + s), s on a log grid
  const int n = 241;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = std::pow(10.0, -4.0 + 7.0 * i / (n - 1));
  int best = 0;
  double best_lambda = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double lam = best_eps(in, a_min * (1.0 + s[i])).lambda;
    if (lam > best_lambda) {
      best_lambda = lam;
      best = i;
    }
  }
  const double lo = std::log(s[std::max(best - 1, 0)]);
  const double hi = std::log(s[std::min(best + 1, n - 1)]);
  const double ls = golden_max([&](double t) { return best_eps(in, a_min * (1.0 + std::exp(t))).lambda; },
                               lo, hi, 100);
  ConstantsLedger l = best_eps(in, a_min * (1.0 + std::exp(ls)));
  if (l.lambda < best_lambda) l = best_eps(in, a_min * (1.0 + s[best]));
  if (!l.feasible) throw Infeasible("optimize_epsilon: no (a, eps) gives lambda > 0");
  return l;
}

GronwallReport check_gronwall(const std::vector<HypoReport>& reports, double lambda)
{
  GronwallReport g;
  g.lambda = lambda;
  g.tolerance = reports.empty() ? 0.0 : 1e-6 * reports.front().norm2;
  g.max_slack = -std::numeric_limits<double>::infinity();
  g.max_D = -std::numeric_limits<double>::infinity();
  for (const HypoReport& r : reports) {
    const double slack = r.D_total + lambda * r.H;
    if (slack > g.max_slack) {
      g.max_slack = slack;
      g.worst_t = r.t;
    }
    g.max_D = std::max(g.max_D, r.D_total);
    ++g.steps;
  }
  g.passed = g.steps > 0 && g.max_slack <= g.tolerance;
  return g;
}

DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& norm2, double t0,
                        double t1)
{
  if (t.size() != norm2.size()) throw ShapeMismatch("fit_decay_rate: times and values differ in length");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t0 && t[i] <= t1 && norm2[i] > 1e-25) {
      xs.push_back(t[i]);
      ys.push_back(std::log(norm2[i]));
    }
  }
  if (xs.size() < 10) {
    std::ostringstream os;
    os << "fit_decay_rate: " << xs.size() << " usable samples in [" << t0 << ", " << t1 << "], need 10";
    throw DegenerateWindow(os.str());
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateWindow("fit_decay_rate: all samples at one time");
  DecayFit fit;
  fit.rate = -sxy / sxx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.samples = xs.size();
  return fit;
}

DecayFit fit_decay_rate(const std::vector<HypoReport>& reports, double t0, double t1)
{
  std::vector<double> t, n;
  for (const HypoReport& r : reports) {
    t.push_back(r.t);
    n.push_back(r.norm2);
  }
  return fit_decay_rate(t, n, t0, t1);
}

double hd_consistency_defect(const std::vector<HypoReport>& reports)
{
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < reports.size(); ++n) {
    const double dH = (reports[n + 1].H - reports[n - 1].H) / (reports[n + 1].t - reports[n - 1].t);
    worst = std::max(worst, std::abs(dH - reports[n].D_total));
  }
  return worst;
}

}  // namespace hypokinetic
