#include "hypokinetic/errors.hpp"
#include "hypokinetic/model.hpp"
#include "hypokinetic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hypokinetic {

namespace {

constexpr double kCertificateTolerance = 1e-3;

struct Extremum
{
  double value = -std::numeric_limits<double>::infinity();
  double x = 0.0;
};

template <class Fn>
Extremum max_over(const Axis& x, Fn&& g)
{
  Extremum e;
  for (double xi : x.nodes) {
    const double gi = g(xi);
    if (!(gi <= e.value)) {
      e.value = gi;
      e.x = xi;
    }
  }
  return e;
}

/// Max of g on the grid, certified on a grid of twice the radius with the same spacing.
template <class Fn>
PointwiseBound certified_max(const Axis& x, const Axis& wide, Fn&& g)
{
  const Extremum inner = max_over(x, g);
  const Extremum outer = max_over(wide, g);
  PointwiseBound b;
  b.value = inner.value;
  b.satisfied = std::isfinite(inner.value) &&
                outer.value <= inner.value + kCertificateTolerance * std::max(1.0, std::abs(inner.value));
  if (!b.satisfied) b.violation_x = outer.x;
  return b;
}

}  // namespace

bool HypothesisReport::all_satisfied() const noexcept
{
  return std::all_of(satisfied.begin(), satisfied.end(), [](bool s) { return s; });
}

void HypothesisReport::require() const
{
  for (std::size_t h = 0; h < satisfied.size(); ++h) {
    if (!satisfied[h]) {
      std::ostringstream os;
      os << "H" << h + 1 << " failed: " << detail[h];
      throw HypothesisFailed(os.str());
    }
  }
}

HypothesisReport check_hypotheses(const EquilibriumModel& model, const PhaseGrid& grid,
                                  const std::vector<double>& theta_grid, double gap_safety)
{
  if (model.equilibrium_case() != EquilibriumCase::Maxwellian) {
    throw std::invalid_argument("check_hypotheses: Maxwellian model required");
  }
  const Potential& V = model.potential();
  const Axis& x = grid.x();
  const Axis wide = make_node_axis(2 * (x.size() - 1) + 1, 2.0 * x.half_width);

  HypothesisReport r;
  r.truncation_radius = x.half_width;

  // H1: V, V', V'' finite at every node
  {
    bool ok = true;
    std::ostringstream os;
    for (const Axis* ax : {&x, &wide}) {
      for (double xi : ax->nodes) {
        if (ok && !(std::isfinite(V.value(xi)) && std::isfinite(V.gradient(xi)) && std::isfinite(V.hessian(xi)))) {
          ok = false;
          os << "non-finite derivative at x = " << xi;
        }
      }
    }
    r.satisfied[0] = ok;
    r.detail[0] = ok ? "V, V', V'' finite" : os.str();
  }

  // H2: e^{-V} has unit mass
  {
    double mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mass += x.weights[i] * std::exp(-model.V()[i]);
    r.normalization_defect = std::abs(mass - 1.0);
    r.satisfied[1] = r.normalization_defect <= 1e-8;
    std::ostringstream os;
    os << "|int e^{-V} - 1| = " << r.normalization_defect;
    r.detail[1] = os.str();
  }

  // H3: spectral gap
  double Lambda_used = std::numeric_limits<double>::infinity();
  try {
    const spectrum::GapReport gap = spectrum::poincare_constant(spectrum::boltzmann_problem(model), grid);
    r.Lambda = gap.Lambda;
    Lambda_used = gap.Lambda / gap_safety;
    r.satisfied[2] = true;
    std::ostringstream os;
    os << "Lambda = " << gap.Lambda << ", residual " << gap.residual;
    r.detail[2] = os.str();
  } catch (const NoGap& e) {
    r.satisfied[2] = false;
    r.detail[2] = e.what();
  }

  // H4: V'' <= theta/2 |V'|^2 + c0, scanned over theta
  {
    r.satisfied[3] = false;
    r.detail[3] = "no admissible theta";
    double best = -1.0;
    for (double theta : theta_grid) {
      const PointwiseBound b = certified_max(x, wide, [&](double xi) {
        const double g = V.gradient(xi);
        return V.hessian(xi) - 0.5 * theta * g * g;
      });
      if (!b.satisfied) {
        std::ostringstream os;
        os << "theta = " << theta << ": V'' - theta/2 |V'|^2 still growing at x = " << *b.violation_x;
        if (best < 0.0) r.detail[3] = os.str();
        continue;
      }
      ThetaCandidate c;
      c.theta = theta;
      c.c0 = std::max(b.value, 1e-12);
      c.kappa = std::isfinite(Lambda_used) ? improved_poincare_kappa(Lambda_used, theta, c.c0) : 0.0;
      r.theta_scan.push_back(c);
      if (c.kappa > best) {
        best = c.kappa;
        r.theta = c.theta;
        r.c0 = c.c0;
        r.kappa = c.kappa;
        r.satisfied[3] = true;
        std::ostringstream os;
        os << "theta = " << c.theta << ", c0 = " << c.c0;
        r.detail[3] = os.str();
      }
    }
  }

  // H5: |V''| <= c1 (1 + |V'|)
  {
    const PointwiseBound b = certified_max(x, wide, [&](double xi) {
      return std::abs(V.hessian(xi)) / (1.0 + std::abs(V.gradient(xi)));
    });
    r.c1 = std::max(b.value, 1e-12);
    r.satisfied[4] = b.satisfied;
    std::ostringstream os;
    if (b.satisfied) {
      os << "c1 = " << r.c1;
    } else {
      os << "|V''| / (1 + |V'|) still growing at x = " << *b.violation_x;
    }
    r.detail[4] = os.str();
  }

  // H6: |V'|^2 e^{-V} integrable
  {
    auto moment = [&](const Axis& ax) {
      double s = 0.0;
      for (std::size_t i = 0; i < ax.size(); ++i) {
        const double g = V.gradient(ax.nodes[i]);
        s += ax.weights[i] * g * g * std::exp(-V.value(ax.nodes[i]));
      }
      return s;
    };
    r.gradV_moment = moment(x);
    const double outer = moment(wide);
    r.satisfied[5] = std::isfinite(r.gradV_moment) &&
                     std::abs(outer - r.gradV_moment) <= kCertificateTolerance * std::abs(outer);
    std::ostringstream os;
    os << "int |V'|^2 e^{-V} = " << r.gradV_moment << " (" << outer << " at twice the radius)";
    r.detail[5] = os.str();
  }
  return r;
}

}  // namespace hypokinetic
