#include "hypokinetic/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hypokinetic {

double bounded_chebyshev(int n, double x, double scale)
{
  const double t = x / std::sqrt(scale * scale + x * x);
  return std::cos(n * std::acos(std::clamp(t, -1.0, 1.0)));
}

SpatialField random_smooth_function(const Axis& x, std::mt19937_64& rng, const RandomFieldOptions& opt)
{
  std::normal_distribution<double> normal;
  std::vector<double> c(opt.degree + 1);
  for (int m = 0; m <= opt.degree; ++m) c[m] = normal(rng) / (1.0 + m);
  SpatialField u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (int m = 0; m <= opt.degree; ++m) s += c[m] * bounded_chebyshev(m, x.nodes[i], opt.scale);
    u[i] = s;
  }
  return u;
}

PhaseField random_phase_field(const EquilibriumModel& model, const PhaseGrid& grid,
                              std::mt19937_64& rng, const RandomFieldOptions& opt)
{
  const int p = opt.degree;
  std::normal_distribution<double> normal;
  std::vector<double> c((p + 1) * (p + 1), 0.0);
  for (int m = 0; m <= p; ++m) {
    for (int n = 0; m + n <= p; ++n) c[m * (p + 1) + n] = normal(rng) / (1.0 + m + n);
  }
  std::vector<double> tx((p + 1) * grid.nx()), tv((p + 1) * grid.nv());
  for (int m = 0; m <= p; ++m) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      tx[m * grid.nx() + i] = bounded_chebyshev(m, grid.x().nodes[i], opt.scale);
    }
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      tv[m * grid.nv() + j] = bounded_chebyshev(m, grid.v().nodes[j], opt.scale);
    }
  }
  const auto& F = model.F_table();
  PhaseField f(grid);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      double s = 0.0;
      for (int m = 0; m <= p; ++m) {
        for (int n = 0; m + n <= p; ++n) {
          s += c[m * (p + 1) + n] * tx[m * grid.nx() + i] * tv[n * grid.nv() + j];
        }
      }
      f(i, j) = s * F(i, j);
    }
  }
  return f;
}

PhaseField random_perturbation(const EquilibriumModel& model, const PhaseGrid& grid,
                               std::mt19937_64& rng, const RandomFieldOptions& opt)
{
  PhaseField f = random_phase_field(model, grid, rng, opt);
  const double mass = total_mass(f, grid) / total_mass(model.F_table(), grid);
  f.axpy(-mass, model.F_table());
  return f;
}

}  // namespace hypokinetic
