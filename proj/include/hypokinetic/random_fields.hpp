#pragma once

#include "hypokinetic/grid.hpp"
#include "hypokinetic/model.hpp"

#include <cstdint>
#include <random>

namespace hypokinetic {

/// T_n(x / sqrt(s^2 + x^2)): a Chebyshev polynomial of a bounded map of the line.
double bounded_chebyshev(int n, double x, double scale);

struct RandomFieldOptions
{
  int degree = 5;
  double scale = 1.5;
};

/// sum_{m <= degree} c_m T_m(x / sqrt(s^2 + x^2)), c_m ~ N(0, 1) / (1 + m)
SpatialField random_smooth_function(const Axis& x, std::mt19937_64& rng,
                                    const RandomFieldOptions& opt = {});

/// F(x, v) sum_{m + n <= degree} c_mn T_m(x) T_n(v) in the bounded maps.
PhaseField random_phase_field(const EquilibriumModel& model, const PhaseGrid& grid,
                              std::mt19937_64& rng, const RandomFieldOptions& opt = {});

/// random_phase_field with its total mass removed along F.
PhaseField random_perturbation(const EquilibriumModel& model, const PhaseGrid& grid,
                               std::mt19937_64& rng, const RandomFieldOptions& opt = {});

}  // namespace hypokinetic
