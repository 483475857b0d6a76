#pragma once

#include "hypokinetic/hypo.hpp"
#include "hypokinetic/ops.hpp"

#include <cstddef>
#include <vector>

namespace hypokinetic {

/// Exact flow of f_t = L f:  Pi f + e^{-dt} (f - Pi f).
PhaseField relax_step(const PhaseField& f, double dt, const ops::KineticOperators& ops);

/// One classical RK4 step of f_t = -T f.  T is skew in L^2(dmu), so the step is a
/// contraction whenever dt <= ops.cfl_bound(); throws CFLViolation otherwise.
PhaseField transport_step(const PhaseField& f, double dt, const ops::KineticOperators& ops);

/// Transport over dt in the fewest equal RK4 substeps allowed by the CFL bound.
PhaseField transport_flow(const PhaseField& f, double dt, const ops::KineticOperators& ops);

/// relax(dt/2) o transport(dt) o relax(dt/2); with transport disabled this is relax(dt).
PhaseField step_strang(const PhaseField& f, double dt, const ops::KineticOperators& ops,
                       bool transport = true);

struct RunOptions
{
  double t_end = 20.0;
  double dt = 0.01;
  std::size_t record_every = 1;
  double eps = 0.0;
  /// lambda used for the recorded Gronwall slack
  double lambda = 0.0;
  bool transport = true;
  /// 0 disables snapshots
  std::size_t snapshot_every = 0;
};

struct Snapshot
{
  double t = 0.0;
  PhaseField f;
};

struct Trajectory
{
  std::vector<double> times;        ///< recorded times
  std::vector<HypoReport> reports;  ///< observables of f - F at the recorded times
  /// per step, including t = 0
  std::vector<double> mass;
  std::vector<double> deviation;  ///< |f - F|^2
  std::vector<Snapshot> snapshots;
  PhaseField final_state;
  double dt = 0.0;

  double max_mass_drift() const;
  /// max over steps of |f_{n+1} - F| - |f_n - F|
  double max_norm_increase() const;
};

/// Steps f0 to t_end (dt is shrunk so that an integer number of steps fits).
/// Throws NonFinite with the step index if the state blows up.
Trajectory run(const PhaseField& f0, const RunOptions& options, const ops::KineticOperators& ops);

}  // namespace hypokinetic
