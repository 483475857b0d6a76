#include "hypokinetic/evolve.hpp"

#include "hypokinetic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypokinetic {

PhaseField relax_step(const PhaseField& f, double dt, const ops::KineticOperators& ops)
{
  if (dt < 0.0) throw std::invalid_argument("relax_step: dt must be nonnegative");
  PhaseField pi = ops.apply_Pi(f);
  PhaseField out = f;
  out -= pi;
  out *= std::exp(-dt);
  out += pi;
  return out;
}

PhaseField transport_step(const PhaseField& f, double dt, const ops::KineticOperators& ops)
{
  if (dt > ops.cfl_bound()) {
    std::ostringstream os;
    os << "transport_step: dt = " << dt << " exceeds the CFL bound " << ops.cfl_bound();
    throw CFLViolation(os.str());
  }
  // f' = -T f
  PhaseField k1 = ops.apply_T(f);
  PhaseField k2 = ops.apply_T(f - (0.5 * dt) * k1);
  PhaseField k3 = ops.apply_T(f - (0.5 * dt) * k2);
  PhaseField k4 = ops.apply_T(f - dt * k3);
  PhaseField out = f;
  out.axpy(-dt / 6.0, k1);
  out.axpy(-dt / 3.0, k2);
  out.axpy(-dt / 3.0, k3);
  out.axpy(-dt / 6.0, k4);
  return out;
}

PhaseField transport_flow(const PhaseField& f, double dt, const ops::KineticOperators& ops)
{
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(dt / ops.cfl_bound())));
  const double h = dt / static_cast<double>(n);
  PhaseField out = f;
  for (std::size_t s = 0; s < n; ++s) out = transport_step(out, h, ops);
  return out;
}

PhaseField step_strang(const PhaseField& f, double dt, const ops::KineticOperators& ops, bool transport)
{
  if (!transport) return relax_step(f, dt, ops);
  return relax_step(transport_flow(relax_step(f, 0.5 * dt, ops), dt, ops), 0.5 * dt, ops);
}

double Trajectory::max_mass_drift() const
{
  double worst = 0.0;
  for (double m : mass) worst = std::max(worst, std::abs(m - mass.front()));
  return worst;
}

double Trajectory::max_norm_increase() const
{
  double worst = 0.0;
  for (std::size_t n = 1; n < deviation.size(); ++n) {
    worst = std::max(worst, std::sqrt(deviation[n]) - std::sqrt(deviation[n - 1]));
  }
  return worst;
}

Trajectory run(const PhaseField& f0, const RunOptions& opt, const ops::KineticOperators& ops)
{
  require_shape(f0, ops.grid(), "run");
  if (!(opt.dt > 0.0) || !(opt.t_end >= 0.0)) throw std::invalid_argument("run: need dt > 0 and t_end >= 0");
  if (opt.record_every == 0) throw std::invalid_argument("run: record_every must be positive");

  const std::size_t steps = static_cast<std::size_t>(std::ceil(opt.t_end / opt.dt - 1e-9));
  const double dt = steps > 0 ? opt.t_end / static_cast<double>(steps) : opt.dt;
  const PhaseField& F = ops.model().F_table();
  const PhaseGrid& grid = ops.grid();

  Trajectory tr;
  tr.dt = dt;
  PhaseField f = f0;
  auto record = [&](std::size_t n) {
    const double t = static_cast<double>(n) * dt;
    const PhaseField g = f - F;
    tr.mass.push_back(total_mass(f, grid));
    tr.deviation.push_back(ops.norm2(g));
    if (n % opt.record_every == 0 || n == steps) {
      tr.times.push_back(t);
      tr.reports.push_back(observe(ops, g, opt.eps, opt.lambda, t));
    }
    if (opt.snapshot_every > 0 && (n % opt.snapshot_every == 0 || n == steps)) {
      tr.snapshots.push_back({t, f});
    }
  };

  record(0);
  for (std::size_t n = 1; n <= steps; ++n) {
    f = step_strang(f, dt, ops, opt.transport);
    if (!f.all_finite()) {
      std::ostringstream os;
      os << "run: non-finite state at step " << n;
      throw NonFinite(os.str(), n);
    }
    record(n);
  }
  tr.final_state = std::move(f);
  return tr;
}

}  // namespace hypokinetic
