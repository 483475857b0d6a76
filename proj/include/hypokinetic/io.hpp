#pragma once

#include "hypokinetic/grid.hpp"
#include "hypokinetic/hypo.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hypokinetic::io {

/// Binary dump: uint64 N_x, uint64 N_v, double L_x, double L_v, then N_x * N_v
/// row-major doubles (native byte order).
void write_binary(const std::filesystem::path& path, const PhaseField& f, const PhaseGrid& grid);

struct BinaryDump
{
  std::size_t nx = 0;
  std::size_t nv = 0;
  double lx = 0.0;
  double lv = 0.0;
  PhaseField f;
};

BinaryDump read_binary(const std::filesystem::path& path);

/// x,v,f rows; intended for small grids.
void write_csv(std::ostream& os, const PhaseField& f, const PhaseGrid& grid);

/// "# hypokinetic v1" then t,norm2,pi_norm2,perp_norm2,H,D_total,D1..D5,gronwall_slack.
void write_trajectory_csv(std::ostream& os, const std::vector<HypoReport>& reports);

}  // namespace hypokinetic::io
