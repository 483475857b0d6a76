#include "hypokinetic/io.hpp"

#include "hypokinetic/errors.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>

namespace hypokinetic::io {

void write_binary(const std::filesystem::path& path, const PhaseField& f, const PhaseGrid& grid)
{
  require_shape(f, grid, "write_binary");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_binary: cannot open " + path.string());
  const std::uint64_t header[2] = {grid.nx(), grid.nv()};
  const double lengths[2] = {grid.x().half_width, grid.v().half_width};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  os.write(reinterpret_cast<const char*>(lengths), sizeof(lengths));
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!os) throw Error("write_binary: write failed for " + path.string());
}

BinaryDump read_binary(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_binary: cannot open " + path.string());
  std::uint64_t header[2];
  double lengths[2];
  is.read(reinterpret_cast<char*>(header), sizeof(header));
  is.read(reinterpret_cast<char*>(lengths), sizeof(lengths));
  if (!is) throw Error("read_binary: truncated header in " + path.string());
  BinaryDump d;
  d.nx = header[0];
  d.nv = header[1];
  d.lx = lengths[0];
  d.lv = lengths[1];
  d.f = PhaseField(d.nx, d.nv);
  is.read(reinterpret_cast<char*>(d.f.values().data()),
          static_cast<std::streamsize>(d.f.size() * sizeof(double)));
  if (!is) throw Error("read_binary: truncated data in " + path.string());
  return d;
}

void write_csv(std::ostream& os, const PhaseField& f, const PhaseGrid& grid)
{
  require_shape(f, grid, "write_csv");
  const auto old = os.precision(17);
  os << "x,v,f\n";
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      os << grid.x().nodes[i] << ',' << grid.v().nodes[j] << ',' << f(i, j) << '\n';
    }
  }
  os.precision(old);
}

void write_trajectory_csv(std::ostream& os, const std::vector<HypoReport>& reports)
{
  const auto old = os.precision(17);
  os << "# hypokinetic v1\n"
     << "t,norm2,pi_norm2,perp_norm2,H,D_total,D1,D2,D3,D4,D5,gronwall_slack\n";
  for (const HypoReport& r : reports) {
    os << r.t << ',' << r.norm2 << ',' << r.pi_norm2 << ',' << r.perp_norm2 << ',' << r.H << ','
       << r.D_total;
    for (double d : r.D_terms) os << ',' << d;
    os << ',' << r.gronwall_slack << '\n';
  }
  os.precision(old);
}

}  // namespace hypokinetic::io
