#include "hypokinetic/errors.hpp"
#include "hypokinetic/grid.hpp"
#include "hypokinetic/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

using namespace hypokinetic;

TEST_CASE("node axis: trapezoid weights integrate polynomials of degree 1 exactly")
{
  const Axis x = make_node_axis(17, 2.0);
  CHECK(x.size() == 17);
  CHECK(x.nodes.front() == doctest::Approx(-2.0));
  CHECK(x.nodes.back() == doctest::Approx(2.0));
  CHECK(x.spacing == doctest::Approx(0.25));
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += x.weights[i];
    s1 += x.weights[i] * (x.nodes[i] + 1.0);
  }
  CHECK(s0 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s1 == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("cell axis is symmetric and spectrally accurate on Gaussian moments")
{
  const Axis v = make_cell_axis(64, 8.0);
  for (std::size_t j = 0; j < v.size(); ++j) CHECK(v.nodes[j] == doctest::Approx(-v.nodes[v.size() - 1 - j]));
  double m0 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double g = std::exp(-0.5 * v.nodes[j] * v.nodes[j]) / std::sqrt(2.0 * std::numbers::pi);
    m0 += v.weights[j] * g;
    m2 += v.weights[j] * g * v.nodes[j] * v.nodes[j];
    m4 += v.weights[j] * g * std::pow(v.nodes[j], 4);
  }
  CHECK(std::abs(m0 - 1.0) < 1e-13);
  CHECK(std::abs(m2 - 1.0) < 1e-13);
  CHECK(std::abs(m4 - 3.0) < 1e-11);
}

TEST_CASE("Gauss-Hermite axis: exact on polynomial moments against exp(-v^2/2)")
{
  const Axis v = make_gauss_hermite_axis(20);
  CHECK_FALSE(v.uniform);
  double m0 = 0.0, m2 = 0.0, m6 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double g = std::exp(-0.5 * v.nodes[j] * v.nodes[j]);
    m0 += v.weights[j] * g;
    m2 += v.weights[j] * g * v.nodes[j] * v.nodes[j];
    m6 += v.weights[j] * g * std::pow(v.nodes[j], 6);
  }
  const double s = std::sqrt(2.0 * std::numbers::pi);
  CHECK(m0 == doctest::Approx(s).epsilon(1e-12));
  CHECK(m2 == doctest::Approx(s).epsilon(1e-12));
  CHECK(m6 == doctest::Approx(15.0 * s).epsilon(1e-11));
}

TEST_CASE("operators needing a velocity derivative reject Gauss-Hermite grids")
{
  const PhaseGrid g(9, 2.0, 8, 0.0, VelocityQuadrature::GaussHermite);
  CHECK_THROWS_AS(g.require_uniform_velocity("test"), UnsupportedGrid);
}

TEST_CASE("phase field algebra and moments")
{
  const PhaseGrid g(5, 1.0, 4, 2.0);
  PhaseField f(g, 1.0);
  PhaseField h(g, 2.0);
  CHECK((f + h)[3] == 3.0);
  CHECK((h - f)[7] == 1.0);
  CHECK((2.0 * h)(1, 2) == 4.0);
  f.axpy(0.5, h);
  CHECK(f(4, 3) == 2.0);
  CHECK(total_mass(PhaseField(g, 1.0), g) == doctest::Approx(2.0 * 4.0));
  const SpatialField rho = density(PhaseField(g, 1.0), g);
  CHECK(rho[2] == doctest::Approx(4.0));
  const SpatialField j = flux(PhaseField(g, 1.0), g);
  CHECK(std::abs(j[2]) < 1e-14);
  CHECK_THROWS_AS(require_shape(PhaseField(3, 3), g, "test"), ShapeMismatch);
  PhaseField bad(g);
  bad[0] = std::nan("");
  CHECK_FALSE(bad.all_finite());
}

TEST_CASE("binary dump round trip")
{
  const PhaseGrid g(5, 1.5, 4, 3.0);
  PhaseField f(g);
  for (std::size_t a = 0; a < f.size(); ++a) f[a] = 0.25 * static_cast<double>(a) - 1.0;
  const auto path = std::filesystem::temp_directory_path() / "hypokinetic_dump_test.bin";
  io::write_binary(path, f, g);
  CHECK(std::filesystem::file_size(path) == 4 * 8 + f.size() * 8);
  const io::BinaryDump d = io::read_binary(path);
  CHECK(d.nx == 5);
  CHECK(d.nv == 4);
  CHECK(d.lx == 1.5);
  CHECK(d.lv == 3.0);
  for (std::size_t a = 0; a < f.size(); ++a) CHECK(d.f[a] == f[a]);
  std::filesystem::remove(path);

  std::ostringstream os;
  io::write_csv(os, f, g);
  CHECK(os.str().rfind("x,v,f\n", 0) == 0);
}
