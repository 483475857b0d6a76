#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hypokinetic {

/// One-dimensional set of quadrature nodes and positive weights.
struct Axis
{
  std::vector<double> nodes;
  std::vector<double> weights;
  double half_width = 0.0;  ///< truncation radius L
  double spacing = 0.0;     ///< node spacing; 0 for non-uniform rules
  bool uniform = true;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Uniform nodes on [-L, L] including both endpoints, trapezoid weights.
Axis make_node_axis(std::size_t n, double half_width);

/// Cell-centred uniform nodes on [-L, L] (midpoint weights).  Symmetric about 0.
Axis make_cell_axis(std::size_t n, double half_width);

/// Gauss-Hermite nodes for the weight exp(-v^2/2) with the weight folded back
/// in, so that sum_j w_j g(v_j) approximates the plain integral of g.
Axis make_gauss_hermite_axis(std::size_t n);

enum class VelocityQuadrature { Uniform, GaussHermite };

/// Tensor grid in (x, v).  Immutable after construction.
class PhaseGrid
{
 public:
  PhaseGrid(std::size_t nx, double lx, std::size_t nv, double lv,
            VelocityQuadrature vq = VelocityQuadrature::Uniform);

  const Axis& x() const noexcept { return x_; }
  const Axis& v() const noexcept { return v_; }
  std::size_t nx() const noexcept { return x_.size(); }
  std::size_t nv() const noexcept { return v_.size(); }
  std::size_t size() const noexcept { return nx() * nv(); }
  double hx() const noexcept { return x_.spacing; }
  double hv() const noexcept { return v_.spacing; }
  VelocityQuadrature velocity_quadrature() const noexcept { return vq_; }

  /// Throws UnsupportedGrid unless the velocity axis is uniform.
  void require_uniform_velocity(const char* who) const;

 private:
  Axis x_;
  Axis v_;
  VelocityQuadrature vq_;
};

/// A function of x alone sampled at the x nodes.
class SpatialField
{
 public:
  SpatialField() = default;
  explicit SpatialField(std::size_t n, double value = 0.0)
      : values_(n, value)
  {
  }
  explicit SpatialField(std::vector<double> values)
      : values_(std::move(values))
  {
  }

  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
};

/// Samples f(x_i, v_j), row-major in (i, j).
class PhaseField
{
 public:
  PhaseField() = default;
  PhaseField(std::size_t nx, std::size_t nv, double value = 0.0)
      : nx_(nx)
      , nv_(nv)
      , values_(nx * nv, value)
  {
  }
  explicit PhaseField(const PhaseGrid& grid, double value = 0.0)
      : PhaseField(grid.nx(), grid.nv(), value)
  {
  }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * nv_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * nv_ + j]; }
  double& operator[](std::size_t a) { return values_[a]; }
  double operator[](std::size_t a) const { return values_[a]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool same_shape(const PhaseField& o) const noexcept { return nx_ == o.nx_ && nv_ == o.nv_; }
  bool all_finite() const noexcept;

  PhaseField& operator+=(const PhaseField& o);
  PhaseField& operator-=(const PhaseField& o);
  PhaseField& operator*=(double s);
  /// this += s * o
  PhaseField& axpy(double s, const PhaseField& o);

 private:
  std::size_t nx_ = 0;
  std::size_t nv_ = 0;
  std::vector<double> values_;
};

PhaseField operator+(PhaseField a, const PhaseField& b);
PhaseField operator-(PhaseField a, const PhaseField& b);
PhaseField operator*(double s, PhaseField a);

/// sum_ij w_x w_v f g / F: the scalar product of L^2(F^{-1} dx dv).
/// `equilibrium` holds F at the nodes.
double inner_mu(const PhaseField& f, const PhaseField& g, const PhaseGrid& grid,
                const PhaseField& equilibrium);

/// rho(f)_i = sum_j w_v f_ij
SpatialField density(const PhaseField& f, const PhaseGrid& grid);

/// j(f)_i = sum_j w_v v_j f_ij
SpatialField flux(const PhaseField& f, const PhaseGrid& grid);

/// sum_j w_v v_j^p f_ij
SpatialField velocity_moment(const PhaseField& f, const PhaseGrid& grid, int power);

/// sum_i w_x weight_i u_i w_i
double inner_weighted(const SpatialField& u, const SpatialField& w, const SpatialField& weight,
                      const PhaseGrid& grid);

/// sum_ij w_x w_v f_ij
double total_mass(const PhaseField& f, const PhaseGrid& grid);

void require_shape(const PhaseField& f, const PhaseGrid& grid, const char* who);
void require_shape(const SpatialField& u, const PhaseGrid& grid, const char* who);

}  // namespace hypokinetic
