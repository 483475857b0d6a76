#pragma once

#include "hypokinetic/grid.hpp"

#include <iosfwd>
#include <vector>

namespace hypokinetic::ops {

/// Discrete form of  weight0 u - (weight1 u')'  on the x nodes.
///
/// Fluxes live at the half nodes x_{i+1/2}, with weight1 averaged there, and
/// vanish outside the truncated domain.  The stored matrix is the symmetric
/// tridiagonal W_x E where W_x holds the x quadrature weights, so that
/// u . (W_x E u) = sum w_x weight0 u^2 + sum h weight1_{i+1/2} (Du)_{i+1/2}^2.
class ConservativeForm
{
 public:
  ConservativeForm(const SpatialField& weight0, const SpatialField& weight1, const Axis& x);

  std::size_t size() const noexcept { return diag_.size(); }
  const std::vector<double>& diagonal() const noexcept { return diag_; }
  /// off[i] couples i and i+1
  const std::vector<double>& off_diagonal() const noexcept { return off_; }
  const std::vector<double>& half_weight() const noexcept { return half_weight_; }
  const Axis& axis() const noexcept { return *x_; }

  /// (W_x E) u
  std::vector<double> apply_symmetric(std::span<const double> u) const;
  /// E u, i.e. the left-hand side in density form
  SpatialField apply(const SpatialField& u) const;

 private:
  const Axis* x_;
  std::vector<double> diag_, off_, half_weight_;
};

/// LDL^T factorization of a ConservativeForm; throws SingularSystem when the
/// form is not positive definite.
class EllipticSolver
{
 public:
  explicit EllipticSolver(ConservativeForm form);

  const ConservativeForm& form() const noexcept { return form_; }
  /// Solves E u = rhs (rhs in density form).
  SpatialField solve(const SpatialField& rhs) const;
  /// Solves (W_x E) u = b.
  std::vector<double> solve_symmetric(std::span<const double> b) const;
  /// ||W_x (E u - rhs)|| / ||W_x rhs||
  double relative_residual(const SpatialField& u, const SpatialField& rhs) const;

 private:
  ConservativeForm form_;
  std::vector<double> d_, l_;
};

/// Solves weight0 u - (weight1 u')' = rhs; residual is checked at 1e-10 relative.
SpatialField solve_elliptic(const SpatialField& rhs, const SpatialField& weight0,
                            const SpatialField& weight1, const PhaseGrid& grid);

/// node,weight0,weight1,rhs,u rows for inspecting one solve
void write_elliptic_csv(std::ostream& os, const Axis& x, const SpatialField& weight0,
                        const SpatialField& weight1, const SpatialField& rhs, const SpatialField& u);

/// (u_{i+1} - u_i) / h at the n-1 half nodes
std::vector<double> half_gradient(const SpatialField& u, const Axis& x);
/// average of the two adjacent half-node gradients (a missing one counts as 0)
SpatialField nodal_gradient(const SpatialField& u, const Axis& x);
/// (Du_{i+1/2} - Du_{i-1/2}) / h, missing half-node gradients count as 0
SpatialField second_derivative(const SpatialField& u, const Axis& x);

}  // namespace hypokinetic::ops
