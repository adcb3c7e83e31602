#pragma once

#include <cstddef>
#include <vector>

// Linear algebra of (n+1)-dimensional Minkowski space: the indefinite
// bilinear form sum(u_i v_i, i=1..n) - u_{n+1} v_{n+1}, ambient gradients
// (sign flip of the last partial), and norms of spacelike vectors.
namespace hypergrad {

// Absolute tolerance when classifying spacelike vectors; numerical tangent
// projections leave residuals of this order.
inline constexpr double kFormTolerance = 1e-9;

// A vector of n+1 finite coordinates, n >= 1. Carrier for points on the
// hyperboloid, tangent vectors, and ambient gradients.
class MinkowskiVector {
 public:
  // Validates length (>= 2) and finiteness of every entry.
  explicit MinkowskiVector(std::vector<double> coords);

  // Internal fast path for arithmetic whose inputs are already validated.
  static MinkowskiVector unchecked(std::vector<double> coords);

  std::size_t size() const { return coords_.size(); }
  std::size_t dim() const { return coords_.size() - 1; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool finite() const;

 private:
  MinkowskiVector() = default;
  std::vector<double> coords_;
};

// The indefinite form; summed left to right so results are bit-reproducible.
double minkowski_form(const MinkowskiVector& u, const MinkowskiVector& v);

// Flips the sign of the last partial derivative, turning the raw partials of
// a scalar function into its ambient Minkowski gradient. Involution.
MinkowskiVector ambient_gradient(const MinkowskiVector& partials);

// sqrt(<v,v>) for spacelike (tangent) vectors; <v,v> in [-kFormTolerance, 0)
// returns 0. Throws if the form is more negative than the tolerance.
double spacelike_norm(const MinkowskiVector& v);

// Elementwise helpers used across the library.
MinkowskiVector mink_add(const MinkowskiVector& u, const MinkowskiVector& v);
MinkowskiVector mink_sub(const MinkowskiVector& u, const MinkowskiVector& v);
MinkowskiVector mink_scale(double a, const MinkowskiVector& v);
// u + a*v, the common update shape.
MinkowskiVector mink_axpy(const MinkowskiVector& u, double a,
                          const MinkowskiVector& v);

}  // namespace hypergrad
