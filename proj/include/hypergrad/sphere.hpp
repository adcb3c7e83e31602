#pragma once

#include <cstddef>
#include <vector>

// The spherical analogue of the hyperboloid code paths: distance by planar
// angle, Euclidean tangent projection, and the cos/sin exponential map. These
// exist as a structurally identical cross-validation target for the
// hyperboloid (same algorithms, opposite projection sign, cos/sin for
// cosh/sinh); they are not part of the experiment harness.
namespace hypergrad {

class SpherePoint {
 public:
  // Checks | |x| - 1 | <= 1e-9 and finiteness.
  static SpherePoint validate(const std::vector<double>& coords);
  static SpherePoint unchecked(std::vector<double> coords);

  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  explicit SpherePoint(std::vector<double> c) : coords_(std::move(c)) {}
  std::vector<double> coords_;
};

// arccos of the dot product, clamped to [-1, 1]; value in [0, pi].
double sphere_distance(const SpherePoint& u, const SpherePoint& v);

// g - <p,g>*p (note the opposite sign relative to the hyperboloid).
std::vector<double> sphere_project(const SpherePoint& p,
                                   const std::vector<double>& g);

// cos(|v|)*p + sin(|v|)*v/|v|; |v| < 1e-9 returns the renormalized p + v.
// Valid for |v| <= pi (cut locus beyond).
SpherePoint sphere_exp(const SpherePoint& p, const std::vector<double>& v);

}  // namespace hypergrad
