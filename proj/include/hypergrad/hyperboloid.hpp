#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hypergrad/minkowski.hpp"

// The hyperboloid model H^n: the set {x : <x,x> = -1, x_{n+1} > 0} in
// Minkowski space, with geodesic distance arccosh(-<u,v>), the exact
// exponential map, tangent projection, the distance gradient, and a
// gradient-descent loop built from those pieces.
namespace hypergrad {

// Distances below this are treated as coincident by the raw distance
// gradient, whose factor 1/sinh(d) blows up as d -> 0.
inline constexpr double kSingularDistance = 1e-8;

class HyperboloidPoint {
 public:
  // Checks |<x,x> + 1| <= kFormTolerance and that x lies on the upper sheet.
  static HyperboloidPoint validate(const MinkowskiVector& x);
  // Fast path for results that are on-manifold by construction.
  static HyperboloidPoint unchecked(MinkowskiVector x);

  const MinkowskiVector& vec() const { return vec_; }
  std::size_t dim() const { return vec_.dim(); }
  double operator[](std::size_t i) const { return vec_[i]; }

 private:
  explicit HyperboloidPoint(MinkowskiVector x) : vec_(std::move(x)) {}
  MinkowskiVector vec_;
};

// A vector in T_p H^n together with its base point; Minkowski-orthogonal to
// the base and spacelike (up to kFormTolerance).
class TangentVector {
 public:
  // Validates orthogonality and spacelikeness of v at p.
  static TangentVector at(const HyperboloidPoint& p, const MinkowskiVector& v);
  static TangentVector unchecked(HyperboloidPoint p, MinkowskiVector v);

  const HyperboloidPoint& base() const { return base_; }
  const MinkowskiVector& vec() const { return vec_; }
  double norm() const { return spacelike_norm(vec_); }

 private:
  TangentVector(HyperboloidPoint p, MinkowskiVector v)
      : base_(std::move(p)), vec_(std::move(v)) {}
  HyperboloidPoint base_;
  MinkowskiVector vec_;
};

// The point (0, ..., 0, 1).
HyperboloidPoint base_point(std::size_t n);

// x / sqrt(-<x,x>), correcting floating-point drift off the manifold.
// Requires <x,x> < 0 and positive last coordinate.
HyperboloidPoint renormalize(const MinkowskiVector& x);

// arccosh of -<u,v> clamped to [1, inf); symmetric and non-negative.
double distance(const HyperboloidPoint& u, const HyperboloidPoint& v);

// Projection onto T_p: g + <p,g>*p (the hyperboloid sign; the sphere uses
// the opposite one).
TangentVector project_to_tangent(const HyperboloidPoint& p,
                                 const MinkowskiVector& g);

// cosh(|v|)*p + sinh(|v|)*v/|v|, renormalized. For |v| < 1e-9 the
// limit form p + v is used (exact to O(|v|^2)).
HyperboloidPoint exp_map(const HyperboloidPoint& p, const TangentVector& v);

// Ambient gradient of dist(., v) at u: -(<u,v>^2 - 1)^{-1/2} * v. The sign
// flip of the last coordinate is already built into this expression; callers
// only need to project. Throws for nearly coincident points (the
// squared-distance path in frechet handles that case with its finite limit).
MinkowskiVector distance_gradient(const HyperboloidPoint& u,
                                  const HyperboloidPoint& v);

// Orthonormal basis of T_p obtained by projecting the ambient coordinate
// axes e_1..e_n and Gram-Schmidt-orthonormalizing under the Minkowski form.
std::vector<TangentVector> orthonormal_tangent_basis(const HyperboloidPoint& p);

// Stops at the first satisfied rule. Without a gradient-norm threshold only
// an exactly zero gradient stops the loop early; the optional target adds
// arrival-radius counting.
struct StoppingRule {
  std::size_t max_iters = 1000;
  std::optional<double> grad_norm_threshold;
  std::optional<HyperboloidPoint> target;
  double arrival_radius = 0.0;
};

enum class StopReason { Arrived, GradientConverged, IterationLimit, Diverged };

struct DescentTrace {
  HyperboloidPoint final_point;
  std::size_t steps = 0;
  double last_grad_norm = 0.0;
  StopReason reason = StopReason::IterationLimit;
  std::vector<HyperboloidPoint> iterates;  // filled only when recorded
};

// Steps this large only arise when a trial is diverging; allowing much more
// would overflow cosh in the update.
inline constexpr double kDivergenceGuard = 250.0;

// Repeats: check arrival at the current iterate, evaluate and project the
// gradient, check convergence, then update via the exponential map. grad_fn
// returns the ambient gradient; projection happens here. grad_fn producing
// non-finite values at an ordinary iterate aborts with a diagnostic; a step
// length beyond kDivergenceGuard stops with StopReason::Diverged instead.
DescentTrace gradient_descent(
    const std::function<MinkowskiVector(const HyperboloidPoint&)>& grad_fn,
    const HyperboloidPoint& start, double alpha, const StoppingRule& stop,
    bool record_iterates = false);

}  // namespace hypergrad
