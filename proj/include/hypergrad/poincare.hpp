#pragma once

#include <cstddef>
#include <vector>

#include "hypergrad/hyperboloid.hpp"

// The Poincare ball model: distance inside the unit ball, conversions
// to/from the hyperboloid, the differential of the conversion (used to push
// hyperboloid gradients into ball coordinates), the additive retraction
// update with boundary rescue, the published ball-coordinate distance
// gradient, and the worst-case retraction-error diagnostic.
namespace hypergrad {

// Points escaping the ball during a retraction update are pulled back to
// this Euclidean norm.
inline constexpr double kBoundaryRescueNorm = 1.0 - 1e-5;

class PoincarePoint {
 public:
  // Checks finiteness and Euclidean norm strictly below 1.
  static PoincarePoint validate(const std::vector<double>& coords);
  static PoincarePoint unchecked(std::vector<double> coords);

  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double norm_squared() const;

 private:
  explicit PoincarePoint(std::vector<double> c) : coords_(std::move(c)) {}
  std::vector<double> coords_;
};

// arccosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))), clamped at 1 for round-off.
double pb_distance(const PoincarePoint& u, const PoincarePoint& v);

// (x_1, ..., x_n) / (x_{n+1} + 1).
PoincarePoint to_ball(const HyperboloidPoint& x);

// (2/(1-r^2)) * (y_1, ..., y_n, (1+r^2)/2), renormalized onto the manifold.
HyperboloidPoint from_ball(const PoincarePoint& y);

// Differential of to_ball at x applied to v:
// (v_i - x_i v_{n+1}/(x_{n+1}+1)) / (x_{n+1}+1). The result is the
// ball-coordinate image of the tangent vector; the experiment pipeline feeds
// it directly to retraction_step with no extra conformal rescaling.
std::vector<double> push_forward(const HyperboloidPoint& x,
                                 const TangentVector& v);

// psi - alpha*g; if that leaves the ball, the result is rescaled to
// Euclidean norm exactly kBoundaryRescueNorm. alpha must be positive.
PoincarePoint retraction_step(const PoincarePoint& psi,
                              const std::vector<double>& g, double alpha);

// Riemannian gradient of pb_distance(., v) at u in ball coordinates:
// the Euclidean gradient (via a = 1-|u|^2, b = 1-|v|^2,
// c = 1 + (2/ab)|u-v|^2) rescaled by the conformal factor ((1-|u|^2)/2)^2.
// Cross-check oracle only; the experiment derives ball gradients through
// push_forward instead. Throws for coincident points.
std::vector<double> pb_distance_gradient(const PoincarePoint& u,
                                         const PoincarePoint& v);

// Worst-case disagreement between the exact exponential map and the
// retraction for a step of the given length, taken from a point at
// hyperbolic distance d from the ball centre (n = 2): sweeps unit tangent
// directions, maps the step through the ball pipeline, and returns the
// maximal hyperbolic distance between the exact and retracted endpoints.
double retraction_error(double d, double step, int directions = 360);

}  // namespace hypergrad
