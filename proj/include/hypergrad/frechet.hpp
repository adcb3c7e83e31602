#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypergrad/hyperboloid.hpp"

// The Frechet-mean problem on H^n: the mean-squared-distance objective, its
// ambient Minkowski gradient, a high-precision reference solver, and the two
// competing update pipelines (exact exponential step vs. retraction through
// the Poincare ball) measured in steps-to-arrival.
namespace hypergrad {

// A set of s >= 1 distinct points of common dimension.
class PointCloud {
 public:
  static PointCloud of(std::vector<HyperboloidPoint> points);

  const std::vector<HyperboloidPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const HyperboloidPoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  explicit PointCloud(std::vector<HyperboloidPoint> p) : points_(std::move(p)) {}
  std::vector<HyperboloidPoint> points_;
};

// E(theta) = (1/s) * sum dist^2(theta, x_i).
double objective(const HyperboloidPoint& theta, const PointCloud& cloud);

// Ambient Minkowski gradient of E: (2/s) * sum -(d_i/sinh d_i) * x_i, with
// the series 1 - d^2/6 for d_i < 1e-4 where 1/sinh would lose precision.
// Like distance_gradient, the result is already sign-corrected; callers
// project onto the tangent space.
MinkowskiVector objective_gradient(const HyperboloidPoint& theta,
                                   const PointCloud& cloud);

struct FrechetMean {
  HyperboloidPoint point;
  std::size_t iterations;
};

// Exponential-map descent from start (default: the first cloud point) at
// rate 0.1 until the projected gradient norm falls below 1e-9; the result is
// the unique minimizer of E (E is convex on H^n). Throws after 1e5 steps.
FrechetMean solve_reference(const PointCloud& cloud);
FrechetMean solve_reference(const PointCloud& cloud,
                            const HyperboloidPoint& start);

// One steps-to-arrival trial. steps is the first k (counting completed
// updates, checked before the first one) with dist(theta_k, target) < tol,
// or empty if the trial hit the cap or diverged first.
struct DescentOutcome {
  std::optional<std::size_t> steps;
  std::size_t trace_length = 0;  // updates actually performed
  double final_distance_to_target = 0.0;
  HyperboloidPoint final_point;
  std::vector<HyperboloidPoint> iterates;  // filled only when recorded
};

// theta <- Exp_theta(-alpha * G(theta)) where G is the projected gradient of
// (1/2)E, i.e. half of objective_gradient. Under this normalization alpha=1
// is the exact one-shot step for a one-point cloud, making alpha a fraction
// of the ideal local step.
DescentOutcome descend_exponential(const PointCloud& cloud,
                                   const HyperboloidPoint& theta0, double alpha,
                                   const HyperboloidPoint& target, double tol,
                                   std::size_t cap,
                                   bool record_iterates = false);

// Same objective, same gradient scale and stopping protocol, but the update
// runs through the ball: psi = to_ball(theta), g = push_forward(theta, G),
// psi' = retraction_step(psi, g, alpha) (with boundary rescue), theta' =
// from_ball(psi'). Arrival is measured in hyperboloid distance after mapping
// back.
DescentOutcome descend_retraction(const PointCloud& cloud,
                                  const HyperboloidPoint& theta0, double alpha,
                                  const HyperboloidPoint& target, double tol,
                                  std::size_t cap,
                                  bool record_iterates = false);

}  // namespace hypergrad
