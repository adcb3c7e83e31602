#include "hypergrad/frechet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hypergrad/poincare.hpp"

namespace hypergrad {

PointCloud PointCloud::of(std::vector<HyperboloidPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("PointCloud needs at least one point");
  }
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) {
      throw std::invalid_argument("PointCloud: mixed dimensions");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!(distance(points[i], points[j]) > 0.0)) {
        throw std::invalid_argument("PointCloud: points " + std::to_string(i) +
                                    " and " + std::to_string(j) +
                                    " coincide");
      }
    }
  }
  return PointCloud(std::move(points));
}

double objective(const HyperboloidPoint& theta, const PointCloud& cloud) {
  double acc = 0.0;
  for (const auto& x : cloud.points()) {
    const double d = distance(theta, x);
    acc += d * d;
  }
  return acc / static_cast<double>(cloud.size());
}

MinkowskiVector objective_gradient(const HyperboloidPoint& theta,
                                   const PointCloud& cloud) {
  std::vector<double> acc(theta.vec().size(), 0.0);
  for (const auto& x : cloud.points()) {
    const double f = minkowski_form(theta.vec(), x.vec());
    const double d = std::acosh(std::max(-f, 1.0));
    // d / sinh(d), with sinh(d) computed as sqrt(f^2 - 1); the series keeps
    // the factor finite through d -> 0.
    const double factor =
        d < 1e-4 ? 1.0 - d * d / 6.0 : d / std::sqrt(f * f - 1.0);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= factor * x[i];
  }
  const double scale = 2.0 / static_cast<double>(cloud.size());
  for (double& a : acc) a *= scale;
  return MinkowskiVector::unchecked(std::move(acc));
}

namespace {

// Direction used by both trial pipelines: the gradient of (1/2)E. Under this
// scale alpha = 1 solves a one-point cloud in a single exact step, so alpha
// reads as a fraction of the ideal local step.
MinkowskiVector descent_direction(const HyperboloidPoint& theta,
                                  const PointCloud& cloud) {
  return mink_scale(0.5, objective_gradient(theta, cloud));
}

}  // namespace

FrechetMean solve_reference(const PointCloud& cloud) {
  return solve_reference(cloud, cloud[0]);
}

FrechetMean solve_reference(const PointCloud& cloud,
                            const HyperboloidPoint& start) {
  StoppingRule stop;
  stop.max_iters = 100000;
  stop.grad_norm_threshold = 1e-9;
  DescentTrace trace = gradient_descent(
      [&cloud](const HyperboloidPoint& p) {
        return objective_gradient(p, cloud);
      },
      start, 0.1, stop);
  if (trace.reason != StopReason::GradientConverged) {
    throw std::runtime_error(
        "no convergence: reference solve stopped after " +
        std::to_string(trace.steps) +
        " steps with gradient norm " + std::to_string(trace.last_grad_norm));
  }
  return FrechetMean{trace.final_point, trace.steps};
}

DescentOutcome descend_exponential(const PointCloud& cloud,
                                   const HyperboloidPoint& theta0, double alpha,
                                   const HyperboloidPoint& target, double tol,
                                   std::size_t cap, bool record_iterates) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("descend_exponential: tol must be positive");
  }
  if (cap < 1) {
    throw std::invalid_argument("descend_exponential: cap must be >= 1");
  }
  StoppingRule stop;
  stop.max_iters = cap;
  stop.target = target;
  stop.arrival_radius = tol;
  DescentTrace trace = gradient_descent(
      [&cloud](const HyperboloidPoint& p) {
        return descent_direction(p, cloud);
      },
      theta0, alpha, stop, record_iterates);
  DescentOutcome out{std::nullopt, trace.steps,
                     distance(trace.final_point, target), trace.final_point,
                     std::move(trace.iterates)};
  if (trace.reason == StopReason::Arrived) out.steps = trace.steps;
  return out;
}

DescentOutcome descend_retraction(const PointCloud& cloud,
                                  const HyperboloidPoint& theta0, double alpha,
                                  const HyperboloidPoint& target, double tol,
                                  std::size_t cap, bool record_iterates) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("descend_retraction: tol must be positive");
  }
  if (cap < 1) {
    throw std::invalid_argument("descend_retraction: cap must be >= 1");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("descend_retraction: alpha must be positive");
  }
  HyperboloidPoint theta = theta0;
  DescentOutcome out{std::nullopt, 0, 0.0, theta, {}};
  if (record_iterates) out.iterates.push_back(theta);
  for (std::size_t k = 0;; ++k) {
    if (distance(theta, target) < tol) {
      out.steps = k;
      break;
    }
    if (k == cap) break;
    TangentVector g = project_to_tangent(theta, descent_direction(theta, cloud));
    PoincarePoint psi = to_ball(theta);
    std::vector<double> gb = push_forward(theta, g);
    theta = from_ball(retraction_step(psi, gb, alpha));
    out.trace_length = k + 1;
    if (record_iterates) out.iterates.push_back(theta);
  }
  out.final_point = theta;
  out.final_distance_to_target = distance(theta, target);
  return out;
}

}  // namespace hypergrad
