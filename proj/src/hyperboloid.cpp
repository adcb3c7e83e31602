#include "hypergrad/hyperboloid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hypergrad {

HyperboloidPoint HyperboloidPoint::validate(const MinkowskiVector& x) {
  const double q = minkowski_form(x, x);
  const double residual = std::abs(q + 1.0);
  if (residual > kFormTolerance) {
    throw std::invalid_argument("off-manifold: |<x,x>+1| = " +
                                std::to_string(residual));
  }
  if (x[x.dim()] <= 0.0) {
    throw std::invalid_argument("off-manifold: wrong sheet (last coordinate " +
                                std::to_string(x[x.dim()]) + ")");
  }
  return HyperboloidPoint(x);
}

HyperboloidPoint HyperboloidPoint::unchecked(MinkowskiVector x) {
  return HyperboloidPoint(std::move(x));
}

TangentVector TangentVector::at(const HyperboloidPoint& p,
                                const MinkowskiVector& v) {
  const double residual = std::abs(minkowski_form(p.vec(), v));
  if (residual > kFormTolerance) {
    throw std::invalid_argument("not tangent: |<p,v>| = " +
                                std::to_string(residual));
  }
  if (minkowski_form(v, v) < -kFormTolerance) {
    throw std::invalid_argument("not tangent: timelike vector");
  }
  return TangentVector(p, v);
}

TangentVector TangentVector::unchecked(HyperboloidPoint p, MinkowskiVector v) {
  return TangentVector(std::move(p), std::move(v));
}

HyperboloidPoint base_point(std::size_t n) {
  if (n < 1) throw std::invalid_argument("base_point: dimension must be >= 1");
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  return HyperboloidPoint::unchecked(MinkowskiVector::unchecked(std::move(c)));
}

HyperboloidPoint renormalize(const MinkowskiVector& x) {
  const double q = minkowski_form(x, x);
  if (!(q < 0.0) || !(x[x.dim()] > 0.0)) {
    throw std::runtime_error("unrenormalizable: <x,x> = " + std::to_string(q) +
                             ", last coordinate = " +
                             std::to_string(x[x.dim()]));
  }
  return HyperboloidPoint::unchecked(mink_scale(1.0 / std::sqrt(-q), x));
}

double distance(const HyperboloidPoint& u, const HyperboloidPoint& v) {
  return std::acosh(std::max(-minkowski_form(u.vec(), v.vec()), 1.0));
}

TangentVector project_to_tangent(const HyperboloidPoint& p,
                                 const MinkowskiVector& g) {
  const double c = minkowski_form(p.vec(), g);
  return TangentVector::unchecked(p, mink_axpy(g, c, p.vec()));
}

HyperboloidPoint exp_map(const HyperboloidPoint& p, const TangentVector& v) {
  const double n = spacelike_norm(v.vec());
  if (n < 1e-9) {
    return renormalize(mink_add(p.vec(), v.vec()));
  }
  MinkowskiVector out = mink_axpy(mink_scale(std::cosh(n), p.vec()),
                                  std::sinh(n) / n, v.vec());
  return renormalize(out);
}

MinkowskiVector distance_gradient(const HyperboloidPoint& u,
                                  const HyperboloidPoint& v) {
  const double f = minkowski_form(u.vec(), v.vec());
  if (distance(u, v) < kSingularDistance) {
    throw std::runtime_error("coincident points: distance gradient undefined");
  }
  return mink_scale(-1.0 / std::sqrt(f * f - 1.0), v.vec());
}

std::vector<TangentVector> orthonormal_tangent_basis(
    const HyperboloidPoint& p) {
  const std::size_t n = p.dim();
  std::vector<TangentVector> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> axis(n + 1, 0.0);
    axis[i] = 1.0;
    MinkowskiVector e =
        project_to_tangent(p, MinkowskiVector::unchecked(std::move(axis)))
            .vec();
    for (const TangentVector& b : basis) {
      e = mink_axpy(e, -minkowski_form(e, b.vec()), b.vec());
    }
    const double norm = spacelike_norm(e);
    // The projections of e_1..e_n are always linearly independent on the
    // upper sheet, so the norm never vanishes.
    basis.push_back(TangentVector::unchecked(p, mink_scale(1.0 / norm, e)));
  }
  return basis;
}

DescentTrace gradient_descent(
    const std::function<MinkowskiVector(const HyperboloidPoint&)>& grad_fn,
    const HyperboloidPoint& start, double alpha, const StoppingRule& stop,
    bool record_iterates) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("gradient_descent: alpha must be positive");
  }
  HyperboloidPoint theta = start;
  DescentTrace trace{theta, 0, 0.0, StopReason::IterationLimit, {}};
  if (record_iterates) trace.iterates.push_back(theta);

  for (std::size_t k = 0;; ++k) {
    if (stop.target &&
        distance(theta, *stop.target) < stop.arrival_radius) {
      trace.reason = StopReason::Arrived;
      break;
    }
    MinkowskiVector ambient = grad_fn(theta);
    if (!ambient.finite()) {
      throw std::runtime_error("gradient_descent: non-finite gradient at step " +
                               std::to_string(k));
    }
    TangentVector g = project_to_tangent(theta, ambient);
    const double gq = minkowski_form(g.vec(), g.vec());
    // A projected gradient whose squared norm comes out NaN or clearly
    // negative means the iterate's coordinates are too large for the form's
    // cancellation, which only happens on a diverging trajectory.
    if (std::isnan(gq) || gq < -kFormTolerance) {
      trace.reason = StopReason::Diverged;
      break;
    }
    const double gn = gq > 0.0 ? std::sqrt(gq) : 0.0;
    trace.last_grad_norm = gn;
    const double threshold = stop.grad_norm_threshold.value_or(0.0);
    if (gn < threshold || gn == 0.0) {
      trace.reason = StopReason::GradientConverged;
      break;
    }
    if (k == stop.max_iters) {
      trace.reason = StopReason::IterationLimit;
      break;
    }
    // Written so that an overflowed (inf/NaN) step length also lands here.
    if (!(alpha * gn <= kDivergenceGuard)) {
      trace.reason = StopReason::Diverged;
      break;
    }
    theta = exp_map(theta, TangentVector::unchecked(
                               theta, mink_scale(-alpha, g.vec())));
    trace.steps = k + 1;
    if (record_iterates) trace.iterates.push_back(theta);
  }
  trace.final_point = theta;
  return trace;
}

}  // namespace hypergrad
