#include "hypergrad/poincare.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypergrad {

namespace {

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

// pb_distance rearranged as 2*asinh(|u-v|/sqrt((1-|u|^2)(1-|v|^2))).
// Algebraically identical, but keeps relative precision for nearly
// coincident points, where acosh(1 + x) floors out near sqrt(eps); the
// error sweep needs to resolve disagreements far below that.
double nearby_ball_distance(const PoincarePoint& u, const PoincarePoint& v) {
  double diff2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    diff2 += d * d;
  }
  const double denom = (1.0 - u.norm_squared()) * (1.0 - v.norm_squared());
  return 2.0 * std::asinh(std::sqrt(diff2 / denom));
}

}  // namespace

PoincarePoint PoincarePoint::validate(const std::vector<double>& coords) {
  if (coords.empty()) {
    throw std::invalid_argument("PoincarePoint needs at least 1 coordinate");
  }
  for (double x : coords) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("PoincarePoint has non-finite entries");
    }
  }
  const double r2 = dot(coords, coords);
  if (!(r2 < 1.0)) {
    throw std::invalid_argument("outside ball: |y| = " +
                                std::to_string(std::sqrt(r2)));
  }
  return PoincarePoint(coords);
}

PoincarePoint PoincarePoint::unchecked(std::vector<double> coords) {
  return PoincarePoint(std::move(coords));
}

double PoincarePoint::norm_squared() const { return dot(coords_, coords_); }

double pb_distance(const PoincarePoint& u, const PoincarePoint& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("pb_distance: dimension mismatch");
  }
  double diff2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    diff2 += d * d;
  }
  const double denom = (1.0 - u.norm_squared()) * (1.0 - v.norm_squared());
  return std::acosh(std::max(1.0 + 2.0 * diff2 / denom, 1.0));
}

PoincarePoint to_ball(const HyperboloidPoint& x) {
  const std::size_t n = x.dim();
  const double denom = x[n] + 1.0;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] / denom;
  return PoincarePoint::unchecked(std::move(out));
}

HyperboloidPoint from_ball(const PoincarePoint& y) {
  const std::size_t n = y.size();
  const double r2 = y.norm_squared();
  const double f = 2.0 / (1.0 - r2);
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = f * y[i];
  out[n] = f * (1.0 + r2) / 2.0;
  // Renormalize: the analytic image satisfies <x,x> = -1, but near the
  // boundary the 1/(1-r^2) blowup amplifies round-off.
  return renormalize(MinkowskiVector::unchecked(std::move(out)));
}

std::vector<double> push_forward(const HyperboloidPoint& x,
                                 const TangentVector& v) {
  const std::size_t n = x.dim();
  const double denom = x[n] + 1.0;
  const double vlast = v.vec()[n];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (v.vec()[i] - x[i] * vlast / denom) / denom;
  }
  return out;
}

PoincarePoint retraction_step(const PoincarePoint& psi,
                              const std::vector<double>& g, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("retraction_step: alpha must be positive");
  }
  if (g.size() != psi.size()) {
    throw std::invalid_argument("retraction_step: dimension mismatch");
  }
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = psi[i] - alpha * g[i];
  const double norm = std::sqrt(dot(out, out));
  if (norm >= 1.0) {
    const double scale = kBoundaryRescueNorm / norm;
    for (double& x : out) x *= scale;
  }
  return PoincarePoint::unchecked(std::move(out));
}

std::vector<double> pb_distance_gradient(const PoincarePoint& u,
                                         const PoincarePoint& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("pb_distance_gradient: dimension mismatch");
  }
  if (pb_distance(u, v) < kSingularDistance) {
    throw std::runtime_error(
        "coincident points: ball distance gradient undefined");
  }
  const double a = 1.0 - u.norm_squared();
  const double b = 1.0 - v.norm_squared();
  double diff2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    diff2 += d * d;
  }
  const double c = 1.0 + 2.0 / (a * b) * diff2;
  const double uv = dot(u.coords(), v.coords());
  const double vnorm2 = v.norm_squared();
  const double front = 4.0 / (b * std::sqrt(c * c - 1.0));
  const double ucoef = (vnorm2 - 2.0 * uv + 1.0) / (a * a);
  // front * (ucoef*u - v/a) is the Euclidean gradient of pb_distance;
  // (a/2)^2 converts it to the Riemannian gradient in ball coordinates.
  const double metric = (a / 2.0) * (a / 2.0);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = metric * front * (ucoef * u[i] - v[i] / a);
  }
  return out;
}

double retraction_error(double d, double step, int directions) {
  if (d < 0.0) throw std::invalid_argument("retraction_error: d must be >= 0");
  if (!(step > 0.0)) {
    throw std::invalid_argument("retraction_error: step must be positive");
  }
  if (directions < 1) {
    throw std::invalid_argument("retraction_error: directions must be >= 1");
  }
  const HyperboloidPoint p = HyperboloidPoint::unchecked(
      MinkowskiVector::unchecked({std::sinh(d), 0.0, std::cosh(d)}));
  const std::vector<TangentVector> basis = orthonormal_tangent_basis(p);
  const PoincarePoint psi = to_ball(p);
  double worst = 0.0;
  for (int k = 0; k < directions; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / directions;
    MinkowskiVector w = mink_axpy(mink_scale(std::cos(phi), basis[0].vec()),
                                  std::sin(phi), basis[1].vec());
    TangentVector v =
        TangentVector::unchecked(p, mink_scale(step, w));
    const HyperboloidPoint exact = exp_map(p, v);
    std::vector<double> g = push_forward(p, v);
    for (double& x : g) x = -x;  // retraction_step subtracts the gradient
    const PoincarePoint approx = retraction_step(psi, g, 1.0);
    worst = std::max(worst, nearby_ball_distance(to_ball(exact), approx));
  }
  return worst;
}

}  // namespace hypergrad
