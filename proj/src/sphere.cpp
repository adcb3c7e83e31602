#include "hypergrad/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypergrad {

namespace {

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace

SpherePoint SpherePoint::validate(const std::vector<double>& coords) {
  if (coords.size() < 2) {
    throw std::invalid_argument("SpherePoint needs at least 2 coordinates");
  }
  for (double x : coords) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("SpherePoint has non-finite entries");
    }
  }
  const double norm = std::sqrt(dot(coords, coords));
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("off-sphere: |x| = " + std::to_string(norm));
  }
  return SpherePoint(coords);
}

SpherePoint SpherePoint::unchecked(std::vector<double> coords) {
  return SpherePoint(std::move(coords));
}

double sphere_distance(const SpherePoint& u, const SpherePoint& v) {
  const double d = dot(u.coords(), v.coords());
  return std::acos(std::min(std::max(d, -1.0), 1.0));
}

std::vector<double> sphere_project(const SpherePoint& p,
                                   const std::vector<double>& g) {
  if (g.size() != p.size()) {
    throw std::invalid_argument("sphere_project: dimension mismatch");
  }
  const double c = dot(p.coords(), g);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] - c * p[i];
  return out;
}

SpherePoint sphere_exp(const SpherePoint& p, const std::vector<double>& v) {
  if (v.size() != p.size()) {
    throw std::invalid_argument("sphere_exp: dimension mismatch");
  }
  const double n = std::sqrt(dot(v, v));
  std::vector<double> out(p.size());
  if (n < 1e-9) {
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + v[i];
  } else {
    const double c = std::cos(n);
    const double s = std::sin(n) / n;
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = c * p[i] + s * v[i];
  }
  const double norm = std::sqrt(dot(out, out));
  for (double& x : out) x /= norm;
  return SpherePoint::unchecked(std::move(out));
}

}  // namespace hypergrad
