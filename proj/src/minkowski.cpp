#include "hypergrad/minkowski.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypergrad {

MinkowskiVector::MinkowskiVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument(
        "MinkowskiVector needs at least 2 coordinates, got " +
        std::to_string(coords_.size()));
  }
  if (!finite()) {
    throw std::invalid_argument("MinkowskiVector has non-finite entries");
  }
}

MinkowskiVector MinkowskiVector::unchecked(std::vector<double> coords) {
  MinkowskiVector v;
  v.coords_ = std::move(coords);
  return v;
}

bool MinkowskiVector::finite() const {
  for (double x : coords_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double minkowski_form(const MinkowskiVector& u, const MinkowskiVector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("minkowski_form: dimension mismatch (" +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  const std::size_t n = u.dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += u[i] * v[i];
  return acc - u[n] * v[n];
}

MinkowskiVector ambient_gradient(const MinkowskiVector& partials) {
  std::vector<double> c = partials.coords();
  c.back() = -c.back();
  return MinkowskiVector::unchecked(std::move(c));
}

double spacelike_norm(const MinkowskiVector& v) {
  const double q = minkowski_form(v, v);
  if (q < -kFormTolerance) {
    throw std::runtime_error("not spacelike: <v,v> = " + std::to_string(q));
  }
  return std::sqrt(std::max(q, 0.0));
}

MinkowskiVector mink_add(const MinkowskiVector& u, const MinkowskiVector& v) {
  std::vector<double> c(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) c[i] = u[i] + v[i];
  return MinkowskiVector::unchecked(std::move(c));
}

MinkowskiVector mink_sub(const MinkowskiVector& u, const MinkowskiVector& v) {
  std::vector<double> c(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) c[i] = u[i] - v[i];
  return MinkowskiVector::unchecked(std::move(c));
}

MinkowskiVector mink_scale(double a, const MinkowskiVector& v) {
  std::vector<double> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = a * v[i];
  return MinkowskiVector::unchecked(std::move(c));
}

MinkowskiVector mink_axpy(const MinkowskiVector& u, double a,
                          const MinkowskiVector& v) {
  std::vector<double> c(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) c[i] = u[i] + a * v[i];
  return MinkowskiVector::unchecked(std::move(c));
}

}  // namespace hypergrad
