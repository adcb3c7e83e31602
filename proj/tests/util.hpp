#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hypergrad/hyperboloid.hpp"

// Shared helpers for deterministic randomized checks. std::mt19937_64 keeps
// the unit tests independent of the library's own sampler.
namespace testutil {

using hypergrad::HyperboloidPoint;
using hypergrad::MinkowskiVector;
using hypergrad::TangentVector;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Unit tangent vector at p with a uniform angle in the orthonormal basis.
inline TangentVector random_unit_tangent(const HyperboloidPoint& p,
                                         std::mt19937_64& rng) {
  const auto basis = hypergrad::orthonormal_tangent_basis(p);
  std::vector<double> c(basis.size());
  double norm2 = 0.0;
  std::normal_distribution<double> gauss;
  for (double& x : c) {
    x = gauss(rng);
    norm2 += x * x;
  }
  if (norm2 == 0.0) c[0] = norm2 = 1.0;
  MinkowskiVector v = hypergrad::mink_scale(c[0], basis[0].vec());
  for (std::size_t i = 1; i < basis.size(); ++i) {
    v = hypergrad::mink_axpy(v, c[i], basis[i].vec());
  }
  return TangentVector::unchecked(p, hypergrad::mink_scale(1.0 / std::sqrt(norm2), v));
}

// Point at a uniform distance in [0, r_max] from the base point, uniform
// direction. (Direction/radius law does not matter for property tests.)
inline HyperboloidPoint random_point(std::size_t dim, double r_max,
                                     std::mt19937_64& rng) {
  const HyperboloidPoint base = hypergrad::base_point(dim);
  const TangentVector w = random_unit_tangent(base, rng);
  const double r = uniform(rng, 0.0, r_max);
  return hypergrad::exp_map(
      base, TangentVector::unchecked(base, hypergrad::mink_scale(r, w.vec())));
}

// Components of the Riemannian gradient of f at p in the orthonormal tangent
// basis, by central differences along geodesics: d/dt f(Exp_p(t E_j)) at 0.
inline std::vector<double> fd_gradient_components(
    const std::function<double(const HyperboloidPoint&)>& f,
    const HyperboloidPoint& p, double h) {
  const auto basis = hypergrad::orthonormal_tangent_basis(p);
  std::vector<double> out;
  out.reserve(basis.size());
  for (const TangentVector& e : basis) {
    const HyperboloidPoint plus = hypergrad::exp_map(
        p, TangentVector::unchecked(p, hypergrad::mink_scale(h, e.vec())));
    const HyperboloidPoint minus = hypergrad::exp_map(
        p, TangentVector::unchecked(p, hypergrad::mink_scale(-h, e.vec())));
    out.push_back((f(plus) - f(minus)) / (2.0 * h));
  }
  return out;
}

// Components of a projected (tangent) gradient in the same basis, via the
// Minkowski inner product.
inline std::vector<double> tangent_components(const TangentVector& g) {
  const auto basis = hypergrad::orthonormal_tangent_basis(g.base());
  std::vector<double> out;
  out.reserve(basis.size());
  for (const TangentVector& e : basis) {
    out.push_back(hypergrad::minkowski_form(g.vec(), e.vec()));
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

inline double max_abs(const std::vector<double>& a) {
  double worst = 0.0;
  for (double x : a) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace testutil
