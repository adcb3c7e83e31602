#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "hypergrad/hyperboloid.hpp"
#include "hypergrad/sphere.hpp"
#include "util.hpp"

using namespace hypergrad;

TEST_CASE("sphere_distance examples") {
  const SpherePoint e1 = SpherePoint::validate({1.0, 0.0, 0.0});
  const SpherePoint e2 = SpherePoint::validate({0.0, 1.0, 0.0});
  const SpherePoint anti = SpherePoint::validate({-1.0, 0.0, 0.0});
  CHECK(sphere_distance(e1, e1) == 0.0);
  CHECK(sphere_distance(e1, e2) == doctest::Approx(std::numbers::pi / 2));
  CHECK(sphere_distance(e1, anti) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("SpherePoint validation") {
  CHECK_THROWS_WITH_AS(SpherePoint::validate({1.0, 1.0, 0.0}),
                       doctest::Contains("off-sphere"), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint::validate({std::nan(""), 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint::validate({1.0}), std::invalid_argument);
}

TEST_CASE("sphere_project examples") {
  const SpherePoint e3 = SpherePoint::validate({0.0, 0.0, 1.0});
  const std::vector<double> t = sphere_project(e3, {1.0, 2.0, 3.0});
  CHECK(t[0] == 1.0);
  CHECK(t[1] == 2.0);
  CHECK(t[2] == 0.0);

  const std::vector<double> z = sphere_project(e3, e3.coords());
  CHECK(testutil::max_abs(z) == 0.0);

  const std::vector<double> same = sphere_project(e3, t);
  CHECK(testutil::max_abs_diff(same, t) <= 1e-12);
}

TEST_CASE("sphere_exp examples") {
  const SpherePoint e3 = SpherePoint::validate({0.0, 0.0, 1.0});
  const double half_pi = std::numbers::pi / 2;
  const SpherePoint q = sphere_exp(e3, {half_pi, 0.0, 0.0});
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[1] == 0.0);
  CHECK(std::abs(q[2]) <= 1e-15);

  const SpherePoint same = sphere_exp(e3, {0.0, 0.0, 0.0});
  CHECK(sphere_distance(e3, same) == 0.0);
}

// The two manifold kits are algorithmically identical up to the projection
// sign (g -/+ <p,g>p) and the trig pair (cos/sin vs cosh/sinh). The template
// below runs the same property checks against both through a thin adapter
// that exposes exactly those two choices.
namespace {

struct SphereOps {
  static constexpr double projection_sign = -1.0;
  static constexpr double max_step = 2.9;  // stay inside the injectivity radius pi

  static std::vector<double> random_point(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<double> p(3);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (double& x : p) {
        x = gauss(rng);
        n2 += x * x;
      }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : p) x *= inv;
    return p;
  }

  static double inner(const std::vector<double>& u,
                      const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
  }

  static std::vector<double> project(const std::vector<double>& p,
                                     const std::vector<double>& g) {
    return sphere_project(SpherePoint::unchecked(p), g);
  }

  static std::vector<double> exp(const std::vector<double>& p,
                                 const std::vector<double>& v) {
    return sphere_exp(SpherePoint::unchecked(p), v).coords();
  }

  static double dist(const std::vector<double>& u,
                     const std::vector<double>& v) {
    return sphere_distance(SpherePoint::unchecked(u),
                           SpherePoint::unchecked(v));
  }
};

struct HyperboloidOps {
  static constexpr double projection_sign = +1.0;
  static constexpr double max_step = 5.0;

  static std::vector<double> random_point(std::mt19937_64& rng) {
    return testutil::random_point(2, 2.0, rng).vec().coords();
  }

  static double inner(const std::vector<double>& u,
                      const std::vector<double>& v) {
    return minkowski_form(MinkowskiVector::unchecked(u),
                          MinkowskiVector::unchecked(v));
  }

  static std::vector<double> project(const std::vector<double>& p,
                                     const std::vector<double>& g) {
    const HyperboloidPoint hp =
        HyperboloidPoint::unchecked(MinkowskiVector::unchecked(p));
    return project_to_tangent(hp, MinkowskiVector::unchecked(g))
        .vec()
        .coords();
  }

  static std::vector<double> exp(const std::vector<double>& p,
                                 const std::vector<double>& v) {
    const HyperboloidPoint hp =
        HyperboloidPoint::unchecked(MinkowskiVector::unchecked(p));
    return exp_map(hp, TangentVector::unchecked(hp,
                                                MinkowskiVector::unchecked(v)))
        .vec()
        .coords();
  }

  static double dist(const std::vector<double>& u,
                     const std::vector<double>& v) {
    return distance(HyperboloidPoint::unchecked(MinkowskiVector::unchecked(u)),
                    HyperboloidPoint::unchecked(MinkowskiVector::unchecked(v)));
  }
};

}  // namespace

TEST_CASE_TEMPLATE("manifold kit properties", M, SphereOps, HyperboloidOps) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ambient(-2.0, 2.0);
  int exercised = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<double> p = M::random_point(rng);
    std::vector<double> g(3);
    for (double& x : g) x = ambient(rng);

    const std::vector<double> t = M::project(p, g);
    // Orthogonal to p under the model's own pairing, and idempotent.
    CHECK(std::abs(M::inner(p, t)) <= 1e-9);
    CHECK(testutil::max_abs_diff(M::project(p, t), t) <= 1e-12);
    // The normal direction dies.
    CHECK(testutil::max_abs(M::project(p, p)) <= 1e-12);
    // The projection is exactly g + sign*<p,g>*p; the sign is the one
    // structural difference between the two models.
    std::vector<double> manual(3);
    const double c = M::inner(p, g);
    for (std::size_t i = 0; i < 3; ++i) {
      manual[i] = g[i] + M::projection_sign * c * p[i];
    }
    CHECK(testutil::max_abs_diff(manual, t) <= 1e-14);

    // Unit-speed geodesics through the exponential map.
    const double tangent_norm = std::sqrt(std::max(M::inner(t, t), 0.0));
    if (tangent_norm < 1e-6) continue;
    ++exercised;
    const double step = testutil::uniform(rng, 0.05, M::max_step);
    std::vector<double> v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = t[i] * (step / tangent_norm);
    const std::vector<double> q = M::exp(p, v);
    CHECK(M::dist(p, q) == doctest::Approx(step).epsilon(1e-9));
  }
  CHECK(exercised >= 30);  // the skip branch must stay exceptional
}
