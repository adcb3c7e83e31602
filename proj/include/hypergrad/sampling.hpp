#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "hypergrad/frechet.hpp"
#include "hypergrad/hyperboloid.hpp"

// Uniform sampling on hyperbolic discs (n = 2) by inversion of the radial
// CDF (cosh r - 1)/(cosh r_max - 1), plus the two-level scheme that draws the
// experiment's centers and point clouds deterministically from keyed streams.
namespace hypergrad {

// Splittable counter-style generator (splitmix64 core). fork(key) derives an
// independent stream as a pure function of the construction seed and the
// key, so per-trial streams are identical regardless of scheduling.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next();
  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  SeededRng fork(std::uint64_t key) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// Area of the hyperbolic disc: 2*pi*(cosh r - 1).
double disc_area(double r);

// Inverse radial CDF: arccosh(1 + p*(cosh r_max - 1)) clamped to [0, r_max].
// p must lie in [0, 1].
double radius_from_uniform(double r_max, double p);

// One radial draw from rng via radius_from_uniform.
double sample_radius(double r_max, SeededRng& rng);

// A uniform point of the disc of radius r_max around center: a uniform angle
// in an orthonormal tangent basis at center, then an inverted-CDF radius,
// then the exponential map. Draws angle first, then radius. Only n = 2 is
// supported (the radial law is disc-specific).
HyperboloidPoint sample_disc_point(const HyperboloidPoint& center,
                                   double r_max, SeededRng& rng);

struct ExperimentSample {
  HyperboloidPoint center;
  std::vector<PointCloud> clouds;
};

// num_centers centers uniform in the disc of radius r_max around the base
// point; for each, collections_per_center clouds of s points uniform in the
// disc of the same radius around that center. Streams are keyed by
// (center, collection, point) below the master seed, so the result is a pure
// function of (r_max, counts, seed).
std::vector<ExperimentSample> sample_experiment_inputs(
    double r_max, std::size_t num_centers, std::size_t collections_per_center,
    std::size_t s, const SeededRng& master);

}  // namespace hypergrad
