#include "hypergrad/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypergrad {

namespace {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SeededRng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double SeededRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SeededRng SeededRng::fork(std::uint64_t key) const {
  // Derived purely from the construction seed, never from draw position.
  return SeededRng(mix64(seed_ + 0x9E3779B97F4A7C15ull * (key + 1)));
}

double disc_area(double r) {
  if (r < 0.0) throw std::invalid_argument("disc_area: r must be >= 0");
  return 2.0 * std::numbers::pi * (std::cosh(r) - 1.0);
}

double radius_from_uniform(double r_max, double p) {
  if (!(r_max > 0.0)) {
    throw std::invalid_argument("radius_from_uniform: r_max must be positive");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("radius_from_uniform: p outside [0,1]");
  }
  const double r = std::acosh(1.0 + p * (std::cosh(r_max) - 1.0));
  return std::min(std::max(r, 0.0), r_max);
}

double sample_radius(double r_max, SeededRng& rng) {
  return radius_from_uniform(r_max, rng.uniform());
}

HyperboloidPoint sample_disc_point(const HyperboloidPoint& center,
                                   double r_max, SeededRng& rng) {
  if (center.dim() != 2) {
    throw std::invalid_argument(
        "unsupported dimension: disc sampling is defined for n = 2, got n = " +
        std::to_string(center.dim()));
  }
  const std::vector<TangentVector> basis = orthonormal_tangent_basis(center);
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double r = sample_radius(r_max, rng);
  MinkowskiVector w = mink_axpy(mink_scale(std::cos(phi), basis[0].vec()),
                                std::sin(phi), basis[1].vec());
  return exp_map(center, TangentVector::unchecked(center, mink_scale(r, w)));
}

std::vector<ExperimentSample> sample_experiment_inputs(
    double r_max, std::size_t num_centers, std::size_t collections_per_center,
    std::size_t s, const SeededRng& master) {
  if (num_centers < 1 || collections_per_center < 1 || s < 1) {
    throw std::invalid_argument(
        "sample_experiment_inputs: all counts must be >= 1");
  }
  const SeededRng center_streams = master.fork(1);
  const SeededRng point_streams = master.fork(2);
  std::vector<ExperimentSample> out;
  out.reserve(num_centers);
  for (std::size_t c = 0; c < num_centers; ++c) {
    SeededRng center_rng = center_streams.fork(c);
    HyperboloidPoint center = sample_disc_point(base_point(2), r_max, center_rng);
    ExperimentSample sample{center, {}};
    sample.clouds.reserve(collections_per_center);
    const SeededRng cloud_streams = point_streams.fork(c);
    for (std::size_t k = 0; k < collections_per_center; ++k) {
      const SeededRng this_cloud = cloud_streams.fork(k);
      std::vector<HyperboloidPoint> pts;
      pts.reserve(s);
      for (std::size_t j = 0; j < s; ++j) {
        SeededRng point_rng = this_cloud.fork(j);
        pts.push_back(sample_disc_point(center, r_max, point_rng));
      }
      sample.clouds.push_back(PointCloud::of(std::move(pts)));
    }
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace hypergrad
