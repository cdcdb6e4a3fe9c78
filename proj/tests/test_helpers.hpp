#pragma once

#include <numbers>

#include "cfacq/experiment.hpp"
#include "cfacq/objects.hpp"
#include "cfacq/rng.hpp"

namespace cfacq::testing {

/// Small but sampling-valid setup under the paper geometry; cheap enough for
/// statistical unit tests.
inline ExperimentConfig mini_config(int realizations = 2000,
                                    bool shared_noise = false,
                                    std::uint64_t seed = 7) {
  ExperimentConfig cfg;
  cfg.source.grid = Grid(0.0, 3.9, 512);
  cfg.source.mean_intensity = 1.0;
  cfg.source.master_seed = seed;
  cfg.object_grid = Grid(0.0, 2.34375, 512);
  cfg.detector_grid = Grid(0.0, 4.0, 201);
  cfg.transmittance = sample_transmittance(cfg.object_grid, {});
  cfg.plates = PlatePair::standard(true, -std::numbers::pi / 4.0);
  cfg.realizations = realizations;
  cfg.shared_noise = shared_noise;
  cfg.chunk_size = 64;
  return cfg;
}

template <typename Fn>
Transmittance transmittance_from(const Grid& grid, Fn&& fn) {
  CVector values(grid.count);
  for (int i = 0; i < grid.count; ++i) values[i] = fn(grid.position(i));
  return Transmittance(grid, std::move(values));
}

inline ComplexField random_field(const Grid& grid, Xoshiro256pp& rng,
                                 double scale = 1.0) {
  CVector samples(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const auto [re, im] = rng.gaussian_pair();
    samples[i] = Complex(scale * re, scale * im);
  }
  return ComplexField(grid, std::move(samples));
}

}  // namespace cfacq::testing
