#pragma once

#include <cstdint>

#include "cfacq/geometry.hpp"

namespace cfacq {

/// Chaotic source: every grid sample is an independent circular complex
/// Gaussian with zero mean and variance mean_intensity / spacing, so the
/// discrete correlation sum reproduces the delta-correlated continuum limit
/// independent of grid resolution.
struct SourceConfig {
  Grid grid;
  double mean_intensity = 1.0;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Deterministic per-realization stream seed. Chained splitmix64 finalizer
/// rounds over (master, index, tag); for a fixed master seed the map is
/// bijective in the realization index and in the setting tag separately.
std::uint64_t realization_seed(std::uint64_t master_seed,
                               std::uint64_t realization_index,
                               std::uint64_t setting_tag);

/// One instantaneous field realization. Pure in (config, seed); realizations
/// may be generated in any order or concurrently.
ComplexField sample_thermal(const SourceConfig& config, std::uint64_t seed);

/// Hot-path fill: writes count circular Gaussian samples with per-quadrature
/// sigma into out. One Box-Muller pair per complex sample (re, im).
void fill_thermal_samples(Eigen::Ref<CVector> out, double sigma,
                          std::uint64_t seed);

}  // namespace cfacq
