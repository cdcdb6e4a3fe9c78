#include "cfacq/thermal_source.hpp"

#include <cmath>

#include "cfacq/rng.hpp"

namespace cfacq {

void SourceConfig::validate() const {
  if (grid.count < 1)
    throw std::invalid_argument("SourceConfig: grid has no samples");
  if (!(grid.spacing_um > 0.0))
    throw std::invalid_argument("SourceConfig: grid spacing must be positive");
  if (!(mean_intensity > 0.0))
    throw std::invalid_argument(
        "SourceConfig: mean intensity must be positive");
}

std::uint64_t realization_seed(std::uint64_t master_seed,
                               std::uint64_t realization_index,
                               std::uint64_t setting_tag) {
  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
  std::uint64_t h = mix64(master_seed + golden);
  h = mix64(h ^ (realization_index + golden));
  h = mix64(h ^ (setting_tag + golden));
  return h;
}

void fill_thermal_samples(Eigen::Ref<CVector> out, double sigma,
                          std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const auto [re, im] = rng.gaussian_pair();
    out[i] = Complex(sigma * re, sigma * im);
  }
}

ComplexField sample_thermal(const SourceConfig& config, std::uint64_t seed) {
  config.validate();
  // var(E) = I/dx split evenly between the quadratures
  const double sigma =
      std::sqrt(0.5 * config.mean_intensity / config.grid.spacing_um);
  CVector samples(config.grid.count);
  fill_thermal_samples(samples, sigma, seed);
  return ComplexField(config.grid, std::move(samples));
}

}  // namespace cfacq
