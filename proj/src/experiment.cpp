#include "cfacq/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <vector>

#include "cfacq/rng.hpp"

namespace cfacq {

namespace {

constexpr double pi = std::numbers::pi;

int env_workers() {
  const char* env = std::getenv("CFACQ_WORKERS");
  if (env != nullptr) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

PlatePair PlatePair::standard(bool p_prime_on, double p_prime_phase_rad) {
  PlatePair pair;
  pair.j_off = PhasePlateSetting{false, p_prime_on, p_prime_phase_rad};
  pair.j_on = PhasePlateSetting{true, p_prime_on, p_prime_phase_rad};
  return pair;
}

void PlatePair::validate() const {
  j_off.validate();
  j_on.validate();
  if (j_off.j_plate_on || !j_on.j_plate_on)
    throw std::invalid_argument(
        "PlatePair: first setting must have J out, second J in");
  if (j_off.p_prime_on != j_on.p_prime_on ||
      j_off.p_prime_phase_rad != j_on.p_prime_phase_rad)
    throw std::invalid_argument(
        "PlatePair: P' configuration must match across J settings");
}

void ExperimentConfig::validate() const {
  geometry.validate();
  source.validate();
  plates.validate();
  if (detector_grid.center_um != 0.0)
    throw std::invalid_argument(
        "ExperimentConfig: detector grid must be centered on the origin");
  if (!(transmittance.grid == object_grid))
    throw std::invalid_argument(
        "ExperimentConfig: transmittance must be sampled on the object grid");
  if (realizations < 1)
    throw std::invalid_argument(
        "ExperimentConfig: realizations must be at least 1");
  if (chunk_size < 1)
    throw std::invalid_argument(
        "ExperimentConfig: chunk size must be at least 1");

  const struct {
    const Grid& src;
    const Grid& dst;
    double dist;
    const char* name;
  } legs[] = {
      {source.grid, object_grid, geometry.d1_um, "x->xi (source to object)"},
      {object_grid, detector_grid, geometry.d2_um,
       "xi->eta (object to detector)"},
      {source.grid, detector_grid, geometry.d_um,
       "x->eta (source to detector)"},
  };
  for (const auto& leg : legs) {
    const SamplingReport r =
        validate_sampling(leg.src, leg.dst, leg.dist, geometry.wavelength_um);
    if (!r.pass)
      throw std::invalid_argument(
          std::string("ExperimentConfig: sampling validation failed for '") +
          leg.name + "': " + r.detail);
  }
}

ArmOperators build_arm_operators(const ExperimentConfig& config) {
  config.validate();
  const auto& g = config.geometry;
  const TransferMatrix t_src_obj =
      build_transfer_matrix(config.source.grid, config.object_grid, g.d1_um, g,
                            "x->xi (source to object)");
  const TransferMatrix t_obj_det =
      build_transfer_matrix(config.object_grid, config.detector_grid, g.d2_um,
                            g, "xi->eta (object to detector)");
  const TransferMatrix t_src_det =
      build_transfer_matrix(config.source.grid, config.detector_grid, g.d_um,
                            g, "x->eta (source to detector)");

  const double dx = config.source.grid.spacing_um;
  const double dxi = config.object_grid.spacing_um;
  const Complex lower_phase =
      std::polar(1.0, arm_phases(config.plates.j_off).lower_rad);

  ArmOperators ops;
  ops.lower = (lower_phase * dx * dxi) *
              (t_obj_det.entries *
               config.transmittance.values.asDiagonal() * t_src_obj.entries);
  // row mirror realizes eta_1 = -eta_2 exactly on the centered grid
  ops.upper_flipped = dx * t_src_det.entries.colwise().reverse();
  return ops;
}

AcquisitionResult run_acquisition(const ExperimentConfig& config,
                                  int workers) {
  return run_acquisition_phases(config, 0.0, 0.5 * pi, workers);
}

AcquisitionResult run_acquisition_phases(const ExperimentConfig& config,
                                         double upper_phase_off_rad,
                                         double upper_phase_on_rad,
                                         int workers) {
  const ArmOperators ops = build_arm_operators(config);

  const int n_det = config.detector_grid.count;
  const int n_src = config.source.grid.count;
  const int n_total = config.realizations;
  const int chunk = config.chunk_size;
  const int n_chunks = (n_total + chunk - 1) / chunk;
  const double sigma =
      std::sqrt(0.5 * config.source.mean_intensity /
                config.source.grid.spacing_um);
  const Complex setting_phase[2] = {std::polar(1.0, upper_phase_off_rad),
                                    std::polar(1.0, upper_phase_on_rad)};
  const std::uint64_t master = config.source.master_seed;

  struct Partial {
    Eigen::ArrayXd acc[4];  // I1, I2, I1p, I2p sums over the chunk
  };
  std::vector<Partial> partials(n_chunks);

  auto process_chunk = [&](int c) {
    const int begin = c * chunk;
    const int count = std::min(chunk, n_total - begin);
    Partial p;
    for (auto& a : p.acc) a = Eigen::ArrayXd::Zero(n_det);

    Eigen::MatrixXcd x(n_src, count);
    Eigen::MatrixXcd lower(n_det, count);
    Eigen::MatrixXcd upper(n_det, count);
    for (int s = 0; s < 2; ++s) {
      if (s == 0 || !config.shared_noise) {
        const std::uint64_t tag = config.shared_noise ? 0 : s;
        for (int j = 0; j < count; ++j)
          fill_thermal_samples(
              x.col(j), sigma,
              realization_seed(master, static_cast<std::uint64_t>(begin + j),
                               tag));
        lower.noalias() = ops.lower * x;
        upper.noalias() = ops.upper_flipped * x;
      }
      const Complex ph = setting_phase[s];
      for (int j = 0; j < count; ++j) {
        const CVector u = ph * upper.col(j);
        p.acc[2 * s + 0] += 0.5 * (lower.col(j) - u).cwiseAbs2().array();
        p.acc[2 * s + 1] += 0.5 * (lower.col(j) + u).cwiseAbs2().array();
      }
    }
    partials[c] = std::move(p);
  };

  int n_workers = workers > 0 ? workers : env_workers();
  n_workers = std::min(n_workers, n_chunks);
  if (n_workers <= 1) {
    for (int c = 0; c < n_chunks; ++c) process_chunk(c);
  } else {
    std::atomic<int> next{0};
    auto body = [&] {
      for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
        process_chunk(c);
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }

  // combine in chunk order: bit-identical output for any worker count
  Eigen::ArrayXd sums[4];
  for (auto& a : sums) a = Eigen::ArrayXd::Zero(n_det);
  for (int c = 0; c < n_chunks; ++c)
    for (int k = 0; k < 4; ++k) sums[k] += partials[c].acc[k];

  AcquisitionResult result;
  result.detector_grid = config.detector_grid;
  const double inv_n = 1.0 / static_cast<double>(n_total);
  result.I1 = (sums[0] * inv_n).matrix();
  result.I2 = (sums[1] * inv_n).matrix();
  result.I1p = (sums[2] * inv_n).matrix();
  result.I2p = (sums[3] * inv_n).matrix();
  result.re_part = 0.5 * (result.I2 - result.I1);
  result.im_part = 0.5 * (result.I2p - result.I1p);
  result.complex_ft =
      assemble_complex_ft(result.re_part, result.im_part, config.plates.j_off);
  result.realizations_used = n_total;
  return result;
}

CVector coherent_mode_oracle(const ExperimentConfig& config) {
  const ArmOperators ops = build_arm_operators(config);
  const double weight =
      config.source.mean_intensity / config.source.grid.spacing_um;
  return weight *
         ops.lower.cwiseProduct(ops.upper_flipped.conjugate()).rowwise().sum();
}

CVector assemble_complex_ft(const RVector& re_part, const RVector& im_part,
                            const PhasePlateSetting& plates) {
  if (re_part.size() != im_part.size())
    throw std::invalid_argument("assemble_complex_ft: length mismatch");
  CVector z = re_part.cast<Complex>() + Complex(0.0, 1.0) * im_part.cast<Complex>();
  if (!plates.p_prime_on) z *= std::polar(1.0, -0.25 * pi);
  return z;
}

RVector detector_frequencies(const Grid& detector_grid,
                             const SystemGeometry& geometry) {
  return grid_positions(detector_grid) *
         (2.0 / (geometry.wavelength_um * geometry.d2_um));
}

InversionResult invert_to_object(const CVector& complex_ft,
                                 const Grid& detector_grid,
                                 const SystemGeometry& geometry,
                                 const Grid& target_grid,
                                 double bandwidth_hint_per_um) {
  if (complex_ft.size() != detector_grid.count)
    throw std::invalid_argument(
        "invert_to_object: spectrum length does not match detector grid");
  const RVector nu = detector_frequencies(detector_grid, geometry);
  const double dnu =
      2.0 * detector_grid.spacing_um /
      (geometry.wavelength_um * geometry.d2_um);

  CVector estimate(target_grid.count);
  for (int t = 0; t < target_grid.count; ++t) {
    const double xi = target_grid.position(t);
    Complex acc(0.0, 0.0);
    for (int m = 0; m < nu.size(); ++m)
      acc += complex_ft[m] * std::polar(1.0, 2.0 * pi * nu[m] * xi);
    estimate[t] = acc * dnu;
  }

  InversionResult result{ComplexField(target_grid, std::move(estimate)),
                         nu.cwiseAbs().maxCoeff(), false};
  result.coverage_warning = bandwidth_hint_per_um > 0.0 &&
                            result.nu_max_per_um < bandwidth_hint_per_um;
  return result;
}

RVector single_arm_mean_intensity(const Eigen::MatrixXcd& arm_operator,
                                  double mean_intensity,
                                  double source_spacing_um) {
  return (mean_intensity / source_spacing_um) *
         arm_operator.cwiseAbs2().rowwise().sum();
}

}  // namespace cfacq
