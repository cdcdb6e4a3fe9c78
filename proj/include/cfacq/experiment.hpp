#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "cfacq/geometry.hpp"
#include "cfacq/objects.hpp"
#include "cfacq/optical_elements.hpp"
#include "cfacq/propagation.hpp"
#include "cfacq/thermal_source.hpp"

namespace cfacq {

/// The two plate settings of a run: J plate out (registers the real part)
/// and J plate in (registers the imaginary part). The P' fields must agree
/// between the two; the plate stays in place while J is swapped.
struct PlatePair {
  PhasePlateSetting j_off;
  PhasePlateSetting j_on;

  static PlatePair standard(bool p_prime_on, double p_prime_phase_rad);
  void validate() const;
};

struct ExperimentConfig {
  SystemGeometry geometry;
  SourceConfig source;
  Grid object_grid;
  Grid detector_grid;
  Transmittance transmittance;
  PlatePair plates;
  int realizations = 20000;
  bool shared_noise = false;  // reuse each realization across J settings
  int chunk_size = 128;       // accumulation granularity; affects output bits

  void validate() const;
};

struct AcquisitionResult {
  Grid detector_grid;
  RVector I1, I2, I1p, I2p;   // mean registered intensities
  RVector re_part, im_part;   // (I2-I1)/2 and (I2p-I1p)/2
  CVector complex_ft;         // assembled complex estimate
  int realizations_used = 0;
};

/// Precomposed per-arm operators mapping a source field to the detector
/// plane; quadrature weights are folded in so application is one product.
/// lower includes the object and the P' phase; upper_flipped is the direct
/// leg with rows mirrored (eta -> -eta) and carries no J phase.
struct ArmOperators {
  Eigen::MatrixXcd lower;
  Eigen::MatrixXcd upper_flipped;
};

ArmOperators build_arm_operators(const ExperimentConfig& config);

/// Monte Carlo acquisition over config.realizations independent coherence
/// intervals per J setting. Realizations are summed chunk by chunk in fixed
/// index order, so the result is bit-identical for any worker count.
/// workers <= 0 selects the CFACQ_WORKERS env var or hardware concurrency.
AcquisitionResult run_acquisition(const ExperimentConfig& config,
                                  int workers = 0);

/// Same pipeline with explicit upper-arm phases for the two settings
/// (run_acquisition uses 0 and pi/2). Used for plate-algebra studies.
AcquisitionResult run_acquisition_phases(const ExperimentConfig& config,
                                         double upper_phase_off_rad,
                                         double upper_phase_on_rad,
                                         int workers = 0);

/// Deterministic mutual intensity <E_low(eta) E_up*(-eta)> evaluated from
/// the source correlation and the two arm operators, J plate out. The
/// J-plate-in value is -i times this.
CVector coherent_mode_oracle(const ExperimentConfig& config);

/// Complex assembly: Z = re + i*im, multiplied by e^{-i pi/4} (the 1/sqrt(i)
/// factor) when P' was not inserted; with P' in, the compensation already
/// happened optically and Z is returned as-is.
CVector assemble_complex_ft(const RVector& re_part, const RVector& im_part,
                            const PhasePlateSetting& plates);

/// Detector frequency axis nu = 2*eta/(lambda*d2).
RVector detector_frequencies(const Grid& detector_grid,
                             const SystemGeometry& geometry);

struct InversionResult {
  ComplexField object_estimate;
  double nu_max_per_um = 0.0;
  bool coverage_warning = false;
};

/// Direct inverse transform of the acquired spectrum onto target_grid:
/// f(xi) = sum_m Z[m] e^{+i 2 pi nu_m xi} * dnu, defined up to a global
/// complex scale. coverage_warning is set when bandwidth_hint_per_um > 0 and
/// the detector's frequency coverage falls short of it.
InversionResult invert_to_object(const CVector& complex_ft,
                                 const Grid& detector_grid,
                                 const SystemGeometry& geometry,
                                 const Grid& target_grid,
                                 double bandwidth_hint_per_um = 0.0);

/// Mean detector intensity of one arm alone: (I/dx) * row norms squared.
RVector single_arm_mean_intensity(const Eigen::MatrixXcd& arm_operator,
                                  double mean_intensity,
                                  double source_spacing_um);

}  // namespace cfacq
