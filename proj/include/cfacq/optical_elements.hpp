#pragma once

#include <utility>

#include "cfacq/geometry.hpp"

namespace cfacq {

/// Phase plates: J is the upper-arm pi/2 plate that rotates the mutual
/// intensity by -i; P' is the optional lower-arm compensation plate.
struct PhasePlateSetting {
  bool j_plate_on = false;
  bool p_prime_on = false;
  double p_prime_phase_rad = -std::numbers::pi / 4.0;

  void validate() const;  // p_prime_phase in (-pi, pi]
};

struct ArmPhases {
  double upper_rad = 0.0;
  double lower_rad = 0.0;
};

ArmPhases arm_phases(const PhasePlateSetting& setting);

/// Complex transmittance sampled on the object-plane grid. Values are
/// unconstrained in magnitude; the object is arbitrary.
struct Transmittance {
  Grid grid;
  CVector values;

  Transmittance() = default;
  Transmittance(Grid g, CVector v);
};

/// 50/50 mixing with the half-wave loss on output port 1:
/// E1 = (a - b)/sqrt(2), E2 = (a + b)/sqrt(2).
std::pair<ComplexField, ComplexField> beam_splitter_mix(const ComplexField& a,
                                                        const ComplexField& b);

ComplexField apply_object(const ComplexField& field, const Transmittance& f);

}  // namespace cfacq
