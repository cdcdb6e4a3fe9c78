#include "cfacq/optical_elements.hpp"

#include <numbers>

namespace cfacq {

void PhasePlateSetting::validate() const {
  if (!(p_prime_phase_rad > -std::numbers::pi &&
        p_prime_phase_rad <= std::numbers::pi))
    throw std::invalid_argument(
        "PhasePlateSetting: p_prime_phase must lie in (-pi, pi]");
}

ArmPhases arm_phases(const PhasePlateSetting& setting) {
  ArmPhases phases;
  phases.upper_rad = setting.j_plate_on ? 0.5 * std::numbers::pi : 0.0;
  phases.lower_rad = setting.p_prime_on ? setting.p_prime_phase_rad : 0.0;
  return phases;
}

Transmittance::Transmittance(Grid g, CVector v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.count)
    throw std::invalid_argument(
        "Transmittance: value count does not match grid");
  if (!values.allFinite())
    throw std::invalid_argument("Transmittance: values must be finite");
}

std::pair<ComplexField, ComplexField> beam_splitter_mix(const ComplexField& a,
                                                        const ComplexField& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("beam_splitter_mix: input grids differ");
  const double s = 1.0 / std::numbers::sqrt2;
  CVector e1 = (a.samples - b.samples) * s;
  CVector e2 = (a.samples + b.samples) * s;
  return {ComplexField(a.grid, std::move(e1)),
          ComplexField(a.grid, std::move(e2))};
}

ComplexField apply_object(const ComplexField& field, const Transmittance& f) {
  if (!(field.grid == f.grid))
    throw std::invalid_argument(
        "apply_object: field grid does not match transmittance grid");
  return ComplexField(field.grid, field.samples.cwiseProduct(f.values));
}

}  // namespace cfacq
