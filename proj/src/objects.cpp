#include "cfacq/objects.hpp"

#include <cmath>
#include <numbers>

namespace cfacq {

namespace {
constexpr double pi = std::numbers::pi;
}

void ConceivedObjectParams::validate() const {
  if (!(cos_freq_per_um > 0.0) || !(rect_offset_um > 0.0) ||
      !(rect_width_um > 0.0) || !(support_width_um > 0.0))
    throw std::invalid_argument(
        "ConceivedObjectParams: all parameters must be positive");
  if (rect_offset_um + 0.5 * rect_width_um > 0.5 * support_width_um)
    throw std::invalid_argument(
        "ConceivedObjectParams: imaginary rects must lie inside the support");
}

double rect(double u) {
  const double a = std::abs(u);
  if (a < 0.5) return 1.0;
  if (a > 0.5) return 0.0;
  return 0.5;
}

double sinc(double u) {
  if (u == 0.0) return 1.0;
  const double x = pi * u;
  return std::sin(x) / x;
}

Complex conceived_object(double xi_um, const ConceivedObjectParams& params) {
  const double re = 1.0 + std::cos(params.cos_freq_per_um * xi_um);
  const double im =
      rect((xi_um + params.rect_offset_um) / params.rect_width_um) +
      rect((xi_um - params.rect_offset_um) / params.rect_width_um);
  return Complex(re, im) * rect(xi_um / params.support_width_um);
}

double analytic_ft_real(double nu_per_um,
                        const ConceivedObjectParams& params) {
  const double w = params.support_width_um;
  const double sideband = params.cos_freq_per_um / (2.0 * pi);
  return 0.5 * w * sinc(w * (nu_per_um + sideband)) + w * sinc(w * nu_per_um) +
         0.5 * w * sinc(w * (nu_per_um - sideband));
}

double analytic_ft_imag(double nu_per_um,
                        const ConceivedObjectParams& params) {
  return 2.0 * params.rect_width_um * sinc(params.rect_width_um * nu_per_um) *
         std::cos(2.0 * pi * params.rect_offset_um * nu_per_um);
}

Transmittance sample_transmittance(const Grid& grid,
                                   const ConceivedObjectParams& params) {
  params.validate();
  const double half_support = 0.5 * params.support_width_um;
  if (grid.min_position() > -half_support ||
      grid.max_position() < half_support)
    throw std::invalid_argument(
        "sample_transmittance: grid does not span the object support");
  CVector values(grid.count);
  for (int i = 0; i < grid.count; ++i)
    values[i] = conceived_object(grid.position(i), params);
  return Transmittance(grid, std::move(values));
}

}  // namespace cfacq
