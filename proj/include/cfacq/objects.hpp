#pragma once

#include "cfacq/geometry.hpp"
#include "cfacq/optical_elements.hpp"

namespace cfacq {

/// Test object: (1 + cos(a*xi)) + i*[rect((xi+c)/w) + rect((xi-c)/w)], all
/// inside a hard rectangular support. Lengths in um, cos frequency in rad/um.
struct ConceivedObjectParams {
  double cos_freq_per_um = 0.05;
  double rect_offset_um = 150.0;
  double rect_width_um = 105.0;
  double support_width_um = 1000.0;

  void validate() const;
};

/// Unit rectangle: 1 inside |u| < 1/2, 0 outside, 1/2 on the edge.
double rect(double u);

/// Normalized sinc: sin(pi u)/(pi u), sinc(0) = 1.
double sinc(double u);

Complex conceived_object(double xi_um, const ConceivedObjectParams& params);

/// Closed-form Fourier transform of the object, convention
/// F(nu) = integral f(xi) e^{-i 2 pi nu xi} dxi. Both parts are real and
/// even because the object's real and imaginary parts are each even.
double analytic_ft_real(double nu_per_um, const ConceivedObjectParams& params);
double analytic_ft_imag(double nu_per_um, const ConceivedObjectParams& params);

/// Object sampled onto a grid; the grid must span the full support.
Transmittance sample_transmittance(const Grid& grid,
                                   const ConceivedObjectParams& params);

}  // namespace cfacq
