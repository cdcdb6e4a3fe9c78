#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace cfacq {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Uniform 1-D coordinate axis of an optical plane, symmetric about its
/// center: x_i = center + (i - (count-1)/2) * spacing. All lengths in um.
struct Grid {
  double center_um = 0.0;
  double spacing_um = 1.0;
  int count = 0;

  Grid() = default;
  Grid(double center, double spacing, int n);

  double position(int i) const {
    return center_um + (static_cast<double>(i) - 0.5 * (count - 1)) * spacing_um;
  }
  double min_position() const { return position(0); }
  double max_position() const { return position(count - 1); }
  double span_um() const { return (count - 1) * spacing_um; }

  bool operator==(const Grid&) const = default;
};

RVector grid_positions(const Grid& grid);

/// One instantaneous realization of the optical field on a grid.
struct ComplexField {
  Grid grid;
  CVector samples;

  ComplexField() = default;
  ComplexField(Grid g, CVector s);
};

/// Mirror a field through the origin: output at +x equals input at -x.
/// Defined only on origin-centered grids, where the mirror image of every
/// sample position is again a sample position.
ComplexField flip(const ComplexField& field);

/// Multiply every sample by e^{i*phi}.
ComplexField apply_phase(const ComplexField& field, double phi_rad);

/// Element-wise |sample|^2.
RVector intensity(const ComplexField& field);

/// Wavelength and the three propagation distances of the two-arm layout.
/// The arms have equal optical length: d = d1 + d2.
struct SystemGeometry {
  double wavelength_um = 0.532;
  double d1_um = 60000.0;
  double d2_um = 75000.0;
  double d_um = 135000.0;

  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength_um; }
  void validate() const;
};

}  // namespace cfacq
