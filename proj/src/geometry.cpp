#include "cfacq/geometry.hpp"

#include <cmath>

namespace cfacq {

Grid::Grid(double center, double spacing, int n)
    : center_um(center), spacing_um(spacing), count(n) {
  if (!(spacing > 0.0))
    throw std::invalid_argument("Grid: spacing must be positive");
  if (n < 1) throw std::invalid_argument("Grid: count must be at least 1");
}

RVector grid_positions(const Grid& grid) {
  RVector x(grid.count);
  for (int i = 0; i < grid.count; ++i) x[i] = grid.position(i);
  return x;
}

ComplexField::ComplexField(Grid g, CVector s)
    : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.count)
    throw std::invalid_argument(
        "ComplexField: sample count does not match grid");
  if (!samples.allFinite())
    throw std::invalid_argument("ComplexField: samples must be finite");
}

ComplexField flip(const ComplexField& field) {
  if (field.grid.center_um != 0.0)
    throw std::invalid_argument("flip: grid must be centered on the origin");
  return ComplexField(field.grid, field.samples.reverse());
}

ComplexField apply_phase(const ComplexField& field, double phi_rad) {
  const Complex factor = std::polar(1.0, phi_rad);
  return ComplexField(field.grid, field.samples * factor);
}

RVector intensity(const ComplexField& field) {
  return field.samples.cwiseAbs2();
}

void SystemGeometry::validate() const {
  if (!(wavelength_um > 0.0) || !(d1_um > 0.0) || !(d2_um > 0.0) ||
      !(d_um > 0.0))
    throw std::invalid_argument(
        "SystemGeometry: wavelength and distances must be positive");
  if (std::abs(d_um - (d1_um + d2_um)) > 1e-9 * d_um)
    throw std::invalid_argument(
        "SystemGeometry: arm lengths must satisfy d = d1 + d2");
}

}  // namespace cfacq
