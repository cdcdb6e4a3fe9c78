#pragma once

#include <string>

#include <Eigen/Dense>

#include "cfacq/geometry.hpp"

namespace cfacq {

/// Fresnel point-response between two planes separated by dist:
/// e^{ikd}/(i lambda d) * e^{ik(x_dst-x_src)^2/(2d)}. Units 1/um.
Complex fresnel_kernel(double x_src_um, double x_dst_um, double dist_um,
                       double wavelength_um);

/// Quadrature adequacy of a plane pair for the Fresnel kernel. The kernel's
/// local spatial frequency max|x_dst-x_src|/(lambda*dist) must stay below the
/// Nyquist limit of the coarser grid.
struct SamplingReport {
  bool pass = false;
  double max_separation_um = 0.0;
  double kernel_max_freq = 0.0;  // cycles/um
  double nyquist_freq = 0.0;     // cycles/um, coarser of the two grids
  double margin = 0.0;           // nyquist_freq / kernel_max_freq
  std::string detail;
};

SamplingReport validate_sampling(const Grid& src, const Grid& dst,
                                 double dist_um, double wavelength_um);

/// Dense discretization of the Fresnel integral between two planes.
/// Applying it to a field includes the midpoint quadrature weight:
/// out[m] = sum_i entries(m,i) * field[i] * src.spacing.
struct TransferMatrix {
  Grid src;
  Grid dst;
  Eigen::MatrixXcd entries;  // dst.count x src.count
  std::string label;
};

TransferMatrix build_transfer_matrix(const Grid& src, const Grid& dst,
                                     double dist_um,
                                     const SystemGeometry& geometry,
                                     std::string label = {});

ComplexField propagate(const ComplexField& field, const TransferMatrix& T);

}  // namespace cfacq
