#include "cfacq/propagation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cfacq {

Complex fresnel_kernel(double x_src_um, double x_dst_um, double dist_um,
                       double wavelength_um) {
  if (!(dist_um > 0.0))
    throw std::domain_error("fresnel_kernel: distance must be positive");
  if (!(wavelength_um > 0.0))
    throw std::domain_error("fresnel_kernel: wavelength must be positive");
  const double k = 2.0 * std::numbers::pi / wavelength_um;
  const double dx = x_dst_um - x_src_um;
  const double phase =
      k * dist_um - 0.5 * std::numbers::pi + k * dx * dx / (2.0 * dist_um);
  return std::polar(1.0 / (wavelength_um * dist_um), phase);
}

SamplingReport validate_sampling(const Grid& src, const Grid& dst,
                                 double dist_um, double wavelength_um) {
  SamplingReport r;
  const double sep_a = std::abs(dst.max_position() - src.min_position());
  const double sep_b = std::abs(src.max_position() - dst.min_position());
  r.max_separation_um = std::max(sep_a, sep_b);
  r.kernel_max_freq = r.max_separation_um / (wavelength_um * dist_um);
  r.nyquist_freq = 1.0 / (2.0 * std::max(src.spacing_um, dst.spacing_um));
  r.margin = r.kernel_max_freq > 0.0
                 ? r.nyquist_freq / r.kernel_max_freq
                 : std::numeric_limits<double>::infinity();
  r.pass = r.kernel_max_freq < r.nyquist_freq;
  std::ostringstream os;
  os << "kernel frequency " << r.kernel_max_freq << " /um vs Nyquist "
     << r.nyquist_freq << " /um (margin " << r.margin << "x)";
  r.detail = os.str();
  return r;
}

TransferMatrix build_transfer_matrix(const Grid& src, const Grid& dst,
                                     double dist_um,
                                     const SystemGeometry& geometry,
                                     std::string label) {
  const SamplingReport report =
      validate_sampling(src, dst, dist_um, geometry.wavelength_um);
  if (!report.pass) {
    throw std::invalid_argument(
        "build_transfer_matrix: sampling validation failed for '" +
        (label.empty() ? std::string("unnamed leg") : label) +
        "': " + report.detail);
  }
  TransferMatrix T;
  T.src = src;
  T.dst = dst;
  T.label = std::move(label);
  T.entries.resize(dst.count, src.count);
  for (int i = 0; i < src.count; ++i) {
    const double xs = src.position(i);
    for (int m = 0; m < dst.count; ++m) {
      T.entries(m, i) =
          fresnel_kernel(xs, dst.position(m), dist_um, geometry.wavelength_um);
    }
  }
  return T;
}

ComplexField propagate(const ComplexField& field, const TransferMatrix& T) {
  if (!(field.grid == T.src))
    throw std::invalid_argument(
        "propagate: field grid does not match matrix source grid");
  CVector out = (T.entries * field.samples) * T.src.spacing_um;
  return ComplexField(T.dst, std::move(out));
}

}  // namespace cfacq
