#include "cfacq/analysis.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cfacq {

Complex fit_complex_scale(const CVector& measured, const CVector& reference) {
  if (measured.size() != reference.size() || measured.size() < 2)
    throw std::invalid_argument(
        "fit_complex_scale: inputs must have equal length >= 2");
  const double denom = reference.squaredNorm();
  if (denom == 0.0)
    throw std::domain_error("fit_complex_scale: reference is identically zero");
  // Eigen's dot conjugates its first argument: r.dot(m) = sum m*conj(r)
  return reference.dot(measured) / denom;
}

double pearson(const RVector& a, const RVector& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson: inputs must have equal length >= 2");
  const RVector da = a.array() - a.mean();
  const RVector db = b.array() - b.mean();
  const double na = da.norm();
  const double nb = db.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::domain_error("pearson: constant input");
  return da.dot(db) / (na * nb);
}

double nrmse(const CVector& measured, const CVector& reference) {
  const Complex c = fit_complex_scale(measured, reference);
  const CVector scaled = c * reference;
  const double denom = scaled.norm();
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return (measured - scaled).norm() / denom;
}

double relative_l2(const CVector& a, const CVector& reference) {
  const double denom = reference.norm();
  if (denom == 0.0)
    throw std::domain_error("relative_l2: reference is identically zero");
  return (a - reference).norm() / denom;
}

ComparisonReport compare_signals(const RVector& positions_um,
                                 const CVector& measured,
                                 const CVector& reference, double window_um) {
  if (positions_um.size() != measured.size() ||
      measured.size() != reference.size())
    throw std::invalid_argument("compare_signals: length mismatch");
  std::vector<int> keep;
  for (int i = 0; i < positions_um.size(); ++i)
    if (std::abs(positions_um[i]) <= window_um) keep.push_back(i);
  if (keep.size() < 2)
    throw std::invalid_argument("compare_signals: window selects < 2 points");

  CVector m(keep.size()), r(keep.size());
  for (size_t j = 0; j < keep.size(); ++j) {
    m[j] = measured[keep[j]];
    r[j] = reference[keep[j]];
  }

  ComparisonReport report;
  report.fitted_scale = fit_complex_scale(m, r);
  const CVector scaled = report.fitted_scale * r;
  report.pearson_re = pearson(m.real(), scaled.real());
  report.pearson_im = pearson(m.imag(), scaled.imag());
  report.nrmse = nrmse(m, r);
  report.window_min_um = -window_um;
  report.window_max_um = window_um;
  report.points = static_cast<int>(keep.size());
  return report;
}

}  // namespace cfacq
