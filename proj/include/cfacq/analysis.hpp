#pragma once

#include "cfacq/geometry.hpp"

namespace cfacq {

/// Least-squares complex scale: c minimizing sum |measured - c*reference|^2,
/// c = sum(measured * conj(reference)) / sum |reference|^2.
Complex fit_complex_scale(const CVector& measured, const CVector& reference);

/// Sample correlation coefficient. Throws on constant input.
double pearson(const RVector& a, const RVector& b);

/// ||measured - c*reference|| / ||c*reference|| with c the fitted complex
/// scale; invariant under global complex rescaling of measured.
double nrmse(const CVector& measured, const CVector& reference);

/// Plain relative L2 distance, no scale fit.
double relative_l2(const CVector& a, const CVector& reference);

struct ComparisonReport {
  Complex fitted_scale{1.0, 0.0};
  double pearson_re = 0.0;
  double pearson_im = 0.0;
  double nrmse = 0.0;
  double window_min_um = 0.0;
  double window_max_um = 0.0;
  int points = 0;
};

/// Compare measured against reference on |position| <= window_um. Pearson
/// coefficients are taken per part after the fitted scale is applied to the
/// reference.
ComparisonReport compare_signals(const RVector& positions_um,
                                 const CVector& measured,
                                 const CVector& reference, double window_um);

}  // namespace cfacq
