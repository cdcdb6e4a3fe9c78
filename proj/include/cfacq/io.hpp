#pragma once

#include <string>

#include "cfacq/config.hpp"
#include "cfacq/geometry.hpp"

namespace cfacq {

/// One row per detector sample. Column order is fixed:
/// eta_um,I1,I2,I1p,I2p,re_meas,im_meas,re_oracle,im_oracle,re_analytic,im_analytic
struct ResultsTable {
  RVector eta_um;
  RVector I1, I2, I1p, I2p;
  RVector re_meas, im_meas;
  RVector re_oracle, im_oracle;
  RVector re_analytic, im_analytic;

  int rows() const { return static_cast<int>(eta_um.size()); }
};

/// Values serialized with 17 significant digits; re-reading reproduces the
/// doubles exactly.
void write_results_csv(const std::string& path, const ResultsTable& table);
ResultsTable read_results_csv(const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace cfacq
