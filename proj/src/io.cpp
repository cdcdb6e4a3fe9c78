#include "cfacq/io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cfacq {

namespace {

constexpr const char* kHeader =
    "eta_um,I1,I2,I1p,I2p,re_meas,im_meas,re_oracle,im_oracle,re_analytic,"
    "im_analytic";

void append_value(std::string& out, double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  out += buffer;
}

}  // namespace

void write_results_csv(const std::string& path, const ResultsTable& table) {
  const int n = table.rows();
  const RVector* columns[] = {&table.eta_um,     &table.I1,
                              &table.I2,         &table.I1p,
                              &table.I2p,        &table.re_meas,
                              &table.im_meas,    &table.re_oracle,
                              &table.im_oracle,  &table.re_analytic,
                              &table.im_analytic};
  for (const RVector* col : columns)
    if (col->size() != n)
      throw std::invalid_argument("write_results_csv: ragged columns");

  std::string body;
  body.reserve(static_cast<size_t>(n) * 12 * 26 + 64);
  body += kHeader;
  body += '\n';
  for (int i = 0; i < n; ++i) {
    for (size_t c = 0; c < std::size(columns); ++c) {
      if (c != 0) body += ',';
      append_value(body, (*columns[c])[i]);
    }
    body += '\n';
  }
  write_text_file(path, body);
}

ResultsTable read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty results file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw std::runtime_error("unexpected results header in '" + path + "'");

  std::vector<std::array<double, 11>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 11> row{};
    const char* p = line.c_str();
    for (int c = 0; c < 11; ++c) {
      char* end = nullptr;
      row[c] = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error("malformed row in '" + path + "'");
      p = end;
      if (c < 10) {
        if (*p != ',')
          throw std::runtime_error("malformed row in '" + path + "'");
        ++p;
      }
    }
    rows.push_back(row);
  }

  ResultsTable t;
  const int n = static_cast<int>(rows.size());
  RVector* columns[] = {&t.eta_um,  &t.I1,        &t.I2,         &t.I1p,
                        &t.I2p,     &t.re_meas,   &t.im_meas,    &t.re_oracle,
                        &t.im_oracle, &t.re_analytic, &t.im_analytic};
  for (size_t c = 0; c < std::size(columns); ++c) {
    columns[c]->resize(n);
    for (int i = 0; i < n; ++i) (*columns[c])[i] = rows[i][c];
  }
  return t;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ostringstream os;
  os << "config_digest = " << manifest.config_digest << "\n";
  os << "master_seed = " << manifest.master_seed << "\n";
  os << "tool_version = " << manifest.tool_version << "\n";
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.3f", manifest.wall_time_s);
  os << "wall_time_s = " << wall << "\n";
  write_text_file(path, os.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace cfacq
