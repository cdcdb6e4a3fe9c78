#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfacq/analysis.hpp"
#include "cfacq/config.hpp"
#include "cfacq/experiment.hpp"
#include "cfacq/io.hpp"

namespace fs = std::filesystem;
using namespace cfacq;

namespace {

std::string fmt17(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

RunConfig load_config(const std::string& config_path,
                      const std::vector<std::pair<std::string, std::string>>&
                          overrides) {
  std::string text;
  if (!config_path.empty()) text = read_text_file(config_path);
  return parse_config(text, overrides);
}

RVector analytic_re(const RunConfig& rc, const RVector& nu) {
  RVector out(nu.size());
  for (int i = 0; i < nu.size(); ++i)
    out[i] = analytic_ft_real(nu[i], rc.object);
  return out;
}

RVector analytic_im(const RunConfig& rc, const RVector& nu) {
  RVector out(nu.size());
  for (int i = 0; i < nu.size(); ++i)
    out[i] = analytic_ft_imag(nu[i], rc.object);
  return out;
}

double conceived_bandwidth(const ConceivedObjectParams& p) {
  const double cos_band = p.cos_freq_per_um / (2.0 * std::numbers::pi) +
                          2.0 / p.support_width_um;
  return std::max(cos_band, 1.0 / p.rect_width_um);
}

ResultsTable make_table(const RunConfig& rc, const AcquisitionResult& result) {
  const RVector nu =
      detector_frequencies(rc.experiment.detector_grid, rc.experiment.geometry);
  const CVector oracle = coherent_mode_oracle(rc.experiment);
  ResultsTable t;
  t.eta_um = grid_positions(rc.experiment.detector_grid);
  t.I1 = result.I1;
  t.I2 = result.I2;
  t.I1p = result.I1p;
  t.I2p = result.I2p;
  t.re_meas = result.re_part;
  t.im_meas = result.im_part;
  t.re_oracle = oracle.real();
  t.im_oracle = oracle.imag();
  t.re_analytic = analytic_re(rc, nu);
  t.im_analytic = analytic_im(rc, nu);
  return t;
}

int cmd_acquire(const std::string& config_path,
                const std::vector<std::pair<std::string, std::string>>&
                    overrides,
                const std::string& out_dir, int workers) {
  const RunConfig rc = load_config(config_path, overrides);
  fs::create_directories(out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const AcquisitionResult result = run_acquisition(rc.experiment, workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  write_results_csv((fs::path(out_dir) / "results.csv").string(),
                    make_table(rc, result));
  write_text_file((fs::path(out_dir) / "config.txt").string(),
                  rc.canonical_text);
  RunManifest manifest;
  manifest.config_digest = rc.digest;
  manifest.master_seed = rc.experiment.source.master_seed;
  manifest.tool_version = kToolVersion;
  manifest.wall_time_s = wall;
  write_manifest((fs::path(out_dir) / "manifest.txt").string(), manifest);

  std::cout << "acquire: N=" << result.realizations_used << " seed="
            << rc.experiment.source.master_seed << " digest=" << rc.digest
            << " wall=" << wall << "s -> " << out_dir << "/results.csv\n";
  return 0;
}

int cmd_oracle(const std::string& config_path,
               const std::vector<std::pair<std::string, std::string>>&
                   overrides,
               const std::string& out_dir) {
  const RunConfig rc = load_config(config_path, overrides);
  fs::create_directories(out_dir);
  const RVector eta = grid_positions(rc.experiment.detector_grid);
  const RVector nu =
      detector_frequencies(rc.experiment.detector_grid, rc.experiment.geometry);
  const CVector oracle = coherent_mode_oracle(rc.experiment);
  const RVector re_a = analytic_re(rc, nu);
  const RVector im_a = analytic_im(rc, nu);

  std::string body =
      "eta_um,nu_per_um,re_oracle,im_oracle,re_analytic,im_analytic\n";
  for (int i = 0; i < eta.size(); ++i) {
    body += fmt17(eta[i]) + "," + fmt17(nu[i]) + "," +
            fmt17(oracle[i].real()) + "," + fmt17(oracle[i].imag()) + "," +
            fmt17(re_a[i]) + "," + fmt17(im_a[i]) + "\n";
  }
  const std::string path = (fs::path(out_dir) / "oracle.csv").string();
  write_text_file(path, body);
  write_text_file((fs::path(out_dir) / "config.txt").string(),
                  rc.canonical_text);
  std::cout << "oracle: " << eta.size() << " samples -> " << path << "\n";
  return 0;
}

CVector column_pair(const RVector& re, const RVector& im) {
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

int cmd_compare(const std::string& run_dir, const std::string& against,
                double window_um) {
  const ResultsTable t =
      read_results_csv((fs::path(run_dir) / "results.csv").string());
  const CVector measured = column_pair(t.re_meas, t.im_meas);
  CVector reference;
  if (against == "oracle") {
    reference = column_pair(t.re_oracle, t.im_oracle);
  } else if (against == "analytic") {
    reference = column_pair(t.re_analytic, t.im_analytic);
  } else {
    throw std::runtime_error("--against must be 'oracle' or 'analytic'");
  }
  const ComparisonReport report =
      compare_signals(t.eta_um, measured, reference, window_um);

  std::ostringstream os;
  os << "reference = " << against << "\n"
     << "window_um = " << window_um << "\n"
     << "points = " << report.points << "\n"
     << "fitted_scale = " << fmt17(report.fitted_scale.real()) << " "
     << fmt17(report.fitted_scale.imag()) << "\n"
     << "fitted_scale_abs = " << fmt17(std::abs(report.fitted_scale)) << "\n"
     << "fitted_scale_arg_rad = " << fmt17(std::arg(report.fitted_scale))
     << "\n"
     << "pearson_re = " << fmt17(report.pearson_re) << "\n"
     << "pearson_im = " << fmt17(report.pearson_im) << "\n"
     << "nrmse = " << fmt17(report.nrmse) << "\n";
  const std::string text = os.str();
  std::cout << text;
  write_text_file(
      (fs::path(run_dir) / ("compare_" + against + ".txt")).string(), text);
  return 0;
}

int cmd_invert(const std::string& run_dir, const std::string& source,
               int count, double extent_um, std::string out_path) {
  const RunConfig rc = parse_config(
      read_text_file((fs::path(run_dir) / "config.txt").string()));
  const ResultsTable t =
      read_results_csv((fs::path(run_dir) / "results.csv").string());

  CVector spectrum;
  if (source == "measured") {
    spectrum = assemble_complex_ft(t.re_meas, t.im_meas,
                                   rc.experiment.plates.j_off);
  } else if (source == "oracle") {
    spectrum = assemble_complex_ft(t.re_oracle, t.im_oracle,
                                   rc.experiment.plates.j_off);
  } else if (source == "analytic") {
    spectrum = column_pair(t.re_analytic, t.im_analytic);
  } else {
    throw std::runtime_error(
        "--source must be 'measured', 'oracle' or 'analytic'");
  }

  const Grid target(0.0, extent_um / (count - 1), count);
  const InversionResult inv = invert_to_object(
      spectrum, rc.experiment.detector_grid, rc.experiment.geometry, target,
      conceived_bandwidth(rc.object));

  if (out_path.empty())
    out_path = (fs::path(run_dir) / "inversion.csv").string();
  std::string body = "xi_um,re_fhat,im_fhat,abs_fhat\n";
  for (int i = 0; i < target.count; ++i) {
    const Complex v = inv.object_estimate.samples[i];
    body += fmt17(target.position(i)) + "," + fmt17(v.real()) + "," +
            fmt17(v.imag()) + "," + fmt17(std::abs(v)) + "\n";
  }
  write_text_file(out_path, body);
  std::cout << "invert: source=" << source << " nu_max=" << inv.nu_max_per_um
            << " /um -> " << out_path << "\n";
  if (inv.coverage_warning)
    std::cout << "warning: detector frequency coverage " << inv.nu_max_per_um
              << " /um is below the object bandwidth "
              << conceived_bandwidth(rc.object) << " /um\n";
  return 0;
}

int cmd_sweep(const std::string& ns_csv, const std::string& config_path,
              const std::vector<std::pair<std::string, std::string>>&
                  overrides,
              const std::string& out_dir, int workers) {
  RunConfig rc = load_config(config_path, overrides);

  std::vector<int> ns;
  std::stringstream ss(ns_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int n = std::stoi(item);
    if (n < 1) throw std::runtime_error("sweep-n: N must be positive");
    ns.push_back(n);
  }
  if (ns.size() < 2) throw std::runtime_error("sweep-n: need at least two N");

  const CVector oracle = coherent_mode_oracle(rc.experiment);
  std::vector<double> errors;
  std::cout << "      N   rel_l2_error\n";
  for (const int n : ns) {
    ExperimentConfig cfg = rc.experiment;
    cfg.realizations = n;
    const AcquisitionResult result = run_acquisition(cfg, workers);
    const CVector z = column_pair(result.re_part, result.im_part);
    const double err = relative_l2(z, oracle);
    errors.push_back(err);
    std::printf("%7d   %.6g\n", n, err);
  }

  // least-squares slope of log(err) vs log(N)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (size_t i = 0; i < ns.size(); ++i) {
    const double lx = std::log(static_cast<double>(ns[i]));
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  std::printf("slope = %.4f\n", slope);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::string body = "n,rel_l2_error\n";
    for (size_t i = 0; i < ns.size(); ++i)
      body += std::to_string(ns[i]) + "," + fmt17(errors[i]) + "\n";
    body += "# slope = " + fmt17(slope) + "\n";
    write_text_file((fs::path(out_dir) / "sweep.csv").string(), body);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cfacq: two-arm thermal-light interferometer simulator that acquires "
      "the complex Fourier transform of an object from intensity "
      "measurements"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "run";
  std::string run_dir;
  std::string against = "analytic";
  std::string source = "measured";
  std::string ns_csv = "500,2000,8000,32000";
  std::string out_path;
  std::uint64_t seed = 0;
  int workers = 0;
  int count = 501;
  double extent_um = 1200.0;
  double window_um = 400.0;

  auto* acquire = app.add_subcommand(
      "acquire", "Run the Monte Carlo acquisition and write results");
  acquire->add_option("--config", config_path, "Config file");
  auto* seed_opt =
      acquire->add_option("--seed", seed, "Master seed override");
  acquire->add_option("--out", out_dir, "Output directory");
  acquire->add_option("--workers", workers,
                      "Worker threads (0 = CFACQ_WORKERS env or all cores)");

  auto* oracle = app.add_subcommand(
      "oracle", "Write the deterministic coherent-mode and analytic "
                "references");
  oracle->add_option("--config", config_path, "Config file");
  oracle->add_option("--out", out_dir, "Output directory");

  auto* compare = app.add_subcommand(
      "compare", "Compare a run's measured spectrum against a reference");
  compare->add_option("run_dir", run_dir, "Directory written by acquire")
      ->required();
  compare->add_option("--against", against, "'oracle' or 'analytic'");
  compare->add_option("--window", window_um, "Half-width of eta window (um)");

  auto* invert = app.add_subcommand(
      "invert", "Reconstruct the object from an acquired spectrum");
  invert->add_option("run_dir", run_dir, "Directory written by acquire")
      ->required();
  invert->add_option("--source", source,
                     "'measured', 'oracle' or 'analytic'");
  invert->add_option("--count", count, "Target grid sample count");
  invert->add_option("--extent", extent_um, "Target grid span (um)");
  invert->add_option("--out", out_path, "Output CSV path");

  auto* sweep = app.add_subcommand(
      "sweep-n", "Monte Carlo convergence study against the oracle");
  sweep->add_option("n_list", ns_csv, "Comma-separated realization counts");
  sweep->add_option("--config", config_path, "Config file");
  sweep->add_option("--out", out_dir, "Output directory (optional)");
  sweep->add_option("--workers", workers, "Worker threads");

  std::vector<std::pair<std::string, std::string>> overrides;

  try {
    app.parse(argc, argv);
    if (seed_opt->count() > 0)
      overrides.emplace_back("seed", std::to_string(seed));

    if (acquire->parsed())
      return cmd_acquire(config_path, overrides, out_dir, workers);
    if (oracle->parsed()) return cmd_oracle(config_path, overrides, out_dir);
    if (compare->parsed()) return cmd_compare(run_dir, against, window_um);
    if (invert->parsed())
      return cmd_invert(run_dir, source, count, extent_um, out_path);
    if (sweep->parsed())
      return cmd_sweep(ns_csv, config_path, overrides,
                       sweep->count("--out") > 0 ? out_dir : std::string{},
                       workers);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.code_name() << "]: " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
