#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfacq/objects.hpp"

using namespace cfacq;

namespace {

constexpr double pi = std::numbers::pi;

// independent quadrature oracle: direct summation of f(xi) e^{-i 2 pi nu xi}
Complex quadrature_ft(double nu, const ConceivedObjectParams& params,
                      double dxi = 0.5, double half_span = 520.0) {
  Complex acc(0.0, 0.0);
  const int n = static_cast<int>(std::round(2.0 * half_span / dxi)) + 1;
  for (int i = 0; i < n; ++i) {
    const double xi = -half_span + i * dxi;
    acc += conceived_object(xi, params) * std::polar(1.0, -2.0 * pi * nu * xi);
  }
  return acc * dxi;
}

}  // namespace

TEST_CASE("rect edge convention") {
  CHECK(rect(0.0) == 1.0);
  CHECK(rect(0.75) == 0.0);
  CHECK(rect(0.5) == 0.5);
  CHECK(rect(-0.5) == 0.5);
  CHECK(rect(-0.49) == 1.0);
}

TEST_CASE("sinc normalization") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(1.0)) < 1e-15);
  CHECK(sinc(0.5) == doctest::Approx(2.0 / pi).epsilon(1e-15));
  CHECK(sinc(-0.5) == sinc(0.5));
}

TEST_CASE("conceived object point values") {
  const ConceivedObjectParams p;
  CHECK(conceived_object(0.0, p) == Complex(2.0, 0.0));
  CHECK(conceived_object(600.0, p) == Complex(0.0, 0.0));

  const Complex at150 = conceived_object(150.0, p);
  CHECK(at150.real() == doctest::Approx(1.0 + std::cos(7.5)).epsilon(1e-15));
  CHECK(at150.imag() == 1.0);
}

TEST_CASE("analytic transform matches the quadrature oracle") {
  const ConceivedObjectParams p;

  const Complex q0 = quadrature_ft(0.0, p);
  CHECK(analytic_ft_real(0.0, p) == doctest::Approx(q0.real()).epsilon(2e-4));
  CHECK(analytic_ft_imag(0.0, p) == doctest::Approx(q0.imag()).epsilon(2e-4));
  CHECK(analytic_ft_imag(0.0, p) == 210.0);

  const Complex q1 = quadrature_ft(1e-3, p);
  CHECK(analytic_ft_real(1e-3, p) == doctest::Approx(q1.real()).epsilon(2e-3));
  CHECK(analytic_ft_imag(1e-3, p) == doctest::Approx(q1.imag()).epsilon(2e-3));

  // relative L2 over the acquisition band
  double num = 0.0, den = 0.0;
  for (int i = -40; i <= 40; ++i) {
    const double nu = i * 2.5e-4;
    const Complex a(analytic_ft_real(nu, p), analytic_ft_imag(nu, p));
    const Complex q = quadrature_ft(nu, p);
    num += std::norm(a - q);
    den += std::norm(q);
  }
  CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("analytic transform known zeros and tails") {
  const ConceivedObjectParams p;
  CHECK(std::abs(analytic_ft_imag(1.0 / 105.0, p)) < 1e-12);
  CHECK(std::abs(analytic_ft_imag(1.0 / 600.0, p)) < 1e-12);
  CHECK(std::abs(analytic_ft_real(5.0, p)) < 0.1);
  CHECK(std::abs(analytic_ft_real(-5.0, p)) < 0.1);
}

TEST_CASE("analytic transform is even in nu") {
  const ConceivedObjectParams p;
  for (const double nu : {1.3e-3, 4.7e-3, 7.96e-3, 1.55e-2}) {
    CHECK(analytic_ft_real(nu, p) ==
          doctest::Approx(analytic_ft_real(-nu, p)).epsilon(1e-12));
    CHECK(analytic_ft_imag(nu, p) ==
          doctest::Approx(analytic_ft_imag(-nu, p)).epsilon(1e-12));
  }
}

TEST_CASE("sampled transmittance structure") {
  const ConceivedObjectParams p;
  const Grid g(0.0, 1.171875, 1024);
  const Transmittance f = sample_transmittance(g, p);

  int nearest = 0;
  for (int i = 1; i < g.count; ++i)
    if (std::abs(g.position(i)) < std::abs(g.position(nearest))) nearest = i;
  CHECK(f.values[nearest].real() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(f.values[nearest].imag() == 0.0);

  for (int i = 0; i < g.count; ++i) {
    const double xi = g.position(i);
    if (std::abs(xi) > 500.0 + g.spacing_um)
      CHECK(f.values[i] == Complex(0.0, 0.0));
    const bool in_band = std::abs(std::abs(xi) - 150.0) <= 52.5 + g.spacing_um;
    if (!in_band) CHECK(f.values[i].imag() == 0.0);
  }
}

TEST_CASE("sampled transmittance requires full support coverage") {
  CHECK_THROWS_AS(sample_transmittance(Grid(0.0, 1.0, 256), {}),
                  std::invalid_argument);
}

TEST_CASE("object parameter validation") {
  ConceivedObjectParams bad;
  bad.rect_offset_um = 480.0;  // 480 + 52.5 > 500
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.support_width_um = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
