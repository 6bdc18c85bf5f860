#include "doctest.h"
#include "wvu/continuous.hpp"

#include <cmath>

using namespace wvu;

namespace {

GaussianFamilyParams family(double lambda, double mu, double x0 = 0.0, double p0 = 0.0) {
  return {lambda, mu, x0, p0};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

double trapezoid_norm(const GridWaveFunction& psi) {
  const auto v = psi.values();
  double total = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    total += (k == 0 || k + 1 == v.size() ? 0.5 : 1.0) * std::norm(v[k]);
  return total * psi.dx();
}

// Largest error of the sampled log-derivative against its analytic value
// for a Gaussian carrying the gauge factor exp(0.3 tanh x).
double gauge_log_derivative_error(const GaussianFamilyParams& p, std::size_t n) {
  const GridSpec grid = default_grid(p, 1.0, n);
  const auto psi = GridWaveFunction::sample(grid, [&](double x) {
    return gaussian_mus_amplitude(p, 1.0, x) * std::exp(0.3 * std::tanh(x));
  });
  double worst = 0.0;
  for (const auto& s : log_derivative(psi)) {
    const double u = s.x - p.mean_x;
    const double sech = 1.0 / std::cosh(s.x);
    const Complex exact(-p.mu * u + 0.3 * sech * sech, p.lambda * u + p.mean_p);
    worst = std::max(worst, std::abs(s.value - exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("grid wave functions are normalized by the trapezoid rule") {
  for (double mu : {0.5, 1.0, 4.0}) {
    const auto psi = gaussian_mus(family(1.0, mu, 0.2, -0.4));
    CHECK(std::abs(trapezoid_norm(psi) - 1.0) < 1e-10);
  }
  const GridSpec grid{-1.0, 1.0, 64, 1.0};
  CHECK(code_of([&] { GridWaveFunction(grid, ComplexVector(64)); }) == ErrorCode::ZeroState);
  CHECK(code_of([&] { GridWaveFunction(grid, ComplexVector(10, 1.0)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("Gaussian moments") {
  SUBCASE("standard Gaussian") {
    const auto c = schrodinger_check(gaussian_mus(family(0.0, 1.0)));
    CHECK(c.var_x == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c.var_p == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c.lhs == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(c.rhs == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(c.covariance) < 1e-9);
  }
  SUBCASE("quadratic phase adds exactly the covariance term") {
    const auto c = schrodinger_check(gaussian_mus(family(1.0, 1.0)));
    CHECK(c.covariance * c.covariance == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(c.lhs == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(c.gap) / c.lhs < 1e-5);
  }
  SUBCASE("width scaling") {
    const auto c = schrodinger_check(gaussian_mus(family(0.0, 4.0)));
    CHECK(c.var_x == doctest::Approx(1.0 / 8.0).epsilon(1e-6));
    CHECK(c.var_p == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(c.lhs == doctest::Approx(0.25).epsilon(1e-6));
  }
  SUBCASE("means and hbar") {
    const auto psi = gaussian_mus(family(2.0, 0.5, 1.5, -0.7), 0.3);
    const auto m = moments(psi);
    CHECK(m.mean_x == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(m.mean_p == doctest::Approx(-0.7).epsilon(1e-6));
    // var_x = hbar/(2 mu), covariance = lambda hbar / (2 mu)
    CHECK(m.var_x == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(m.covariance == doctest::Approx(0.6).epsilon(1e-5));
  }
}

TEST_CASE("Gaussian family saturates the Schroedinger bound") {
  for (double lambda : {-2.0, 0.0, 1.0, 2.0}) {
    for (double mu : {0.5, 1.0, 4.0}) {
      const auto p = family(lambda, mu, 0.3, 0.5);
      const auto psi = gaussian_mus(p);
      CHECK(phase_condition_residual(psi, lambda, 0.3, 0.5) < 1e-4);
      CHECK(modulus_condition_residual(psi, mu, 0.3) < 1e-4);
      const auto c = schrodinger_check_continuous(
          [&](double x) { return gaussian_mus_amplitude(p, 1.0, x); }, default_grid(p));
      CHECK(std::abs(c.gap) / c.lhs < 1e-3);
      CHECK(discord_p_given_x(psi) < 1e-8);
    }
  }
}

TEST_CASE("phase condition residual") {
  CHECK(phase_condition_residual(gaussian_mus(family(1.0, 1.0)), 1.0, 0.0, 0.0) < 1e-4);

  const GridSpec grid{-4.0, 4.0, 2001, 1.0};
  const auto real_positive =
      GridWaveFunction::sample(grid, [](double x) { return Complex(1.0 / std::cosh(x)); });
  CHECK(phase_condition_residual(real_positive, 0.0, 0.0, 0.0) < 1e-12);

  // a real gauge in the modulus exponent leaves the phase condition alone
  const auto p = family(1.0, 1.0);
  const auto gauged = GridWaveFunction::sample(default_grid(p), [&](double x) {
    return gaussian_mus_amplitude(p, 1.0, x) * std::exp(0.3 * std::tanh(x));
  });
  CHECK(phase_condition_residual(gauged, 1.0, 0.0, 0.0) < 1e-4);
  CHECK(modulus_condition_residual(gauged, 1.0, 0.0) > 0.1);
}

TEST_CASE("modulus condition residual") {
  CHECK(modulus_condition_residual(gaussian_mus(family(0.0, 2.0)), 2.0, 0.0) < 1e-4);

  const auto p = family(0.0, 2.0);
  const auto phased = GridWaveFunction::sample(default_grid(p), [&](double x) {
    return gaussian_mus_amplitude(p, 1.0, x) * std::polar(1.0, 0.8 * std::sin(3.0 * x));
  });
  CHECK(modulus_condition_residual(phased, 2.0, 0.0) < 1e-4);

  // |psi| constant: Re(psi'/psi) = 0, so the residual is (mu/hbar) max|x - <x>|
  const GridSpec grid{-2.0, 3.0, 501, 0.5};
  const auto flat = GridWaveFunction::sample(grid, [](double x) { return std::polar(1.0, 2.0 * x); });
  const double mu = 0.7, x0 = 0.25;
  const double reach = std::max(std::abs(grid.x(1) - x0), std::abs(grid.x(grid.n_points - 2) - x0));
  CHECK(modulus_condition_residual(flat, mu, x0) == doctest::Approx(mu / 0.5 * reach).epsilon(1e-10));
}

TEST_CASE("discord of p given x") {
  CHECK(discord_p_given_x(gaussian_mus(family(2.0, 1.0))) == 0.0);

  SUBCASE("oscillator state with a node") {
    const GridSpec grid{-8.0, 8.0, 4001, 1.0};
    const auto psi =
        GridWaveFunction::sample(grid, [](double x) { return Complex(x * std::exp(-x * x / 2)); });
    CHECK(discord_p_given_x(psi) < 1e-8);
  }
  SUBCASE("compactly supported bump") {
    const GridSpec grid{-3.0, 3.0, 6001, 1.0};
    const auto psi = GridWaveFunction::sample(grid, [](double x) {
      return std::abs(x) < 1.0 ? Complex(std::exp(-1.0 / (1.0 - x * x))) : Complex(0.0);
    });
    CHECK(discord_p_given_x(psi) < 1e-8);
  }
}

TEST_CASE("invalid parameters and grids") {
  CHECK(code_of([] { gaussian_mus(family(0.0, 0.0)); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { gaussian_mus(family(0.0, -1.0)); }) == ErrorCode::ValidationError);
  const auto p = family(0.0, 1.0);
  CHECK(code_of([&] { gaussian_mus(p, GridSpec{-2.0, 2.0, 2048, 1.0}); }) ==
        ErrorCode::GridTooNarrow);
  try {
    gaussian_mus(p, GridSpec{-2.0, 2.0, 2048, 1.0});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("-5.65685") != std::string::npos);
  }
  CHECK(code_of([&] { gaussian_mus(p, GridSpec{-6.0, 6.0, 8, 1.0}); }) ==
        ErrorCode::ValidationError);
}

TEST_CASE("unresolved grids fail the convergence precondition") {
  const auto p = family(2.0, 4.0);
  const auto f = [&](double x) { return gaussian_mus_amplitude(p, 1.0, x); };
  CHECK(code_of([&] { schrodinger_check_continuous(f, default_grid(p, 1.0, 32)); }) ==
        ErrorCode::NotConverged);
  CHECK_NOTHROW(schrodinger_check_continuous(f, default_grid(p)));
}

TEST_CASE("halving dx reduces the discretization errors at least twofold") {
  const auto p = family(1.0, 1.0, 0.3, 0.5);
  // var_x converges spectrally under the trapezoid rule, so only the
  // difference-based quantities carry a measurable truncation error.
  const double var_p = (1.0 + 1.0) * 0.5, cov = 0.5;
  for (std::size_t n : {257, 1025}) {
    const std::size_t n2 = 2 * n - 1;
    const auto c1 = schrodinger_check(gaussian_mus(p, default_grid(p, 1.0, n)));
    const auto c2 = schrodinger_check(gaussian_mus(p, default_grid(p, 1.0, n2)));
    CHECK(std::abs(c1.var_p - var_p) / std::abs(c2.var_p - var_p) >= 2.0);
    CHECK(std::abs(c1.covariance - cov) / std::abs(c2.covariance - cov) >= 2.0);
    CHECK(std::abs(c1.gap) / std::abs(c2.gap) >= 2.0);
    CHECK(gauge_log_derivative_error(p, n) / gauge_log_derivative_error(p, n2) >= 2.0);
  }
}
