#include "wvu/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace wvu {

namespace {

double trapezoid_weight(std::size_t k, std::size_t n, double dx) {
  return (k == 0 || k + 1 == n) ? 0.5 * dx : dx;
}

// Centered difference with psi = 0 outside the grid.
ComplexVector first_difference(std::span<const Complex> v, double dx) {
  const std::size_t n = v.size();
  ComplexVector d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex right = k + 1 < n ? v[k + 1] : Complex{};
    const Complex left = k > 0 ? v[k - 1] : Complex{};
    d[k] = (right - left) / (2.0 * dx);
  }
  return d;
}

ComplexVector second_difference(std::span<const Complex> v, double dx) {
  const std::size_t n = v.size();
  ComplexVector d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex right = k + 1 < n ? v[k + 1] : Complex{};
    const Complex left = k > 0 ? v[k - 1] : Complex{};
    d[k] = (right - 2.0 * v[k] + left) / (dx * dx);
  }
  return d;
}

void validate_grid(const GridSpec& grid) {
  if (grid.n_points < kMinGridPoints)
    throw Error(ErrorCode::ValidationError,
                "grid needs at least " + std::to_string(kMinGridPoints) + " points");
  if (!(grid.x_max > grid.x_min) || !std::isfinite(grid.x_min) || !std::isfinite(grid.x_max))
    throw Error(ErrorCode::ValidationError, "grid requires finite x_min < x_max");
  if (!(grid.hbar > 0.0)) throw Error(ErrorCode::ValidationError, "hbar must be > 0");
}

}  // namespace

GridWaveFunction::GridWaveFunction(const GridSpec& grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
  validate_grid(grid_);
  require_same_dim(values_.size(), grid_.n_points, "grid wave function");
  double total = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const Complex z = values_[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::NonFinite, "wave function sample " + std::to_string(k));
    total += trapezoid_weight(k, values_.size(), grid_.dx()) * std::norm(z);
  }
  if (total == 0.0) throw Error(ErrorCode::ZeroState, "wave function vanishes on the grid");
  const double scale = 1.0 / std::sqrt(total);
  for (auto& z : values_) z *= scale;
}

GridWaveFunction GridWaveFunction::sample(const GridSpec& grid,
                                          const std::function<Complex(double)>& f) {
  validate_grid(grid);
  ComplexVector values(grid.n_points);
  for (std::size_t k = 0; k < grid.n_points; ++k) values[k] = f(grid.x(k));
  return GridWaveFunction(grid, std::move(values));
}

double GridWaveFunction::max_abs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

double position_spread(const GaussianFamilyParams& params, double hbar) {
  return std::sqrt(hbar / (2.0 * params.mu));
}

GridSpec default_grid(const GaussianFamilyParams& params, double hbar, std::size_t n_points) {
  if (!(params.mu > 0.0)) throw Error(ErrorCode::ValidationError, "mu must be > 0");
  const double half = kGridHalfWidthSigmas * position_spread(params, hbar);
  return {params.mean_x - half, params.mean_x + half, n_points, hbar};
}

Complex gaussian_mus_amplitude(const GaussianFamilyParams& params, double hbar, double x) {
  const double u = x - params.mean_x;
  const double phase = (params.lambda * u * u / 2.0 + params.mean_p * x) / hbar;
  const double log_modulus = -params.mu * u * u / (2.0 * hbar);
  return std::polar(std::exp(log_modulus), phase);
}

GridWaveFunction gaussian_mus(const GaussianFamilyParams& params, const GridSpec& grid) {
  if (!(params.mu > 0.0)) throw Error(ErrorCode::ValidationError, "mu must be > 0");
  validate_grid(grid);
  const double half = kGridHalfWidthSigmas * position_spread(params, grid.hbar);
  const double lo = params.mean_x - half;
  const double hi = params.mean_x + half;
  const double slack = 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi));
  if (grid.x_min > lo + slack || grid.x_max < hi - slack) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "grid [%.6g, %.6g] must cover at least [%.6g, %.6g]",
                  grid.x_min, grid.x_max, lo, hi);
    throw Error(ErrorCode::GridTooNarrow, buf);
  }
  const double hbar = grid.hbar;
  return GridWaveFunction::sample(
      grid, [&](double x) { return gaussian_mus_amplitude(params, hbar, x); });
}

GridWaveFunction gaussian_mus(const GaussianFamilyParams& params, double hbar) {
  return gaussian_mus(params, default_grid(params, hbar));
}

GridMoments moments(const GridWaveFunction& psi) {
  const auto v = psi.values();
  const std::size_t n = v.size();
  const double dx = psi.dx();
  const double hbar = psi.hbar();
  const ComplexVector d1 = first_difference(v, dx);
  const ComplexVector d2 = second_difference(v, dx);

  double mean_x = 0.0, mean_p = 0.0, p_sq = 0.0, xp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = trapezoid_weight(k, n, dx);
    const double x = psi.x(k);
    const Complex conj_v = std::conj(v[k]);
    const double flux = (conj_v * d1[k]).imag();  // Re(psi* (-i psi'))
    mean_x += w * std::norm(v[k]) * x;
    mean_p += w * flux;
    xp += w * x * flux;
    p_sq -= w * (conj_v * d2[k]).real();
  }
  mean_p *= hbar;
  xp *= hbar;
  p_sq *= hbar * hbar;

  double var_x = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = psi.x(k) - mean_x;
    var_x += trapezoid_weight(k, n, dx) * std::norm(v[k]) * u * u;
  }
  return {mean_x, mean_p, var_x, p_sq - mean_p * mean_p, xp - mean_x * mean_p};
}

std::vector<LogDerivativeSample> log_derivative(const GridWaveFunction& psi, double floor_rel) {
  const auto v = psi.values();
  const double floor = floor_rel * psi.max_abs();
  const double dx = psi.dx();
  std::vector<LogDerivativeSample> out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (std::abs(v[k - 1]) <= floor || std::abs(v[k]) <= floor || std::abs(v[k + 1]) <= floor)
      continue;
    out.push_back({psi.x(k), std::log(v[k + 1] / v[k - 1]) / (2.0 * dx)});
  }
  return out;
}

double phase_condition_residual(const GridWaveFunction& psi, double lambda, double mean_x,
                                double mean_p) {
  const double hbar = psi.hbar();
  double worst = 0.0;
  for (const auto& s : log_derivative(psi)) {
    const double expected = (lambda / hbar) * (s.x - mean_x) + mean_p / hbar;
    worst = std::max(worst, std::abs(s.value.imag() - expected));
  }
  return worst;
}

double modulus_condition_residual(const GridWaveFunction& psi, double mu, double mean_x) {
  const double hbar = psi.hbar();
  double worst = 0.0;
  for (const auto& s : log_derivative(psi)) {
    const double expected = -(mu / hbar) * (s.x - mean_x);
    worst = std::max(worst, std::abs(s.value.real() - expected));
  }
  return worst;
}

double discord_p_given_x(const GridWaveFunction& psi, double zero_tol_rel) {
  const auto v = psi.values();
  const double tol = zero_tol_rel * psi.max_abs();
  const double dx = psi.dx();
  const ComplexVector d1 = first_difference(v, dx);
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (std::abs(v[k]) < tol && std::abs(v[k + 1]) < tol)
      integral += 0.5 * dx * (std::norm(d1[k]) + std::norm(d1[k + 1]));
  }
  return psi.hbar() * psi.hbar() * integral;
}

ContinuousCheck schrodinger_check(const GridWaveFunction& psi) {
  const GridMoments m = moments(psi);
  ContinuousCheck c;
  c.var_x = m.var_x;
  c.var_p = m.var_p;
  c.covariance = m.covariance;
  c.lhs = m.var_p * m.var_x;
  const double half_hbar = 0.5 * psi.hbar();
  c.rhs = half_hbar * half_hbar + m.covariance * m.covariance;
  c.gap = c.lhs - c.rhs;
  return c;
}

ContinuousCheck schrodinger_check_continuous(const std::function<Complex(double)>& f,
                                             const GridSpec& grid, double convergence_tol) {
  ContinuousCheck coarse = schrodinger_check(GridWaveFunction::sample(grid, f));
  GridSpec finer = grid;
  finer.n_points = 2 * grid.n_points - 1;
  const ContinuousCheck fine = schrodinger_check(GridWaveFunction::sample(finer, f));
  coarse.relative_change = std::abs(fine.lhs - coarse.lhs) / std::abs(fine.lhs);
  if (!(coarse.relative_change < convergence_tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "lhs changed by %.3e relative when halving dx (limit %.1e)",
                  coarse.relative_change, convergence_tol);
    throw Error(ErrorCode::NotConverged, buf);
  }
  return coarse;
}

}  // namespace wvu
