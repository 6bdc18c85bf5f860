#pragma once

// Position-momentum pair on a uniform grid: the quadratic-phase Gaussian
// family, the separate phase and modulus conditions for saturating the two
// halves of the Schroedinger bound, and the discord of p given x.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wvu/linalg.hpp"

namespace wvu {

inline constexpr std::size_t kDefaultGridPoints = 16384;
inline constexpr std::size_t kMinGridPoints = 16;
/// Half-width of the default grid in units of the position spread.
inline constexpr double kGridHalfWidthSigmas = 8.0;

struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = kDefaultGridPoints;
  double hbar = 1.0;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double x(std::size_t k) const { return x_min + dx() * static_cast<double>(k); }
};

/// Sampled wave function, normalized so that the trapezoid sum of |psi|^2 dx is 1.
class GridWaveFunction {
 public:
  GridWaveFunction(const GridSpec& grid, ComplexVector values);
  static GridWaveFunction sample(const GridSpec& grid, const std::function<Complex(double)>& f);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double dx() const { return grid_.dx(); }
  double x(std::size_t k) const { return grid_.x(k); }
  double hbar() const noexcept { return grid_.hbar; }
  std::span<const Complex> values() const noexcept { return values_; }
  double max_abs() const;

 private:
  GridSpec grid_;
  ComplexVector values_;
};

struct GaussianFamilyParams {
  double lambda = 0.0;  // phase curvature
  double mu = 1.0;      // modulus width, > 0
  double mean_x = 0.0;
  double mean_p = 0.0;
};

/// sqrt(hbar / (2 mu))
double position_spread(const GaussianFamilyParams& params, double hbar);

/// [<x> - 8 sigma, <x> + 8 sigma] with n_points samples.
GridSpec default_grid(const GaussianFamilyParams& params, double hbar = 1.0,
                      std::size_t n_points = kDefaultGridPoints);

/// Unnormalized exp[i(lambda (x-<x>)^2 / 2hbar + <p> x / hbar)] exp[-mu (x-<x>)^2 / 2hbar].
Complex gaussian_mus_amplitude(const GaussianFamilyParams& params, double hbar, double x);

/// Throws GridTooNarrow unless the grid covers <x> +- 8 sigma.
GridWaveFunction gaussian_mus(const GaussianFamilyParams& params, const GridSpec& grid);
GridWaveFunction gaussian_mus(const GaussianFamilyParams& params, double hbar = 1.0);

struct GridMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double covariance = 0.0;  // <{p, x}>/2 - <p><x>
};

/// Moments with p = -i hbar d/dx as centered differences and p^2 as the
/// three-point second difference, zero boundary values outside the grid.
GridMoments moments(const GridWaveFunction& psi);

struct LogDerivativeSample {
  double x = 0.0;
  Complex value;  // psi'(x) / psi(x)
};

/// psi'/psi as the centered difference of log psi, evaluated where psi and
/// both neighbours exceed floor_rel * max|psi|.
std::vector<LogDerivativeSample> log_derivative(const GridWaveFunction& psi,
                                                double floor_rel = 1e-8);

/// max |Im(psi'/psi) - (lambda/hbar)(x - <x>) - <p>/hbar|
double phase_condition_residual(const GridWaveFunction& psi, double lambda, double mean_x,
                                double mean_p);

/// max |Re(psi'/psi) + (mu/hbar)(x - <x>)|
double modulus_condition_residual(const GridWaveFunction& psi, double mu, double mean_x);

/// hbar^2 times the integral of |psi'|^2 over the zero set of psi. The zero
/// set is the union of grid intervals whose two endpoints both satisfy
/// |psi| < zero_tol_rel * max|psi|; isolated zeros have measure zero.
double discord_p_given_x(const GridWaveFunction& psi, double zero_tol_rel = 1e-10);

struct ContinuousCheck {
  double var_x = 0.0;
  double var_p = 0.0;
  double covariance = 0.0;
  double lhs = 0.0;  // var_p * var_x
  double rhs = 0.0;  // (hbar/2)^2 + covariance^2
  double gap = 0.0;
  /// |lhs(grid with dx/2) - lhs| / lhs; zero when no refinement was done.
  double relative_change = 0.0;
};

ContinuousCheck schrodinger_check(const GridWaveFunction& psi);

/// Samples f on the grid and on the grid with dx halved; throws NotConverged
/// if lhs moves by more than convergence_tol relative.
ContinuousCheck schrodinger_check_continuous(const std::function<Complex(double)>& f,
                                             const GridSpec& grid,
                                             double convergence_tol = 1e-6);

}  // namespace wvu
