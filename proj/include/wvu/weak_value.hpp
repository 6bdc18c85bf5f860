#pragma once

// Weak-value function A_w(b_i) and weak-value operator A_w(B) for a general
// (possibly degenerate) B and a state that may be orthogonal to some of its
// eigenspaces, together with the discord ||A - A_w(B)||^2.

#include <string>
#include <vector>

#include "wvu/linalg.hpp"
#include "wvu/spectral.hpp"

namespace wvu {

inline constexpr double kDefaultZeroTol = 1e-12;
/// <Pi_i> below this (but above the zero tolerance) is flagged as ill-conditioned.
inline constexpr double kConditioningTol = 1e-8;

struct WeakValueData {
  /// One weak value per distinct eigenvalue of B.
  std::vector<Complex> values;
  /// True where <Pi_i> <= zero_tol and values[i] is the supplied fill c_i.
  std::vector<bool> fill_mask;
  /// <psi|Pi_i|psi>
  std::vector<double> weights;
  ComplexMatrix op;
  SpectralDecomposition spectral;
  std::vector<std::string> warnings;
};

struct DiscordBreakdown {
  double direct = 0.0;          // ||A - A_w(B)||^2
  double by_subtraction = 0.0;  // ||A||^2 - ||A_w(B)||^2
  double by_sum_formula = 0.0;  // zero_expectation + degenerate contributions
  double zero_expectation_contribution = 0.0;
  double degenerate_contribution = 0.0;

  double max_route_disagreement() const;
};

/// values[i] = <Pi_i A>/<Pi_i> where <Pi_i> > zero_tol, otherwise fill[i].
/// An empty fill means c_i = 0 for every i.
WeakValueData weak_value_function(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                  const PureState& psi, std::span<const Complex> fill = {},
                                  double zero_tol = kDefaultZeroTol);

/// sum_i values[i] Pi_i
ComplexMatrix weak_value_operator(const WeakValueData& wvd);

/// (X + X^dagger)/2
ComplexMatrix re_part(const ComplexMatrix& x);
/// (X - X^dagger)/(2i)
ComplexMatrix im_part(const ComplexMatrix& x);

/// A_w(B) - <A>, i.e. <A> subtracted from every weak value.
ComplexMatrix centered_weak_value_operator(const WeakValueData& wvd, double mean_a);

DiscordBreakdown discord_norm_sq(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                 const PureState& psi, std::span<const Complex> fill = {},
                                 double zero_tol = kDefaultZeroTol);

/// Same routes, reusing an already assembled weak-value operator.
DiscordBreakdown discord_norm_sq(const ComplexMatrix& a, const WeakValueData& wvd,
                                 const PureState& psi);

/// |(A, f(B)) - (A_w(B), f(B))| with f(B) = sum_i f_values[i] Pi_i.
double projection_identity_residual(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                    const PureState& psi, std::span<const Complex> f_values,
                                    std::span<const Complex> fill = {},
                                    double zero_tol = kDefaultZeroTol);

}  // namespace wvu
