#pragma once

// Variance uncertainty bounds for a pair of observables in a pure state:
// Kennard-Robertson, Schroedinger, its decomposition into a covariance half
// and a commutator half, and the tightened bound carrying the discord terms
// E(A,B), E(B,A), E_max and E~.

#include <optional>
#include <string>
#include <vector>

#include "wvu/linalg.hpp"
#include "wvu/spectral.hpp"
#include "wvu/weak_value.hpp"

namespace wvu {

inline constexpr double kEqualityResidualTol = 1e-8;
inline constexpr double kEqualityGapTol = 1e-9;
/// ||Delta B psi|| below this makes the instance trivial (psi an eigenstate of B).
inline constexpr double kTrivialSpreadTol = 1e-12;

struct ReportOptions {
  /// Fill values c_i for A_w(B), one per distinct eigenvalue of B (empty: zeros).
  std::vector<Complex> fill_b;
  /// Fill values for B_w(A), one per distinct eigenvalue of A (empty: zeros).
  std::vector<Complex> fill_a;
  double zero_tol = kDefaultZeroTol;
  double degeneracy_tol = kDefaultDegeneracyTol;
  double hermitian_tol = 1e-9;
};

struct UncertaintyReport {
  double var_a = 0.0;
  double var_b = 0.0;
  double commutator_term = 0.0;  // |<[A,B]>/2|^2
  double covariance_term = 0.0;  // |<{A,B}>/2 - <A><B>|^2
  double schrodinger_rhs = 0.0;
  double extra_e_ab = 0.0;
  double extra_e_ba = 0.0;
  double extra_e_max = 0.0;
  double extra_e_tilde = 0.0;
  double lhs = 0.0;  // var_a * var_b
  double gap_schrodinger = 0.0;
  double gap_tight_ab = 0.0;
  double gap_tight_max = 0.0;
  double equality_residual_cov = 0.0;
  double equality_residual_kr = 0.0;
  double lambda_fit = 0.0;
  double mu_fit = 0.0;
  double discord_ab = 0.0;  // ||A - A_w(B)||^2
  double discord_ba = 0.0;  // ||B - B_w(A)||^2
  bool trivial = false;     // ||Delta B|| = 0
  std::vector<std::string> conditioning_warnings;
};

struct DecomposedBounds {
  double lhs_cov = 0.0;  // ||Re A_w(B) - <A>|| ||Delta B||
  double rhs_cov = 0.0;  // |<{A,B}>/2 - <A><B>|
  double lhs_kr = 0.0;   // ||Im A_w(B)|| ||Delta B||
  double rhs_kr = 0.0;   // |<[A,B]>/2|

  /// Cauchy-Schwarz slacks in squared form.
  double slack_cov_sq() const { return lhs_cov * lhs_cov - rhs_cov * rhs_cov; }
  double slack_kr_sq() const { return lhs_kr * lhs_kr - rhs_kr * rhs_kr; }
};

struct EqualityDiagnosis {
  double lambda = 0.0;
  double mu = 0.0;
  /// ||(Re A_w(B) - <A>) psi - lambda Delta B psi|| / ||Delta B psi||
  double residual_cov = 0.0;
  /// ||Im A_w(B) psi - mu Delta B psi|| / ||Delta B psi||
  double residual_kr = 0.0;
  bool schrodinger_equality = false;
  bool tight_equality = false;
  bool trivial = false;
  /// (A_w(b_1) - A_w(b_2)) / (b_1 - b_2), present iff B has exactly two distinct eigenvalues.
  std::optional<Complex> proportionality_constant;
};

/// Everything computed for one (A, B, psi) instance, sharing the spectral
/// decompositions and weak-value operators between the individual results.
struct Analysis {
  SpectralDecomposition spec_a;
  SpectralDecomposition spec_b;
  WeakValueData a_given_b;  // A_w(B)
  WeakValueData b_given_a;  // B_w(A)
  DiscordBreakdown discord_ab;
  DiscordBreakdown discord_ba;
  double mean_a = 0.0;
  double mean_b = 0.0;
  UncertaintyReport report;
  DecomposedBounds decomposed;
  EqualityDiagnosis equality;
};

/// ||X - <X>||^2
double variance(const ComplexMatrix& x, const PureState& psi);

Analysis analyze(const ComplexMatrix& a, const ComplexMatrix& b, const PureState& psi,
                 const ReportOptions& options = {});

UncertaintyReport schrodinger_report(const ComplexMatrix& a, const ComplexMatrix& b,
                                     const PureState& psi, const ReportOptions& options = {});

DecomposedBounds decomposed_bounds(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const PureState& psi, const ReportOptions& options = {});

EqualityDiagnosis diagnose_equality(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const PureState& psi, const ReportOptions& options = {});

}  // namespace wvu
