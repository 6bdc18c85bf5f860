#include "wvu/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace wvu {

namespace {

void validate(const ComplexMatrix& a, const ComplexMatrix& b, const PureState& psi,
              const ReportOptions& options) {
  require_same_dim(a.dim(), b.dim(), "observables");
  require_same_dim(a.dim(), psi.dim(), "observable vs state");
  if (!a.is_hermitian(options.hermitian_tol))
    throw Error(ErrorCode::NonHermitianInput, "A is not Hermitian");
  if (!b.is_hermitian(options.hermitian_tol))
    throw Error(ErrorCode::NonHermitianInput, "B is not Hermitian");
}

ComplexMatrix shifted(const ComplexMatrix& x, double mean) {
  ComplexMatrix out = x;
  for (std::size_t k = 0; k < x.dim(); ++k) out(k, k) -= mean;
  return out;
}

struct Fit {
  double coefficient = 0.0;
  double residual = 0.0;
};

// Least-squares fit u ~ coefficient * v with a real coefficient.
Fit fit_real_multiple(std::span<const Complex> u, std::span<const Complex> v) {
  const double v_norm_sq = norm_sq(v);
  Fit fit;
  if (std::sqrt(v_norm_sq) < kTrivialSpreadTol) {
    fit.residual = norm(u);
    return fit;
  }
  fit.coefficient = vdot(v, u).real() / v_norm_sq;
  ComplexVector r(u.begin(), u.end());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= fit.coefficient * v[k];
  fit.residual = norm(r) / std::sqrt(v_norm_sq);
  return fit;
}

}  // namespace

double variance(const ComplexMatrix& x, const PureState& psi) {
  require_same_dim(x.dim(), psi.dim(), "variance");
  const double mean = expectation(x, psi).real();
  return op_norm_sq(shifted(x, mean), psi);
}

Analysis analyze(const ComplexMatrix& a, const ComplexMatrix& b, const PureState& psi,
                 const ReportOptions& options) {
  validate(a, b, psi, options);

  SpectralDecomposition spec_a = group_spectrum(eig_hermitian(a, options.hermitian_tol), options.degeneracy_tol);
  SpectralDecomposition spec_b = group_spectrum(eig_hermitian(b, options.hermitian_tol), options.degeneracy_tol);
  WeakValueData a_given_b = weak_value_function(a, spec_b, psi, options.fill_b, options.zero_tol);
  WeakValueData b_given_a = weak_value_function(b, spec_a, psi, options.fill_a, options.zero_tol);
  DiscordBreakdown discord_ab = discord_norm_sq(a, a_given_b, psi);
  DiscordBreakdown discord_ba = discord_norm_sq(b, b_given_a, psi);

  const double mean_a = expectation(a, psi).real();
  const double mean_b = expectation(b, psi).real();
  const ComplexMatrix delta_b = shifted(b, mean_b);
  const ComplexVector delta_b_psi = delta_b * psi.amplitudes();

  UncertaintyReport r;
  r.var_a = op_norm_sq(shifted(a, mean_a), psi);
  r.var_b = norm_sq(delta_b_psi);
  r.commutator_term = std::norm(0.5 * expectation(commutator(a, b), psi));
  r.covariance_term = std::norm(0.5 * expectation(anticommutator(a, b), psi) - mean_a * mean_b);
  r.schrodinger_rhs = r.commutator_term + r.covariance_term;
  r.discord_ab = discord_ab.direct;
  r.discord_ba = discord_ba.direct;
  r.extra_e_ab = r.discord_ab * r.var_b;
  r.extra_e_ba = r.discord_ba * r.var_a;
  r.extra_e_max = std::max(r.extra_e_ab, r.extra_e_ba);
  r.extra_e_tilde = r.discord_ab * r.discord_ba;
  r.lhs = r.var_a * r.var_b;
  r.gap_schrodinger = r.lhs - r.schrodinger_rhs;
  r.gap_tight_ab = r.lhs - (r.schrodinger_rhs + r.extra_e_ab);
  r.gap_tight_max = r.lhs - (r.schrodinger_rhs + r.extra_e_max);
  r.trivial = std::sqrt(r.var_b) < kTrivialSpreadTol;
  r.conditioning_warnings = a_given_b.warnings;
  for (const auto& w : b_given_a.warnings) r.conditioning_warnings.push_back("B_w(A) " + w);

  // Decomposed halves.
  const ComplexMatrix centered = centered_weak_value_operator(a_given_b, mean_a);
  const ComplexMatrix re_centered = re_part(centered);
  const ComplexMatrix im_wv = im_part(a_given_b.op);
  DecomposedBounds d;
  const double spread_b = std::sqrt(r.var_b);
  d.lhs_cov = std::sqrt(op_norm_sq(re_centered, psi)) * spread_b;
  d.rhs_cov = std::sqrt(r.covariance_term);
  d.lhs_kr = std::sqrt(op_norm_sq(im_wv, psi)) * spread_b;
  d.rhs_kr = std::sqrt(r.commutator_term);

  // Equality conditions.
  EqualityDiagnosis e;
  const Fit cov = fit_real_multiple(re_centered * psi.amplitudes(), delta_b_psi);
  const Fit kr = fit_real_multiple(im_wv * psi.amplitudes(), delta_b_psi);
  e.lambda = cov.coefficient;
  e.mu = kr.coefficient;
  e.residual_cov = cov.residual;
  e.residual_kr = kr.residual;
  e.trivial = r.trivial;
  const double scale = std::max(1.0, r.lhs);
  e.tight_equality = e.residual_cov <= kEqualityResidualTol * scale &&
                     e.residual_kr <= kEqualityResidualTol * scale;
  e.schrodinger_equality = e.tight_equality && r.extra_e_ab <= kEqualityGapTol * scale;
  if (spec_b.size() == 2 && !r.trivial) {
    e.proportionality_constant = (a_given_b.values[0] - a_given_b.values[1]) /
                                 (spec_b.eigenvalues[0] - spec_b.eigenvalues[1]);
  }

  r.equality_residual_cov = e.residual_cov;
  r.equality_residual_kr = e.residual_kr;
  r.lambda_fit = e.lambda;
  r.mu_fit = e.mu;

  return Analysis{std::move(spec_a), std::move(spec_b), std::move(a_given_b), std::move(b_given_a),
                  discord_ab,        discord_ba,        mean_a,
                  mean_b,            std::move(r),      d,
                  std::move(e)};
}

UncertaintyReport schrodinger_report(const ComplexMatrix& a, const ComplexMatrix& b,
                                     const PureState& psi, const ReportOptions& options) {
  return analyze(a, b, psi, options).report;
}

DecomposedBounds decomposed_bounds(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const PureState& psi, const ReportOptions& options) {
  return analyze(a, b, psi, options).decomposed;
}

EqualityDiagnosis diagnose_equality(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const PureState& psi, const ReportOptions& options) {
  return analyze(a, b, psi, options).equality;
}

}  // namespace wvu
