#include "wvu/weak_value.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wvu {

namespace {

double clamp_rounding(double x) { return (x < 0.0 && x >= -1e-12) ? 0.0 : x; }

void require_hermitian(const ComplexMatrix& a, const char* context) {
  if (!a.is_hermitian()) {
    throw Error(ErrorCode::NonHermitianInput, std::string(context) + ": observable is not Hermitian");
  }
}

}  // namespace

double DiscordBreakdown::max_route_disagreement() const {
  return std::max({std::abs(direct - by_subtraction), std::abs(direct - by_sum_formula),
                   std::abs(by_subtraction - by_sum_formula)});
}

WeakValueData weak_value_function(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                  const PureState& psi, std::span<const Complex> fill,
                                  double zero_tol) {
  require_same_dim(a.dim(), psi.dim(), "weak_value_function");
  require_same_dim(b_spec.dim(), psi.dim(), "weak_value_function");
  require_hermitian(a, "weak_value_function");
  const std::size_t m = b_spec.size();
  if (!fill.empty() && fill.size() != m) {
    throw Error(ErrorCode::FillLengthMismatch, "weak_value_function: expected " +
                                                   std::to_string(m) + " fill values, got " +
                                                   std::to_string(fill.size()));
  }

  const ComplexVector a_psi = a * psi.amplitudes();
  WeakValueData out{std::vector<Complex>(m), std::vector<bool>(m, false), std::vector<double>(m),
                    ComplexMatrix(psi.dim()), b_spec, {}};

  for (std::size_t i = 0; i < m; ++i) {
    const ComplexVector pi_psi = b_spec.projectors[i] * psi.amplitudes();
    const double weight = vdot(psi.amplitudes(), pi_psi).real();
    out.weights[i] = weight;
    if (weight > zero_tol) {
      // <psi|Pi_i A|psi> = <Pi_i psi, A psi>
      out.values[i] = vdot(pi_psi, a_psi) / weight;
      if (weight <= kConditioningTol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "eigenvalue %.15g: <Pi> = %.3e is near zero", b_spec.eigenvalues[i],
                      weight);
        out.warnings.emplace_back(buf);
      }
    } else {
      out.values[i] = fill.empty() ? Complex{} : fill[i];
      out.fill_mask[i] = true;
    }
  }
  out.op = weak_value_operator(out);
  return out;
}

ComplexMatrix weak_value_operator(const WeakValueData& wvd) {
  return wvd.spectral.function_of(wvd.values);
}

ComplexMatrix re_part(const ComplexMatrix& x) {
  ComplexMatrix out = x + x.adjoint();
  out *= 0.5;
  return out;
}

ComplexMatrix im_part(const ComplexMatrix& x) {
  ComplexMatrix out = x - x.adjoint();
  out *= Complex(0.0, -0.5);
  return out;
}

ComplexMatrix centered_weak_value_operator(const WeakValueData& wvd, double mean_a) {
  std::vector<Complex> shifted(wvd.values);
  for (auto& v : shifted) v -= mean_a;
  return wvd.spectral.function_of(shifted);
}

DiscordBreakdown discord_norm_sq(const ComplexMatrix& a, const WeakValueData& wvd,
                                 const PureState& psi) {
  const SpectralDecomposition& spec = wvd.spectral;
  const ComplexVector a_psi = a * psi.amplitudes();

  DiscordBreakdown out;
  out.direct = op_norm_sq(a - wvd.op, psi);
  out.by_subtraction = norm_sq(a_psi) - op_norm_sq(wvd.op, psi);

  for (std::size_t i = 0; i < spec.size(); ++i) {
    const ComplexMatrix& pi = spec.projectors[i];
    if (wvd.fill_mask[i]) {
      // <A Pi_i A>
      out.zero_expectation_contribution += vdot(a_psi, pi * a_psi).real();
    } else if (spec.is_degenerate(i)) {
      // <A Pi_i^{psi-perp} A>, Pi^{perp} = Pi - |Pi psi><Pi psi| / <Pi>
      const ComplexVector pi_psi = pi * psi.amplitudes();
      ComplexMatrix perp = ComplexMatrix::outer(pi_psi, pi_psi);
      perp *= -1.0 / wvd.weights[i];
      perp += pi;
      out.degenerate_contribution += vdot(a_psi, perp * a_psi).real();
    }
  }
  out.by_sum_formula = out.zero_expectation_contribution + out.degenerate_contribution;

  out.direct = clamp_rounding(out.direct);
  out.by_subtraction = clamp_rounding(out.by_subtraction);
  out.by_sum_formula = clamp_rounding(out.by_sum_formula);
  out.zero_expectation_contribution = clamp_rounding(out.zero_expectation_contribution);
  out.degenerate_contribution = clamp_rounding(out.degenerate_contribution);
  return out;
}

DiscordBreakdown discord_norm_sq(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                 const PureState& psi, std::span<const Complex> fill,
                                 double zero_tol) {
  return discord_norm_sq(a, weak_value_function(a, b_spec, psi, fill, zero_tol), psi);
}

double projection_identity_residual(const ComplexMatrix& a, const SpectralDecomposition& b_spec,
                                    const PureState& psi, std::span<const Complex> f_values,
                                    std::span<const Complex> fill, double zero_tol) {
  const WeakValueData wvd = weak_value_function(a, b_spec, psi, fill, zero_tol);
  const ComplexMatrix f = b_spec.function_of(f_values);
  return std::abs(hs_inner(a, f, psi) - hs_inner(wvd.op, f, psi));
}

}  // namespace wvu
