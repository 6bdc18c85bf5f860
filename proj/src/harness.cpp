#include "wvu/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wvu/parallel.hpp"
#include "wvu/weak_value.hpp"

namespace wvu {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Complex normal_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<Complex> random_f_values(std::size_t n, Rng& rng) {
  std::vector<Complex> out(n);
  for (auto& z : out) z = normal_complex(rng);
  return out;
}

// Eigenvalues for b0 I_k (+) D; values of D are kept at least 0.1 away from b0
// and from each other so the spectrum has exactly the intended multiplicities.
std::vector<double> spectrum_with_repeat(std::size_t dim, std::size_t k, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> eig(dim);
  const double b0 = normal(rng);
  for (std::size_t i = 0; i < k; ++i) eig[i] = b0;
  for (std::size_t i = k; i < dim; ++i) {
    double candidate;
    bool separated;
    do {
      candidate = normal(rng) * 2.0;
      separated = true;
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(candidate - eig[j]) < 0.1) separated = false;
    } while (!separated);
    eig[i] = candidate;
  }
  return eig;
}

ComplexMatrix shifted_identity(const ComplexMatrix& x, double shift) {
  ComplexMatrix out = x;
  for (std::size_t k = 0; k < x.dim(); ++k) out(k, k) += shift;
  return out;
}

double cs_excess(const ComplexMatrix& x, const ComplexMatrix& y, const PureState& psi) {
  const double lhs = std::norm(hs_inner(x, y, psi));
  const double rhs = op_norm_sq(x, psi) * op_norm_sq(y, psi);
  return std::max(0.0, lhs - rhs);
}

double conj_asymmetry(const ComplexMatrix& x, const ComplexMatrix& y, const PureState& psi) {
  return std::abs(hs_inner(x, y, psi) - std::conj(hs_inner(y, x, psi)));
}

// Field-by-field distance between two reports (numeric fields only).
double report_distance(const UncertaintyReport& r, const UncertaintyReport& s, bool with_fits) {
  double d = 0.0;
  auto upd = [&](double a, double b) { d = std::max(d, std::abs(a - b)); };
  upd(r.var_a, s.var_a);
  upd(r.var_b, s.var_b);
  upd(r.commutator_term, s.commutator_term);
  upd(r.covariance_term, s.covariance_term);
  upd(r.schrodinger_rhs, s.schrodinger_rhs);
  upd(r.extra_e_ab, s.extra_e_ab);
  upd(r.extra_e_ba, s.extra_e_ba);
  upd(r.extra_e_max, s.extra_e_max);
  upd(r.extra_e_tilde, s.extra_e_tilde);
  upd(r.lhs, s.lhs);
  upd(r.gap_schrodinger, s.gap_schrodinger);
  upd(r.gap_tight_ab, s.gap_tight_ab);
  upd(r.gap_tight_max, s.gap_tight_max);
  upd(r.discord_ab, s.discord_ab);
  upd(r.discord_ba, s.discord_ba);
  if (with_fits) {
    upd(r.equality_residual_cov, s.equality_residual_cov);
    upd(r.equality_residual_kr, s.equality_residual_kr);
    upd(r.lambda_fit, s.lambda_fit);
    upd(r.mu_fit, s.mu_fit);
  }
  return d;
}

HarnessSummary summarize(const HarnessConfig& config, const std::vector<ViolationVector>& results) {
  const auto& table = invariant_table();
  HarnessSummary summary;
  summary.instances = results.size();
  for (const auto& info : table) summary.stats.push_back({std::string(info.name), info.tolerance, 0.0, 0});

  const std::size_t per_mode = config.samples_per_dim;
  const std::size_t per_dim = per_mode * config.modes.size();
  for (std::size_t job = 0; job < results.size(); ++job) {
    for (std::size_t k = 0; k < kInvariantCount; ++k) {
      const double v = results[job][k];
      auto& stat = summary.stats[k];
      if (std::isnan(v)) {
        stat.max_violation = std::numeric_limits<double>::infinity();
      } else {
        stat.max_violation = std::max(stat.max_violation, v);
      }
      if (!(v <= stat.tolerance)) {
        ++stat.failures;
        if (!summary.first_failure) {
          const std::size_t dim = config.dims[job / per_dim];
          const DegeneracyMode mode = config.modes[(job % per_dim) / per_mode];
          summary.first_failure = random_instance(config.seed, dim, mode, job % per_mode);
          summary.first_failure_invariant = stat.name;
        }
      }
    }
  }
  return summary;
}

std::size_t job_count(const HarnessConfig& config) {
  return config.dims.size() * config.modes.size() * config.samples_per_dim;
}

RandomInstance job_instance(const HarnessConfig& config, std::size_t job) {
  const std::size_t per_mode = config.samples_per_dim;
  const std::size_t per_dim = per_mode * config.modes.size();
  return random_instance(config.seed, config.dims[job / per_dim],
                         config.modes[(job % per_dim) / per_mode], job % per_mode);
}

void validate(const HarnessConfig& config) {
  if (config.samples_per_dim < 1)
    throw Error(ErrorCode::ValidationError, "samples per dim must be >= 1");
  if (config.dims.empty() || config.modes.empty())
    throw Error(ErrorCode::ValidationError, "need at least one dim and one mode");
  for (std::size_t d : config.dims)
    if (d < 1) throw Error(ErrorCode::ValidationError, "dims must be >= 1");
}

}  // namespace

std::string_view to_string(DegeneracyMode mode) noexcept {
  switch (mode) {
    case DegeneracyMode::None: return "none";
    case DegeneracyMode::DegenerateB: return "degenerate_B";
    case DegeneracyMode::OrthogonalPsi: return "orthogonal_psi";
  }
  return "none";
}

std::optional<DegeneracyMode> parse_degeneracy_mode(std::string_view text) {
  for (auto mode : {DegeneracyMode::None, DegeneracyMode::DegenerateB, DegeneracyMode::OrthogonalPsi})
    if (text == to_string(mode)) return mode;
  return std::nullopt;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t dim, DegeneracyMode mode,
                            std::size_t index) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(dim) * 0xd1b54a32d192ed03ULL));
  s = splitmix64(s ^ (static_cast<std::uint64_t>(mode) + 1) * 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(s ^ static_cast<std::uint64_t>(index));
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = normal_complex(rng);
  return re_part(m);
}

PureState random_state(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (auto& z : v) z = normal_complex(rng);
  return PureState(std::move(v));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  std::vector<ComplexVector> columns(dim, ComplexVector(dim));
  for (auto& col : columns)
    for (auto& z : col) z = normal_complex(rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Complex overlap = vdot(columns[i], columns[j]);
      for (std::size_t k = 0; k < dim; ++k) columns[j][k] -= overlap * columns[i][k];
    }
    const double n = norm(columns[j]);
    for (auto& z : columns[j]) z /= n;
  }
  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = columns[j][i];
  return u;
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> eigenvalues) {
  require_same_dim(u.dim(), eigenvalues.size(), "conjugate_diagonal");
  const std::size_t n = u.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * eigenvalues[k] * std::conj(u(j, k));
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

RandomInstance random_instance(std::uint64_t seed, std::size_t dim, DegeneracyMode mode,
                               std::size_t index) {
  const std::uint64_t s = instance_seed(seed, dim, mode, index);
  Rng rng(s);
  ComplexMatrix a = random_hermitian(dim, rng);
  switch (mode) {
    case DegeneracyMode::None: {
      ComplexMatrix b = random_hermitian(dim, rng);
      PureState psi = random_state(dim, rng);
      return {std::move(a), std::move(b), std::move(psi), mode, dim, index, s,
              random_f_values(dim, rng)};
    }
    case DegeneracyMode::DegenerateB: {
      const ComplexMatrix u = random_unitary(dim, rng);
      std::size_t k = dim;
      if (dim > 2) k = std::uniform_int_distribution<std::size_t>(2, dim - 1)(rng);
      const std::vector<double> eig = spectrum_with_repeat(dim, std::min(k, dim), rng);
      ComplexMatrix b = conjugate_diagonal(u, eig);
      PureState psi = random_state(dim, rng);
      return {std::move(a), std::move(b), std::move(psi), mode, dim, index, s,
              random_f_values(dim, rng)};
    }
    case DegeneracyMode::OrthogonalPsi: {
      const ComplexMatrix u = random_unitary(dim, rng);
      const std::vector<double> eig = spectrum_with_repeat(dim, 1, rng);
      ComplexMatrix b = conjugate_diagonal(u, eig);
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
      ComplexVector v(dim);
      for (auto& z : v) z = normal_complex(rng);
      ComplexVector e(dim);
      for (std::size_t i = 0; i < dim; ++i) e[i] = u(i, j);
      const Complex overlap = vdot(e, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= overlap * e[i];
      if (dim == 1) v[0] = 1.0;  // nothing orthogonal to a 1-dim space
      PureState psi(std::move(v));
      return {std::move(a), std::move(b), std::move(psi), mode, dim, index, s,
              random_f_values(dim, rng)};
    }
  }
  throw Error(ErrorCode::ValidationError, "unknown degeneracy mode");
}

RandomInstance random_two_eigenvalue_instance(std::uint64_t seed, std::size_t dim,
                                              std::size_t index) {
  if (dim < 2) throw Error(ErrorCode::ValidationError, "two eigenvalues need dim >= 2");
  const std::uint64_t s = splitmix64(instance_seed(seed, dim, DegeneracyMode::None, index) ^ 0x2ULL);
  Rng rng(s);
  ComplexMatrix a = random_hermitian(dim, rng);
  const ComplexMatrix u = random_unitary(dim, rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, dim - 1)(rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double b1 = normal(rng);
  double b2;
  do {
    b2 = normal(rng) * 2.0;
  } while (std::abs(b2 - b1) < 0.1);
  std::vector<double> eig(dim, b2);
  for (std::size_t i = 0; i < k; ++i) eig[i] = b1;
  ComplexMatrix b = conjugate_diagonal(u, eig);
  PureState psi = random_state(dim, rng);
  return {std::move(a), std::move(b), std::move(psi), DegeneracyMode::DegenerateB, dim, index, s,
          random_f_values(dim, rng)};
}

const std::array<InvariantInfo, kInvariantCount>& invariant_table() {
  static const std::array<InvariantInfo, kInvariantCount> table{{
      {"inequality_chain", 1e-9},
      {"pythagorean_identity", 1e-9},
      {"discord_three_routes", 1e-9},
      {"fill_invariance", 1e-10},
      {"cauchy_schwarz", 1e-10},
      {"conjugate_symmetry", 0.0},
      {"projection_identity", 1e-10},
      {"projected_re_im_identities", 1e-10},
      {"variance_decomposition", 1e-9},
      {"tight_bound_exactness", 1e-8},
      {"shift_invariance", 1e-9},
      {"dim2_extra_term_zero", 1e-10},
  }};
  return table;
}

ViolationVector check_instance(const RandomInstance& inst, const ReportOptions& options) {
  ViolationVector v{};
  const PureState& psi = inst.psi;
  const Analysis an = analyze(inst.a, inst.b, psi, options);
  const UncertaintyReport& r = an.report;
  auto at = [&](Invariant k) -> double& { return v[static_cast<std::size_t>(k)]; };

  const double links[] = {r.lhs - (r.schrodinger_rhs + r.extra_e_max),
                          r.extra_e_max - r.extra_e_ab,
                          r.extra_e_ab - r.extra_e_tilde,
                          r.extra_e_tilde,
                          r.schrodinger_rhs - r.commutator_term,
                          r.commutator_term};
  at(Invariant::InequalityChain) = std::max(0.0, -*std::min_element(std::begin(links), std::end(links)));

  const ComplexMatrix centered = centered_weak_value_operator(an.a_given_b, an.mean_a);
  const double centered_sq = op_norm_sq(centered, psi);
  at(Invariant::Pythagorean) = std::abs(r.var_a - (an.discord_ab.direct + centered_sq));

  at(Invariant::DiscordRoutes) =
      std::max(an.discord_ab.max_route_disagreement(), an.discord_ba.max_route_disagreement());

  {
    ReportOptions alt = options;
    alt.fill_b.assign(an.spec_b.size(), Complex(5.0, -3.0));
    alt.fill_a.assign(an.spec_a.size(), Complex(5.0, -3.0));
    const Analysis other = analyze(inst.a, inst.b, psi, alt);
    double d = report_distance(r, other.report, true);
    const ComplexVector w1 = an.a_given_b.op * psi.amplitudes();
    const ComplexVector w2 = other.a_given_b.op * psi.amplitudes();
    for (std::size_t k = 0; k < w1.size(); ++k) d = std::max(d, std::abs(w1[k] - w2[k]));
    d = std::max(d, std::abs(an.discord_ab.by_sum_formula - other.discord_ab.by_sum_formula));
    at(Invariant::FillInvariance) = d;
  }

  const ComplexMatrix delta_a = shifted_identity(inst.a, -an.mean_a);
  const ComplexMatrix delta_b = shifted_identity(inst.b, -an.mean_b);
  const ComplexMatrix residual_op = inst.a - an.a_given_b.op;
  at(Invariant::CauchySchwarz) =
      std::max({cs_excess(inst.a, inst.b, psi), cs_excess(delta_a, delta_b, psi),
                cs_excess(residual_op, delta_b, psi), cs_excess(an.a_given_b.op, inst.a, psi)});
  at(Invariant::ConjugateSymmetry) =
      std::max({conj_asymmetry(inst.a, inst.b, psi), conj_asymmetry(an.a_given_b.op, inst.a, psi),
                conj_asymmetry(delta_a, delta_b, psi), conj_asymmetry(residual_op, centered, psi)});

  const std::size_t m = an.spec_b.size();
  const std::span<const Complex> f_values(inst.f_values.data(), m);
  const ComplexMatrix f = an.spec_b.function_of(f_values);
  at(Invariant::ProjectionIdentity) =
      std::abs(hs_inner(inst.a, f, psi) - hs_inner(an.a_given_b.op, f, psi));

  {
    std::vector<Complex> real_f(m);
    for (std::size_t i = 0; i < m; ++i) real_f[i] = f_values[i].real();
    const ComplexMatrix g = an.spec_b.function_of(real_f);
    const Complex ag = hs_inner(inst.a, g, psi);
    const Complex re_side = hs_inner(re_part(an.a_given_b.op), g, psi);
    const Complex im_side = hs_inner(im_part(an.a_given_b.op), g, psi);
    at(Invariant::ProjectedIdentities) =
        std::max(std::abs(Complex(ag.real()) - re_side), std::abs(Complex(ag.imag()) + im_side));
  }

  at(Invariant::VarianceDecomposition) = std::abs(
      centered_sq - op_norm_sq(re_part(centered), psi) - op_norm_sq(im_part(centered), psi));

  at(Invariant::TightExactness) = std::abs(
      r.gap_tight_ab - (an.decomposed.slack_cov_sq() + an.decomposed.slack_kr_sq()));

  {
    const UncertaintyReport shifted = schrodinger_report(shifted_identity(inst.a, 0.7),
                                                         shifted_identity(inst.b, -1.3), psi, options);
    at(Invariant::ShiftInvariance) = report_distance(r, shifted, false);
  }

  if (inst.dim == 2) at(Invariant::PropertyA) = std::max(0.0, r.extra_e_ab);
  return v;
}

TwoEigenvalueOutcome check_two_eigenvalue(const RandomInstance& inst, const ReportOptions& options) {
  const Analysis an = analyze(inst.a, inst.b, inst.psi, options);
  TwoEigenvalueOutcome out;
  out.residual_cov = an.equality.residual_cov;
  out.residual_kr = an.equality.residual_kr;
  out.gap_tight_ab = an.report.gap_tight_ab;
  out.has_constant = an.equality.proportionality_constant.has_value();
  if (!out.has_constant) return out;
  const Complex kappa = *an.equality.proportionality_constant;
  const ComplexVector lhs =
      centered_weak_value_operator(an.a_given_b, an.mean_a) * inst.psi.amplitudes();
  const ComplexVector rhs = shifted_identity(inst.b, -an.mean_b) * inst.psi.amplitudes();
  ComplexVector diff(lhs.size());
  for (std::size_t k = 0; k < lhs.size(); ++k) diff[k] = lhs[k] - kappa * rhs[k];
  out.reconstruction_error = norm(diff);
  out.constant_mismatch = std::abs(Complex(an.equality.lambda, an.equality.mu) - kappa);
  return out;
}

HarnessSummary run_harness_serial(const HarnessConfig& config) {
  validate(config);
  const std::size_t n = job_count(config);
  std::vector<ViolationVector> results(n);
  for (std::size_t job = 0; job < n; ++job)
    results[job] = check_instance(job_instance(config, job), config.options);
  return summarize(config, results);
}

HarnessSummary run_harness(const HarnessConfig& config) {
  validate(config);
  const std::size_t n = job_count(config);
  std::vector<ViolationVector> results(n);
  detail::parallel_for(n, [&](std::size_t job) {
    results[job] = check_instance(job_instance(config, job), config.options);
  });
  return summarize(config, results);
}

}  // namespace wvu
