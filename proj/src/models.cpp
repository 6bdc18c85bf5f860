#include "wvu/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvu/parallel.hpp"

namespace wvu {

double Spin1Params::norm() const { return std::norm(x) + std::norm(y) + std::norm(z); }

double Spin1Params::theta() const { return std::arg(x) - std::arg(y); }

// x conj(y) = |x||y| e^{i theta}
double Spin1Params::c() const { return 2.0 * (x * std::conj(y)).real(); }
double Spin1Params::s() const { return 2.0 * (x * std::conj(y)).imag(); }

double Spin1ExtraTerm::discrepancy() const { return std::abs(value - display_form); }

ModelInstance spin1_instance(const Spin1Params& p) {
  if (p.norm() == 0.0) throw Error(ErrorCode::ZeroState, "spin-1 state (0, 0, 0)");
  const ComplexMatrix one{{1.0}};
  return {ComplexMatrix::block_diagonal(pauli::sigma1(), one),
          ComplexMatrix::block_diagonal(pauli::sigma2(), one), PureState({p.x, p.y, p.z})};
}

Spin1Quantities spin1_closed_forms(const Spin1Params& p) {
  const double n = p.norm();
  if (n == 0.0) throw Error(ErrorCode::ZeroState, "spin-1 state (0, 0, 0)");
  const double z2 = std::norm(p.z);
  const double c = p.c();
  const double s = p.s();
  const double n2 = n * n;

  Spin1Quantities q;
  q.var_a = (n2 - (z2 + c) * (z2 + c)) / n2;
  q.var_b = (n2 - (z2 - s) * (z2 - s)) / n2;
  const double cov = (z2 * n - (z2 + c) * (z2 - s)) / n2;
  q.cov_term = cov * cov;
  const double comm = (std::norm(p.x) - std::norm(p.y)) / n;
  q.comm_term = comm * comm;

  // <Pi_2> = (N + |z|^2 - s)/(2N). It vanishes only for z = 0, |x| = |y|,
  // theta = pi/2, where psi is the b = -1 eigenvector, A_w(b_1) = <A> = 0
  // and the discord equals ||A||^2 = 1.
  const double denom = n + z2 - s;
  if (denom <= 1e-14 * n) {
    q.wvop_norm_sq = 0.0;
    q.discord = 1.0;
    return q;
  }
  q.wvop_norm_sq = (n * (n - z2 - s) + 2.0 * z2 * (z2 + c)) / (n * denom);
  q.discord = (2.0 * z2 / n) * (n - z2 - c) / denom;
  return q;
}

Spin1Quantities spin1_pipeline(const Spin1Params& p) {
  const ModelInstance inst = spin1_instance(p);
  const Analysis an = analyze(inst.a, inst.b, inst.psi);
  Spin1Quantities q;
  q.var_a = an.report.var_a;
  q.var_b = an.report.var_b;
  q.cov_term = an.report.covariance_term;
  q.comm_term = an.report.commutator_term;
  q.wvop_norm_sq = op_norm_sq(an.a_given_b.op, inst.psi);
  q.discord = an.discord_ab.direct;
  return q;
}

Spin1ExtraTerm spin1_extra_closed_form(const Spin1Params& p) {
  const Spin1Quantities q = spin1_closed_forms(p);
  const double n = p.norm();
  const double z2 = std::norm(p.z);
  Spin1ExtraTerm e;
  e.value = q.discord * q.var_b;
  e.display_form = (2.0 * z2 / (n * n * n)) * (n - z2 - p.c()) * (n - z2 + p.s());
  return e;
}

ModelInstance spin32_instance(const Spin32Params& p) {
  if (!std::isfinite(p.t)) throw Error(ErrorCode::NonFinite, "spin-3/2 parameter t");
  const ComplexMatrix lower_a{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix lower_b{{1.0, 0.0}, {0.0, 0.0}};
  return {ComplexMatrix::block_diagonal(pauli::sigma1(), lower_a),
          ComplexMatrix::block_diagonal(pauli::sigma2(), lower_b),
          PureState({1.0, 0.0, 1.0, p.t})};
}

Spin1Params spin1_grid_point(std::size_t i, std::size_t j, std::size_t resolution, double theta) {
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(resolution - 1);
  const double alpha = step * static_cast<double>(i);
  const double beta = step * static_cast<double>(j);
  const double abs_x = std::sin(alpha) * std::cos(beta);
  const double abs_y = std::sin(alpha) * std::sin(beta);
  return {std::polar(abs_x, theta), Complex(abs_y), Complex(std::cos(alpha))};
}

double spin32_grid_point(std::size_t k, double t_min, double t_max, std::size_t steps) {
  if (k + 1 == steps) return t_max;
  return t_min + (t_max - t_min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

Spin1SweepRow spin1_sweep_row(const Spin1Params& p) {
  const ModelInstance inst = spin1_instance(p);
  const UncertaintyReport r = schrodinger_report(inst.a, inst.b, inst.psi);
  Spin1SweepRow row;
  row.abs_x = std::abs(p.x);
  row.abs_y = std::abs(p.y);
  row.abs_z = std::abs(p.z);
  row.e_ab_closed = spin1_extra_closed_form(p).value;
  row.e_ab_numeric = r.extra_e_ab;
  row.lhs = r.lhs;
  row.schrodinger_rhs = r.schrodinger_rhs;
  row.tight_rhs = r.schrodinger_rhs + r.extra_e_ab;
  return row;
}

Spin32SweepRow spin32_sweep_row(double t) {
  const ModelInstance inst = spin32_instance({t});
  const UncertaintyReport r = schrodinger_report(inst.a, inst.b, inst.psi);
  return {t,
          r.lhs,
          r.schrodinger_rhs,
          r.schrodinger_rhs + r.extra_e_tilde,
          r.schrodinger_rhs + r.extra_e_ab,
          r.schrodinger_rhs + r.extra_e_ba,
          r.schrodinger_rhs + r.extra_e_max};
}

namespace {

void require_at_least_two(std::size_t n, const char* what) {
  if (n < 2) throw Error(ErrorCode::ValidationError, std::string(what) + " must be >= 2");
}

}  // namespace

std::vector<Spin1SweepRow> sweep_spin1_serial(std::size_t resolution, double theta) {
  require_at_least_two(resolution, "resolution");
  std::vector<Spin1SweepRow> rows;
  rows.reserve(resolution * resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    for (std::size_t j = 0; j < resolution; ++j)
      rows.push_back(spin1_sweep_row(spin1_grid_point(i, j, resolution, theta)));
  return rows;
}

std::vector<Spin1SweepRow> sweep_spin1(std::size_t resolution, double theta) {
  require_at_least_two(resolution, "resolution");
  std::vector<Spin1SweepRow> rows(resolution * resolution);
  detail::parallel_for(rows.size(), [&](std::size_t k) {
    rows[k] = spin1_sweep_row(spin1_grid_point(k / resolution, k % resolution, resolution, theta));
  });
  return rows;
}

std::vector<Spin32SweepRow> sweep_spin32_serial(double t_min, double t_max, std::size_t steps) {
  require_at_least_two(steps, "steps");
  std::vector<Spin32SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k)
    rows.push_back(spin32_sweep_row(spin32_grid_point(k, t_min, t_max, steps)));
  return rows;
}

std::vector<Spin32SweepRow> sweep_spin32(double t_min, double t_max, std::size_t steps) {
  require_at_least_two(steps, "steps");
  std::vector<Spin32SweepRow> rows(steps);
  detail::parallel_for(steps, [&](std::size_t k) {
    rows[k] = spin32_sweep_row(spin32_grid_point(k, t_min, t_max, steps));
  });
  return rows;
}

}  // namespace wvu
