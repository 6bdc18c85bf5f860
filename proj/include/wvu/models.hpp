#pragma once

// Spin-1 (dim 3) and spin-3/2 (dim 4) examples: closed forms, the same
// quantities through the generic pipeline, and the CSV sweeps.
// Every sweep has a serial reference kernel and an OpenMP kernel
// that must agree row for row.

#include <cstddef>
#include <vector>

#include "wvu/bounds.hpp"
#include "wvu/linalg.hpp"

namespace wvu {

/// Unnormalized spin-1 state (x, y, z).
struct Spin1Params {
  Complex x;
  Complex y;
  Complex z;

  double norm() const;   // N = |x|^2 + |y|^2 + |z|^2
  double theta() const;  // arg(x) - arg(y)
  double c() const;      // 2|x||y| cos(theta)
  double s() const;      // 2|x||y| sin(theta)
};

struct Spin32Params {
  double t = 0.0;
  double norm() const { return 2.0 + t * t; }
};

struct ModelInstance {
  ComplexMatrix a;
  ComplexMatrix b;
  PureState psi;
};

struct Spin1Quantities {
  double var_a = 0.0;
  double var_b = 0.0;
  double cov_term = 0.0;
  double comm_term = 0.0;
  double wvop_norm_sq = 0.0;  // ||A_w(B)||^2
  double discord = 0.0;       // ||A - A_w(B)||^2
};

/// Both algebraic routes to E(A,B) for the spin-1 example.
struct Spin1ExtraTerm {
  double value = 0.0;          // discord * var_B
  double display_form = 0.0;   // (2|z|^2/N^3)(N - |z|^2 - c)(N - |z|^2 + s)
  double discrepancy() const;  // |value - display_form|
};

/// A = sigma_1 (+) 1, B = sigma_2 (+) 1, psi = (x, y, z)/sqrt(N).
ModelInstance spin1_instance(const Spin1Params& p);
Spin1Quantities spin1_closed_forms(const Spin1Params& p);
/// The same quantities evaluated numerically from spin1_instance.
Spin1Quantities spin1_pipeline(const Spin1Params& p);
Spin1ExtraTerm spin1_extra_closed_form(const Spin1Params& p);

/// A = sigma_1 (+) diag(1, -1), B = sigma_2 (+) diag(1, 0), psi = (1, 0, 1, t)/sqrt(2 + t^2).
ModelInstance spin32_instance(const Spin32Params& p);

struct Spin1SweepRow {
  double abs_x = 0.0;
  double abs_y = 0.0;
  double abs_z = 0.0;
  double e_ab_closed = 0.0;
  double e_ab_numeric = 0.0;
  double lhs = 0.0;
  double schrodinger_rhs = 0.0;
  double tight_rhs = 0.0;
};

struct Spin32SweepRow {
  double t = 0.0;
  double lhs = 0.0;
  double schrodinger_rhs = 0.0;
  double plus_e_tilde = 0.0;
  double plus_e_ab = 0.0;
  double plus_e_ba = 0.0;
  double plus_e_max = 0.0;
};

/// Point (alpha_i, beta_j) of the octant grid on the unit sphere:
/// |z| = cos(alpha), |x| = sin(alpha) cos(beta), |y| = sin(alpha) sin(beta),
/// with alpha, beta uniform over [0, pi/2] including both ends; x carries
/// the relative phase theta.
Spin1Params spin1_grid_point(std::size_t i, std::size_t j, std::size_t resolution, double theta);
double spin32_grid_point(std::size_t k, double t_min, double t_max, std::size_t steps);

Spin1SweepRow spin1_sweep_row(const Spin1Params& p);
Spin32SweepRow spin32_sweep_row(double t);

/// resolution x resolution rows, ordered by (i, j). Requires resolution >= 2.
std::vector<Spin1SweepRow> sweep_spin1_serial(std::size_t resolution, double theta);
std::vector<Spin1SweepRow> sweep_spin1(std::size_t resolution, double theta);

/// steps rows over [t_min, t_max]. Requires steps >= 2.
std::vector<Spin32SweepRow> sweep_spin32_serial(double t_min, double t_max, std::size_t steps);
std::vector<Spin32SweepRow> sweep_spin32(double t_min, double t_max, std::size_t steps);

}  // namespace wvu
