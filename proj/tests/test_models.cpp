#include "doctest.h"
#include "support/generators.hpp"
#include "wvu/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace wvu;

namespace {

Spin1Params random_ball_point(gen::Source& src) {
  // uniform direction in C^3, radius uniform in (0.05, 1]
  ComplexVector v = src.vector(3);
  const double r = src.uniform(0.05, 1.0) / norm(v);
  return {r * v[0], r * v[1], r * v[2]};
}

// Golden-section maximization of 2 z^2 (1 - z^2)^2, the x = 0 slice of the
// spin-1 extra term on the unit sphere.
std::pair<double, double> slice_maximum() {
  auto f = [](double z) { return 2.0 * z * z * std::pow(1.0 - z * z, 2); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double z = 0.5 * (lo + hi);
  return {z, f(z)};
}

}  // namespace

TEST_CASE("c and s satisfy c^2 + s^2 = 4|x|^2|y|^2") {
  gen::Source src(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_ball_point(src);
    const double lhs = p.c() * p.c() + p.s() * p.s();
    const double rhs = 4.0 * std::norm(p.x) * std::norm(p.y);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("spin1_instance examples") {
  const auto e1 = spin1_instance({1.0, 0.0, 0.0});
  CHECK(std::abs(e1.psi[0] - 1.0) < 1e-15);
  CHECK(std::abs(expectation(e1.a, e1.psi)) < 1e-15);
  CHECK(std::abs(expectation(e1.b, e1.psi)) < 1e-15);

  const auto e3 = spin1_instance({0.0, 0.0, 1.0});
  CHECK(variance(e3.a, e3.psi) < 1e-30);
  CHECK(variance(e3.b, e3.psi) < 1e-30);

  const auto u = spin1_instance({1.0, 1.0, 1.0});
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(u.psi[k] - 1.0 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("spin-1 closed forms at landmark states") {
  SUBCASE("(1, 0, 1)") {
    const auto q = spin1_closed_forms({1.0, 0.0, 1.0});
    CHECK(q.var_a == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(q.var_b == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(q.cov_term == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(q.comm_term == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(q.wvop_norm_sq == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(q.discord == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // balance: 1/4 + 1/16 + E = 9/16
    CHECK(q.comm_term + q.cov_term + q.discord * q.var_b ==
          doctest::Approx(q.var_a * q.var_b).epsilon(1e-14));
  }
  SUBCASE("(1, 1, 0) is an eigenstate of A") {
    CHECK(spin1_closed_forms({1.0, 1.0, 0.0}).var_a < 1e-15);
  }
  SUBCASE("(0, 1, 1)") {
    const auto q = spin1_closed_forms({0.0, 1.0, 1.0});
    CHECK(q.var_a == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(q.comm_term == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("spin-1 extra term closed form") {
  gen::Source src(32);
  for (int trial = 0; trial < 100; ++trial) {
    const double ax = src.uniform(0, 1), ay = src.uniform(0, 1);
    CHECK(spin1_extra_closed_form({ax, ay, 0.0}).value < 1e-15);
    CHECK(std::abs(spin1_extra_closed_form({ax, ax, src.uniform(0, 1)}).value) < 1e-15);
  }
  const auto e = spin1_extra_closed_form({1.0, 0.0, 1.0});
  CHECK(e.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(e.display_form == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("closed forms match the generic pipeline on random states") {
  gen::Source src(33);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = random_ball_point(src);
    const auto cf = spin1_closed_forms(p);
    const auto num = spin1_pipeline(p);
    for (auto [a, b] : {std::pair{cf.var_a, num.var_a}, std::pair{cf.var_b, num.var_b},
                        std::pair{cf.cov_term, num.cov_term},
                        std::pair{cf.comm_term, num.comm_term},
                        std::pair{cf.wvop_norm_sq, num.wvop_norm_sq},
                        std::pair{cf.discord, num.discord}})
      worst = std::max(worst, std::abs(a - b));
    CHECK(spin1_extra_closed_form(p).discrepancy() < 1e-12);

    // schrodinger_rhs + E(A,B) expanded in c, s, |z|, N
    const double n = p.norm(), z2 = std::norm(p.z);
    const double u = z2 + p.c(), w = z2 - p.s();
    const double expanded = 1.0 - (u * u + w * w) / (n * n) + u * u * w * w / (n * n * n * n);
    const double sum = cf.comm_term + cf.cov_term + spin1_extra_closed_form(p).value;
    CHECK(std::abs(sum - expanded) < 1e-10);
    CHECK(std::abs(expanded - cf.var_a * cf.var_b) < 1e-10);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("spin32_instance examples") {
  const auto t0 = spin32_instance({0.0});
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(t0.psi[0] - h) < 1e-15);
  CHECK(std::abs(t0.psi[1]) == 0.0);
  CHECK(std::abs(t0.psi[2] - h) < 1e-15);
  CHECK(std::abs(t0.psi[3]) == 0.0);

  for (double t : {-2.0, 0.0, 1.0, 3.0}) {
    const auto spec = spectral_decomposition(spin32_instance({t}).a);
    REQUIRE(spec.size() == 2);
    CHECK(spec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(Spin32Params{1.0}.norm() == 3.0);
}

TEST_CASE("spin-1 sweep landmarks") {
  const auto rows = sweep_spin1(200, 0.0);
  REQUIRE(rows.size() == 200u * 200u);
  const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.e_ab_numeric < b.e_ab_numeric;
  });
  const auto [z_star, e_star] = slice_maximum();
  CHECK(std::abs(z_star - 1.0 / std::sqrt(3.0)) < 1e-6);
  CHECK(std::abs(e_star - 8.0 / 27.0) < 1e-12);
  CHECK(std::abs(best->e_ab_numeric - e_star) < 1e-3);
  CHECK(std::abs(best->abs_z - z_star) < 0.01);
  CHECK(std::min(best->abs_x, best->abs_y) < 0.01);

  for (const auto& r : rows) {
    if (r.abs_z == 0.0) CHECK(r.e_ab_numeric < 1e-12);
    CHECK(std::abs(r.e_ab_closed - r.e_ab_numeric) < 1e-9);
    CHECK(std::abs(r.tight_rhs - r.lhs) < 1e-9);
  }
}

TEST_CASE("spin-1 sweep vanishes on the |x| = |y| diagonal") {
  // odd resolution puts beta = pi/4 on the grid
  const std::size_t res = 21;
  const auto rows = sweep_spin1(res, 0.0);
  for (std::size_t i = 0; i < res; ++i) {
    const auto& r = rows[i * res + res / 2];
    CHECK(std::abs(r.abs_x - r.abs_y) < 1e-15);
    CHECK(r.e_ab_numeric < 1e-12);
  }
}

TEST_CASE("spin-3/2 sweep ordering") {
  const auto rows = sweep_spin32(-3.0, 3.0, 601);
  REQUIRE(rows.size() == 601);
  CHECK(rows.front().t == -3.0);
  CHECK(rows.back().t == 3.0);
  for (const auto& r : rows) {
    CHECK(r.plus_e_tilde - r.schrodinger_rhs >= -1e-9);
    CHECK(r.plus_e_ab - r.plus_e_tilde >= -1e-9);
    CHECK(r.lhs - r.plus_e_ab >= -1e-9);
    CHECK(std::abs(r.lhs - r.plus_e_ba) < 1e-9);
    CHECK(r.plus_e_max == std::max(r.plus_e_ab, r.plus_e_ba));
  }
  const auto at_one = spin32_sweep_row(1.0);
  CHECK(at_one.lhs - at_one.plus_e_ab > 1e-6);
  CHECK(at_one.lhs - at_one.schrodinger_rhs > 1e-3);
  CHECK(at_one.lhs == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("parallel sweeps reproduce the serial reference exactly") {
  for (double theta : {0.0, std::numbers::pi / 3.0}) {
    const auto a = sweep_spin1_serial(37, theta);
    const auto b = sweep_spin1(37, theta);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].e_ab_numeric == b[k].e_ab_numeric);
      CHECK(a[k].lhs == b[k].lhs);
      CHECK(a[k].abs_z == b[k].abs_z);
    }
  }
  const auto s = sweep_spin32_serial(-2.0, 5.0, 333);
  const auto p = sweep_spin32(-2.0, 5.0, 333);
  REQUIRE(s.size() == p.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(s[k].t == p[k].t);
    CHECK(s[k].plus_e_ab == p[k].plus_e_ab);
    CHECK(s[k].plus_e_ba == p[k].plus_e_ba);
  }
}

TEST_CASE("sweep arguments are validated") {
  CHECK_THROWS_AS(sweep_spin1(1, 0.0), Error);
  CHECK_THROWS_AS(sweep_spin32(-1.0, 1.0, 0), Error);
  CHECK_THROWS_AS(sweep_spin32(-1.0, 1.0, 1), Error);
}
