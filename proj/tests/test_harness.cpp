#include "doctest.h"
#include "wvu/harness.hpp"

#include <set>

using namespace wvu;

TEST_CASE("degeneracy modes round-trip through their names") {
  for (auto mode : {DegeneracyMode::None, DegeneracyMode::DegenerateB, DegeneracyMode::OrthogonalPsi})
    CHECK(parse_degeneracy_mode(to_string(mode)) == mode);
  CHECK_FALSE(parse_degeneracy_mode("sideways").has_value());
}

TEST_CASE("instance seeds separate every coordinate") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed : {0ull, 42ull})
    for (std::size_t dim = 2; dim <= 6; ++dim)
      for (auto mode : {DegeneracyMode::None, DegeneracyMode::DegenerateB,
                        DegeneracyMode::OrthogonalPsi})
        for (std::size_t index = 0; index < 50; ++index)
          seen.insert(instance_seed(seed, dim, mode, index));
  CHECK(seen.size() == 2u * 5u * 3u * 50u);
}

TEST_CASE("random instances are reproducible") {
  const auto a = random_instance(42, 4, DegeneracyMode::DegenerateB, 17);
  const auto b = random_instance(42, 4, DegeneracyMode::DegenerateB, 17);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(std::equal(a.psi.amplitudes().begin(), a.psi.amplitudes().end(),
                   b.psi.amplitudes().begin()));
  const auto c = random_instance(42, 4, DegeneracyMode::DegenerateB, 18);
  CHECK_FALSE(a.a == c.a);
}

TEST_CASE("degeneracy modes produce the advertised structure") {
  for (std::size_t dim = 3; dim <= 6; ++dim) {
    for (std::size_t index = 0; index < 50; ++index) {
      const auto deg = random_instance(7, dim, DegeneracyMode::DegenerateB, index);
      const auto spec = spectral_decomposition(deg.b);
      bool repeated = false;
      for (std::size_t i = 0; i < spec.size(); ++i) repeated = repeated || spec.is_degenerate(i);
      CHECK(repeated);

      const auto orth = random_instance(7, dim, DegeneracyMode::OrthogonalPsi, index);
      const auto wvd = weak_value_function(orth.a, spectral_decomposition(orth.b), orth.psi);
      bool masked = false;
      for (bool m : wvd.fill_mask) masked = masked || m;
      CHECK(masked);

      const auto two = random_two_eigenvalue_instance(7, dim, index);
      CHECK(spectral_decomposition(two.b).size() == 2);
    }
  }
}

TEST_CASE("check_instance reports no violations on a small sample") {
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (auto mode : {DegeneracyMode::None, DegeneracyMode::DegenerateB,
                      DegeneracyMode::OrthogonalPsi}) {
      for (std::size_t index = 0; index < 40; ++index) {
        const auto v = check_instance(random_instance(3, dim, mode, index));
        for (std::size_t k = 0; k < kInvariantCount; ++k)
          CHECK(v[k] <= invariant_table()[k].tolerance);
      }
    }
  }
}

TEST_CASE("two-eigenvalue outcome") {
  for (std::size_t dim = 3; dim <= 6; ++dim) {
    for (std::size_t index = 0; index < 50; ++index) {
      const auto o = check_two_eigenvalue(random_two_eigenvalue_instance(5, dim, index));
      CHECK(o.has_constant);
      CHECK(o.residual_cov < 1e-9);
      CHECK(o.residual_kr < 1e-9);
      CHECK(o.reconstruction_error < 1e-9);
      CHECK(o.constant_mismatch < 1e-9);
    }
  }
}

TEST_CASE("parallel harness reproduces the serial summary") {
  HarnessConfig config;
  config.seed = 99;
  config.dims = {2, 3, 5};
  config.samples_per_dim = 60;
  config.modes = {DegeneracyMode::None, DegeneracyMode::DegenerateB, DegeneracyMode::OrthogonalPsi};
  const auto serial = run_harness_serial(config);
  const auto parallel = run_harness(config);
  CHECK(serial.instances == 3u * 3u * 60u);
  CHECK(parallel.instances == serial.instances);
  REQUIRE(serial.stats.size() == parallel.stats.size());
  for (std::size_t k = 0; k < serial.stats.size(); ++k) {
    CHECK(serial.stats[k].name == parallel.stats[k].name);
    CHECK(serial.stats[k].max_violation == parallel.stats[k].max_violation);
    CHECK(serial.stats[k].failures == parallel.stats[k].failures);
  }
  CHECK(serial.passed());
  CHECK(parallel.passed());
}

TEST_CASE("a failing tolerance surfaces the first failing instance") {
  HarnessConfig config;
  config.dims = {3, 4};
  config.samples_per_dim = 20;
  // an absurd zero threshold masks every eigenspace and breaks A_w(B) psi = A psi
  config.options.zero_tol = 10.0;
  const auto summary = run_harness(config);
  REQUIRE_FALSE(summary.passed());
  CHECK(summary.first_failure->dim == 3);
  CHECK(summary.first_failure->index == 0);
  CHECK_FALSE(summary.first_failure_invariant.empty());
}
