#pragma once

// Seeded generators for property tests. Deliberately separate from the
// library's harness generators so the properties are not checked only on
// inputs shaped by the code under test.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wvu/linalg.hpp"

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  wvu::Complex complex() { return {normal(), normal()}; }

  wvu::ComplexMatrix hermitian(std::size_t dim) {
    wvu::ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      m(r, r) = normal();
      for (std::size_t c = r + 1; c < dim; ++c) {
        m(r, c) = complex();
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

  wvu::ComplexVector vector(std::size_t dim) {
    wvu::ComplexVector v(dim);
    for (auto& z : v) z = complex();
    return v;
  }

  wvu::PureState state(std::size_t dim) { return wvu::PureState(vector(dim)); }

  /// Columns orthonormalized by modified Gram-Schmidt.
  wvu::ComplexMatrix unitary(std::size_t dim) {
    std::vector<wvu::ComplexVector> cols;
    while (cols.size() < dim) {
      auto v = vector(dim);
      for (const auto& q : cols) {
        const auto overlap = wvu::vdot(q, v);
        for (std::size_t k = 0; k < dim; ++k) v[k] -= overlap * q[k];
      }
      const double n = wvu::norm(v);
      if (n < 1e-8) continue;
      for (auto& z : v) z /= n;
      cols.push_back(std::move(v));
    }
    wvu::ComplexMatrix u(dim);
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
    return u;
  }

  /// U diag(eigs) U^dagger for a fresh random U.
  wvu::ComplexMatrix with_spectrum(const std::vector<double>& eigs) {
    const auto u = unitary(eigs.size());
    return u * wvu::ComplexMatrix::diagonal(eigs) * u.adjoint();
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gen
