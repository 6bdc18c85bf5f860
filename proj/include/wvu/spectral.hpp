#pragma once

#include <cstddef>
#include <vector>

#include "wvu/linalg.hpp"

namespace wvu {

/// Eigenpairs of a Hermitian matrix; values ascending, vectors as columns.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Distinct eigenvalues b_i (ascending) with the orthogonal projectors onto
/// their eigenspaces, so that B = sum_i b_i Pi_i.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> projectors;
  std::vector<std::size_t> multiplicities;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  std::size_t dim() const { return projectors.front().dim(); }
  bool is_degenerate(std::size_t i) const { return multiplicities[i] > 1; }

  /// f(B) = sum_i f_i Pi_i for one value per distinct eigenvalue.
  ComplexMatrix function_of(std::span<const Complex> f_values) const;
  ComplexMatrix reconstruct() const;
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Cyclic complex Jacobi. Throws NonHermitianInput when H deviates from
/// Hermitian by more than hermitian_tol * max(1, max|H_ij|), NoConvergence
/// after kJacobiMaxSweeps full sweeps.
EigenSystem eig_hermitian(const ComplexMatrix& h, double hermitian_tol = 1e-9);

/// Merges consecutive eigenvalues whose gap is <= rel_tol * max(1, max|lambda|).
SpectralDecomposition group_spectrum(const EigenSystem& eig, double rel_tol = kDefaultDegeneracyTol);

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h,
                                             double rel_tol = kDefaultDegeneracyTol);

}  // namespace wvu
