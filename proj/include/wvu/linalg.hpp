#pragma once

// Dense complex linear algebra on small Hilbert spaces and the
// state-dependent operator inner product (X, Y) = <psi| X^dagger Y |psi>.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "wvu/error.hpp"

namespace wvu {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Square, row-major complex matrix. All entries are finite.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension (dim >= 1).
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  /// |u><v|
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);
  /// Block-diagonal embedding of two blocks.
  static ComplexMatrix block_diagonal(const ComplexMatrix& upper, const ComplexMatrix& lower);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  /// Largest |X_ij - conj(X_ji)|.
  double hermiticity_defect() const;
  /// Hermitian within tol * max(1, max|X_ij|).
  bool is_hermitian(double rel_tol = 1e-9) const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Largest entrywise |X_ij - Y_ij|.
double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);

/// <u, v> = sum_k conj(u_k) v_k, conjugate-linear in the first slot.
Complex vdot(std::span<const Complex> u, std::span<const Complex> v);
double norm_sq(std::span<const Complex> v);
double norm(std::span<const Complex> v);

/// Normalized pure state. The constructor rescales its input to unit norm.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

 private:
  ComplexVector amplitudes_;
};

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// <psi| X |psi>
Complex expectation(const ComplexMatrix& x, const PureState& psi);

/// (X, Y) = <psi| X^dagger Y |psi>, evaluated as <X psi, Y psi>, so that
/// hs_inner(X, Y) == conj(hs_inner(Y, X)) holds bit for bit.
Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y, const PureState& psi);

/// ||X||^2 = (X, X) = ||X psi||^2.
double op_norm_sq(const ComplexMatrix& x, const PureState& psi);

void require_same_dim(std::size_t a, std::size_t b, const char* context);

namespace pauli {
ComplexMatrix sigma1();
ComplexMatrix sigma2();
ComplexMatrix sigma3();
}  // namespace pauli

}  // namespace wvu
