#include "wvu/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace wvu {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FillLengthMismatch: return "FillLengthMismatch";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GridTooNarrow: return "GridTooNarrow";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void require_same_dim(std::size_t a, std::size_t b, const char* context) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(context) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
    ++r;
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t k = 0; k < dim; ++k) m(k, k) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) m(k, k) = entries[k];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "outer");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::block_diagonal(const ComplexMatrix& upper, const ComplexMatrix& lower) {
  const std::size_t n = upper.dim();
  ComplexMatrix m(n + lower.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = upper(i, j);
  for (std::size_t i = 0; i < lower.dim(); ++i)
    for (std::size_t j = 0; j < lower.dim(); ++j) m(n + i, n + j) = lower(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) t += (*this)(k, k);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  return hermiticity_defect() <= rel_tol * std::max(1.0, max_abs());
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "matrix *");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  require_same_dim(m.dim(), v.size(), "matrix-vector *");
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x.dim(), y.dim(), "max_abs_diff");
  double d = 0.0;
  auto xs = x.entries();
  auto ys = y.entries();
  for (std::size_t k = 0; k < xs.size(); ++k) d = std::max(d, std::abs(xs[k] - ys[k]));
  return d;
}

// Spelled out in real arithmetic so that swapping the arguments conjugates
// the result exactly: re is symmetric, im flips sign term by term.
Complex vdot(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "vdot");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double ur = u[k].real(), ui = u[k].imag();
    const double vr = v[k].real(), vi = v[k].imag();
    re += ur * vr + ui * vi;
    im += ur * vi - ui * vr;
  }
  return {re, im};
}

double norm_sq(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

double norm(std::span<const Complex> v) { return std::sqrt(norm_sq(v)); }

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw Error(ErrorCode::DimensionMismatch, "state dimension must be >= 1");
  for (const auto& z : amplitudes_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::NonFinite, "state amplitudes must be finite");
  const double n = norm(amplitudes_);
  if (n == 0.0) throw Error(ErrorCode::ZeroState, "cannot normalize the zero vector");
  for (auto& z : amplitudes_) z /= n;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

Complex expectation(const ComplexMatrix& x, const PureState& psi) {
  require_same_dim(x.dim(), psi.dim(), "expectation");
  return vdot(psi.amplitudes(), x * psi.amplitudes());
}

Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y, const PureState& psi) {
  require_same_dim(x.dim(), psi.dim(), "hs_inner");
  require_same_dim(y.dim(), psi.dim(), "hs_inner");
  return vdot(x * psi.amplitudes(), y * psi.amplitudes());
}

double op_norm_sq(const ComplexMatrix& x, const PureState& psi) {
  require_same_dim(x.dim(), psi.dim(), "op_norm_sq");
  return norm_sq(x * psi.amplitudes());
}

namespace pauli {
ComplexMatrix sigma1() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma2() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix sigma3() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace wvu
