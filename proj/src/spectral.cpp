#include "wvu/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wvu {

namespace {

double off_diagonal_sq(const ComplexMatrix& h) {
  double off = 0.0;
  for (std::size_t p = 0; p < h.dim(); ++p)
    for (std::size_t q = p + 1; q < h.dim(); ++q) off += std::norm(h(p, q));
  return off;
}

double frobenius_sq(const ComplexMatrix& h) {
  double s = 0.0;
  for (const auto& z : h.entries()) s += std::norm(z);
  return s;
}

// One complex Jacobi rotation G = D P annihilating h(p, q), where
// D = diag(.., e^{-i phi} at q, ..) makes the pivot real and P is the
// classic real symmetric rotation.
void rotate(ComplexMatrix& h, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex hpq = h(p, q);
  const double r = std::abs(hpq);
  if (r == 0.0) return;
  const Complex phase = hpq / r;  // e^{i phi}
  const Complex phase_conj = std::conj(phase);
  const double a = h(p, p).real();
  const double b = h(q, q).real();

  const double theta = (b - a) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = h.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex hkp = h(k, p);
    const Complex hkq = h(k, q);
    h(k, p) = c * hkp - s * phase_conj * hkq;
    h(k, q) = s * hkp + c * phase_conj * hkq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex xpk = h(p, k);
    const Complex xqk = h(q, k);
    h(p, k) = c * xpk - s * phase * xqk;
    h(q, k) = s * xpk + c * phase * xqk;
  }
  h(p, p) = a - t * r;
  h(q, q) = b + t * r;
  h(p, q) = 0.0;
  h(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * phase_conj * vkq;
    v(k, q) = s * vkp + c * phase_conj * vkq;
  }
}

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix& input, double hermitian_tol) {
  if (!input.all_finite()) throw Error(ErrorCode::NonFinite, "eig_hermitian: non-finite entry");
  if (!input.is_hermitian(hermitian_tol)) {
    throw Error(ErrorCode::NonHermitianInput,
                "eig_hermitian: defect " + std::to_string(input.hermiticity_defect()));
  }
  const std::size_t n = input.dim();

  // Work on the exactly Hermitian part.
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = input(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = frobenius_sq(h);
  int sweeps = 0;
  while (true) {
    const double off = off_diagonal_sq(h);
    if (off <= 1e-30 * scale || off < 1e-300) break;
    if (sweeps == kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "eig_hermitian: no convergence after " + std::to_string(sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(h, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = h(order[k], order[k]).real();
    for (std::size_t row = 0; row < n; ++row) out.vectors(row, k) = v(row, order[k]);
  }
  return out;
}

SpectralDecomposition group_spectrum(const EigenSystem& eig, double rel_tol) {
  const std::size_t n = eig.values.size();
  double radius = 0.0;
  for (double x : eig.values) radius = std::max(radius, std::abs(x));
  const double gap_tol = rel_tol * std::max(1.0, radius);

  SpectralDecomposition out;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] <= gap_tol) ++end;

    double mean = 0.0;
    ComplexMatrix projector(n);
    for (std::size_t k = start; k < end; ++k) {
      mean += eig.values[k];
      for (std::size_t i = 0; i < n; ++i) {
        const Complex vi = eig.vectors(i, k);
        for (std::size_t j = 0; j < n; ++j) projector(i, j) += vi * std::conj(eig.vectors(j, k));
      }
    }
    out.eigenvalues.push_back(mean / static_cast<double>(end - start));
    out.projectors.push_back(std::move(projector));
    out.multiplicities.push_back(end - start);
    start = end;
  }
  return out;
}

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h, double rel_tol) {
  return group_spectrum(eig_hermitian(h), rel_tol);
}

ComplexMatrix SpectralDecomposition::function_of(std::span<const Complex> f_values) const {
  if (f_values.size() != size()) {
    throw Error(ErrorCode::FillLengthMismatch,
                "function_of: expected " + std::to_string(size()) + " values, got " +
                    std::to_string(f_values.size()));
  }
  ComplexMatrix out(dim());
  for (std::size_t i = 0; i < size(); ++i) out += f_values[i] * projectors[i];
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  ComplexMatrix out(dim());
  for (std::size_t i = 0; i < size(); ++i) out += Complex(eigenvalues[i]) * projectors[i];
  return out;
}

}  // namespace wvu
