#pragma once

// Seeded random instances and the per-instance invariant checks run by the
// verification harness. Every instance draws from its own generator, seeded
// from (seed, dim, mode, index), so results do not depend on scheduling.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wvu/bounds.hpp"
#include "wvu/linalg.hpp"

namespace wvu {

enum class DegeneracyMode { None, DegenerateB, OrthogonalPsi };

std::string_view to_string(DegeneracyMode mode) noexcept;
std::optional<DegeneracyMode> parse_degeneracy_mode(std::string_view text);

using Rng = std::mt19937_64;

std::uint64_t instance_seed(std::uint64_t seed, std::size_t dim, DegeneracyMode mode,
                            std::size_t index);

/// (M + M^dagger)/2 with independent standard-normal real and imaginary parts.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Normalized complex standard-normal vector.
PureState random_state(std::size_t dim, Rng& rng);
/// Haar-distributed unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// U diag(eigenvalues) U^dagger
ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> eigenvalues);

struct RandomInstance {
  ComplexMatrix a;
  ComplexMatrix b;
  PureState psi;
  DegeneracyMode mode = DegeneracyMode::None;
  std::size_t dim = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  /// Random weak-value test function values, one per eigenvalue slot of B.
  std::vector<Complex> f_values;
};

/// None: A, B, psi all random.
/// DegenerateB: B = U (b0 I_k (+) D) U^dagger with a repeated eigenvalue of multiplicity k >= 2.
/// OrthogonalPsi: psi projected orthogonal to one eigenvector of B.
RandomInstance random_instance(std::uint64_t seed, std::size_t dim, DegeneracyMode mode,
                               std::size_t index);

/// B with exactly two distinct eigenvalues, each of multiplicity >= 1, A and psi random.
RandomInstance random_two_eigenvalue_instance(std::uint64_t seed, std::size_t dim,
                                              std::size_t index);

enum class Invariant : std::size_t {
  InequalityChain,
  Pythagorean,
  DiscordRoutes,
  FillInvariance,
  CauchySchwarz,
  ConjugateSymmetry,
  ProjectionIdentity,
  ProjectedIdentities,
  VarianceDecomposition,
  TightExactness,
  ShiftInvariance,
  PropertyA,
};
inline constexpr std::size_t kInvariantCount = 12;

struct InvariantInfo {
  std::string_view name;
  double tolerance;
};

/// Name and tolerance of each invariant; a violation above tolerance fails.
const std::array<InvariantInfo, kInvariantCount>& invariant_table();

using ViolationVector = std::array<double, kInvariantCount>;

/// Violation magnitudes (>= 0) of every invariant on one instance.
ViolationVector check_instance(const RandomInstance& inst, const ReportOptions& options = {});

struct TwoEigenvalueOutcome {
  double residual_cov = 0.0;
  double residual_kr = 0.0;
  /// ||(A_w(B) - <A>) psi - kappa Delta B psi||
  double reconstruction_error = 0.0;
  /// |lambda + i mu - kappa|
  double constant_mismatch = 0.0;
  double gap_tight_ab = 0.0;
  bool has_constant = false;
};

TwoEigenvalueOutcome check_two_eigenvalue(const RandomInstance& inst,
                                          const ReportOptions& options = {});

struct HarnessConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> dims{2, 3, 4, 5, 6};
  std::size_t samples_per_dim = 1000;
  std::vector<DegeneracyMode> modes{DegeneracyMode::None};
  ReportOptions options;
};

struct InvariantStat {
  std::string name;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::size_t failures = 0;
};

struct HarnessSummary {
  std::size_t instances = 0;
  std::vector<InvariantStat> stats;
  /// First failing instance in (dim, mode, index) order.
  std::optional<RandomInstance> first_failure;
  std::string first_failure_invariant;

  bool passed() const { return !first_failure.has_value(); }
};

HarnessSummary run_harness_serial(const HarnessConfig& config);
HarnessSummary run_harness(const HarnessConfig& config);

}  // namespace wvu
