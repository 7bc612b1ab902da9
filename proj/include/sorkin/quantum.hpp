#pragma once

// Finite-dimensional Hilbert-space quantum probability: events are orthogonal
// projections, states are density operators, conditioning is the Lüders rule.

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sorkin/core.hpp"

namespace sorkin::quantum {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 16;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kIdempotentTolerance = 1e-10;
inline constexpr double kOrthogonalTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;

/// Hermitian idempotent. Construction symmetrizes (M + M^dagger) / 2 and
/// rejects inputs that are not projections within tolerance.
class Projection {
 public:
  explicit Projection(const ComplexMatrix& m);

  static Projection zero(int d);
  static Projection identity(int d);
  /// Projector onto the span of the orthonormal columns of `basis`.
  static Projection onto(const ComplexMatrix& basis);

  const ComplexMatrix& matrix() const { return p_; }
  int dimension() const { return static_cast<int>(p_.rows()); }
  int rank() const;

 private:
  struct Unchecked {};
  Projection(ComplexMatrix m, Unchecked) : p_(std::move(m)) {}

  ComplexMatrix p_;
};

/// Positive semidefinite, unit-trace operator.
class Density {
 public:
  explicit Density(const ComplexMatrix& m);

  static Density maximally_mixed(int d);
  static Density pure(const Eigen::VectorXcd& psi);

  const ComplexMatrix& matrix() const { return rho_; }
  int dimension() const { return static_cast<int>(rho_.rows()); }

 private:
  ComplexMatrix rho_;
};

class Theory {
 public:
  using Event = Projection;
  using State = Density;

  explicit Theory(int dimension);

  int dimension() const { return d_; }
  std::string_view name() const { return "quantum"; }

  Event unit() const { return Projection::identity(d_); }
  Event zero() const { return Projection::zero(d_); }

  bool is_valid(const Event& e) const { return e.dimension() == d_; }
  bool is_valid_state(const State& s) const { return s.dimension() == d_; }
  /// ||PQ||_F <= 1e-10.
  bool are_orthogonal(const Event& a, const Event& b) const;
  Event sum(std::span<const Event> events) const;

  /// Born rule trace(rho P), clamped into [0, 1] when within tolerance.
  double probability(const State& rho, const Event& p) const;
  /// Lüders rule trace(E rho E F) / trace(rho E).
  double conditional(const State& rho, const Event& f, const Event& e) const;

  std::string describe(const Event& e) const;

 private:
  void check_state(const State& rho) const;

  int d_;
};

/// rho = G G^dagger / trace(G G^dagger) with G a d x rank complex Gaussian.
Density random_density(int d, int rank, Rng& rng);

/// Haar-random unitary via QR of a complex Gaussian with the phases of R's
/// diagonal absorbed into Q.
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Partitions the columns of a Haar unitary into groups of the given ranks and
/// returns the group projectors. Requires sum(ranks) <= d.
std::vector<Projection> random_orthogonal_projections(int d, std::span<const int> ranks,
                                                      Rng& rng);

struct SamplerOptions {
  int dimension = 3;
  /// 0 draws each rank uniformly per trial.
  int density_rank = 0;
  /// When true every triple member and f have rank one.
  bool rank_one_events = false;
};

struct Instance {
  Density rho;
  Projection f;
  std::array<Projection, 3> triple;
};

Instance random_instance(const SamplerOptions& options, Rng& rng);

}  // namespace sorkin::quantum
