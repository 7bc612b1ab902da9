#pragma once

// The exceptional Jordan algebra H3(O) of Hermitian 3x3 octonionic matrices
//
//         [ a     x     y ]
//     A = [ x*    b     z ]      a, b, c real; x, y, z octonions
//         [ y*    z*    c ]
//
// with the Jordan product A o B = (AB + BA) / 2, and the probability theory it
// carries: idempotents as events, trace-form states mu(X) = tr(rho o X), and
// conditioning through the quadratic map U_E(F) = 2 E o (E o F) - (E o E) o F.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sorkin/core.hpp"
#include "sorkin/octonion.hpp"

namespace sorkin::albert {

inline constexpr double kIdempotentTolerance = 1e-9;
inline constexpr double kOrthogonalTolerance = 1e-9;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;
/// Relative to the spectral width.
inline constexpr double kClusterTolerance = 1e-6;

class AlbertElement {
 public:
  constexpr AlbertElement() = default;
  constexpr AlbertElement(double a, double b, double c, const Octonion& x, const Octonion& y,
                          const Octonion& z)
      : diag_{a, b, c}, off_{x, y, z} {}

  static constexpr AlbertElement identity() { return diagonal(1.0, 1.0, 1.0); }
  static constexpr AlbertElement diagonal(double a, double b, double c) {
    return AlbertElement(a, b, c, {}, {}, {});
  }
  /// Layout: a, b, c, then the 8 coefficients of x, y and z.
  static AlbertElement from_coefficients(std::span<const double, 27> coefficients);
  std::array<double, 27> coefficients() const;

  /// Diagonal entry i in {0,1,2}.
  constexpr double diag(int i) const { return diag_[i]; }
  /// Off-diagonal entries: 0 -> x at (1,2), 1 -> y at (1,3), 2 -> z at (2,3).
  constexpr const Octonion& off(int k) const { return off_[k]; }
  constexpr double& diag(int i) { return diag_[i]; }
  constexpr Octonion& off(int k) { return off_[k]; }

  constexpr double trace() const { return diag_[0] + diag_[1] + diag_[2]; }
  /// Largest absolute coefficient over all 27 real coordinates.
  double sup_norm() const;
  /// sqrt(tr(A o A)).
  double norm() const;

  AlbertElement& operator+=(const AlbertElement& o);
  AlbertElement& operator-=(const AlbertElement& o);
  AlbertElement& operator*=(double s);

  friend AlbertElement operator+(AlbertElement a, const AlbertElement& b) { return a += b; }
  friend AlbertElement operator-(AlbertElement a, const AlbertElement& b) { return a -= b; }
  friend AlbertElement operator*(AlbertElement a, double s) { return a *= s; }
  friend AlbertElement operator*(double s, AlbertElement a) { return a *= s; }
  friend bool operator==(const AlbertElement&, const AlbertElement&) = default;

 private:
  std::array<double, 3> diag_{};
  std::array<Octonion, 3> off_{};
};

/// General (not necessarily Hermitian) 3x3 octonionic matrix, row-major.
struct OctonionMatrix3 {
  std::array<Octonion, 9> entry{};

  Octonion& operator()(int i, int j) { return entry[3 * i + j]; }
  const Octonion& operator()(int i, int j) const { return entry[3 * i + j]; }

  static OctonionMatrix3 from(const AlbertElement& a);
};

OctonionMatrix3 operator*(const OctonionMatrix3& a, const OctonionMatrix3& b);

/// (AB + BA) / 2.
AlbertElement jordan_mul(const AlbertElement& a, const AlbertElement& b);
/// tr(A o B).
double trace_form(const AlbertElement& a, const AlbertElement& b);

/// Coefficients of lambda^3 - t1 lambda^2 + t2 lambda - t3.
struct CharPoly {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

CharPoly char_poly(const AlbertElement& a);

/// Real roots of the characteristic polynomial, descending. Throws kNumeric
/// when the cubic has a significantly complex root pair.
std::array<double, 3> cubic_roots(const CharPoly& p);

struct SpectralTerm {
  double eigenvalue = 0.0;
  int multiplicity = 1;
  AlbertElement idempotent;
};

/// Eigenvalues (clustered within kClusterTolerance of the spectral width) in
/// descending order with the corresponding pairwise orthogonal idempotents.
std::vector<SpectralTerm> spectral_decompose(const AlbertElement& a);

/// U_E(F) = 2 E o (E o F) - (E o E) o F.
AlbertElement quadratic_map(const AlbertElement& e, const AlbertElement& f);

/// Idempotent element; ||E o E - E||_sup <= 1e-9.
class JordanIdempotent {
 public:
  explicit JordanIdempotent(const AlbertElement& e);

  const AlbertElement& element() const { return e_; }
  /// tr(E) rounded; the number of primitive idempotents summed.
  int rank() const;

 private:
  AlbertElement e_;
};

/// Trace-form state mu(X) = tr(rho o X); rho has trace 1 and eigenvalues >= -1e-10.
class JordanState {
 public:
  explicit JordanState(const AlbertElement& rho);

  static JordanState maximally_mixed() {
    return JordanState(AlbertElement::diagonal(1.0 / 3, 1.0 / 3, 1.0 / 3));
  }

  const AlbertElement& density() const { return rho_; }
  double evaluate(const AlbertElement& x) const { return trace_form(rho_, x); }

 private:
  AlbertElement rho_;
};

class Theory {
 public:
  using Event = JordanIdempotent;
  using State = JordanState;

  std::string_view name() const { return "albert"; }

  Event unit() const { return JordanIdempotent(AlbertElement::identity()); }
  Event zero() const { return JordanIdempotent(AlbertElement{}); }

  bool is_valid(const Event&) const { return true; }
  bool is_valid_state(const State&) const { return true; }
  /// ||E o F||_sup <= 1e-9.
  bool are_orthogonal(const Event& a, const Event& b) const;
  Event sum(std::span<const Event> events) const;

  double probability(const State& rho, const Event& e) const;
  /// tr(rho o U_E(F)) / tr(rho o E).
  double conditional(const State& rho, const Event& f, const Event& e) const;

  std::string describe(const Event& e) const;
};

/// 27 independent standard normal coefficients.
AlbertElement random_element(Rng& rng);

/// rho = (B o B) / tr(B o B) for a random B; positivity verified via the
/// characteristic roots.
JordanState random_state(Rng& rng);

/// Primitive idempotents of a random element whose eigenvalue gaps are all at
/// least 1e-3; gives up with kSampler after 100 draws.
std::array<JordanIdempotent, 3> random_idempotent_triple(Rng& rng);

struct Instance {
  JordanState rho;
  JordanIdempotent f;
  std::array<JordanIdempotent, 3> triple;
};

/// Random state, random primitive triple and an independent idempotent f of
/// rank 1 or 2.
Instance random_instance(Rng& rng);

/// True iff every characteristic root of A o A is >= -1e-9.
bool check_square_positive(const AlbertElement& a);

/// Worst sup-norm discrepancy between the association orders A^k o A^(n-k)
/// and the left-nested power A^n, for 2 <= n <= max_power. Requires
/// max_power >= 4.
double check_power_associativity(const AlbertElement& a, int max_power);

}  // namespace sorkin::albert
