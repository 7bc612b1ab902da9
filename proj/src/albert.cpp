#include "sorkin/albert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sorkin::albert {

// --- AlbertElement ----------------------------------------------------------

AlbertElement AlbertElement::from_coefficients(std::span<const double, 27> c) {
  AlbertElement a;
  for (int i = 0; i < 3; ++i) a.diag_[i] = c[i];
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 8; ++j) a.off_[k][j] = c[3 + 8 * k + j];
  }
  return a;
}

std::array<double, 27> AlbertElement::coefficients() const {
  std::array<double, 27> c{};
  for (int i = 0; i < 3; ++i) c[i] = diag_[i];
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 8; ++j) c[3 + 8 * k + j] = off_[k][j];
  }
  return c;
}

double AlbertElement::sup_norm() const {
  double m = 0.0;
  for (double v : diag_) m = std::max(m, std::abs(v));
  for (const auto& o : off_) m = std::max(m, o.sup_norm());
  return m;
}

double AlbertElement::norm() const { return std::sqrt(std::max(0.0, trace_form(*this, *this))); }

AlbertElement& AlbertElement::operator+=(const AlbertElement& o) {
  for (int i = 0; i < 3; ++i) {
    diag_[i] += o.diag_[i];
    off_[i] += o.off_[i];
  }
  return *this;
}

AlbertElement& AlbertElement::operator-=(const AlbertElement& o) {
  for (int i = 0; i < 3; ++i) {
    diag_[i] -= o.diag_[i];
    off_[i] -= o.off_[i];
  }
  return *this;
}

AlbertElement& AlbertElement::operator*=(double s) {
  for (int i = 0; i < 3; ++i) {
    diag_[i] *= s;
    off_[i] *= s;
  }
  return *this;
}

// --- Octonionic matrices and the Jordan product -----------------------------

OctonionMatrix3 OctonionMatrix3::from(const AlbertElement& a) {
  OctonionMatrix3 m;
  for (int i = 0; i < 3; ++i) m(i, i) = Octonion(a.diag(i));
  m(0, 1) = a.off(0);
  m(0, 2) = a.off(1);
  m(1, 2) = a.off(2);
  m(1, 0) = a.off(0).conj();
  m(2, 0) = a.off(1).conj();
  m(2, 1) = a.off(2).conj();
  return m;
}

OctonionMatrix3 operator*(const OctonionMatrix3& a, const OctonionMatrix3& b) {
  OctonionMatrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Octonion acc;
      for (int k = 0; k < 3; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

AlbertElement jordan_mul(const AlbertElement& a, const AlbertElement& b) {
  const OctonionMatrix3 ma = OctonionMatrix3::from(a);
  const OctonionMatrix3 mb = OctonionMatrix3::from(b);
  const OctonionMatrix3 ab = ma * mb;
  const OctonionMatrix3 ba = mb * ma;
  AlbertElement out;
  for (int i = 0; i < 3; ++i) out.diag(i) = 0.5 * (ab(i, i).real() + ba(i, i).real());
  out.off(0) = 0.5 * (ab(0, 1) + ba(0, 1));
  out.off(1) = 0.5 * (ab(0, 2) + ba(0, 2));
  out.off(2) = 0.5 * (ab(1, 2) + ba(1, 2));
  return out;
}

double trace_form(const AlbertElement& a, const AlbertElement& b) {
  // tr(A o B) = sum_i a_ii b_ii + 2 sum_{i<j} Re(a_ij conj(b_ij)).
  double t = 0.0;
  for (int i = 0; i < 3; ++i) t += a.diag(i) * b.diag(i);
  for (int k = 0; k < 3; ++k) {
    double dot = 0.0;
    for (int j = 0; j < 8; ++j) dot += a.off(k)[j] * b.off(k)[j];
    t += 2.0 * dot;
  }
  return t;
}

// --- Spectral theory --------------------------------------------------------

CharPoly char_poly(const AlbertElement& a) {
  const AlbertElement a2 = jordan_mul(a, a);
  const double p1 = a.trace();
  const double p2 = a2.trace();
  const double p3 = jordan_mul(a2, a).trace();
  CharPoly c;
  c.t1 = p1;
  c.t2 = (p1 * p1 - p2) / 2.0;
  c.t3 = (p3 - p1 * p2 + c.t2 * p1) / 3.0;
  return c;
}

namespace {

double eval_cubic(const CharPoly& p, double x) {
  return ((x - p.t1) * x + p.t2) * x - p.t3;
}

double eval_cubic_derivative(const CharPoly& p, double x) {
  return (3.0 * x - 2.0 * p.t1) * x + p.t2;
}

double polish_root(const CharPoly& p, double x) {
  for (int it = 0; it < 3; ++it) {
    const double fx = eval_cubic(p, x);
    const double dfx = eval_cubic_derivative(p, x);
    if (fx == 0.0 || dfx == 0.0) break;
    const double next = x - fx / dfx;
    if (!(std::abs(eval_cubic(p, next)) < std::abs(fx))) break;
    x = next;
  }
  return x;
}

}  // namespace

std::array<double, 3> cubic_roots(const CharPoly& c) {
  // lambda = mu + shift turns the polynomial into mu^3 + p mu + q.
  const double shift = c.t1 / 3.0;
  const double p = c.t2 - c.t1 * c.t1 / 3.0;
  const double q = -2.0 * c.t1 * c.t1 * c.t1 / 27.0 + c.t1 * c.t2 / 3.0 - c.t3;
  const double scale = std::max({std::abs(shift), std::sqrt(std::abs(p)), std::cbrt(std::abs(q)),
                                 std::numeric_limits<double>::min()});

  if (p > 1e-9 * scale * scale) {
    throw Error(ErrorCode::kNumeric, "characteristic polynomial has complex roots (p = " +
                                         std::to_string(p) + ")");
  }
  std::array<double, 3> roots{shift, shift, shift};
  if (-p > 1e-28 * scale * scale) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
    if (std::abs(arg) > 1.0 + 1e-6) {
      throw Error(ErrorCode::kNumeric, "characteristic polynomial has complex roots (arg = " +
                                           std::to_string(arg) + ")");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots[k] = polish_root(c, shift + m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
    }
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

std::vector<SpectralTerm> spectral_decompose(const AlbertElement& a) {
  const auto roots = cubic_roots(char_poly(a));
  const double width = roots[0] - roots[2];
  const double magnitude = std::max(std::abs(roots[0]), std::abs(roots[2]));
  const double tol = kClusterTolerance * std::max(width, magnitude);

  // Consecutive roots closer than `tol` share one idempotent.
  std::vector<SpectralTerm> terms;
  std::vector<double> sums;
  for (double r : roots) {
    if (!terms.empty() && terms.back().eigenvalue - r <= tol) {
      auto& t = terms.back();
      sums.back() += r;
      ++t.multiplicity;
      continue;
    }
    terms.push_back({r, 1, {}});
    sums.push_back(r);
  }
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i].eigenvalue = sums[i] / terms[i].multiplicity;

  const AlbertElement one = AlbertElement::identity();
  switch (terms.size()) {
    case 1:
      terms[0].idempotent = one;
      break;
    case 2: {
      const double la = terms[0].eigenvalue;
      const double lb = terms[1].eigenvalue;
      terms[0].idempotent = (a - lb * one) * (1.0 / (la - lb));
      terms[1].idempotent = (a - la * one) * (1.0 / (lb - la));
      break;
    }
    default: {
      // Lagrange interpolation: E_i = prod_{j != i} (A - l_j) / (l_i - l_j).
      const AlbertElement a2 = jordan_mul(a, a);
      for (int i = 0; i < 3; ++i) {
        const double li = terms[i].eigenvalue;
        const double lj = terms[(i + 1) % 3].eigenvalue;
        const double lk = terms[(i + 2) % 3].eigenvalue;
        terms[i].idempotent =
            (a2 - (lj + lk) * a + (lj * lk) * one) * (1.0 / ((li - lj) * (li - lk)));
      }
      break;
    }
  }
  return terms;
}

AlbertElement quadratic_map(const AlbertElement& e, const AlbertElement& f) {
  return 2.0 * jordan_mul(e, jordan_mul(e, f)) - jordan_mul(jordan_mul(e, e), f);
}

// --- Events and states ------------------------------------------------------

JordanIdempotent::JordanIdempotent(const AlbertElement& e) : e_(e) {
  const double defect = (jordan_mul(e, e) - e).sup_norm();
  if (defect > kIdempotentTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "element is not idempotent (defect " + std::to_string(defect) + ")");
  }
}

int JordanIdempotent::rank() const { return static_cast<int>(std::lround(e_.trace())); }

JordanState::JordanState(const AlbertElement& rho) : rho_(rho) {
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "state trace is " + std::to_string(tr) + ", expected 1");
  }
  const auto roots = cubic_roots(char_poly(rho));
  if (roots[2] < -kPositivityTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "state is not positive (min eigenvalue " + std::to_string(roots[2]) + ")");
  }
}

namespace {

double clamp_probability(double p, double tolerance, const char* what) {
  if (p < -tolerance || p > 1.0 + tolerance || !std::isfinite(p)) {
    throw Error(ErrorCode::kNumeric,
                std::string(what) + " outside [0, 1]: " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

bool Theory::are_orthogonal(const Event& a, const Event& b) const {
  return jordan_mul(a.element(), b.element()).sup_norm() <= kOrthogonalTolerance;
}

JordanIdempotent Theory::sum(std::span<const Event> events) const {
  require_pairwise_orthogonal(*this, events);
  AlbertElement total;
  for (const auto& e : events) total += e.element();
  return JordanIdempotent(total);
}

double Theory::probability(const State& rho, const Event& e) const {
  return clamp_probability(rho.evaluate(e.element()), kDefaultTolerance, "probability");
}

double Theory::conditional(const State& rho, const Event& f, const Event& e) const {
  const double pe = probability(rho, e);
  if (pe <= kDefaultTolerance) {
    throw Error(ErrorCode::kConditioning,
                "albert: conditioning on an idempotent of probability " + std::to_string(pe));
  }
  const double joint = rho.evaluate(quadratic_map(e.element(), f.element()));
  return clamp_probability(joint / pe, kIdempotentTolerance, "conditional probability");
}

std::string Theory::describe(const Event& e) const {
  std::ostringstream out;
  out << "idempotent(rank=" << e.rank() << ", diag=" << e.element().diag(0) << ','
      << e.element().diag(1) << ',' << e.element().diag(2) << ")";
  return out.str();
}

// --- Sampling and structural checks -----------------------------------------

AlbertElement random_element(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 27> c{};
  for (double& v : c) v = normal(rng);
  return AlbertElement::from_coefficients(c);
}

JordanState random_state(Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const AlbertElement b = random_element(rng);
    AlbertElement sq = jordan_mul(b, b);
    const double tr = sq.trace();
    if (tr <= kDefaultTolerance) continue;
    sq *= 1.0 / tr;
    return JordanState(sq);
  }
  throw Error(ErrorCode::kSampler, "random_state: degenerate draws");
}

std::array<JordanIdempotent, 3> random_idempotent_triple(Rng& rng) {
  constexpr double kMinGap = 1e-3;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto terms = spectral_decompose(random_element(rng));
    if (terms.size() != 3) continue;
    if (terms[0].eigenvalue - terms[1].eigenvalue < kMinGap ||
        terms[1].eigenvalue - terms[2].eigenvalue < kMinGap) {
      continue;
    }
    return {JordanIdempotent(terms[0].idempotent), JordanIdempotent(terms[1].idempotent),
            JordanIdempotent(terms[2].idempotent)};
  }
  throw Error(ErrorCode::kSampler, "random_idempotent_triple: no well-separated draw in 100 attempts");
}

Instance random_instance(Rng& rng) {
  JordanState rho = random_state(rng);
  auto triple = random_idempotent_triple(rng);
  const auto other = random_idempotent_triple(rng);
  const bool rank_two = std::bernoulli_distribution(0.5)(rng);
  JordanIdempotent f = rank_two ? JordanIdempotent(other[0].element() + other[1].element())
                                : other[0];
  return Instance{std::move(rho), std::move(f), std::move(triple)};
}

bool check_square_positive(const AlbertElement& a) {
  try {
    const auto roots = cubic_roots(char_poly(jordan_mul(a, a)));
    return roots[2] >= -1e-9;
  } catch (const Error&) {
    return false;
  }
}

double check_power_associativity(const AlbertElement& a, int max_power) {
  if (max_power < 4) {
    throw Error(ErrorCode::kInvalidArgument, "max_power must be at least 4");
  }
  // left[n] = (...((A o A) o A) ...) o A with n factors.
  std::vector<AlbertElement> left(static_cast<std::size_t>(max_power) + 1);
  left[1] = a;
  for (int n = 2; n <= max_power; ++n) left[n] = jordan_mul(left[n - 1], a);

  double worst = 0.0;
  for (int n = 2; n <= max_power; ++n) {
    for (int k = 2; k <= n / 2; ++k) {
      worst = std::max(worst, (jordan_mul(left[k], left[n - k]) - left[n]).sup_norm());
    }
  }
  return worst;
}

}  // namespace sorkin::albert
