#include "sorkin/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sorkin::quantum {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < kMinDimension || m.rows() > kMaxDimension) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " must be square with dimension in [2, 16]");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m, const char* what) {
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > kHermitianTolerance) {
    throw Error(ErrorCode::kContractViolation,
                std::string(what) + " is not Hermitian (skew " + std::to_string(skew) + ")");
  }
  return (m + m.adjoint()) / 2.0;
}

// trace(A B) without forming the product.
std::complex<double> trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

double clamp_probability(double p, const char* what) {
  if (p < -kDefaultTolerance || p > 1.0 + kDefaultTolerance || !std::isfinite(p)) {
    throw Error(ErrorCode::kNumeric,
                std::string(what) + " outside [0, 1]: " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

ComplexMatrix complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order keeps the stream layout independent of Eigen internals.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

}  // namespace

// --- Projection -------------------------------------------------------------

Projection::Projection(const ComplexMatrix& m) {
  require_square(m, "projection");
  p_ = hermitian_part(m, "projection");
  const double defect = (p_ * p_ - p_).cwiseAbs().maxCoeff();
  if (defect > kIdempotentTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "matrix is not idempotent (defect " + std::to_string(defect) + ")");
  }
}

Projection Projection::zero(int d) {
  require_square(ComplexMatrix::Zero(d, d), "projection");
  return Projection(ComplexMatrix::Zero(d, d), Unchecked{});
}

Projection Projection::identity(int d) {
  require_square(ComplexMatrix::Zero(d, d), "projection");
  return Projection(ComplexMatrix::Identity(d, d), Unchecked{});
}

Projection Projection::onto(const ComplexMatrix& basis) {
  return Projection(basis * basis.adjoint());
}

int Projection::rank() const {
  return static_cast<int>(std::lround(p_.trace().real()));
}

// --- Density ----------------------------------------------------------------

Density::Density(const ComplexMatrix& m) {
  require_square(m, "density");
  rho_ = hermitian_part(m, "density");
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "density trace is " + std::to_string(trace) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPositivityTolerance) {
    throw Error(ErrorCode::kContractViolation,
                "density is not positive (min eigenvalue " + std::to_string(min_eig) + ")");
  }
}

Density Density::maximally_mixed(int d) {
  return Density(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

Density Density::pure(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd unit = psi.normalized();
  return Density(unit * unit.adjoint());
}

// --- Theory -----------------------------------------------------------------

Theory::Theory(int dimension) : d_(dimension) {
  if (d_ < kMinDimension || d_ > kMaxDimension) {
    throw Error(ErrorCode::kInvalidArgument, "quantum dimension must be in [2, 16]");
  }
}

bool Theory::are_orthogonal(const Event& a, const Event& b) const {
  return (a.matrix() * b.matrix()).norm() <= kOrthogonalTolerance;
}

Projection Theory::sum(std::span<const Event> events) const {
  require_pairwise_orthogonal(*this, events);
  ComplexMatrix total = ComplexMatrix::Zero(d_, d_);
  for (const auto& e : events) total += e.matrix();
  return Projection(total);
}

void Theory::check_state(const State& rho) const {
  if (!is_valid_state(rho)) {
    throw Error(ErrorCode::kDimensionMismatch, "density dimension does not match theory");
  }
}

double Theory::probability(const State& rho, const Event& p) const {
  check_state(rho);
  require_valid(*this, p);
  return clamp_probability(trace_of_product(rho.matrix(), p.matrix()).real(), "probability");
}

double Theory::conditional(const State& rho, const Event& f, const Event& e) const {
  require_valid(*this, f);
  const double pe = probability(rho, e);
  if (pe <= kDefaultTolerance) {
    throw Error(ErrorCode::kConditioning,
                "quantum: conditioning on a projection of probability " + std::to_string(pe));
  }
  const ComplexMatrix updated = e.matrix() * rho.matrix() * e.matrix();
  const double joint = trace_of_product(updated, f.matrix()).real();
  return clamp_probability(joint / pe, "conditional probability");
}

std::string Theory::describe(const Event& e) const {
  std::ostringstream out;
  out << "projection(dim=" << e.dimension() << ", rank=" << e.rank() << ")";
  return out.str();
}

// --- Sampling ---------------------------------------------------------------

Density random_density(int d, int rank, Rng& rng) {
  if (d < kMinDimension || d > kMaxDimension) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be in [2, 16]");
  }
  if (rank < 1 || rank > d) {
    throw Error(ErrorCode::kInvalidArgument, "density rank must be in [1, d]");
  }
  const ComplexMatrix g = complex_gaussian(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return Density(rho);
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  const ComplexMatrix z = complex_gaussian(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

std::vector<Projection> random_orthogonal_projections(int d, std::span<const int> ranks,
                                                      Rng& rng) {
  if (d < kMinDimension || d > kMaxDimension) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be in [2, 16]");
  }
  int total = 0;
  for (int r : ranks) {
    if (r < 0) throw Error(ErrorCode::kInvalidArgument, "ranks must be nonnegative");
    total += r;
  }
  if (total > d) {
    throw Error(ErrorCode::kInvalidArgument, "ranks sum to " + std::to_string(total) +
                                                 " which exceeds dimension " + std::to_string(d));
  }
  const ComplexMatrix u = haar_unitary(d, rng);
  std::vector<Projection> out;
  out.reserve(ranks.size());
  int col = 0;
  for (int r : ranks) {
    if (r == 0) {
      out.push_back(Projection::zero(d));
    } else {
      out.push_back(Projection::onto(u.middleCols(col, r)));
    }
    col += r;
  }
  return out;
}

Instance random_instance(const SamplerOptions& options, Rng& rng) {
  const int d = options.dimension;
  if (d < 3 || d > kMaxDimension) {
    throw Error(ErrorCode::kInvalidArgument, "sampler dimension must be in [3, 16]");
  }
  int rho_rank = options.density_rank;
  if (rho_rank == 0) rho_rank = std::uniform_int_distribution<int>(1, d)(rng);
  Density rho = random_density(d, rho_rank, rng);

  std::array<int, 3> ranks{1, 1, 1};
  int f_rank = 1;
  if (!options.rank_one_events) {
    // Random composition of a total in [3, d] into three positive parts.
    const int total = std::uniform_int_distribution<int>(3, d)(rng);
    std::uniform_int_distribution<int> cut(1, total - 1);
    int a = cut(rng), b = cut(rng);
    while (b == a) b = cut(rng);
    if (a > b) std::swap(a, b);
    ranks = {a, b - a, total - b};
    f_rank = std::uniform_int_distribution<int>(1, d - 1)(rng);
  }
  auto triple = random_orthogonal_projections(d, ranks, rng);
  const std::array<int, 1> fr{f_rank};
  auto f = random_orthogonal_projections(d, fr, rng);
  return Instance{std::move(rho), std::move(f[0]),
                  {std::move(triple[0]), std::move(triple[1]), std::move(triple[2])}};
}

}  // namespace sorkin::quantum
