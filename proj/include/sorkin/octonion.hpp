#pragma once

// Octonions over the basis e0 = 1, e1, ..., e7.
//
// The basis convention comes from Cayley–Dickson doubling of the quaternions
// (e0..e3 = 1, i, j, k) with
//
//     (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),
//
// where the second quaternion of the pair carries e4..e7. Multiplication runs
// through a signed 8x8 basis table so that alternative tables (for mutation
// testing) can be plugged in.

#include <array>
#include <cstdint>
#include <string>

namespace sorkin {

struct BasisProduct {
  std::uint8_t index = 0;
  std::int8_t sign = 1;

  friend constexpr bool operator==(const BasisProduct&, const BasisProduct&) = default;
};

/// entry[i][j] describes e_i * e_j = sign * e_index.
struct OctonionTable {
  std::array<std::array<BasisProduct, 8>, 8> entry{};

  friend constexpr bool operator==(const OctonionTable&, const OctonionTable&) = default;
};

namespace detail {

// Recursive Cayley–Dickson product on 2^k real coefficients.
template <std::size_t N>
constexpr std::array<double, N> cd_conj(const std::array<double, N>& x) {
  std::array<double, N> out{};
  out[0] = x[0];
  for (std::size_t i = 1; i < N; ++i) out[i] = -x[i];
  return out;
}

template <std::size_t N>
constexpr std::array<double, N> cd_mul(const std::array<double, N>& x,
                                       const std::array<double, N>& y) {
  if constexpr (N == 1) {
    return {x[0] * y[0]};
  } else {
    constexpr std::size_t H = N / 2;
    std::array<double, H> a{}, b{}, c{}, d{};
    for (std::size_t i = 0; i < H; ++i) {
      a[i] = x[i];
      b[i] = x[H + i];
      c[i] = y[i];
      d[i] = y[H + i];
    }
    const auto ac = cd_mul(a, c);
    const auto dbar_b = cd_mul(cd_conj(d), b);
    const auto da = cd_mul(d, a);
    const auto b_cbar = cd_mul(b, cd_conj(c));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < H; ++i) {
      out[i] = ac[i] - dbar_b[i];
      out[H + i] = da[i] + b_cbar[i];
    }
    return out;
  }
}

}  // namespace detail

/// Generates the basis product table from the doubling formula.
constexpr OctonionTable cayley_dickson_table() {
  OctonionTable table;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      std::array<double, 8> ei{}, ej{};
      ei[i] = 1.0;
      ej[j] = 1.0;
      const auto p = detail::cd_mul(ei, ej);
      for (std::size_t k = 0; k < 8; ++k) {
        if (p[k] != 0.0) {
          table.entry[i][j] = {static_cast<std::uint8_t>(k),
                               static_cast<std::int8_t>(p[k] > 0 ? 1 : -1)};
        }
      }
    }
  }
  return table;
}

inline constexpr OctonionTable kOctonionTable = cayley_dickson_table();

/// CSV with header `i,j,k,sign`, one row per basis pair: e_i e_j = sign e_k.
std::string octonion_table_csv(const OctonionTable& table = kOctonionTable);

class Octonion {
 public:
  constexpr Octonion() = default;
  constexpr explicit Octonion(const std::array<double, 8>& c) : c_(c) {}
  constexpr explicit Octonion(double real) { c_[0] = real; }

  static constexpr Octonion basis(std::size_t i) {
    Octonion o;
    o.c_[i] = 1.0;
    return o;
  }

  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr const std::array<double, 8>& coefficients() const { return c_; }

  constexpr double real() const { return c_[0]; }
  constexpr Octonion conj() const {
    Octonion o = *this;
    for (std::size_t i = 1; i < 8; ++i) o.c_[i] = -o.c_[i];
    return o;
  }
  constexpr double norm2() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const;
  /// Largest absolute coefficient.
  double sup_norm() const;

  constexpr Octonion& operator+=(const Octonion& o) {
    for (std::size_t i = 0; i < 8; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Octonion& operator-=(const Octonion& o) {
    for (std::size_t i = 0; i < 8; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Octonion& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend constexpr Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend constexpr Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend constexpr Octonion operator-(Octonion a) { return a *= -1.0; }
  friend constexpr Octonion operator*(Octonion a, double s) { return a *= s; }
  friend constexpr Octonion operator*(double s, Octonion a) { return a *= s; }
  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

 private:
  std::array<double, 8> c_{};
};

constexpr Octonion multiply(const Octonion& x, const Octonion& y,
                            const OctonionTable& table) {
  Octonion out;
  for (std::size_t i = 0; i < 8; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < 8; ++j) {
      const BasisProduct& p = table.entry[i][j];
      out[p.index] += p.sign * (x[i] * y[j]);
    }
  }
  return out;
}

constexpr Octonion operator*(const Octonion& x, const Octonion& y) {
  return multiply(x, y, kOctonionTable);
}

/// (xy)z - x(yz); nonzero witnesses non-associativity.
Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z,
                    const OctonionTable& table = kOctonionTable);

}  // namespace sorkin
