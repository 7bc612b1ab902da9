#include "sorkin/octonion.hpp"

#include <algorithm>
#include <cmath>

namespace sorkin {

double Octonion::norm() const { return std::sqrt(norm2()); }

double Octonion::sup_norm() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z,
                    const OctonionTable& table) {
  return multiply(multiply(x, y, table), z, table) - multiply(x, multiply(y, z, table), table);
}

std::string octonion_table_csv(const OctonionTable& table) {
  std::string out = "i,j,k,sign\n";
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const auto& p = table.entry[i][j];
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + std::to_string(p.index) + ',' +
             (p.sign > 0 ? "1" : "-1") + '\n';
    }
  }
  return out;
}

}  // namespace sorkin
