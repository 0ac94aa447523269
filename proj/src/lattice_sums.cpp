#include "effcond/lattice_sums.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "effcond/parallel.hpp"

namespace effcond {

namespace {

struct Kahan {
  double sum{0}, c{0};
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Accumulates several (l, i1, i2, i3) sums in one sweep over the octant
// R1,R2,R3 >= 0 with weight 2^(#nonzero components). All exponents here are
// even, so the octant reduction is exact. The work is split into per-r1
// slices combined in slice order, so the result is bitwise independent of
// the thread count.
std::vector<double> octant_sums(const std::vector<std::array<int, 4>>& specs, int r_max) {
  std::vector<std::vector<double>> slices(static_cast<std::size_t>(r_max) + 1);
  parallel_for(slices.size(), [&](std::size_t slice) {
    const int r1 = static_cast<int>(slice);
    const double R1 = r1;
    std::vector<Kahan> acc(specs.size());
    for (int r2 = 0; r2 <= r_max; ++r2) {
      const double R2 = r2;
      for (int r3 = 0; r3 <= r_max; ++r3) {
        if (r1 == 0 && r2 == 0 && r3 == 0) continue;
        const double R3 = r3;
        const double r2sum = R1 * R1 + R2 * R2 + R3 * R3;
        const double u = 1.0 / r2sum;
        const double s = std::sqrt(u);
        const double w = static_cast<double>(1 << ((r1 > 0) + (r2 > 0) + (r3 > 0)));
        for (std::size_t i = 0; i < specs.size(); ++i) {
          const auto& [l, i1, i2, i3] = specs[i];
          // |R|^-l for odd l as u^((l-1)/2) * sqrt(u)
          double term = w * s;
          for (int k = 0; k < (l - 1) / 2; ++k) term *= u;
          for (int k = 0; k < i1; ++k) term *= R1;
          for (int k = 0; k < i2; ++k) term *= R2;
          for (int k = 0; k < i3; ++k) term *= R3;
          acc[i].add(term);
        }
      }
    }
    slices[slice].resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) slices[slice][i] = acc[i].sum;
  });

  std::vector<Kahan> total(specs.size());
  for (const std::vector<double>& slice : slices)
    for (std::size_t i = 0; i < specs.size(); ++i) total[i].add(slice[i]);
  std::vector<double> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) out[i] = total[i].sum;
  return out;
}

}  // namespace

double raw_lattice_sum(int l, int i1, int i2, int i3, int r_max) {
  if (i1 < 0 || i2 < 0 || i3 < 0) throw DomainError("raw_lattice_sum: negative exponent");
  if (r_max < 1) throw DomainError("raw_lattice_sum: r_max must be >= 1");
  if (l - (i1 + i2 + i3) < 4)
    throw DivergenceGuard("raw_lattice_sum: l - (i1+i2+i3) < 4 is not absolutely convergent");
  if ((i1 | i2 | i3) & 1) return 0.0;
  return octant_sums({{l, i1, i2, i3}}, r_max)[0];
}

LatticeSumTable coulombic_table(int r_max) {
  if (r_max < 10) throw DomainError("coulombic_table: r_max must be >= 10");
  const std::vector<std::array<int, 4>> specs = {
      {9, 2, 2, 0},  {9, 4, 0, 0},                   // L4
      {13, 2, 2, 2}, {13, 4, 2, 0}, {13, 6, 0, 0},   // L6
      {17, 4, 4, 0}, {17, 6, 2, 0}, {17, 8, 0, 0},   // L8
      {21, 4, 4, 2}, {21, 6, 2, 2}, {21, 6, 4, 0}, {21, 8, 2, 0}, {21, 10, 0, 0}};  // L10
  const std::vector<double> e = octant_sums(specs, r_max);

  LatticeSumTable t;
  t.r_max = r_max;
  t.L4 = -7.0 / 4.0 * (3.0 * e[0] - e[1]);
  t.L6 = 3.0 / 8.0 * (30.0 * e[2] - 15.0 * e[3] + e[4]);
  t.L8 = 99.0 / 64.0 * (35.0 * e[5] - 28.0 * e[6] + e[7]);
  t.L10 = -65.0 / 128.0 * (630.0 * e[8] - 504.0 * e[9] - 42.0 * e[10] + 45.0 * e[11] - e[12]);
  return t;
}

}  // namespace effcond
