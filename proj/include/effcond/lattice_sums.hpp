#pragma once

#include "effcond/errors.hpp"

namespace effcond {

// Coulombic combinations of the raw cubic-lattice sums. At R_max = 250 the
// four values are accurate to at least five significant digits.
struct LatticeSumTable {
  double L4{0}, L6{0}, L8{0}, L10{0};
  int r_max{0};
};

// Absolutely convergent cubic-lattice sum
//   sum over R in Z^3, R != 0, max|R_i| <= r_max of R1^i1 R2^i2 R3^i3 / |R|^l.
// Returns exactly 0 when any exponent is odd (the summation domain is
// symmetric in each coordinate). Throws DivergenceGuard if l - (i1+i2+i3) < 4.
double raw_lattice_sum(int l, int i1, int i2, int i3, int r_max);

// L4..L10 assembled from the two- to five-term reductions of the raw sums.
LatticeSumTable coulombic_table(int r_max);

}  // namespace effcond
