#pragma once

#include <vector>

#include "effcond/geometry.hpp"
#include "effcond/lattice_sums.hpp"

namespace effcond {

// One monomial x1^e1 x2^e2 x3^e3 of a homogeneous expansion block.
struct PolyTerm {
  int e1, e2, e3;
  long long coeff;
};

// Integer-coefficient homogeneous blocks of the E11 / E12 expansions,
// degree in {2, 4, 6, 8}. Exposed so the three-fold cancellation can be
// verified coefficient-wise.
const std::vector<PolyTerm>& e11_block(int degree);
const std::vector<PolyTerm>& e12_block(int degree);

// Triply periodic dipole kernels E_pq on the unit cubic lattice, evaluated
// through the truncated polynomial expansions with Coulombic lattice-sum
// coefficients. Arguments are expected to be minimum-image reduced; the
// expansion is about x = 0 and degrades toward the cell corners.
class EisensteinEvaluator {
 public:
  // d_max is the highest retained polynomial degree (2, 4, 6 or 8).
  EisensteinEvaluator(const LatticeSumTable& table, int d_max = 8);

  // E_pq(x) for p, q in {1,2,3}; x must be nonzero (SingularInput otherwise).
  // Off-center kernels use the E12 template, diagonal ones the E11 template,
  // with coordinates permuted into the (1,2) slot pattern.
  double evaluate(int p, int q, const Vec3& x) const;

  double E11(const Vec3& x) const { return evaluate(1, 1, x); }
  double E12(const Vec3& x) const { return evaluate(1, 2, x); }
  double E13(const Vec3& x) const { return evaluate(1, 3, x); }

  // Value assigned at x = 0: 4pi/3 on the diagonal, 0 otherwise.
  static double at_zero(int p, int q);

  const LatticeSumTable& table() const { return table_; }
  int d_max() const { return d_max_; }

 private:
  double eval_e11_template(double x1, double x2, double x3) const;
  double eval_e12_template(double x1, double x2, double x3) const;

  LatticeSumTable table_;
  int d_max_;
  double w11_[4];  // block weights 6 L4, 15 L6, 28 L8, 9 L10
  double w12_[4];  // block weights -12 L4, -60 L6, -56 L8, -72 L10
};

// Direct Eisenstein-order evaluation of the conditionally convergent series:
// the inner sum runs along R1 (completed with its exact integral tail), the
// outer sums over R2, R3 are truncated at M. Independent of the expansions
// above; used as their oracle. Requires x inside the open cell, x != 0.
double eisenstein_oracle_e11(const Vec3& x, int m);
double eisenstein_oracle_e12(const Vec3& x, int m);

}  // namespace effcond
