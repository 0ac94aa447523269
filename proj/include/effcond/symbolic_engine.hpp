#pragma once

#include "effcond/symbolic.hpp"

namespace effcond::symb {

// The concrete functional system solved here: for each sphere k,
//   u_k(x) = x_j - c_k - sum_{m != k} (r0 / |x - a_m|) u_m(x*_{(m)}),
// where x*_{(m)} = a_m + r0^2 (x - a_m)/|x - a_m|^2 is the sphere inversion.
// This is one instance of the generalized shape
//   u_k = c + f(x) + sum_m g(x, a_m) (u_m o s)(x, a_m).
struct FunctionalSystem {
  int axis{1};  // j: direction of the external flux

  SymExpr driving_term() const;            // x_j
  SymExpr kernel(int index_label) const;   // r0 |x - a_m|^-1
  SymExpr constant_term(int order) const;  // -c_order
};

// Substitutes x -> s(x, a_new) into `body`, expanding every |x - a|-type
// factor as a power series in r0 about 0 and truncating above max_deg.
// Throws SeriesFailure if a norm base has no r0-free part.
SymExpr compose_with_inversion(const SymExpr& body, int new_index, int max_deg);

// u_q built by the recurrence u_0 = x_j - c_0,
// u_q = x_j - c_q - sum_{a_{q-1}}( kernel * (u_{q-1} o s) ), with series
// truncation at order q applied throughout. The result is a sum of
// non-nested indefinite sums plus x_j - c_q.
SymExpr successive_approximation(const FunctionalSystem& sys, int q);

// Replaces the free point x by the anchor center a_q.
SymExpr evaluate_at_anchor(const SymExpr& e, int q);

// The z-free expansion of z_q = a_{q j} - c_q to O(r0^{q+1}), obtained by
// solving u_q(a_q) = 0 and iterating the index-shifted substitutions
// z_m -> (solution relabeled to anchor m) until no z symbol remains.
SymExpr constants_elimination(const FunctionalSystem& sys, int q);

// Full analytic approximation of u_k(x) to O(r0^{q+1}) with all boundary
// constants eliminated. Supported for 1 <= q <= 6.
SymExpr procedure_u(int q, int axis);

}  // namespace effcond::symb
