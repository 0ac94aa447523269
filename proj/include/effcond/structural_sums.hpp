#pragma once

#include <map>
#include <utility>

#include "effcond/eisenstein.hpp"
#include "effcond/geometry.hpp"

namespace effcond {

// Key for a convolution sum e_{ij*pl}: two kernel index pairs, each encoded
// as 10*p + q.
using ConvKey = std::pair<int, int>;

struct StructuralSums {
  double e11{0}, e12{0}, e13{0};
  double e11_star{0}, e11_dstar{0};
  std::map<ConvKey, double> conv;
  std::size_t n{0};
};

// e_pq = (1/N^2) sum_{k,m} E_pq(a_k - a_m) with minimum-image reduced
// differences; the k = m diagonal contributes E_pq(0) by convention.
double pair_sum(const SphereConfiguration& config, const EisensteinEvaluator& ev, int p, int q);

// e11 evaluated on the configuration with coordinates 1,2 interchanged
// (e11_star) and 1,3 interchanged (e11_dstar).
std::pair<double, double> starred_sums(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev);

// e_{ij*pl} = (1/N^3) sum_{k,m,s} E_ij(a_k - a_m) E_pl(a_m - a_s), computed
// by factorizing over the middle index in O(N^2) kernel calls. Agrees with
// the naive triple loop exactly in exact arithmetic.
double convolution_sum(const SphereConfiguration& config, const EisensteinEvaluator& ev, int ij,
                       int pl);

// All sums consumed by the tensor formulas: e11/e12/e13, the starred pair,
// and the nine convolutions {11*11, 12*12, 13*13, 12*11, 12*22, 23*13,
// 13*11, 13*33, 23*12}. Row sums are shared across convolutions.
StructuralSums compute_structural_sums(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev);

}  // namespace effcond
