#include "effcond/structural_sums.hpp"

#include <array>
#include <cmath>

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

// Row sums row[m] = sum_k E_pq(a_k - a_m), including the diagonal convention
// value. The kernels are even, so the same rows serve as the right-hand
// factor sum_s E_pq(a_m - a_s) of a convolution. Each row is an independent
// fixed-order accumulation, so the parallel split over m is bitwise
// reproducible for any thread count.
std::vector<double> row_sums(const SphereConfiguration& config, const EisensteinEvaluator& ev,
                             int p, int q) {
  const std::size_t n = config.size();
  std::vector<double> rows(n);
  parallel_for(n, [&](std::size_t m) {
    Kahan acc;
    acc.add(EisensteinEvaluator::at_zero(p, q));
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m) continue;
      acc.add(ev.evaluate(p, q, minimum_image(config.centers[k], config.centers[m])));
    }
    rows[m] = acc.sum;
  });
  return rows;
}

double mean_of_rows(const std::vector<double>& rows) {
  Kahan acc;
  for (double r : rows) acc.add(r);
  const double n = static_cast<double>(rows.size());
  return acc.sum / (n * n);
}

double conv_of_rows(const std::vector<double>& left, const std::vector<double>& right) {
  Kahan acc;
  for (std::size_t m = 0; m < left.size(); ++m) acc.add(left[m] * right[m]);
  const double n = static_cast<double>(left.size());
  return acc.sum / (n * n * n);
}

SphereConfiguration swap_coords(const SphereConfiguration& config, int a, int b) {
  SphereConfiguration out = config;
  for (Vec3& c : out.centers) std::swap(c[a], c[b]);
  return out;
}

}  // namespace

double pair_sum(const SphereConfiguration& config, const EisensteinEvaluator& ev, int p, int q) {
  return mean_of_rows(row_sums(config, ev, p, q));
}

std::pair<double, double> starred_sums(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev) {
  return {pair_sum(swap_coords(config, 0, 1), ev, 1, 1),
          pair_sum(swap_coords(config, 0, 2), ev, 1, 1)};
}

double convolution_sum(const SphereConfiguration& config, const EisensteinEvaluator& ev, int ij,
                       int pl) {
  const auto rows_left = row_sums(config, ev, ij / 10, ij % 10);
  const auto rows_right = row_sums(config, ev, pl / 10, pl % 10);
  return conv_of_rows(rows_left, rows_right);
}

StructuralSums compute_structural_sums(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev) {
  StructuralSums s;
  s.n = config.size();

  const auto r11 = row_sums(config, ev, 1, 1);
  const auto r12 = row_sums(config, ev, 1, 2);
  const auto r13 = row_sums(config, ev, 1, 3);
  const auto r22 = row_sums(config, ev, 2, 2);
  const auto r33 = row_sums(config, ev, 3, 3);
  const auto r23 = row_sums(config, ev, 2, 3);

  s.e11 = mean_of_rows(r11);
  s.e12 = mean_of_rows(r12);
  s.e13 = mean_of_rows(r13);
  std::tie(s.e11_star, s.e11_dstar) = starred_sums(config, ev);

  const auto rows = [&](int pq) -> const std::vector<double>& {
    switch (pq) {
      case 11: return r11;
      case 12: return r12;
      case 13: return r13;
      case 22: return r22;
      case 33: return r33;
      case 23: return r23;
    }
    throw DomainError("compute_structural_sums: unexpected kernel index");
  };
  const ConvKey needed[] = {{11, 11}, {12, 12}, {13, 13}, {12, 11}, {12, 22},
                            {23, 13}, {13, 11}, {13, 33}, {23, 12}};
  for (const ConvKey& key : needed)
    s.conv[key] = conv_of_rows(rows(key.first), rows(key.second));
  return s;
}

}  // namespace effcond
