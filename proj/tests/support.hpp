#pragma once

// Shared helpers for the test suites: independent reference implementations
// kept deliberately separate from the library code paths they check.

#include <cmath>
#include <vector>

#include "effcond/geometry.hpp"

namespace testsupport {

using effcond::Vec3;

// brute-force minimum image over the 27 nearest lattice translates
inline Vec3 min_image_brute(const Vec3& a, const Vec3& b) {
  Vec3 best = a - b;
  double best2 = best.norm2();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        const Vec3 cand{a.x - b.x + i, a.y - b.y + j, a.z - b.z + k};
        if (cand.norm2() < best2) {
          best = cand;
          best2 = cand.norm2();
        }
      }
  return best;
}

// dipole kernel factors of the finite-cluster gradient formulas
inline double quad11(const Vec3& y) {
  const double r2 = y.norm2();
  return (2 * y.x * y.x - y.y * y.y - y.z * y.z) / (r2 * r2 * std::sqrt(r2));
}
inline double pair12(const Vec3& y) {
  const double r2 = y.norm2();
  return 3.0 * y.x * y.y / (r2 * r2 * std::sqrt(r2));
}
inline double pair13(const Vec3& y) {
  const double r2 = y.norm2();
  return 3.0 * y.x * y.z / (r2 * r2 * std::sqrt(r2));
}

// Independent coding of the cluster gradient d u_k / d x_1 at a_k through
// O(r0^6): 1 + r0^3 sum_m Q11(y_km)
//            + r0^6 sum_{m,s} [Q11(y_km) Q11(y_ms) + P12 P12 + P13 P13],
// with y_km = a_k - a_m, m != k, s != m.
inline double gradient_direct_x1(const std::vector<Vec3>& centers, double r0, int k) {
  const int n = static_cast<int>(centers.size());
  double acc = 1.0;
  const double r3 = r0 * r0 * r0;
  for (int m = 0; m < n; ++m) {
    if (m == k) continue;
    const Vec3 ykm = centers[k] - centers[m];
    acc += r3 * quad11(ykm);
    for (int s = 0; s < n; ++s) {
      if (s == m) continue;
      const Vec3 yms = centers[m] - centers[s];
      acc += r3 * r3 *
             (quad11(ykm) * quad11(yms) + pair12(ykm) * pair12(yms) + pair13(ykm) * pair13(yms));
    }
  }
  return acc;
}

// deterministic pseudo-random doubles for test configurations
inline double unit_rand(std::uint64_t seed, std::uint64_t k) {
  return effcond::counter_uniform(seed, k);
}

// cyclic-permutation signed orbit of a base point: 24 centers generating a
// macroscopically isotropic structure
inline std::vector<Vec3> cyclic_orbit24(const Vec3& a) {
  std::vector<Vec3> pts;
  const Vec3 bases[3] = {{a.x, a.y, a.z}, {a.y, a.z, a.x}, {a.z, a.x, a.y}};
  for (const Vec3& b : bases)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) pts.push_back({s1 * b.x, s2 * b.y, s3 * b.z});
  return pts;
}

}  // namespace testsupport
