#pragma once

#include <array>
#include <functional>
#include <vector>

#include "effcond/geometry.hpp"

namespace effcond {

// Numeric solver for the functional-equation system on a finite cluster:
//   u_k(x) = x_j - c_k - sum_{m != k} (r0/|x - a_m|) u_m(s(x, a_m)),
// with u_k(a_k) = 0 fixing the constants. Each u_k is represented by
// degree <= 3 solid harmonics about its center; the system is iterated to a
// fixed point (Picard sweeps). Independent of the symbolic pipeline.

struct FixedPointOptions {
  double tolerance = 1e-13;
  int max_sweeps = 200;
};

struct FixedPointResult {
  std::vector<double> c;                      // boundary constants
  std::vector<std::array<double, 3>> grad;    // grad u_k at a_k
  std::vector<std::array<double, 15>> coeffs;  // harmonic coefficients per sphere
  int sweeps = 0;
  double residual = 0;  // constancy defect of the converged solution
};

// Throws DomainError unless r0 <= 0.1 * min pairwise distance and the
// cluster has at most 10 spheres; NoConvergence if sweeps do not settle.
FixedPointResult fixed_point_oracle(const std::vector<Vec3>& centers, double r0, int axis,
                                    const FixedPointOptions& opts = {});

// Equation defect of an arbitrary candidate solution: with
//   F_k(x) = u(k, x) + sum_{m != k} (r0/|x - a_m|) u(m, s(x, a_m)) - x_j,
// the system holds iff F_k is constant on each sphere, so the defect is
// max_k max over surface probes |F_k(x) - F_k(a_k)|. Used to measure the
// residual order of truncated symbolic solutions.
double functional_equation_defect(const std::vector<Vec3>& centers, double r0, int axis,
                                  const std::function<double(int, const Vec3&)>& u);

// Sphere inversion s(x, a) = a + r0^2 (x - a)/|x - a|^2.
Vec3 sphere_inversion(const Vec3& x, const Vec3& a, double r0);

}  // namespace effcond
