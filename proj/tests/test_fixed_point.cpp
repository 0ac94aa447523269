#include <doctest.h>

#include <cmath>

#include "effcond/fixed_point.hpp"
#include "effcond/symbolic_engine.hpp"
#include "support.hpp"

using namespace effcond;

TEST_CASE("sphere inversion maps the exterior into the ball") {
  const Vec3 a{0.5, -0.2, 0.1};
  const Vec3 x{2.0, 1.0, -0.5};
  const double r0 = 0.3;
  const Vec3 img = sphere_inversion(x, a, r0);
  CHECK((img - a).norm() == doctest::Approx(r0 * r0 / (x - a).norm()).epsilon(1e-14));
}

TEST_CASE("an isolated sphere has the unperturbed solution") {
  const std::vector<Vec3> centers = {{0.3, -0.1, 0.7}};
  const FixedPointResult r = fixed_point_oracle(centers, 0.2, 1);
  CHECK(r.c[0] == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(r.grad[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.grad[0][1]) < 1e-12);
  CHECK(std::abs(r.grad[0][2]) < 1e-12);
  CHECK(r.residual < 1e-12);
}

TEST_CASE("contraction precondition is enforced") {
  const std::vector<Vec3> centers = {{0, 0, 0}, {1.0, 0, 0}};
  CHECK_THROWS_AS(fixed_point_oracle(centers, 0.2, 1), DomainError);
  CHECK_THROWS_AS(fixed_point_oracle(std::vector<Vec3>(12, Vec3{}), 0.01, 1), DomainError);
}

TEST_CASE("two-sphere constants follow the corrected expansion") {
  const std::vector<Vec3> centers = {{0, 0, 0}, {2.0, 0, 0}};
  const symb::SymExpr z3 = symb::constants_elimination(symb::FunctionalSystem{1}, 3);
  double prev_ratio = 0;
  for (double r0 : {0.16, 0.08, 0.04}) {
    const FixedPointResult oracle = fixed_point_oracle(centers, r0, 1);
    double worst = 0;
    for (int k = 0; k < 2; ++k) {
      symb::EvalContext ctx{centers, r0, k, centers[static_cast<std::size_t>(k)]};
      const double c_sym =
          centers[static_cast<std::size_t>(k)].x - symb::numeric_eval(z3, ctx);
      worst = std::max(worst, std::abs(c_sym - oracle.c[static_cast<std::size_t>(k)]));
    }
    const double ratio = worst / std::pow(r0, 4);
    if (prev_ratio > 0) CHECK(ratio <= prev_ratio * 1.05);  // bounded as r0 -> 0
    prev_ratio = ratio;
  }
}

TEST_CASE("oracle gradients approach the direct cluster formula") {
  const std::vector<Vec3> centers = {{0, 0, 0}, {2.2, 0.5, -0.3}, {-0.6, 2.1, 0.9}};
  double prev = 0;
  for (double r0 : {0.16, 0.08}) {
    const FixedPointResult oracle = fixed_point_oracle(centers, r0, 1);
    double worst = 0;
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, std::abs(oracle.grad[static_cast<std::size_t>(k)][0] -
                                       testsupport::gradient_direct_x1(centers, r0, k)));
    if (prev > 0) {
      // the mismatch shrinks by at least the seventh power under halving
      CHECK(std::log2(prev / worst) >= 6.7);
    }
    prev = worst;
  }
}

TEST_CASE("truncated solutions satisfy the equations to their built order") {
  const std::vector<Vec3> centers = {{0, 0, 0}, {2.1, 0.3, -0.2}, {-0.4, 2.2, 0.5}};
  for (int q : {3, 6}) {
    const symb::SymExpr uq = symb::procedure_u(q, 1);
    double prev = 0;
    for (double r0 : {0.16, 0.08}) {
      auto u_eval = [&](int k, const Vec3& x) {
        symb::EvalContext ctx{centers, r0, k, x};
        return symb::numeric_eval(uq, ctx);
      };
      const double defect = functional_equation_defect(centers, r0, 1, u_eval);
      if (prev > 0) CHECK(std::log2(prev / defect) >= q + 1 - 0.3);
      prev = defect;
    }
  }
}

TEST_CASE("oracle defect decreases with the multipole resolution limit") {
  const std::vector<Vec3> centers = {{0, 0, 0}, {2.1, 0.3, -0.2}, {-0.4, 2.2, 0.5}};
  const FixedPointResult coarse = fixed_point_oracle(centers, 0.16, 1);
  const FixedPointResult fine = fixed_point_oracle(centers, 0.08, 1);
  CHECK(fine.residual < coarse.residual);
}
