#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "effcond/eisenstein.hpp"
#include "support.hpp"

using namespace effcond;

namespace {

LatticeSumTable test_table() {
  static const LatticeSumTable t = coulombic_table(60);
  return t;
}

// expand P(x1,x2,x3) + P(x2,x1,x3) + P(x3,x2,x1) symbolically over monomials
std::map<std::array<int, 3>, long long> three_fold_sum(const std::vector<PolyTerm>& block) {
  std::map<std::array<int, 3>, long long> acc;
  for (const PolyTerm& t : block) {
    acc[{t.e1, t.e2, t.e3}] += t.coeff;  // identity
    acc[{t.e2, t.e1, t.e3}] += t.coeff;  // first slot takes x2
    acc[{t.e3, t.e2, t.e1}] += t.coeff;  // first slot takes x3
  }
  return acc;
}

}  // namespace

TEST_CASE("three-fold cancellation holds coefficient-wise for every block") {
  for (int degree : {2, 4, 6, 8}) {
    const auto acc = three_fold_sum(e11_block(degree));
    for (const auto& [mono, coeff] : acc) {
      INFO("degree ", degree, " monomial ", mono[0], " ", mono[1], " ", mono[2]);
      CHECK(coeff == 0);
    }
  }
}

TEST_CASE("three-fold sum of evaluations reduces to the singular parts") {
  // the polynomial blocks cancel across the coordinate-role rotation, so the
  // evaluated identity leaves 4pi plus the three singular ratios
  const EisensteinEvaluator ev(test_table());
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Vec3 x{0.8 * (testsupport::unit_rand(71, 3 * t) - 0.5),
                 0.8 * (testsupport::unit_rand(71, 3 * t + 1) - 0.5),
                 0.8 * (testsupport::unit_rand(71, 3 * t + 2) - 0.5)};
    if (x.norm2() < 1e-3) continue;
    const double lhs = ev.E11(x) + ev.E11({x.y, x.x, x.z}) + ev.E11({x.z, x.y, x.x});
    const double r2 = x.norm2();
    const double r5 = r2 * r2 * std::sqrt(r2);
    const double singular = ((2 * x.x * x.x - x.y * x.y - x.z * x.z) +
                             (2 * x.y * x.y - x.x * x.x - x.z * x.z) +
                             (2 * x.z * x.z - x.y * x.y - x.x * x.x)) /
                            r5;
    CHECK(lhs - 4 * std::numbers::pi == doctest::Approx(singular).epsilon(1e-10));
    CHECK(std::abs(singular) < 1e-10);  // the singular parts are traceless too
  }
}

TEST_CASE("diagonal template is even and symmetric in the trailing slots") {
  const EisensteinEvaluator ev(test_table());
  const Vec3 x{0.21, -0.13, 0.07};
  CHECK(ev.E11(x) == doctest::Approx(ev.E11(-x)).epsilon(1e-14));
  CHECK(ev.E11({x.x, x.z, x.y}) == doctest::Approx(ev.E11(x)).epsilon(1e-14));
}

TEST_CASE("E12 equals E21 at random points") {
  const EisensteinEvaluator ev(test_table());
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Vec3 x{0.8 * (testsupport::unit_rand(31, 3 * t) - 0.5),
                 0.8 * (testsupport::unit_rand(31, 3 * t + 1) - 0.5),
                 0.8 * (testsupport::unit_rand(31, 3 * t + 2) - 0.5)};
    if (x.norm2() == 0) continue;
    CHECK(ev.evaluate(1, 2, x) == doctest::Approx(ev.evaluate(2, 1, x)).epsilon(1e-12));
    CHECK(ev.evaluate(1, 3, x) == doctest::Approx(ev.evaluate(3, 1, x)).epsilon(1e-12));
    CHECK(ev.evaluate(2, 3, x) == doctest::Approx(ev.evaluate(3, 2, x)).epsilon(1e-12));
  }
}

TEST_CASE("E12 vanishes when a named coordinate is zero") {
  const EisensteinEvaluator ev(test_table());
  CHECK(ev.E12({0.2, 0, 0.3}) == 0.0);
  CHECK(ev.E12({0, 0.2, 0.3}) == 0.0);
}

TEST_CASE("E12 sign symmetry under single-axis mirrors") {
  const EisensteinEvaluator ev(test_table());
  const Vec3 x{0.17, 0.23, -0.11};
  CHECK(ev.E12({-x.x, x.y, x.z}) == doctest::Approx(-ev.E12(x)).epsilon(1e-14));
  CHECK(ev.E12({x.x, -x.y, x.z}) == doctest::Approx(-ev.E12(x)).epsilon(1e-14));
  CHECK(ev.E12(-x) == doctest::Approx(ev.E12(x)).epsilon(1e-14));
  CHECK(ev.E11({-x.x, x.y, x.z}) == doctest::Approx(ev.E11(x)).epsilon(1e-14));
}

TEST_CASE("singular input is rejected") {
  const EisensteinEvaluator ev(test_table());
  CHECK_THROWS_AS(ev.E11({0, 0, 0}), SingularInput);
  CHECK_THROWS_AS(eisenstein_oracle_e11({0, 0, 0}, 20), SingularInput);
}

TEST_CASE("at-zero conventions") {
  CHECK(EisensteinEvaluator::at_zero(1, 1) == doctest::Approx(4 * std::numbers::pi / 3));
  CHECK(EisensteinEvaluator::at_zero(2, 2) == doctest::Approx(4 * std::numbers::pi / 3));
  CHECK(EisensteinEvaluator::at_zero(1, 2) == 0.0);
  CHECK(EisensteinEvaluator::at_zero(2, 3) == 0.0);
}

TEST_CASE("oracle self-convergence in the outer truncation") {
  for (const Vec3& x : {Vec3{0.3, 0, 0}, Vec3{0.2, 0.2, 0.1}, Vec3{0.15, -0.35, 0.22}}) {
    const double a = eisenstein_oracle_e11(x, 20);
    const double b = eisenstein_oracle_e11(x, 40);
    CHECK(std::abs(a - b) < 1e-3);
    const double c = eisenstein_oracle_e12(x, 20);
    const double d = eisenstein_oracle_e12(x, 40);
    CHECK(std::abs(c - d) < 1e-3);
  }
}

TEST_CASE("truncated diagonal kernel matches the oracle on axis") {
  const EisensteinEvaluator ev(test_table());
  const Vec3 x{0.3, 0, 0};
  const double oracle = eisenstein_oracle_e11(x, 60);
  CHECK(std::abs(ev.E11(x) - oracle) / std::abs(oracle) < 1e-3);
}

TEST_CASE("truncated off-diagonal kernel matches the oracle") {
  const EisensteinEvaluator ev(test_table());
  const Vec3 x{0.2, 0.2, 0.1};
  const double oracle = eisenstein_oracle_e12(x, 60);
  CHECK(std::abs(ev.E12(x) - oracle) / std::abs(oracle) < 1e-3);
}

TEST_CASE("oracle symmetry matches the template permutation") {
  // E21 realized on permuted coordinates equals the x1-ordered oracle of E12
  const Vec3 x{0.24, 0.31, -0.12};
  const double direct = eisenstein_oracle_e12(x, 30);
  const double transposed = eisenstein_oracle_e12({x.y, x.x, x.z}, 30);
  CHECK(direct == doctest::Approx(transposed).epsilon(2e-3));
}

TEST_CASE("truncation degree controls the retained blocks") {
  const LatticeSumTable t = test_table();
  const Vec3 x{0.2, 0.1, -0.15};
  const EisensteinEvaluator e2(t, 2);
  const EisensteinEvaluator e8(t, 8);
  CHECK(e2.E11(x) != e8.E11(x));
  CHECK_THROWS_AS(EisensteinEvaluator(t, 5), DomainError);
  // degree-2 evaluator = singular part + constant + first block only
  const double r2 = x.norm2();
  const double expect = 4 * std::numbers::pi / 3 +
                        (2 * x.x * x.x - x.y * x.y - x.z * x.z) / (r2 * r2 * std::sqrt(r2)) +
                        6 * t.L4 * (2 * x.x * x.x - (x.y * x.y + x.z * x.z));
  CHECK(e2.E11(x) == doctest::Approx(expect).epsilon(1e-14));
}
