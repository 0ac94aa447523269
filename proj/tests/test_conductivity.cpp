#include <doctest.h>

#include <cmath>
#include <numbers>

#include "effcond/conductivity.hpp"
#include "support.hpp"

using namespace effcond;

namespace {

const LatticeSumTable& test_table() {
  static const LatticeSumTable t = coulombic_table(60);
  return t;
}

StructuralSums simple_cubic_sums() {
  SphereConfiguration c;
  c.centers = {{0, 0, 0}};
  c.radius = 0.2;
  return compute_structural_sums(c, EisensteinEvaluator(test_table()));
}

}  // namespace

TEST_CASE("simple cubic lambda11 is the cubic polynomial") {
  const StructuralSums s = simple_cubic_sums();
  for (double f : {0.05, 0.1, 0.2, 0.3}) {
    const double expect = 1 + 3 * f + 3 * f * f + 3 * f * f * f;
    CHECK(lambda11(s, f) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(lambda11(s, 1e-9) == doctest::Approx(1.0));
}

TEST_CASE("simple cubic off-diagonal components vanish") {
  const StructuralSums s = simple_cubic_sums();
  CHECK(lambda12(s, 0.2) == 0.0);
  CHECK(lambda13(s, 0.2) == 0.0);
}

TEST_CASE("simple cubic agreement with the rational approximant is O(f^4)") {
  const StructuralSums s = simple_cubic_sums();
  for (double f : {0.01, 0.05, 0.1, 0.2}) {
    const double diff = std::abs(lambda11(s, f) - asymptotic(Formula::simple_cubic_cma, f));
    CHECK(diff / (f * f * f) < 1.0);  // ratio is 3f/(1-f), bounded on this range
  }
}

TEST_CASE("clausius-mossotti direct substitution") {
  CHECK(asymptotic(Formula::clausius_mossotti, 0.1, {1.0, -1}) ==
        doctest::Approx(1.2 / 0.9).epsilon(1e-15));
  CHECK(asymptotic(Formula::einstein_viscosity, 0.2) == doctest::Approx(1.5));
}

TEST_CASE("isotropic expansion value at the reference concentration") {
  CHECK(asymptotic(Formula::isotropic_rsa, 0.3) ==
        doctest::Approx(1 + 0.9 + 0.27 + 4.80654 * 0.027).epsilon(1e-15));
}

TEST_CASE("combined and polynomial isotropic forms agree past the cubic order") {
  // their difference is o(f^3): the ratio to f^{10/3} stays bounded
  for (double f : {0.01, 0.05, 0.1, 0.2}) {
    const double d =
        std::abs(asymptotic(Formula::combined_rsa, f) - asymptotic(Formula::isotropic_rsa, f));
    CHECK(d / std::pow(f, 10.0 / 3.0) < 5.0);
  }
}

TEST_CASE("jeffrey truncated bracket and full-series coefficient") {
  // truncated two-term bracket at lambda1 -> inf
  CHECK(jeffrey_f2_coefficient_truncated() == doctest::Approx(3 + 3 * (0.75 + 9.0 / 32.0)));
  // accepted full-series value for perfectly conducting spheres
  CHECK(jeffrey_f2_coefficient_full() == doctest::Approx(4.51));
  const double f = 0.1;
  const double jeff = asymptotic(Formula::jeffrey, f, {1.0, -1});
  CHECK((jeff - 1 - 3 * f) / (f * f) ==
        doctest::Approx(jeffrey_f2_coefficient_truncated()).epsilon(1e-12));
}

TEST_CASE("domain guard") {
  CHECK_THROWS_AS(asymptotic(Formula::clausius_mossotti, 1.0), DomainError);
}

TEST_CASE("deviator is traceless and kappa vanishes for one sphere") {
  SphereConfiguration c;
  c.centers = {{0.05, -0.3, 0.2}};
  c.radius = 0.2;
  const EisensteinEvaluator ev(test_table());
  const AnisotropyResult a = anisotropy(c, ev);
  CHECK(a.deviator[0][0] + a.deviator[1][1] + a.deviator[2][2] ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(a.kappa == doctest::Approx(0.0).epsilon(1e-14));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.lambda2[i][j] == doctest::Approx(a.lambda2[j][i]));
}

TEST_CASE("deviator trace vanishes on random configurations") {
  const EisensteinEvaluator ev(test_table());
  const SphereConfiguration c = generate_rsa(20, 0.1, 91);
  const AnisotropyResult a = anisotropy(c, ev);
  const double scale = std::abs(a.deviator[0][0]) + std::abs(a.deviator[1][1]) + 1.0;
  CHECK(std::abs(a.deviator[0][0] + a.deviator[1][1] + a.deviator[2][2]) / scale < 1e-12);
}

TEST_CASE("isotropic orbit has negligible kappa") {
  SphereConfiguration c;
  c.centers = testsupport::cyclic_orbit24({0.35, 0.1, -0.225});
  c.radius = 0.05;
  const EisensteinEvaluator ev(test_table());
  CHECK(anisotropy(c, ev).kappa < 1e-10);
}

TEST_CASE("collinear chain is strongly anisotropic") {
  SphereConfiguration c;
  c.centers = {{-0.375, 0, 0}, {-0.125, 0, 0}, {0.125, 0, 0}, {0.375, 0, 0}};
  c.radius = 0.05;
  const EisensteinEvaluator ev(test_table());
  CHECK(anisotropy(c, ev).kappa > 1e-3);
}

TEST_CASE("kappa is invariant under the cube symmetries") {
  const EisensteinEvaluator ev(test_table());
  const SphereConfiguration base = generate_rsa(15, 0.08, 117);
  const double kappa0 = anisotropy(base, ev).kappa;

  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  int checked = 0;
  for (const auto& perm : perms)
    for (int sign_mask = 0; sign_mask < 8; ++sign_mask) {
      SphereConfiguration c = base;
      for (Vec3& p : c.centers) {
        const Vec3 old = p;
        for (int i = 0; i < 3; ++i) {
          double v = old[perm[i]];
          if (sign_mask & (1 << i)) v = -v;
          p[i] = wrap_half(v);
        }
      }
      CHECK(anisotropy(c, ev).kappa == doctest::Approx(kappa0).epsilon(1e-8));
      ++checked;
    }
  CHECK(checked == 48);
}

TEST_CASE("mirrored configuration flips the odd part of lambda12") {
  const EisensteinEvaluator ev(test_table());
  SphereConfiguration c = generate_rsa(12, 0.1, 201);
  const double f = c.concentration();
  const StructuralSums s = compute_structural_sums(c, ev);
  for (Vec3& p : c.centers) p.x = wrap_half(-p.x);
  const StructuralSums sm = compute_structural_sums(c, ev);
  // e12 and the odd convolutions flip; the 13*13 entry is even, so the sum
  // of the two lambda12 values isolates exactly twice its contribution
  CHECK(sm.e12 == doctest::Approx(-s.e12).epsilon(1e-9));
  const double even_part = 2 * 9 * f * f * f * std::pow(3 / (4 * std::numbers::pi), 2) *
                           s.conv.at({13, 13});
  CHECK(lambda12(sm, f) + lambda12(s, f) == doctest::Approx(even_part).epsilon(1e-8));
}

TEST_CASE("lambda11 is strictly increasing for the tabulated sums") {
  // structural-sum magnitudes of the dense random samples
  StructuralSums s;
  s.n = 1000;
  s.e11 = 4.19122;
  s.conv[{11, 11}] = 19.4667;
  s.conv[{12, 12}] = 1.42768;
  s.conv[{13, 13}] = 1.45402;
  double prev = lambda11(s, 1e-4);
  for (double f = 0.01; f <= 0.35 + 1e-12; f += 0.01) {
    const double cur = lambda11(s, f);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("report carries the reference formulas side by side") {
  SphereConfiguration c;
  c.centers = {{0, 0, 0}};
  c.radius = radius_from_concentration(1, 0.1);
  const EisensteinEvaluator ev(test_table());
  const ConductivityReport r = conductivity_report(c, ev);
  CHECK(r.f == doctest::Approx(0.1));
  CHECK(r.lambda_11 == doctest::Approx(1 + 0.3 + 0.03 + 0.003).epsilon(1e-12));
  CHECK(r.jeffrey_f2 == doctest::Approx(4.51));
  CHECK(r.this_work_f2 == doctest::Approx(3.0));
  CHECK(r.lambda_22 == doctest::Approx(r.lambda_11 - 3 * std::pow(0.1, 3)).epsilon(1e-12));
  CHECK(r.lambda_23 == 0.0);
}
