#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <filesystem>

#include "effcond/geometry.hpp"
#include "support.hpp"

using namespace effcond;

TEST_CASE("minimum image wraps across the cell boundary") {
  const Vec3 d = minimum_image({0.4, 0, 0}, {-0.4, 0, 0});
  CHECK(d.x == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(d.y == 0);
  CHECK(d.z == 0);
}

TEST_CASE("minimum image identity case") {
  const Vec3 d = minimum_image({0.1, -0.2, 0.3}, {0.1, -0.2, 0.3});
  CHECK(d.x == 0);
  CHECK(d.y == 0);
  CHECK(d.z == 0);
}

TEST_CASE("minimum image half-cell difference maps +1/2 to -1/2") {
  const Vec3 d = minimum_image({0.25, -0.25, 0.1}, {-0.25, 0.25, -0.1});
  CHECK(d.x == doctest::Approx(-0.5));
  CHECK(d.y == doctest::Approx(-0.5));
  CHECK(d.z == doctest::Approx(0.2));
}

TEST_CASE("minimum image distance equals brute force over 27 translates") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Vec3 a{testsupport::unit_rand(11, 3 * t) - 0.5, testsupport::unit_rand(11, 3 * t + 1) - 0.5,
                 testsupport::unit_rand(11, 3 * t + 2) - 0.5};
    const Vec3 b{testsupport::unit_rand(12, 3 * t) - 0.5, testsupport::unit_rand(12, 3 * t + 1) - 0.5,
                 testsupport::unit_rand(12, 3 * t + 2) - 0.5};
    const Vec3 got = minimum_image(a, b);
    const Vec3 want = testsupport::min_image_brute(a, b);
    CHECK(got.norm() == doctest::Approx(want.norm()).epsilon(1e-13));
    for (int i = 0; i < 3; ++i) {
      CHECK(got[i] >= -0.5);
      CHECK(got[i] < 0.5);
    }
  }
}

TEST_CASE("minimum image antisymmetry away from the boundary") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Vec3 a{0.9 * (testsupport::unit_rand(21, 3 * t) - 0.5),
                 0.9 * (testsupport::unit_rand(21, 3 * t + 1) - 0.5),
                 0.9 * (testsupport::unit_rand(21, 3 * t + 2) - 0.5)};
    const Vec3 b{0.9 * (testsupport::unit_rand(22, 3 * t) - 0.5),
                 0.9 * (testsupport::unit_rand(22, 3 * t + 1) - 0.5),
                 0.9 * (testsupport::unit_rand(22, 3 * t + 2) - 0.5)};
    const Vec3 ab = minimum_image(a, b);
    const Vec3 ba = minimum_image(b, a);
    bool on_boundary = false;
    for (int i = 0; i < 3; ++i)
      if (ab[i] == -0.5 || ba[i] == -0.5) on_boundary = true;
    if (on_boundary) continue;
    for (int i = 0; i < 3; ++i) CHECK(ab[i] == doctest::Approx(-ba[i]).epsilon(1e-15));
  }
}

TEST_CASE("single sphere radius from concentration") {
  const SphereConfiguration c = generate_rsa(1, 0.3, 42);
  CHECK(c.size() == 1);
  // exact inversion of f = (4/3) pi r0^3
  CHECK(c.radius == doctest::Approx(std::cbrt(0.3 * 3 / (4 * std::numbers::pi))).epsilon(1e-14));
  CHECK(c.radius == doctest::Approx(0.4153).epsilon(1e-4));
  CHECK(c.concentration() == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("RSA respects the pairwise separation invariant") {
  const SphereConfiguration c = generate_rsa(200, 0.25, 5);
  REQUIRE(c.size() == 200);
  c.validate();
  const double min_d = 2 * c.radius;
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t m = k + 1; m < c.size(); ++m)
      CHECK(minimum_image(c.centers[k], c.centers[m]).norm() >= min_d * (1 - 1e-12));
}

TEST_CASE("RSA is deterministic per seed") {
  const SphereConfiguration a = generate_rsa(100, 0.2, 77);
  const SphereConfiguration b = generate_rsa(100, 0.2, 77);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.centers[i][j] == b.centers[i][j]);
  const SphereConfiguration c = generate_rsa(100, 0.2, 78);
  bool all_equal = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a.centers[i].x == c.centers[i].x)) all_equal = false;
  CHECK(!all_equal);
}

TEST_CASE("RSA dilute two-sphere case") {
  const SphereConfiguration c = generate_rsa(2, 1e-6, 3);
  CHECK(c.size() == 2);
  CHECK(minimum_image(c.centers[0], c.centers[1]).norm() >= 2 * c.radius);
}

TEST_CASE("RSA rejects out-of-range concentration") {
  CHECK_THROWS_AS(generate_rsa(10, 0.5, 1), DomainError);
  CHECK_THROWS_AS(generate_rsa(0, 0.1, 1), DomainError);
}

TEST_CASE("attempt cap surfaces as a packing failure") {
  RsaOptions opts;
  opts.max_attempts_per_sphere = 2;
  CHECK_THROWS_AS(generate_rsa(400, 0.35, 13, opts), PackingFailure);
}

TEST_CASE("packing round trip is exact") {
  const SphereConfiguration c = generate_rsa(64, 0.22, 9);
  const std::string path = "roundtrip_test.pack";
  write_packing(c, path);
  const SphereConfiguration r = read_packing(path);
  REQUIRE(r.size() == c.size());
  CHECK(r.radius == c.radius);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j < 3; ++j) CHECK(r.centers[i][j] == c.centers[i][j]);
  std::filesystem::remove(path);
}

TEST_CASE("packing parser reports malformed input with line numbers") {
  const std::string path = "bad_test.pack";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("# comment\n2 0.1\n0 0 0\nnot numbers here\n", f);
    std::fclose(f);
  }
  try {
    read_packing(path);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line_number == 4);
  }
  std::filesystem::remove(path);
}

TEST_CASE("coincident centers fail validation on load") {
  const std::string path = "overlap_test.pack";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("2 0.1\n0.1 0.1 0.1\n0.1 0.1 0.1\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_packing(path), InvariantError);
  std::filesystem::remove(path);
}

TEST_CASE("single sphere header example") {
  const std::string path = "single_test.pack";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("1 0.415380\n0 0 0\n", f);
    std::fclose(f);
  }
  const SphereConfiguration c = read_packing(path);
  CHECK(c.size() == 1);
  CHECK(c.radius == doctest::Approx(0.41538));
  std::filesystem::remove(path);
}
