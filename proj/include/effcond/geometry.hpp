#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "effcond/errors.hpp"

namespace effcond {

struct Vec3 {
  double x{0}, y{0}, z{0};

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm2() const { return dot(*this); }
  double norm() const;
};

// N equal spheres in the unit periodic cube [-1/2, 1/2)^3.
// Invariants: coordinates in [-1/2, 1/2), pairwise periodic distance >= 2*r0,
// concentration f = N * (4/3) pi r0^3 in (0, 1).
struct SphereConfiguration {
  std::vector<Vec3> centers;
  double radius{0};

  std::size_t size() const { return centers.size(); }
  double concentration() const;

  // Throws InvariantError if any invariant is violated.
  void validate() const;
};

// Reduces a - b into the half-open cell [-1/2, 1/2)^3. A component landing on
// +1/2 maps to -1/2 so the representative is unique.
Vec3 minimum_image(const Vec3& a, const Vec3& b);

// Wraps a single coordinate difference into [-1/2, 1/2).
double wrap_half(double d);

// Radius of N equal spheres at concentration f in the unit cell.
double radius_from_concentration(std::size_t n, double f);

struct RsaOptions {
  std::uint64_t max_attempts_per_sphere = 1'000'000;
};

struct RsaStats {
  std::uint64_t attempts = 0;  // total candidate draws, accepted + rejected
};

// Random sequential adsorption: spheres are placed uniformly at random,
// rejecting candidates that overlap already placed ones (periodic
// minimum-image metric). Deterministic for a fixed seed across platforms;
// throws PackingFailure if a sphere cannot be placed within the attempt cap.
SphereConfiguration generate_rsa(std::size_t n, double f, std::uint64_t seed,
                                 const RsaOptions& opts = {}, RsaStats* stats = nullptr);

// Packing file format: line 1 = "N r0", then one "x1 x2 x3" line per center.
// '#'-prefixed lines are comments. Floats carry 17 significant digits so a
// write/read round trip is bit exact.
SphereConfiguration read_packing(const std::string& path);
void write_packing(const SphereConfiguration& config, const std::string& path,
                   const std::vector<std::string>& header_comments = {});

// Counter-based uniform generator used by generate_rsa; exposed so tests can
// pin the candidate stream. Returns the k-th double in [0,1) for this seed.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

}  // namespace effcond
