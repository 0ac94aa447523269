#include "effcond/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace effcond {

double Vec3::norm() const { return std::sqrt(norm2()); }

double wrap_half(double d) { return d - std::floor(d + 0.5); }

Vec3 minimum_image(const Vec3& a, const Vec3& b) {
  return {wrap_half(a.x - b.x), wrap_half(a.y - b.y), wrap_half(a.z - b.z)};
}

double radius_from_concentration(std::size_t n, double f) {
  return std::cbrt(3.0 * f / (4.0 * std::numbers::pi * static_cast<double>(n)));
}

double SphereConfiguration::concentration() const {
  return static_cast<double>(centers.size()) * (4.0 / 3.0) * std::numbers::pi * radius * radius *
         radius;
}

void SphereConfiguration::validate() const {
  if (centers.empty()) throw InvariantError("configuration has no centers");
  if (!(radius > 0)) throw InvariantError("radius must be positive");
  const double f = concentration();
  if (!(f > 0) || !(f < 1)) throw InvariantError("concentration outside (0, 1)");
  for (const Vec3& c : centers)
    for (int i = 0; i < 3; ++i)
      if (!(c[i] >= -0.5) || !(c[i] < 0.5))
        throw InvariantError("center coordinate outside [-1/2, 1/2)");
  // small relative slack so files written with finite precision re-validate
  const double min_d2 = 4.0 * radius * radius * (1.0 - 1e-9);
  for (std::size_t k = 0; k < centers.size(); ++k)
    for (std::size_t m = k + 1; m < centers.size(); ++m)
      if (minimum_image(centers[k], centers[m]).norm2() < min_d2)
        throw InvariantError("centers " + std::to_string(k) + " and " + std::to_string(m) +
                             " overlap");
}

// SplitMix64 keyed by (seed, counter). Pure function of its inputs, so the
// candidate stream is reproducible across platforms and replayable per seed.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

namespace {

// Uniform cell-list grid for overlap queries; bin width >= 2*r0.
class CellGrid {
 public:
  CellGrid(double r0, std::size_t expected) {
    nbins_ = static_cast<int>(std::floor(1.0 / (2.0 * r0)));
    // more bins than ~N buys nothing and wastes memory on dilute packings
    const int cap = static_cast<int>(std::ceil(std::cbrt(4.0 * static_cast<double>(expected))));
    nbins_ = std::clamp(nbins_, 1, std::max(cap, 1));
    bins_.resize(static_cast<std::size_t>(nbins_) * nbins_ * nbins_);
    points_.reserve(expected);
  }

  bool overlaps(const Vec3& c, double min_d2) const {
    if (nbins_ < 3) {  // neighbor shells wrap onto themselves; scan everything
      for (const Vec3& p : points_)
        if (minimum_image(c, p).norm2() < min_d2) return true;
      return false;
    }
    const int bx = bin_of(c.x), by = bin_of(c.y), bz = bin_of(c.z);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          const std::size_t idx = flat(wrap(bx + dx), wrap(by + dy), wrap(bz + dz));
          for (std::size_t i : bins_[idx])
            if (minimum_image(c, points_[i]).norm2() < min_d2) return true;
        }
    return false;
  }

  void insert(const Vec3& c) {
    bins_[flat(bin_of(c.x), bin_of(c.y), bin_of(c.z))].push_back(points_.size());
    points_.push_back(c);
  }

 private:
  int bin_of(double u) const {
    int b = static_cast<int>((u + 0.5) * nbins_);
    return std::clamp(b, 0, nbins_ - 1);
  }
  int wrap(int b) const { return (b + nbins_) % nbins_; }
  std::size_t flat(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * nbins_ + y) * nbins_ + z;
  }

  int nbins_;
  std::vector<std::vector<std::size_t>> bins_;
  std::vector<Vec3> points_;
};

}  // namespace

SphereConfiguration generate_rsa(std::size_t n, double f, std::uint64_t seed,
                                 const RsaOptions& opts, RsaStats* stats) {
  if (n < 1) throw DomainError("generate_rsa: N must be >= 1");
  if (!(f > 0)) throw DomainError("generate_rsa: f must be positive");
  if (f > 0.38) throw DomainError("generate_rsa: f above practical RSA jamming threshold (0.38)");

  SphereConfiguration config;
  config.radius = radius_from_concentration(n, f);
  config.centers.reserve(n);

  const double min_d2 = 4.0 * config.radius * config.radius;
  CellGrid grid(config.radius, n);
  std::uint64_t counter = 0;
  std::uint64_t total_attempts = 0;

  for (std::size_t placed = 0; placed < n; ++placed) {
    std::uint64_t attempts = 0;
    for (;;) {
      if (attempts++ >= opts.max_attempts_per_sphere)
        throw PackingFailure("generate_rsa: attempt cap reached at sphere " +
                             std::to_string(placed));
      ++total_attempts;
      Vec3 c{counter_uniform(seed, counter) - 0.5, counter_uniform(seed, counter + 1) - 0.5,
             counter_uniform(seed, counter + 2) - 0.5};
      counter += 3;
      if (n > 1 && grid.overlaps(c, min_d2)) continue;
      grid.insert(c);
      config.centers.push_back(c);
      break;
    }
  }
  if (stats) stats->attempts = total_attempts;
  return config;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok, std::size_t line_no) {
  double v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line_no, "bad floating point value '" + tok + "'");
  return v;
}

}  // namespace

SphereConfiguration read_packing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");

  SphereConfiguration config;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;

    std::istringstream ss{std::string(sv)};
    if (!have_header) {
      std::string ntok, rtok, extra;
      if (!(ss >> ntok >> rtok) || (ss >> extra))
        throw ParseError(line_no, "expected header 'N r0'");
      long long nn = 0;
      auto [p, ec] = std::from_chars(ntok.data(), ntok.data() + ntok.size(), nn);
      if (ec != std::errc{} || p != ntok.data() + ntok.size() || nn < 1)
        throw ParseError(line_no, "bad sphere count '" + ntok + "'");
      n = static_cast<std::size_t>(nn);
      config.radius = parse_double(rtok, line_no);
      have_header = true;
      continue;
    }
    std::string t1, t2, t3, extra;
    if (!(ss >> t1 >> t2 >> t3) || (ss >> extra))
      throw ParseError(line_no, "expected 'x1 x2 x3'");
    config.centers.push_back(
        {parse_double(t1, line_no), parse_double(t2, line_no), parse_double(t3, line_no)});
    if (config.centers.size() > n) throw ParseError(line_no, "more centers than declared");
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (config.centers.size() != n)
    throw ParseError(line_no, "declared " + std::to_string(n) + " centers, found " +
                                  std::to_string(config.centers.size()));
  config.validate();
  return config;
}

void write_packing(const SphereConfiguration& config, const std::string& path,
                   const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (const std::string& c : header_comments) out << "# " << c << "\n";
  out << config.centers.size() << " " << format_double(config.radius) << "\n";
  for (const Vec3& c : config.centers)
    out << format_double(c.x) << " " << format_double(c.y) << " " << format_double(c.z) << "\n";
}

}  // namespace effcond
