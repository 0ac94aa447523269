#include "effcond/fixed_point.hpp"

#include <cmath>
#include <limits>

namespace effcond {

Vec3 sphere_inversion(const Vec3& x, const Vec3& a, double r0) {
  const Vec3 d = x - a;
  const double d2 = d.norm2();
  if (d2 == 0) throw SingularInput("sphere_inversion: x at the center");
  return a + d * (r0 * r0 / d2);
}

namespace {

// degree <= 3 interior harmonics (the constant is pinned by u_k(a_k) = 0);
// the odd cubic modes are needed so the fitted gradients are not polluted by
// aliasing of the incident field's cubic Taylor terms
constexpr int kNumBasis = 15;

void basis_values(const Vec3& y, double* phi) {
  phi[0] = y.x;
  phi[1] = y.y;
  phi[2] = y.z;
  phi[3] = y.x * y.y;
  phi[4] = y.x * y.z;
  phi[5] = y.y * y.z;
  phi[6] = y.x * y.x - y.y * y.y;
  phi[7] = y.y * y.y - y.z * y.z;
  const double x2 = y.x * y.x, y2 = y.y * y.y, z2 = y.z * y.z;
  phi[8] = y.x * y.y * y.z;
  phi[9] = y.x * (y2 - z2);
  phi[10] = y.y * (z2 - x2);
  phi[11] = y.z * (x2 - y2);
  phi[12] = y.x * (2 * x2 - 3 * y2 - 3 * z2);
  phi[13] = y.y * (2 * y2 - 3 * x2 - 3 * z2);
  phi[14] = y.z * (2 * z2 - 3 * x2 - 3 * y2);
}

double eval_harmonic(const std::array<double, kNumBasis>& coef, const Vec3& y) {
  double phi[kNumBasis];
  basis_values(y, phi);
  double v = 0;
  for (int i = 0; i < kNumBasis; ++i) v += coef[i] * phi[i];
  return v;
}

// 26 directions: faces, edges, corners of the cube, normalized
std::vector<Vec3> probe_directions() {
  std::vector<Vec3> dirs;
  for (int ix = -1; ix <= 1; ++ix)
    for (int iy = -1; iy <= 1; ++iy)
      for (int iz = -1; iz <= 1; ++iz) {
        if (!ix && !iy && !iz) continue;
        Vec3 v{static_cast<double>(ix), static_cast<double>(iy), static_cast<double>(iz)};
        dirs.push_back(v * (1.0 / v.norm()));
      }
  return dirs;
}

// least squares via normal equations with Gaussian elimination
std::array<double, kNumBasis> lsq_fit(const std::vector<std::array<double, kNumBasis>>& rows,
                                      const std::vector<double>& rhs) {
  double ata[kNumBasis][kNumBasis] = {};
  double atb[kNumBasis] = {};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < kNumBasis; ++i) {
      atb[i] += rows[r][i] * rhs[r];
      for (int j = 0; j < kNumBasis; ++j) ata[i][j] += rows[r][i] * rows[r][j];
    }
  }
  for (int col = 0; col < kNumBasis; ++col) {
    int pivot = col;
    for (int r = col + 1; r < kNumBasis; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
    if (std::abs(ata[pivot][col]) < 1e-14)
      throw NoConvergence("fixed_point_oracle: singular least-squares system");
    if (pivot != col) {
      for (int j = 0; j < kNumBasis; ++j) std::swap(ata[col][j], ata[pivot][j]);
      std::swap(atb[col], atb[pivot]);
    }
    for (int r = col + 1; r < kNumBasis; ++r) {
      const double f = ata[r][col] / ata[col][col];
      for (int j = col; j < kNumBasis; ++j) ata[r][j] -= f * ata[col][j];
      atb[r] -= f * atb[col];
    }
  }
  std::array<double, kNumBasis> x{};
  for (int r = kNumBasis - 1; r >= 0; --r) {
    double v = atb[r];
    for (int j = r + 1; j < kNumBasis; ++j) v -= ata[r][j] * x[j];
    x[r] = v / ata[r][r];
  }
  return x;
}

double min_pairwise_distance(const std::vector<Vec3>& centers) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      best = std::min(best, (centers[i] - centers[j]).norm());
  return best;
}

}  // namespace

FixedPointResult fixed_point_oracle(const std::vector<Vec3>& centers, double r0, int axis,
                                    const FixedPointOptions& opts) {
  const std::size_t n = centers.size();
  if (n < 1 || n > 10) throw DomainError("fixed_point_oracle: cluster size must be 1..10");
  if (axis < 1 || axis > 3) throw DomainError("fixed_point_oracle: bad axis");
  if (n > 1 && !(r0 <= 0.1 * min_pairwise_distance(centers)))
    throw DomainError("fixed_point_oracle: r0 too large for contraction");

  const std::vector<Vec3> dirs = probe_directions();
  std::vector<std::array<double, kNumBasis>> coeffs(n, std::array<double, kNumBasis>{});
  std::vector<double> cvals(n, 0.0);

  // u evaluated from the current coefficients
  auto eval_u = [&](std::size_t m, const Vec3& y) {
    return eval_harmonic(coeffs[m], y - centers[m]);
  };
  // interaction part I_k(x) = sum_{m != k} (r0/|x - a_m|) u_m(s(x, a_m))
  auto interaction = [&](std::size_t k, const Vec3& x) {
    double v = 0;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == k) continue;
      const double d = (x - centers[m]).norm();
      v += r0 / d * eval_u(m, sphere_inversion(x, centers[m], r0));
    }
    return v;
  };

  int sweep = 0;
  double change = std::numeric_limits<double>::infinity();
  for (; sweep < opts.max_sweeps && change > opts.tolerance; ++sweep) {
    change = 0;
    for (std::size_t k = 0; k < n; ++k) {
      // c_k from u_k(a_k) = 0
      const double ck = centers[k][axis - 1] - interaction(k, centers[k]);
      // fit the surface values of x_j - c_k - I_k(x)
      std::vector<std::array<double, kNumBasis>> rows(dirs.size());
      std::vector<double> rhs(dirs.size());
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        const Vec3 y = dirs[i] * r0;
        const Vec3 x = centers[k] + y;
        basis_values(y, rows[i].data());
        rhs[i] = x[axis - 1] - ck - interaction(k, x);
      }
      const std::array<double, kNumBasis> fresh = lsq_fit(rows, rhs);
      for (int i = 0; i < kNumBasis; ++i)
        change = std::max(change, std::abs(fresh[i] - coeffs[k][i]));
      change = std::max(change, std::abs(ck - cvals[k]));
      coeffs[k] = fresh;
      cvals[k] = ck;
    }
  }
  if (change > opts.tolerance)
    throw NoConvergence("fixed_point_oracle: no fixed point within sweep cap");

  FixedPointResult out;
  out.c = cvals;
  out.coeffs = coeffs;
  out.sweeps = sweep;
  out.grad.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.grad[k] = {coeffs[k][0], coeffs[k][1], coeffs[k][2]};
  out.residual = functional_equation_defect(
      centers, r0, axis, [&](int k, const Vec3& x) { return eval_u(static_cast<std::size_t>(k), x); });
  return out;
}

double functional_equation_defect(const std::vector<Vec3>& centers, double r0, int axis,
                                  const std::function<double(int, const Vec3&)>& u) {
  const std::size_t n = centers.size();
  const std::vector<Vec3> dirs = probe_directions();
  auto F = [&](std::size_t k, const Vec3& x) {
    double v = u(static_cast<int>(k), x) - x[axis - 1];
    for (std::size_t m = 0; m < n; ++m) {
      if (m == k) continue;
      const double d = (x - centers[m]).norm();
      v += r0 / d * u(static_cast<int>(m), sphere_inversion(x, centers[m], r0));
    }
    return v;
  };
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double base = F(k, centers[k]);
    for (const Vec3& dir : dirs)
      worst = std::max(worst, std::abs(F(k, centers[k] + dir * r0) - base));
  }
  return worst;
}

}  // namespace effcond
