#include "effcond/eisenstein.hpp"

#include <cmath>
#include <numbers>

namespace effcond {

namespace {

const std::vector<PolyTerm> kE11Deg2 = {{2, 0, 0, 2}, {0, 2, 0, -1}, {0, 0, 2, -1}};

const std::vector<PolyTerm> kE11Deg4 = {{4, 0, 0, 2},  {2, 2, 0, -6}, {2, 0, 2, -6},
                                        {0, 4, 0, -1}, {0, 0, 4, -1}, {0, 2, 2, 12}};

const std::vector<PolyTerm> kE11Deg6 = {{6, 0, 0, 2},  {4, 2, 0, -15}, {4, 0, 2, -15},
                                        {2, 4, 0, 15}, {2, 0, 4, 15},  {0, 6, 0, -1},
                                        {0, 0, 6, -1}};

const std::vector<PolyTerm> kE11Deg8 = {
    {8, 0, 0, 10},   {6, 2, 0, -140}, {6, 0, 2, -140}, {4, 4, 0, 70},  {4, 2, 2, 1680},
    {4, 0, 4, 70},   {2, 6, 0, 28},   {2, 4, 2, -840}, {2, 2, 4, -840}, {2, 0, 6, 28},
    {0, 8, 0, -5},   {0, 0, 8, -5},   {0, 2, 6, 112},  {0, 6, 2, 112}, {0, 4, 4, -140}};

const std::vector<PolyTerm> kE12Deg2 = {{1, 1, 0, 1}};

const std::vector<PolyTerm> kE12Deg4 = {{3, 1, 0, 1}, {1, 3, 0, 1}, {1, 1, 2, -6}};

const std::vector<PolyTerm> kE12Deg6 = {{5, 1, 0, 3}, {3, 3, 0, -10}, {1, 5, 0, 3}};

const std::vector<PolyTerm> kE12Deg8 = {{7, 1, 0, 5},  {5, 3, 0, -7}, {5, 1, 2, -84},
                                        {3, 5, 0, -7}, {3, 3, 2, 140}, {3, 1, 4, 70},
                                        {1, 7, 0, 5},  {1, 5, 2, -84}, {1, 3, 4, 70},
                                        {1, 1, 6, -28}};

double eval_block(const std::vector<PolyTerm>& block, const double* p1, const double* p2,
                  const double* p3) {
  double acc = 0;
  for (const PolyTerm& t : block)
    acc += static_cast<double>(t.coeff) * p1[t.e1] * p2[t.e2] * p3[t.e3];
  return acc;
}

void fill_powers(double x, double* p) {
  p[0] = 1;
  for (int i = 1; i <= 8; ++i) p[i] = p[i - 1] * x;
}

}  // namespace

const std::vector<PolyTerm>& e11_block(int degree) {
  switch (degree) {
    case 2: return kE11Deg2;
    case 4: return kE11Deg4;
    case 6: return kE11Deg6;
    case 8: return kE11Deg8;
  }
  throw DomainError("e11_block: degree must be 2, 4, 6 or 8");
}

const std::vector<PolyTerm>& e12_block(int degree) {
  switch (degree) {
    case 2: return kE12Deg2;
    case 4: return kE12Deg4;
    case 6: return kE12Deg6;
    case 8: return kE12Deg8;
  }
  throw DomainError("e12_block: degree must be 2, 4, 6 or 8");
}

EisensteinEvaluator::EisensteinEvaluator(const LatticeSumTable& table, int d_max)
    : table_(table), d_max_(d_max) {
  if (d_max != 2 && d_max != 4 && d_max != 6 && d_max != 8)
    throw DomainError("EisensteinEvaluator: d_max must be 2, 4, 6 or 8");
  w11_[0] = 6.0 * table.L4;
  w11_[1] = 15.0 * table.L6;
  w11_[2] = 28.0 * table.L8;
  w11_[3] = 9.0 * table.L10;
  w12_[0] = -12.0 * table.L4;
  w12_[1] = -60.0 * table.L6;
  w12_[2] = -56.0 * table.L8;
  w12_[3] = -72.0 * table.L10;
}

double EisensteinEvaluator::at_zero(int p, int q) {
  return p == q ? 4.0 * std::numbers::pi / 3.0 : 0.0;
}

double EisensteinEvaluator::eval_e11_template(double x1, double x2, double x3) const {
  const double r2 = x1 * x1 + x2 * x2 + x3 * x3;
  if (r2 == 0) throw SingularInput("E11: x = 0");
  double p1[9], p2[9], p3[9];
  fill_powers(x1, p1);
  fill_powers(x2, p2);
  fill_powers(x3, p3);
  double v = 4.0 * std::numbers::pi / 3.0 +
             (2 * x1 * x1 - x2 * x2 - x3 * x3) / (r2 * r2 * std::sqrt(r2));
  for (int d = 2, i = 0; d <= d_max_; d += 2, ++i)
    v += w11_[i] * eval_block(e11_block(d), p1, p2, p3);
  return v;
}

double EisensteinEvaluator::eval_e12_template(double x1, double x2, double x3) const {
  const double r2 = x1 * x1 + x2 * x2 + x3 * x3;
  if (r2 == 0) throw SingularInput("E12: x = 0");
  double p1[9], p2[9], p3[9];
  fill_powers(x1, p1);
  fill_powers(x2, p2);
  fill_powers(x3, p3);
  double v = 3.0 * x1 * x2 / (r2 * r2 * std::sqrt(r2));
  for (int d = 2, i = 0; d <= d_max_; d += 2, ++i)
    v += w12_[i] * eval_block(e12_block(d), p1, p2, p3);
  return v;
}

double EisensteinEvaluator::evaluate(int p, int q, const Vec3& x) const {
  if (p < 1 || p > 3 || q < 1 || q > 3) throw DomainError("EisensteinEvaluator: bad indices");
  if (p == q) {
    // remaining coordinates enter symmetrically
    const int a = (p == 1) ? 2 : 1;
    const int b = (p == 3) ? 2 : 3;
    return eval_e11_template(x[p - 1], x[a - 1], x[b - 1]);
  }
  const int r = 6 - p - q;  // the coordinate not named by (p, q)
  return eval_e12_template(x[p - 1], x[q - 1], x[r - 1]);
}

namespace {

// Summand of the E11 series in the inner coordinate t = x1 - R1 has the exact
// antiderivative -t (t^2 + rho^2)^(-3/2); the two tails of the complete inner
// sum are taken as midpoint-rule integrals, which is what realizes the
// iterated (Eisenstein) order: outer truncation then converges fast.
double inner_row_e11(double x1, double rho2, int m) {
  double row = 0;
  for (int r1 = -m; r1 <= m; ++r1) {
    const double t = x1 - r1;
    const double d2 = t * t + rho2;
    row += (2 * t * t - rho2) / (d2 * d2 * std::sqrt(d2));
  }
  const double a = m + 0.5 - x1;
  const double b = m + 0.5 + x1;
  row += a / std::pow(a * a + rho2, 1.5) + b / std::pow(b * b + rho2, 1.5);
  return row;
}

double inner_row_e12(double x1, double u2, double rho2, int m) {
  double row = 0;
  for (int r1 = -m; r1 <= m; ++r1) {
    const double t = x1 - r1;
    const double d2 = t * t + rho2;
    row += 3.0 * u2 * t / (d2 * d2 * std::sqrt(d2));
  }
  const double a = m + 0.5 - x1;
  const double b = m + 0.5 + x1;
  row += u2 / std::pow(a * a + rho2, 1.5) - u2 / std::pow(b * b + rho2, 1.5);
  return row;
}

void check_oracle_args(const Vec3& x, int m) {
  if (m < 10) throw DomainError("eisenstein oracle: M must be >= 10");
  if (x.norm2() == 0) throw SingularInput("eisenstein oracle: x = 0");
  for (int i = 0; i < 3; ++i)
    if (!(x[i] > -0.5) || !(x[i] < 0.5))
      throw DomainError("eisenstein oracle: x must lie inside the open cell");
}

}  // namespace

double eisenstein_oracle_e11(const Vec3& x, int m) {
  check_oracle_args(x, m);
  double total = 0;
  for (int r3 = -m; r3 <= m; ++r3) {
    const double u3 = x.z - r3;
    for (int r2 = -m; r2 <= m; ++r2) {
      const double u2 = x.y - r2;
      total += inner_row_e11(x.x, u2 * u2 + u3 * u3, m);
    }
  }
  return total;
}

double eisenstein_oracle_e12(const Vec3& x, int m) {
  check_oracle_args(x, m);
  double total = 0;
  for (int r3 = -m; r3 <= m; ++r3) {
    const double u3 = x.z - r3;
    for (int r2 = -m; r2 <= m; ++r2) {
      const double u2 = x.y - r2;
      total += inner_row_e12(x.x, u2, u2 * u2 + u3 * u3, m);
    }
  }
  return total;
}

}  // namespace effcond
