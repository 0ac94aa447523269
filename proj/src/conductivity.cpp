#include "effcond/conductivity.hpp"

#include <cmath>
#include <numbers>

namespace effcond {

namespace {

constexpr double k3over4pi = 3.0 / (4.0 * std::numbers::pi);

double conv_at(const StructuralSums& s, int ij, int pl) {
  auto it = s.conv.find({ij, pl});
  if (it == s.conv.end()) throw DomainError("structural sums missing convolution entry");
  return it->second;
}

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

double lambda11(const StructuralSums& sums, double f) {
  const double c2 = k3over4pi * sums.e11;
  const double c3 = k3over4pi * k3over4pi *
                    (conv_at(sums, 11, 11) + 3.0 * (conv_at(sums, 12, 12) + conv_at(sums, 13, 13)));
  return 1.0 + 3.0 * f + 3.0 * f * f * c2 + 3.0 * f * f * f * c3;
}

double lambda12(const StructuralSums& sums, double f) {
  const double inner = k3over4pi * sums.e12 +
                       f * k3over4pi * k3over4pi *
                           (conv_at(sums, 12, 11) + conv_at(sums, 12, 22) +
                            conv_at(sums, 13, 13) + conv_at(sums, 23, 13));
  return 9.0 * f * f * inner;
}

double lambda13(const StructuralSums& sums, double f) {
  const double inner = k3over4pi * sums.e13 +
                       f * k3over4pi * k3over4pi *
                           (conv_at(sums, 13, 11) + conv_at(sums, 13, 33) +
                            conv_at(sums, 12, 12) + conv_at(sums, 23, 12));
  return 9.0 * f * f * inner;
}

AnisotropyResult anisotropy(const SphereConfiguration& config, const EisensteinEvaluator& ev) {
  AnisotropyResult out;
  out.e11 = pair_sum(config, ev, 1, 1);
  out.e12 = pair_sum(config, ev, 1, 2);
  out.e13 = pair_sum(config, ev, 1, 3);
  out.e23 = pair_sum(config, ev, 2, 3);
  std::tie(out.e11_star, out.e11_dstar) = starred_sums(config, ev);

  const double w = 9.0 / (4.0 * std::numbers::pi);
  out.lambda2 = {{{w * out.e11, w * 3 * out.e12, w * 3 * out.e13},
                  {w * 3 * out.e12, w * out.e11_star, w * 3 * out.e23},
                  {w * 3 * out.e13, w * 3 * out.e23, w * out.e11_dstar}}};

  const double g11 = 2 * out.e11 - out.e11_star - out.e11_dstar;
  const double g22 = 2 * out.e11_star - out.e11 - out.e11_dstar;
  const double g33 = 2 * out.e11_dstar - out.e11 - out.e11_star;
  const double v = 3.0 / (4.0 * std::numbers::pi);
  out.deviator = {{{v * g11, v * 9 * out.e12, v * 9 * out.e13},
                   {v * 9 * out.e12, v * g22, v * 9 * out.e23},
                   {v * 9 * out.e13, v * 9 * out.e23, v * g33}}};
  out.kappa = std::abs(det3(out.deviator));
  return out;
}

double asymptotic(Formula id, double f, const FormulaParams& params) {
  if (f >= 1.0) throw DomainError("asymptotic: f must be below 1");
  const double beta = params.beta;
  switch (id) {
    case Formula::clausius_mossotti:
      return (1.0 + 2.0 * beta * f) / (1.0 - beta * f);
    case Formula::einstein_viscosity:
      return 1.0 + 2.5 * f;
    case Formula::jeffrey: {
      // bracket ratio (lambda1+2)/(2 lambda1+3) -> 1/2 for lambda1 -> inf
      const double ratio =
          params.lambda1 < 0 ? 0.5 : (params.lambda1 + 2.0) / (2.0 * params.lambda1 + 3.0);
      return 1.0 + 3.0 * beta * f + 3.0 * beta * beta * f * f +
             3.0 * f * f * beta * beta * beta * (0.75 + 9.0 / 16.0 * ratio);
    }
    case Formula::simple_cubic_cma:
      return (1.0 + 2.0 * f) / (1.0 - f);
    case Formula::berdichevsky_sc: {
      const double pole = (1.0 - f) * (1.0 - f);
      return (1.0 + 2.0 * f) / (1.0 - f) + 3.913 * std::pow(f, 13.0 / 3.0) / pole +
             1.469 * std::pow(f, 17.0 / 3.0) / pole;
    }
    case Formula::isotropic_rsa:
      return 1.0 + 3.0 * f + 3.0 * f * f + 4.80654 * f * f * f;
    case Formula::combined_rsa: {
      const double pole = (1.0 - f) * (1.0 - f);
      return (1.0 + 2.0 * f) / (1.0 - f) + 1.80654 * f * f * f +
             3.913 * std::pow(f, 13.0 / 3.0) / pole + 1.469 * std::pow(f, 17.0 / 3.0) / pole;
    }
  }
  throw DomainError("asymptotic: unknown formula");
}

double jeffrey_f2_coefficient_full() { return 4.51; }

double jeffrey_f2_coefficient_truncated(double lambda1) {
  const double ratio = lambda1 < 0 ? 0.5 : (lambda1 + 2.0) / (2.0 * lambda1 + 3.0);
  return 3.0 + 3.0 * (0.75 + 9.0 / 16.0 * ratio);
}

ConductivityReport conductivity_report(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev, double beta,
                                       double lambda1) {
  ConductivityReport r;
  r.f = config.concentration();
  r.beta = beta;
  r.n = config.size();
  r.sums = compute_structural_sums(config, ev);
  r.lambda_11 = lambda11(r.sums, r.f);
  r.lambda_12 = lambda12(r.sums, r.f);
  r.lambda_13 = lambda13(r.sums, r.f);
  r.aniso = anisotropy(config, ev);
  // tensor entries 22, 33, 23 at the O(f^2) scope of the second-order tensor
  const double f2 = 3.0 * r.f * r.f * k3over4pi;
  r.lambda_22 = 1.0 + 3.0 * r.f + f2 * r.sums.e11_star;
  r.lambda_33 = 1.0 + 3.0 * r.f + f2 * r.sums.e11_dstar;
  r.lambda_23 = 9.0 * r.f * r.f * k3over4pi * r.aniso.e23;

  FormulaParams p{beta, lambda1};
  r.cma = asymptotic(Formula::clausius_mossotti, r.f, p);
  r.simple_cubic_cma = asymptotic(Formula::simple_cubic_cma, r.f);
  r.berdichevsky_sc = asymptotic(Formula::berdichevsky_sc, r.f);
  r.isotropic_rsa = asymptotic(Formula::isotropic_rsa, r.f);
  r.combined_rsa = asymptotic(Formula::combined_rsa, r.f);
  r.jeffrey_value = asymptotic(Formula::jeffrey, r.f, p);
  r.jeffrey_f2 = jeffrey_f2_coefficient_full();
  r.this_work_f2 = 3.0;  // f^2 coefficient of the isotropic expansion
  r.einstein_viscosity = asymptotic(Formula::einstein_viscosity, r.f);
  return r;
}

}  // namespace effcond
