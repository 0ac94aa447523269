#pragma once

#include <array>
#include <string>

#include "effcond/structural_sums.hpp"

namespace effcond {

using Mat3 = std::array<std::array<double, 3>, 3>;

// lambda_11 to O(f^{10/3}):
//   1 + 3f + 3f^2 (3/4pi) e11 + 3f^3 (3/4pi)^2 [e11*11 + 3(e12*12 + e13*13)].
double lambda11(const StructuralSums& sums, double f);

// lambda_12 to O(f^{10/3}):
//   9f^2 [(3/4pi) e12 + f (3/4pi)^2 (e12*11 + e12*22 + e13*13 + e23*13)];
// lambda_13 by interchanging subscripts 2 and 3.
double lambda12(const StructuralSums& sums, double f);
double lambda13(const StructuralSums& sums, double f);

struct AnisotropyResult {
  Mat3 lambda2{};   // second-order tensor Lambda^(2)
  Mat3 deviator{};  // its traceless part
  double kappa{0};  // |det deviator|
  double e11{0}, e11_star{0}, e11_dstar{0};
  double e12{0}, e13{0}, e23{0};
};

// Second-order tensor, deviator and anisotropy coefficient kappa from the
// pair structural sums of a configuration.
AnisotropyResult anisotropy(const SphereConfiguration& config, const EisensteinEvaluator& ev);

enum class Formula {
  clausius_mossotti,   // (1 + 2 beta f) / (1 - beta f)
  einstein_viscosity,  // 1 + (5/2) f
  jeffrey,             // truncated two-reflection bracket as printed
  simple_cubic_cma,    // (1 + 2f) / (1 - f)
  berdichevsky_sc,     // simple cubic with f^{13/3}, f^{17/3} corrections
  isotropic_rsa,       // 1 + 3f + 3f^2 + 4.80654 f^3
  combined_rsa,        // CMA pole + 1.80654 f^3 + Berdichevsky tail terms
};

struct FormulaParams {
  double beta = 1.0;      // contrast (lambda1 - lambda)/(lambda1 + 2 lambda)
  double lambda1 = -1.0;  // inclusion conductivity; < 0 means infinite
};

// Closed-form reference values; throws DomainError for f >= 1.
double asymptotic(Formula id, double f, const FormulaParams& params = {});

// f^2 coefficient of Jeffrey's formula for perfectly conducting spheres.
// The printed two-term bracket truncates Jeffrey's reflection series; the
// accepted full-series value for beta = 1 is 4.51 (the number the series
// evaluates to in the source work), which is what a report should quote.
double jeffrey_f2_coefficient_full();
// f^2 coefficient obtained from the truncated bracket as printed.
double jeffrey_f2_coefficient_truncated(double lambda1 = -1.0);

struct ConductivityReport {
  double f{0};
  double beta{1.0};
  std::size_t n{0};
  double lambda_11{0}, lambda_12{0}, lambda_13{0};
  double lambda_22{0}, lambda_33{0}, lambda_23{0};  // from starred/pair sums, O(f^2)
  AnisotropyResult aniso;
  StructuralSums sums;
  // reference values at this f
  double cma{0}, simple_cubic_cma{0}, berdichevsky_sc{0};
  double isotropic_rsa{0}, combined_rsa{0};
  double jeffrey_value{0};
  double jeffrey_f2{0}, this_work_f2{0};
  double einstein_viscosity{0};
};

ConductivityReport conductivity_report(const SphereConfiguration& config,
                                       const EisensteinEvaluator& ev, double beta = 1.0,
                                       double lambda1 = -1.0);

}  // namespace effcond
