// effcond: effective conductivity of triply periodic suspensions of equal
// highly conducting spheres, from explicit sphere coordinates.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effcond/conductivity.hpp"
#include "effcond/eisenstein.hpp"
#include "effcond/fixed_point.hpp"
#include "effcond/geometry.hpp"
#include "effcond/lattice_sums.hpp"
#include "effcond/manifest.hpp"
#include "effcond/structural_sums.hpp"
#include "effcond/symbolic_engine.hpp"

namespace {

using namespace effcond;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  }
};

void emit(const KeyValueWriter& w, const std::string& out_path) {
  if (out_path.empty())
    std::cout << w.str();
  else
    w.write(out_path);
}

void add_structural_block(KeyValueWriter& w, const StructuralSums& s) {
  w.add("e11", s.e11);
  w.add("e12", s.e12);
  w.add("e13", s.e13);
  w.add("e11_star", s.e11_star);
  w.add("e11_dstar", s.e11_dstar);
  for (const auto& [key, value] : s.conv)
    w.add("conv_" + std::to_string(key.first) + "_" + std::to_string(key.second), value);
}

int run_generate(std::size_t n, double f, std::uint64_t seed, std::uint64_t max_attempts,
                 const std::string& out) {
  Timer timer;
  RsaOptions opts;
  opts.max_attempts_per_sphere = max_attempts;
  RsaStats stats;
  SphereConfiguration config = generate_rsa(n, f, seed, opts, &stats);
  RunManifest m;
  m.command = "generate";
  m.set("n", static_cast<long long>(n));
  m.set("f", f);
  m.set("seed", static_cast<long long>(seed));
  m.set("attempts", static_cast<long long>(stats.attempts));
  write_packing(config, out, m.comment_lines());
  std::cerr << "generated " << n << " spheres in " << timer.ms() << " ms ("
            << stats.attempts << " attempts)\n";
  return 0;
}

int run_lattice_sums(int rmax, const std::string& out) {
  Timer timer;
  const LatticeSumTable t = coulombic_table(rmax);
  RunManifest m;
  m.command = "lattice-sums";
  m.set("rmax", static_cast<long long>(rmax));
  KeyValueWriter w(m);
  w.add("L4", t.L4);
  w.add("L6", t.L6);
  w.add("L8", t.L8);
  w.add("L10", t.L10);
  w.add("rmax", static_cast<long long>(rmax));
  emit(w, out);
  std::cerr << "lattice sums in " << timer.ms() << " ms\n";
  return 0;
}

int run_structural_sums(const std::string& in, int rmax, int dmax, const std::string& out) {
  Timer timer;
  const SphereConfiguration config = read_packing(in);
  const EisensteinEvaluator ev(coulombic_table(rmax), dmax);
  const StructuralSums s = compute_structural_sums(config, ev);
  RunManifest m;
  m.command = "structural-sums";
  m.set("in", in);
  m.set("rmax", static_cast<long long>(rmax));
  m.set("dmax", static_cast<long long>(dmax));
  KeyValueWriter w(m);
  w.add("n", static_cast<long long>(s.n));
  add_structural_block(w, s);
  emit(w, out);
  std::cerr << "structural sums in " << timer.ms() << " ms\n";
  return 0;
}

int run_conductivity(const std::string& in, double beta, double lambda1, int rmax, int dmax,
                     const std::string& out) {
  Timer timer;
  const SphereConfiguration config = read_packing(in);
  const EisensteinEvaluator ev(coulombic_table(rmax), dmax);
  const ConductivityReport r = conductivity_report(config, ev, beta, lambda1);
  RunManifest m;
  m.command = "conductivity";
  m.set("in", in);
  m.set("beta", beta);
  if (lambda1 > 0) m.set("lambda1", lambda1);
  m.set("rmax", static_cast<long long>(rmax));
  m.set("dmax", static_cast<long long>(dmax));
  KeyValueWriter w(m);
  w.add("n", static_cast<long long>(r.n));
  w.add("f", r.f);
  w.add("beta", r.beta);
  w.add("truncation_order", std::string("O(f^10/3)"));
  w.add("lambda_11", r.lambda_11);
  w.add("lambda_12", r.lambda_12);
  w.add("lambda_13", r.lambda_13);
  w.add("lambda_22", r.lambda_22);
  w.add("lambda_33", r.lambda_33);
  w.add("lambda_23", r.lambda_23);
  add_structural_block(w, r.sums);
  w.add("clausius_mossotti", r.cma);
  w.add("simple_cubic_cma", r.simple_cubic_cma);
  w.add("berdichevsky_sc", r.berdichevsky_sc);
  w.add("isotropic_rsa", r.isotropic_rsa);
  w.add("combined_rsa", r.combined_rsa);
  w.add("jeffrey", r.jeffrey_value);
  w.add("jeffrey_f2_coeff", r.jeffrey_f2);
  w.add("jeffrey_f2_coeff_truncated", jeffrey_f2_coefficient_truncated(lambda1));
  w.add("this_work_f2_coeff", r.this_work_f2);
  w.add("einstein_viscosity", r.einstein_viscosity);
  emit(w, out);
  std::cerr << "conductivity in " << timer.ms() << " ms\n";
  return 0;
}

int run_anisotropy(const std::string& in, int rmax, int dmax, const std::string& out) {
  Timer timer;
  const SphereConfiguration config = read_packing(in);
  const EisensteinEvaluator ev(coulombic_table(rmax), dmax);
  const AnisotropyResult a = anisotropy(config, ev);
  RunManifest m;
  m.command = "anisotropy";
  m.set("in", in);
  m.set("rmax", static_cast<long long>(rmax));
  m.set("dmax", static_cast<long long>(dmax));
  KeyValueWriter w(m);
  w.add("e11", a.e11);
  w.add("e11_star", a.e11_star);
  w.add("e11_dstar", a.e11_dstar);
  w.add("e12", a.e12);
  w.add("e13", a.e13);
  w.add("e23", a.e23);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      w.add("lambda2_" + std::to_string(i + 1) + std::to_string(j + 1), a.lambda2[i][j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      w.add("dev_" + std::to_string(i + 1) + std::to_string(j + 1), a.deviator[i][j]);
  w.add("kappa", a.kappa);
  const double scale = std::pow(9.0 / (4.0 * std::numbers::pi), 3);
  w.add("kappa_normalized", a.kappa / scale);
  emit(w, out);
  std::cerr << "anisotropy in " << timer.ms() << " ms\n";
  return 0;
}

int run_expand(int order, int axis, const std::string& format, const std::string& out) {
  Timer timer;
  const symb::SymExpr u = symb::procedure_u(order, axis);
  RunManifest m;
  m.command = "expand";
  m.set("order", static_cast<long long>(order));
  m.set("axis", static_cast<long long>(axis));
  m.set("format", format);
  KeyValueWriter w(m);
  if (format == "sexpr")
    w.add_raw_line(symb::to_sexpr(u));
  else
    w.add_raw_line(symb::to_text(u));
  emit(w, out);
  std::cerr << "expand in " << timer.ms() << " ms\n";
  return 0;
}

// deterministic cluster of n spheres with pairwise distances >= 1,
// jittered by the seed
std::vector<Vec3> random_cluster(int n, std::uint64_t seed) {
  std::vector<Vec3> pts;
  std::uint64_t ctr = 0;
  while (static_cast<int>(pts.size()) < n) {
    Vec3 c{3.0 * counter_uniform(seed, ctr) - 1.5, 3.0 * counter_uniform(seed, ctr + 1) - 1.5,
           3.0 * counter_uniform(seed, ctr + 2) - 1.5};
    ctr += 3;
    bool ok = true;
    for (const Vec3& p : pts)
      if ((c - p).norm() < 1.0) ok = false;
    if (ok) pts.push_back(c);
  }
  return pts;
}

int run_verify_symbolic(int n, double r0, std::uint64_t seed, const std::string& out) {
  Timer timer;
  const std::vector<Vec3> centers = random_cluster(n, seed);
  RunManifest m;
  m.command = "verify-symbolic";
  m.set("n", static_cast<long long>(n));
  m.set("r0", r0);
  m.set("seed", static_cast<long long>(seed));
  KeyValueWriter w(m);

  const FixedPointResult oracle = fixed_point_oracle(centers, r0, 1);
  w.add("oracle_sweeps", static_cast<long long>(oracle.sweeps));
  w.add("oracle_residual", oracle.residual);

  for (int q : {3, 6}) {
    const symb::SymExpr uq = symb::procedure_u(q, 1);
    auto u_eval = [&](int k, const Vec3& x) {
      symb::EvalContext ctx{centers, r0, k, x};
      return symb::numeric_eval(uq, ctx);
    };
    const double d1 = functional_equation_defect(centers, r0, 1, u_eval);
    auto u_eval_half = [&](int k, const Vec3& x) {
      symb::EvalContext ctx{centers, r0 / 2, k, x};
      return symb::numeric_eval(uq, ctx);
    };
    const double d2 = functional_equation_defect(centers, r0 / 2, 1, u_eval_half);
    const double order = std::log2(d1 / d2);
    w.add("defect_q" + std::to_string(q), d1);
    w.add("defect_q" + std::to_string(q) + "_half", d2);
    w.add("residual_order_q" + std::to_string(q), order);
    // the truncation guarantees at least q+1; the expansion skips the orders
    // between the retained powers of r0^3, so measured orders come out higher
    w.add("residual_order_q" + std::to_string(q) + "_at_least",
          std::string(order >= q + 1 - 0.3 ? "yes" : "no"));
  }

  // oracle constants vs the symbolic elimination at q=3
  const symb::SymExpr zsol = symb::constants_elimination(symb::FunctionalSystem{1}, 3);
  double worst_c = 0;
  for (int k = 0; k < n; ++k) {
    symb::EvalContext ctx{centers, r0, k, centers[static_cast<std::size_t>(k)]};
    const double c_sym = centers[static_cast<std::size_t>(k)].x - symb::numeric_eval(zsol, ctx);
    worst_c = std::max(worst_c, std::abs(c_sym - oracle.c[static_cast<std::size_t>(k)]));
  }
  w.add("c_mismatch_q3", worst_c);
  w.add("c_mismatch_q3_over_r0_4", worst_c / std::pow(r0, 4));
  emit(w, out);
  std::cerr << "verify-symbolic in " << timer.ms() << " ms\n";
  return 0;
}

int run_reproduce_table1(const std::vector<std::uint64_t>& seeds, std::size_t n, double f,
                         int rmax, int dmax, const std::string& out_dir) {
  Timer timer;
  std::filesystem::create_directories(out_dir);
  const EisensteinEvaluator ev(coulombic_table(rmax), dmax);
  const double w3 = 3.0 / (4.0 * std::numbers::pi);

  RunManifest m;
  m.command = "reproduce-table1";
  m.set("n", static_cast<long long>(n));
  m.set("f", f);
  m.set("rmax", static_cast<long long>(rmax));
  m.set("dmax", static_cast<long long>(dmax));
  {
    std::string s;
    for (std::uint64_t seed : seeds) s += (s.empty() ? "" : ",") + std::to_string(seed);
    m.set("seeds", s);
  }
  KeyValueWriter w(m);
  w.add_raw_line("# columns: seed e11 e11*11 e12*12 e13*13 f3_coeff");

  double mean_e11 = 0, mean_1111 = 0, mean_1212 = 0, mean_1313 = 0;
  for (std::uint64_t seed : seeds) {
    const SphereConfiguration config = generate_rsa(n, f, seed);
    write_packing(config, out_dir + "/rsa_seed" + std::to_string(seed) + ".pack",
                  m.comment_lines());
    const StructuralSums s = compute_structural_sums(config, ev);
    const double c1111 = s.conv.at({11, 11});
    const double c1212 = s.conv.at({12, 12});
    const double c1313 = s.conv.at({13, 13});
    const double f3 = 3.0 * w3 * w3 * (c1111 + 3.0 * (c1212 + c1313));
    mean_e11 += s.e11;
    mean_1111 += c1111;
    mean_1212 += c1212;
    mean_1313 += c1313;
    char row[256];
    std::snprintf(row, sizeof(row), "row_seed%llu=%.6f %.6f %.6f %.6f %.6f",
                  static_cast<unsigned long long>(seed), s.e11, c1111, c1212, c1313, f3);
    w.add_raw_line(row);
    std::cerr << "seed " << seed << " done (" << timer.ms() << " ms)\n";
  }
  const double count = static_cast<double>(seeds.size());
  mean_e11 /= count;
  mean_1111 /= count;
  mean_1212 /= count;
  mean_1313 /= count;
  const double mean_f3 = 3.0 * w3 * w3 * (mean_1111 + 3.0 * (mean_1212 + mean_1313));
  w.add("mean_e11", mean_e11);
  w.add("mean_conv_11_11", mean_1111);
  w.add("mean_conv_12_12", mean_1212);
  w.add("mean_conv_13_13", mean_1313);
  w.add("mean_f3_coeff", mean_f3);
  w.write(out_dir + "/table1_summary.txt");
  std::cout << w.str();
  std::cerr << "reproduce-table1 in " << timer.ms() << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effective conductivity of random suspensions of highly conducting spheres"};
  app.require_subcommand(1);

  bool fast = false;
  app.add_flag("--fast", fast, "use R_max=60 defaults for quick runs");

  // generate
  auto* gen = app.add_subcommand("generate", "generate an RSA packing");
  std::size_t gen_n = 1000;
  double gen_f = 0.3;
  std::uint64_t gen_seed = 1, gen_attempts = 1'000'000;
  std::string gen_out = "packing.pack";
  gen->add_option("--n", gen_n, "number of spheres");
  gen->add_option("--f", gen_f, "concentration");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--max-attempts", gen_attempts, "attempt cap per sphere");
  gen->add_option("--out", gen_out, "output packing file");

  // lattice-sums
  auto* lat = app.add_subcommand("lattice-sums", "Coulombic lattice sum table");
  int lat_rmax = 250;
  std::string lat_out;
  lat->add_option("--rmax", lat_rmax, "truncation radius");
  lat->add_option("--out", lat_out, "output file (stdout if omitted)");

  // structural-sums
  auto* str = app.add_subcommand("structural-sums", "structural sums of a packing");
  std::string str_in, str_out;
  int str_rmax = 250, str_dmax = 8;
  str->add_option("--in", str_in, "packing file")->required();
  str->add_option("--rmax", str_rmax, "lattice sum truncation radius");
  str->add_option("--dmax", str_dmax, "expansion degree (2,4,6,8)");
  str->add_option("--out", str_out, "output file (stdout if omitted)");

  // conductivity
  auto* con = app.add_subcommand("conductivity", "effective conductivity report");
  std::string con_in, con_out;
  double con_beta = 1.0, con_lambda1 = -1.0;
  int con_rmax = 250, con_dmax = 8;
  con->add_option("--in", con_in, "packing file")->required();
  con->add_option("--beta", con_beta, "contrast parameter");
  con->add_option("--lambda1", con_lambda1, "inclusion conductivity (<0 = infinite)");
  con->add_option("--rmax", con_rmax, "lattice sum truncation radius");
  con->add_option("--dmax", con_dmax, "expansion degree (2,4,6,8)");
  con->add_option("--out", con_out, "output file (stdout if omitted)");

  // anisotropy
  auto* ani = app.add_subcommand("anisotropy", "second-order tensor and kappa");
  std::string ani_in, ani_out;
  int ani_rmax = 250, ani_dmax = 8;
  ani->add_option("--in", ani_in, "packing file")->required();
  ani->add_option("--rmax", ani_rmax, "lattice sum truncation radius");
  ani->add_option("--dmax", ani_dmax, "expansion degree (2,4,6,8)");
  ani->add_option("--out", ani_out, "output file (stdout if omitted)");

  // expand
  auto* exp = app.add_subcommand("expand", "symbolic series solution");
  int exp_order = 6, exp_axis = 1;
  std::string exp_format = "text", exp_out;
  exp->add_option("--order", exp_order, "truncation order q (1..6)");
  exp->add_option("--axis", exp_axis, "flux axis j (1..3)");
  exp->add_option("--format", exp_format, "text or sexpr")
      ->check(CLI::IsMember({"text", "sexpr"}));
  exp->add_option("--out", exp_out, "output file (stdout if omitted)");

  // verify-symbolic
  auto* ver = app.add_subcommand("verify-symbolic", "oracle comparison for the series solution");
  int ver_n = 3;
  double ver_r0 = 0.05;
  std::uint64_t ver_seed = 7;
  std::string ver_out;
  ver->add_option("--n", ver_n, "cluster size (<= 10)");
  ver->add_option("--r0", ver_r0, "sphere radius");
  ver->add_option("--seed", ver_seed, "cluster seed");
  ver->add_option("--out", ver_out, "output file (stdout if omitted)");

  // reproduce-table1
  auto* tab = app.add_subcommand("reproduce-table1", "structural sum statistics over RSA seeds");
  std::vector<std::uint64_t> tab_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t tab_n = 1000;
  double tab_f = 0.3;
  int tab_rmax = 250, tab_dmax = 8;
  std::string tab_out = "table1_out";
  tab->add_option("--seeds", tab_seeds, "list of seeds")->delimiter(',');
  tab->add_option("--n", tab_n, "spheres per sample");
  tab->add_option("--f", tab_f, "concentration");
  tab->add_option("--rmax", tab_rmax, "lattice sum truncation radius");
  tab->add_option("--dmax", tab_dmax, "expansion degree");
  tab->add_option("--out-dir", tab_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (fast) {
    lat_rmax = std::min(lat_rmax, 60);
    str_rmax = std::min(str_rmax, 60);
    con_rmax = std::min(con_rmax, 60);
    ani_rmax = std::min(ani_rmax, 60);
    tab_rmax = std::min(tab_rmax, 60);
  }

  try {
    if (gen->parsed()) return run_generate(gen_n, gen_f, gen_seed, gen_attempts, gen_out);
    if (lat->parsed()) return run_lattice_sums(lat_rmax, lat_out);
    if (str->parsed()) return run_structural_sums(str_in, str_rmax, str_dmax, str_out);
    if (con->parsed())
      return run_conductivity(con_in, con_beta, con_lambda1, con_rmax, con_dmax, con_out);
    if (ani->parsed()) return run_anisotropy(ani_in, ani_rmax, ani_dmax, ani_out);
    if (exp->parsed()) return run_expand(exp_order, exp_axis, exp_format, exp_out);
    if (ver->parsed()) return run_verify_symbolic(ver_n, ver_r0, ver_seed, ver_out);
    if (tab->parsed())
      return run_reproduce_table1(tab_seeds, tab_n, tab_f, tab_rmax, tab_dmax, tab_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
