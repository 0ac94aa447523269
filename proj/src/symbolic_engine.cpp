#include "effcond/symbolic_engine.hpp"

#include <algorithm>
#include <map>

namespace effcond::symb {

namespace {

// Polynomial arithmetic on bare term lists with degree truncation.
using Poly = std::vector<Term>;

Poly poly_mul(const Poly& a, const Poly& b, int max_deg) {
  Poly out;
  for (const Term& ta : a)
    for (const Term& tb : b) {
      if (ta.mono.r0_deg + tb.mono.r0_deg > max_deg) continue;
      out.push_back(multiply_terms(ta, tb));
    }
  return out;
}

// generalized binomial coefficient binom(h/2, k)
Rational half_binomial(int h, int k) {
  Rational acc{1, 1};
  for (int i = 0; i < k; ++i)
    acc = acc * (Rational::of(h, 2) - Rational::of(i)) / Rational::of(i + 1);
  return acc;
}

// r0^2 |x - a_n|^-2
Term inversion_weight(int n) {
  Term t;
  t.mono.r0_deg = 2;
  t.mono.norms.push_back({Point::x(), Point::center(n), -2});
  t.mono.normalize();
  return t;
}

// substitution polynomial for a coordinate factor (x)_axis under x -> s(x, a_n):
//   a_n_axis + w x_axis - w a_n_axis,  w = r0^2 |x - a_n|^-2
Poly coord_subst(int n, int axis) {
  Term t1;
  t1.mono.coords.push_back({Point::center(n), axis});
  Term t2 = inversion_weight(n);
  t2.mono.coords.push_back({Point::x(), axis});
  Term t3 = inversion_weight(n);
  t3.mono.coords.push_back({Point::center(n), axis});
  t3.mono.coeff = Rational{-1, 1};
  return {t1, t2, t3};
}

// substitution polynomial for |x - p|^h under x -> s(x, a_n):
//   |s - p|^2 = |a_n - p|^2 + delta,
//   delta = 2 r0^2 (a_n - p).(x - a_n) |x-a_n|^-2 + r0^4 |x-a_n|^-2
// expanded binomially in delta (delta = O(r0^2)).
Poly norm_subst(int n, Point p, int h, int max_deg) {
  if (p == Point::center(n))
    throw SeriesFailure("norm_subst: |x - a_n| under its own inversion");
  if (p.kind != Point::Kind::center && p.kind != Point::Kind::origin)
    throw SeriesFailure("norm_subst: unexpected point kind");

  Poly delta;
  for (int axis = 1; axis <= 3; ++axis) {
    // 2 r0^2 (a_n_ax - p_ax)(x_ax - a_n_ax) |x-a_n|^-2
    const Point an = Point::center(n);
    const CoordFactor left1{an, axis};
    const CoordFactor left2{p, axis};
    const CoordFactor right1{Point::x(), axis};
    const CoordFactor right2{an, axis};
    const std::pair<CoordFactor, Rational> lefts[] = {{left1, Rational{2, 1}},
                                                      {left2, Rational{-2, 1}}};
    const std::pair<CoordFactor, Rational> rights[] = {{right1, Rational{1, 1}},
                                                       {right2, Rational{-1, 1}}};
    for (const auto& [lc, lw] : lefts)
      for (const auto& [rc, rw] : rights) {
        if (p.kind == Point::Kind::origin && lc.p == p) continue;  // zero coordinate
        Term t = inversion_weight(n);
        t.mono.coeff = lw * rw;
        t.mono.coords.push_back(lc);
        t.mono.coords.push_back(rc);
        delta.push_back(t);
      }
  }
  {
    Term t4;  // r0^4 |x - a_n|^-2
    t4.mono.r0_deg = 4;
    t4.mono.norms.push_back({Point::x(), Point::center(n), -2});
    delta.push_back(t4);
  }

  // binomial expansion around the r0-free base |a_n - p|^2
  Poly out;
  Poly delta_pow = {Term{}};  // delta^0 = 1
  for (int k = 0;; ++k) {
    const Rational b = half_binomial(h, k);
    if (!b.is_zero()) {
      Term base;
      base.mono.norms.push_back({Point::center(n), p, h - 2 * k});
      base.mono.normalize();
      for (const Term& dp : delta_pow) {
        if (dp.mono.r0_deg > max_deg) continue;
        Term t = multiply_terms(base, dp);
        t.mono.coeff = t.mono.coeff * b;
        out.push_back(std::move(t));
      }
    }
    if (2 * (k + 1) > max_deg) break;
    delta_pow = poly_mul(delta_pow, delta, max_deg);
    if (delta_pow.empty()) break;
  }
  return out;
}

}  // namespace

SymExpr compose_with_inversion(const SymExpr& body, int new_index, int max_deg) {
  std::vector<Term> out;
  for (const Term& t : body.terms()) {
    // split x-dependent factors from the rest
    Term rest = t;
    std::vector<CoordFactor> xcoords;
    std::vector<NormFactor> xnorms;
    std::erase_if(rest.mono.coords, [&](const CoordFactor& c) {
      if (c.p.kind == Point::Kind::x) {
        xcoords.push_back(c);
        return true;
      }
      return false;
    });
    std::erase_if(rest.mono.norms, [&](const NormFactor& n) {
      const bool px = n.p.kind == Point::Kind::x;
      const bool qx = n.q.kind == Point::Kind::x;
      if (px && qx) throw SeriesFailure("compose_with_inversion: |x - x| factor");
      if (px || qx) {
        xnorms.push_back(px ? n : NormFactor{n.q, n.p, n.half_exp});
        return true;
      }
      return false;
    });

    Poly acc = {rest};
    for (const CoordFactor& c : xcoords)
      acc = poly_mul(acc, coord_subst(new_index, c.axis), max_deg);
    for (const NormFactor& n : xnorms)
      acc = poly_mul(acc, norm_subst(new_index, n.q, n.half_exp, max_deg), max_deg);
    out.insert(out.end(), acc.begin(), acc.end());
  }
  SymExpr e(std::move(out), body.anchor_label());
  return series_truncate(e, max_deg);
}

SymExpr FunctionalSystem::driving_term() const { return coord(Point::x(), axis); }

SymExpr FunctionalSystem::kernel(int index_label) const {
  Term t;
  t.mono.r0_deg = 1;
  t.mono.norms.push_back({Point::x(), Point::center(index_label), -1});
  t.mono.normalize();
  return SymExpr({t});
}

SymExpr FunctionalSystem::constant_term(int order) const {
  return negate(symbol('c', order));
}

SymExpr successive_approximation(const FunctionalSystem& sys, int q) {
  if (q < 0) throw DomainError("successive_approximation: q must be >= 0");
  if (sys.axis < 1 || sys.axis > 3) throw DomainError("successive_approximation: bad axis");

  SymExpr u = add(sys.driving_term(), sys.constant_term(0));  // u_0 = x_j - c_0
  for (int step = 1; step <= q; ++step) {
    const int m = step - 1;  // index introduced by this iteration
    SymExpr composed = compose_with_inversion(u, m, q - 1);  // kernel adds one r0 power
    SymExpr kernelized = mul(sys.kernel(m), composed);
    SymExpr wrapped = sum(kernelized, {m}, /*first_excludes_anchor=*/true);
    u = series_truncate(add(add(sys.driving_term(), sys.constant_term(step)), negate(wrapped)),
                        q);
  }
  return u;
}

SymExpr evaluate_at_anchor(const SymExpr& e, int q) {
  std::vector<Term> out;
  for (Term t : e.terms()) {
    for (CoordFactor& c : t.mono.coords)
      if (c.p.kind == Point::Kind::x) c.p = Point::center(q);
    for (NormFactor& n : t.mono.norms) {
      if (n.p.kind == Point::Kind::x) n.p = Point::center(q);
      if (n.q.kind == Point::Kind::x) n.q = Point::center(q);
    }
    out.push_back(std::move(t));
  }
  SymExpr r(std::move(out), q);
  return r;
}

SymExpr constants_elimination(const FunctionalSystem& sys, int q) {
  SymExpr u = successive_approximation(sys, q);

  // condition u_q(a_q) = 0 with c_m = a_{m j} - z_m
  SymExpr zeq = evaluate_at_anchor(u, q);
  for (int m : zeq.symbol_indices('c')) {
    const SymExpr repl = sub(coord(Point::center(m), sys.axis), symbol('z', m));
    zeq = substitute_symbol(zeq, 'c', m, repl);
  }

  // solve for the bare z_q term (the equation is linear with unit coefficient)
  Rational gamma{0, 1};
  std::vector<Term> rest;
  for (const Term& t : zeq.terms()) {
    const bool is_bare_zq = t.chain.empty() && t.mono.syms.size() == 1 &&
                            t.mono.syms[0] == SymFactor{'z', q} && t.mono.coords.empty() &&
                            t.mono.norms.empty() && t.mono.r0_deg == 0;
    if (is_bare_zq)
      gamma = gamma + t.mono.coeff;
    else
      rest.push_back(t);
  }
  if (gamma.is_zero()) throw NonSolvable("constants_elimination: no linear z_q term");
  for (const Term& t : rest)
    for (const SymFactor& s : t.mono.syms)
      if (s == SymFactor{'z', q})
        throw NonSolvable("constants_elimination: z_q appears outside the linear term");
  SymExpr zsol = scale(SymExpr(std::move(rest), q), Rational{-1, 1} / gamma);
  zsol = series_truncate(zsol, q);

  // successive substitution of the shifted solution until free of z
  for (int pass = 0; pass <= q + 2; ++pass) {
    const std::vector<int> zidx = zsol.symbol_indices('z');
    if (zidx.empty()) break;
    if (pass == q + 2) throw NonSolvable("constants_elimination: z elimination did not settle");
    const SymExpr snapshot = zsol;
    for (int m : zidx) {
      const SymExpr repl = shift_center_indices(snapshot, m - q);
      zsol = substitute_symbol(zsol, 'z', m, repl);
    }
    zsol = series_truncate(zsol, q);
  }
  return zsol;
}

SymExpr procedure_u(int q, int axis) {
  if (q < 1 || q > 6) throw DomainError("procedure_u: supported truncation range is 1..6");
  FunctionalSystem sys{axis};
  SymExpr u = successive_approximation(sys, q);
  const SymExpr zsol = constants_elimination(sys, q);

  for (int m : u.symbol_indices('c')) {
    const SymExpr repl =
        sub(coord(Point::center(m), axis), shift_center_indices(zsol, m - q));
    u = substitute_symbol(u, 'c', m, repl);
  }
  u.set_anchor_label(q);
  u = series_truncate(u, q);
  u = canonicalize(u);
  if (u.has_symbol_family('c') || u.has_symbol_family('z'))
    throw NonSolvable("procedure_u: output still references boundary constants");
  return u;
}

}  // namespace effcond::symb
