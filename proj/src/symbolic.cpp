#include "effcond/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace effcond::symb {

// --- Rational ---------------------------------------------------------------

namespace {

long long checked_ll(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::of(long long n, long long d) {
  if (d == 0) throw DomainError("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return {n, d};
}

Rational Rational::operator+(const Rational& o) const {
  const long long gd = std::gcd(den, o.den);
  const __int128 n2 = static_cast<__int128>(num) * (o.den / gd) +
                      static_cast<__int128>(o.num) * (den / gd);
  const __int128 d2 = static_cast<__int128>(den / gd) * o.den;
  return of(checked_ll(n2, "Rational add overflow"), checked_ll(d2, "Rational add overflow"));
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational{-o.num, o.den}; }

Rational Rational::operator*(const Rational& o) const {
  const long long g1 = std::gcd(num < 0 ? -num : num, o.den);
  const long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  const __int128 n = static_cast<__int128>(num / g1) * (o.num / g2);
  const __int128 d = static_cast<__int128>(den / g2) * (o.den / g1);
  return of(checked_ll(n, "Rational mul overflow"), checked_ll(d, "Rational mul overflow"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw DomainError("Rational: division by zero");
  return *this * Rational::of(o.den, o.num);
}

// --- Monomial ---------------------------------------------------------------

void Monomial::normalize() {
  std::sort(coords.begin(), coords.end());
  std::sort(syms.begin(), syms.end());
  for (NormFactor& n : norms)
    if (!(n.p < n.q)) std::swap(n.p, n.q);
  std::sort(norms.begin(), norms.end(),
            [](const NormFactor& a, const NormFactor& b) {
              return std::tie(a.p, a.q) < std::tie(b.p, b.q);
            });
  std::vector<NormFactor> merged;
  for (const NormFactor& n : norms) {
    if (!merged.empty() && merged.back().p == n.p && merged.back().q == n.q)
      merged.back().half_exp += n.half_exp;
    else
      merged.push_back(n);
  }
  std::erase_if(merged, [](const NormFactor& n) { return n.half_exp == 0; });
  norms = std::move(merged);
}

namespace {

bool same_shape(const Term& a, const Term& b) {
  return a.chain == b.chain && a.mono.r0_deg == b.mono.r0_deg && a.mono.coords == b.mono.coords &&
         a.mono.norms == b.mono.norms && a.mono.syms == b.mono.syms;
}

// deterministic ordering of terms for canonical output
bool term_less(const Term& a, const Term& b) {
  auto key = [](const Term& t) {
    return std::make_tuple(t.mono.r0_deg, t.chain.size(), t.mono.syms.size());
  };
  if (key(a) != key(b)) return key(a) < key(b);
  if (a.mono.syms != b.mono.syms) return a.mono.syms < b.mono.syms;
  if (a.mono.coords != b.mono.coords) return a.mono.coords < b.mono.coords;
  auto nk = [](const NormFactor& n) { return std::make_tuple(n.p, n.q, n.half_exp); };
  const std::size_t nn = std::min(a.mono.norms.size(), b.mono.norms.size());
  for (std::size_t i = 0; i < nn; ++i)
    if (nk(a.mono.norms[i]) != nk(b.mono.norms[i])) return nk(a.mono.norms[i]) < nk(b.mono.norms[i]);
  if (a.mono.norms.size() != b.mono.norms.size())
    return a.mono.norms.size() < b.mono.norms.size();
  for (std::size_t i = 0; i < a.chain.size(); ++i) {
    if (a.chain[i].label != b.chain[i].label) return a.chain[i].label < b.chain[i].label;
    if (a.chain[i].excl != b.chain[i].excl) return a.chain[i].excl < b.chain[i].excl;
  }
  return std::make_pair(a.mono.coeff.num, a.mono.coeff.den) <
         std::make_pair(b.mono.coeff.num, b.mono.coeff.den);
}

}  // namespace

SymExpr merge_terms(std::vector<Term> terms, int anchor) {
  for (Term& t : terms) t.mono.normalize();
  std::sort(terms.begin(), terms.end(), term_less);
  std::vector<Term> out;
  for (Term& t : terms) {
    if (t.mono.coeff.is_zero()) continue;
    if (!out.empty() && same_shape(out.back(), t)) {
      out.back().mono.coeff = out.back().mono.coeff + t.mono.coeff;
      if (out.back().mono.coeff.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  SymExpr e;
  e.terms_ = std::move(out);
  e.anchor_label_ = anchor;
  return e;
}

SymExpr::SymExpr(std::vector<Term> terms, int anchor_label) {
  *this = merge_terms(std::move(terms), anchor_label);
}

int SymExpr::max_r0_degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.mono.r0_deg);
  return d;
}

bool SymExpr::has_symbol_family(char family) const {
  for (const Term& t : terms_)
    for (const SymFactor& s : t.mono.syms)
      if (s.family == family) return true;
  return false;
}

std::vector<int> SymExpr::symbol_indices(char family) const {
  std::set<int> idx;
  for (const Term& t : terms_)
    for (const SymFactor& s : t.mono.syms)
      if (s.family == family) idx.insert(s.index);
  return {idx.begin(), idx.end()};
}

// --- builders ---------------------------------------------------------------

SymExpr zero() { return {}; }

SymExpr constant(const Rational& r) {
  Term t;
  t.mono.coeff = r;
  return SymExpr({t});
}

SymExpr r0_power(int deg) {
  Term t;
  t.mono.r0_deg = deg;
  return SymExpr({t});
}

SymExpr coord(Point p, int axis) {
  Term t;
  t.mono.coords.push_back({p, axis});
  return SymExpr({t});
}

SymExpr coord_diff(Point p, Point q, int axis) { return sub(coord(p, axis), coord(q, axis)); }

SymExpr norm_power(Point p, Point q, int half_exp) {
  if (p == q) throw DomainError("norm_power: coincident points");
  Term t;
  t.mono.norms.push_back({p, q, half_exp});
  return SymExpr({t});
}

SymExpr symbol(char family, int index) {
  if (family != 'c' && family != 'z') throw UnboundSymbol("unknown symbol family");
  Term t;
  t.mono.syms.push_back({family, index});
  return SymExpr({t});
}

SymExpr dot_diff(Point p, Point q, Point r, Point s) {
  SymExpr acc = zero();
  for (int axis = 1; axis <= 3; ++axis)
    acc = add(acc, mul(coord_diff(p, q, axis), coord_diff(r, s, axis)));
  return acc;
}

namespace {

int merged_anchor(int a, int b) {
  if (a == SymExpr::kNoAnchor) return b;
  if (b == SymExpr::kNoAnchor) return a;
  if (a != b) throw IndexCollision("expressions with different anchors");
  return a;
}

}  // namespace

SymExpr add(const SymExpr& a, const SymExpr& b) {
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return merge_terms(std::move(terms), merged_anchor(a.anchor_label(), b.anchor_label()));
}

SymExpr negate(const SymExpr& a) { return scale(a, Rational{-1, 1}); }

SymExpr sub(const SymExpr& a, const SymExpr& b) { return add(a, negate(b)); }

SymExpr scale(const SymExpr& a, const Rational& r) {
  std::vector<Term> terms = a.terms();
  for (Term& t : terms) t.mono.coeff = t.mono.coeff * r;
  return merge_terms(std::move(terms), a.anchor_label());
}

Term multiply_terms(const Term& a, const Term& b) {
  Term out;
  out.mono.coeff = a.mono.coeff * b.mono.coeff;
  out.mono.r0_deg = a.mono.r0_deg + b.mono.r0_deg;
  out.mono.coords = a.mono.coords;
  out.mono.coords.insert(out.mono.coords.end(), b.mono.coords.begin(), b.mono.coords.end());
  out.mono.norms = a.mono.norms;
  out.mono.norms.insert(out.mono.norms.end(), b.mono.norms.begin(), b.mono.norms.end());
  out.mono.syms = a.mono.syms;
  out.mono.syms.insert(out.mono.syms.end(), b.mono.syms.begin(), b.mono.syms.end());
  // concatenated index lists; each part keeps its own exclusions
  out.chain = a.chain;
  for (const SumIndex& s : b.chain) {
    for (const SumIndex& e : out.chain)
      if (e.label == s.label) throw IndexCollision("product shares summation index");
    out.chain.push_back(s);
  }
  return out;
}

SymExpr mul(const SymExpr& a, const SymExpr& b) {
  std::vector<Term> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms()) terms.push_back(multiply_terms(ta, tb));
  return merge_terms(std::move(terms), merged_anchor(a.anchor_label(), b.anchor_label()));
}

SymExpr pow(const SymExpr& a, int exponent) {
  if (exponent < 0) throw DomainError("pow: negative exponent");
  SymExpr acc = constant(Rational{1, 1});
  for (int i = 0; i < exponent; ++i) acc = mul(acc, a);
  return acc;
}

SymExpr sum(const SymExpr& body, const std::vector<int>& indices, bool first_excludes_anchor) {
  std::vector<SumIndex> wrap;
  wrap.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Exclusion ex = (i == 0) ? (first_excludes_anchor ? Exclusion::anchor : Exclusion::none)
                                  : Exclusion::previous;
    wrap.push_back({indices[i], ex});
  }
  for (std::size_t i = 0; i < wrap.size(); ++i)
    for (std::size_t j = i + 1; j < wrap.size(); ++j)
      if (wrap[i].label == wrap[j].label) throw IndexCollision("duplicate summation index");

  std::vector<Term> terms;
  for (Term t : body.terms()) {
    // flatten: the existing chain becomes the inner part of the new one
    for (const SumIndex& s : t.chain)
      for (const SumIndex& w : wrap)
        if (s.label == w.label) throw IndexCollision("sum over an index already in use");
    std::vector<SumIndex> chain = wrap;
    if (!t.chain.empty()) {
      // flattened inner sums chain onto the new indices: what excluded the
      // inner expression's anchor now excludes its predecessor
      std::vector<SumIndex> inner = t.chain;
      inner.front().excl = Exclusion::previous;
      chain.insert(chain.end(), inner.begin(), inner.end());
    }
    t.chain = std::move(chain);
    terms.push_back(std::move(t));
  }
  return merge_terms(std::move(terms), body.anchor_label());
}

// --- rule operations ---------------------------------------------------------

SymExpr simplify(const SymExpr& e) { return merge_terms(e.terms(), e.anchor_label()); }

SymExpr expand(const SymExpr& e) { return simplify(e); }

SymExpr series_truncate(const SymExpr& e, int q) {
  std::vector<Term> keep;
  for (const Term& t : e.terms())
    if (t.mono.r0_deg <= q) keep.push_back(t);
  return merge_terms(std::move(keep), e.anchor_label());
}

namespace {

Point relabeled(Point p, const std::map<int, int>& relabel) {
  if (p.kind != Point::Kind::center) return p;
  auto it = relabel.find(p.index);
  return it == relabel.end() ? p : Point::center(it->second);
}

}  // namespace

SymExpr canonicalize(const SymExpr& e) {
  const int base = e.anchor_label() == SymExpr::kNoAnchor ? 0 : e.anchor_label();
  std::vector<Term> out;
  for (const Term& t : e.terms()) {
    std::map<int, int> relabel;
    Term nt = t;
    for (std::size_t i = 0; i < nt.chain.size(); ++i) {
      relabel[nt.chain[i].label] = base - 1 - static_cast<int>(i);
      nt.chain[i].label = base - 1 - static_cast<int>(i);
    }
    for (CoordFactor& c : nt.mono.coords) c.p = relabeled(c.p, relabel);
    for (NormFactor& n : nt.mono.norms) {
      n.p = relabeled(n.p, relabel);
      n.q = relabeled(n.q, relabel);
    }
    for (SymFactor& s : nt.mono.syms) {
      auto it = relabel.find(s.index);
      if (it != relabel.end()) s.index = it->second;
    }
    out.push_back(std::move(nt));
  }
  return merge_terms(std::move(out), e.anchor_label());
}

bool structurally_equal(const SymExpr& a, const SymExpr& b) {
  const SymExpr ca = canonicalize(a);
  const SymExpr cb = canonicalize(b);
  if (ca.terms().size() != cb.terms().size()) return false;
  for (std::size_t i = 0; i < ca.terms().size(); ++i) {
    const Term& ta = ca.terms()[i];
    const Term& tb = cb.terms()[i];
    if (!(ta.mono.coeff == tb.mono.coeff) || !same_shape(ta, tb)) return false;
  }
  return true;
}

SymExpr shift_center_indices(const SymExpr& e, int delta) {
  std::vector<Term> out;
  for (Term t : e.terms()) {
    for (CoordFactor& c : t.mono.coords)
      if (c.p.kind == Point::Kind::center) c.p.index += delta;
    for (NormFactor& n : t.mono.norms) {
      if (n.p.kind == Point::Kind::center) n.p.index += delta;
      if (n.q.kind == Point::Kind::center) n.q.index += delta;
    }
    for (SymFactor& s : t.mono.syms) s.index += delta;
    for (SumIndex& s : t.chain) s.label += delta;
    out.push_back(std::move(t));
  }
  const int anchor = e.anchor_label() == SymExpr::kNoAnchor ? SymExpr::kNoAnchor
                                                            : e.anchor_label() + delta;
  return merge_terms(std::move(out), anchor);
}

SymExpr substitute_symbol(const SymExpr& e, char family, int index, const SymExpr& replacement) {
  std::vector<Term> out;
  for (const Term& t : e.terms()) {
    int count = 0;
    for (const SymFactor& s : t.mono.syms)
      if (s.family == family && s.index == index) ++count;
    if (count == 0) {
      out.push_back(t);
      continue;
    }
    if (count > 1) throw NonSolvable("substitute_symbol: symbol occurs nonlinearly");
    Term host = t;
    std::erase_if(host.mono.syms,
                  [&](const SymFactor& s) { return s.family == family && s.index == index; });
    for (const Term& r : replacement.terms()) {
      Term nt;
      nt.mono.coeff = host.mono.coeff * r.mono.coeff;
      nt.mono.r0_deg = host.mono.r0_deg + r.mono.r0_deg;
      nt.mono.coords = host.mono.coords;
      nt.mono.coords.insert(nt.mono.coords.end(), r.mono.coords.begin(), r.mono.coords.end());
      nt.mono.norms = host.mono.norms;
      nt.mono.norms.insert(nt.mono.norms.end(), r.mono.norms.begin(), r.mono.norms.end());
      nt.mono.syms = host.mono.syms;
      nt.mono.syms.insert(nt.mono.syms.end(), r.mono.syms.begin(), r.mono.syms.end());
      nt.chain = host.chain;
      std::vector<SumIndex> inserted = r.chain;
      if (!inserted.empty() && !host.chain.empty()) {
        // the replacement is anchored at the host chain's innermost index
        if (inserted.front().excl == Exclusion::anchor) {
          if (host.chain.back().label != index)
            throw NonSolvable("substitute_symbol: replacement anchor does not match host chain");
          inserted.front().excl = Exclusion::previous;
        }
      }
      for (const SumIndex& s : inserted) {
        for (const SumIndex& h : nt.chain)
          if (h.label == s.label) throw IndexCollision("substitute_symbol: index collision");
        nt.chain.push_back(s);
      }
      out.push_back(std::move(nt));
    }
  }
  return merge_terms(std::move(out), e.anchor_label());
}

SymExpr differentiate_x(const SymExpr& e, int axis) {
  std::vector<Term> out;
  for (const Term& t : e.terms()) {
    // coordinate factors of x along this axis
    for (std::size_t i = 0; i < t.mono.coords.size(); ++i) {
      const CoordFactor& c = t.mono.coords[i];
      if (c.p.kind != Point::Kind::x || c.axis != axis) continue;
      Term nt = t;
      nt.mono.coords.erase(nt.mono.coords.begin() + static_cast<long>(i));
      out.push_back(std::move(nt));
    }
    // norm factors involving x
    for (std::size_t i = 0; i < t.mono.norms.size(); ++i) {
      const NormFactor& n = t.mono.norms[i];
      const bool px = n.p.kind == Point::Kind::x;
      const bool qx = n.q.kind == Point::Kind::x;
      if (!px && !qx) continue;
      if (px && qx) throw DomainError("differentiate_x: |x - x| factor");
      const Point other = px ? n.q : n.p;
      // d/dx |x-p|^h = h |x-p|^{h-2} (x-p)_axis
      Term base = t;
      base.mono.norms[i].half_exp -= 2;
      base.mono.coeff = base.mono.coeff * Rational::of(n.half_exp);
      Term t1 = base;
      t1.mono.coords.push_back({Point::x(), axis});
      Term t2 = base;
      t2.mono.coords.push_back({other, axis});
      t2.mono.coeff = -t2.mono.coeff;
      out.push_back(std::move(t1));
      out.push_back(std::move(t2));
    }
  }
  return merge_terms(std::move(out), e.anchor_label());
}

// --- printing ----------------------------------------------------------------

namespace {

std::string point_name(Point p, int anchor) {
  switch (p.kind) {
    case Point::Kind::origin: return "0";
    case Point::Kind::x: return "x";
    case Point::Kind::center:
      if (p.index == anchor && anchor != SymExpr::kNoAnchor) return "a[k]";
      return "a[" + std::to_string(p.index) + "]";
  }
  return "?";
}

std::string mono_text(const Monomial& m, int anchor) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "*";
    first = false;
  };
  const bool bare = m.r0_deg == 0 && m.coords.empty() && m.norms.empty() && m.syms.empty();
  if (m.coeff == Rational{-1, 1} && !bare) {
    os << "-";
  } else if (!(m.coeff == Rational{1, 1}) || bare) {
    sep();
    os << m.coeff.num;
    if (m.coeff.den != 1) os << "/" << m.coeff.den;
  }
  if (m.r0_deg > 0) {
    sep();
    os << "r0";
    if (m.r0_deg > 1) os << "^" << m.r0_deg;
  }
  for (const SymFactor& s : m.syms) {
    sep();
    os << s.family << "[" << s.index << "]";
  }
  for (const CoordFactor& c : m.coords) {
    sep();
    os << point_name(c.p, anchor) << "_" << c.axis;
  }
  for (const NormFactor& n : m.norms) {
    sep();
    os << "|" << point_name(n.p, anchor) << "-" << point_name(n.q, anchor) << "|";
    if (n.half_exp != 1) os << "^" << n.half_exp;
  }
  return os.str();
}

std::string index_name(int label, int anchor) {
  if (label == anchor && anchor != SymExpr::kNoAnchor) return "k";
  return std::to_string(label);
}

}  // namespace

std::string to_text(const SymExpr& e) {
  if (e.is_zero()) return "0";
  const int anchor = e.anchor_label();
  std::ostringstream os;
  bool first = true;
  for (const Term& t : e.terms()) {
    std::string body = mono_text(t.mono, anchor);
    std::string sign = "+";
    if (!body.empty() && body[0] == '-') {
      sign = "-";
      body = body.substr(1);
    }
    if (first && sign == "+")
      ;
    else
      os << (first ? (sign == "-" ? "-" : "") : " " + sign + " ");
    first = false;
    if (t.chain.empty()) {
      os << body;
    } else {
      os << "sum{";
      for (std::size_t i = 0; i < t.chain.size(); ++i) {
        if (i) os << ", ";
        os << index_name(t.chain[i].label, anchor);
        switch (t.chain[i].excl) {
          case Exclusion::none: break;
          case Exclusion::anchor: os << "!=k"; break;
          case Exclusion::previous:
            os << "!=" << index_name(t.chain[i - 1].label, anchor);
            break;
        }
      }
      os << "}( " << body << " )";
    }
  }
  return os.str();
}

std::string to_sexpr(const SymExpr& e) {
  const int anchor = e.anchor_label();
  std::ostringstream os;
  os << "(+";
  for (const Term& t : e.terms()) {
    os << " ";
    std::ostringstream body;
    body << "(* (q " << t.mono.coeff.num << " " << t.mono.coeff.den << ")";
    if (t.mono.r0_deg) body << " (^ r0 " << t.mono.r0_deg << ")";
    for (const SymFactor& s : t.mono.syms)
      body << " (sym " << s.family << " " << s.index << ")";
    for (const CoordFactor& c : t.mono.coords)
      body << " (coord " << point_name(c.p, anchor) << " " << c.axis << ")";
    for (const NormFactor& n : t.mono.norms)
      body << " (normpow " << point_name(n.p, anchor) << " " << point_name(n.q, anchor) << " "
           << n.half_exp << ")";
    body << ")";
    if (t.chain.empty()) {
      os << body.str();
    } else {
      os << "(sum (";
      for (std::size_t i = 0; i < t.chain.size(); ++i) {
        if (i) os << " ";
        os << "(" << t.chain[i].label << " ";
        switch (t.chain[i].excl) {
          case Exclusion::none: os << "free"; break;
          case Exclusion::anchor: os << "not-anchor"; break;
          case Exclusion::previous: os << "not-prev"; break;
        }
        os << ")";
      }
      os << ") " << body.str() << ")";
    }
  }
  os << ")";
  return os.str();
}

// --- numeric evaluation --------------------------------------------------------

namespace {

struct Binding {
  const EvalContext* ctx;
  const std::vector<SumIndex>* chain;
  std::vector<int> values;  // sphere index per chain position
  int anchor_label;

  Vec3 point_value(Point p) const {
    switch (p.kind) {
      case Point::Kind::origin: return {0, 0, 0};
      case Point::Kind::x: return ctx->x;
      case Point::Kind::center: {
        if (p.index == anchor_label && anchor_label != SymExpr::kNoAnchor)
          return ctx->centers[static_cast<std::size_t>(ctx->anchor_sphere)];
        for (std::size_t i = 0; i < chain->size(); ++i)
          if ((*chain)[i].label == p.index)
            return ctx->centers[static_cast<std::size_t>(values[i])];
        throw UnboundSymbol("numeric_eval: unbound center index " + std::to_string(p.index));
      }
    }
    throw UnboundSymbol("numeric_eval: bad point");
  }
};

double eval_monomial(const Monomial& m, const Binding& b, double r0) {
  double v = m.coeff.to_double();
  for (int i = 0; i < m.r0_deg; ++i) v *= r0;
  for (const CoordFactor& c : m.coords) v *= b.point_value(c.p)[c.axis - 1];
  for (const NormFactor& n : m.norms) {
    const double d = (b.point_value(n.p) - b.point_value(n.q)).norm();
    v *= std::pow(d, n.half_exp);
  }
  return v;
}

double eval_term(const Term& t, const EvalContext& ctx, int anchor_label) {
  if (!t.mono.syms.empty()) throw UnboundSymbol("numeric_eval: unresolved c/z symbol");
  Binding b{&ctx, &t.chain, std::vector<int>(t.chain.size(), -1), anchor_label};
  const int n = static_cast<int>(ctx.centers.size());
  double acc = 0;
  double comp = 0;
  auto kahan_add = [&](double v) {
    const double y = v - comp;
    const double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  };

  // iterative loop over admissible tuples
  std::size_t depth = 0;
  std::vector<int> cursor(t.chain.size(), 0);
  if (t.chain.empty()) return eval_monomial(t.mono, b, ctx.r0);
  for (;;) {
    if (cursor[depth] >= n) {
      if (depth == 0) break;
      cursor[depth] = 0;
      --depth;
      ++cursor[depth];
      continue;
    }
    const int candidate = cursor[depth];
    bool ok = true;
    switch (t.chain[depth].excl) {
      case Exclusion::none: break;
      case Exclusion::anchor: ok = candidate != ctx.anchor_sphere; break;
      case Exclusion::previous: ok = candidate != b.values[depth - 1]; break;
    }
    if (!ok) {
      ++cursor[depth];
      continue;
    }
    b.values[depth] = candidate;
    if (depth + 1 < t.chain.size()) {
      ++depth;
      cursor[depth] = 0;
      continue;
    }
    kahan_add(eval_monomial(t.mono, b, ctx.r0));
    ++cursor[depth];
  }
  return acc;
}

}  // namespace

double numeric_eval(const SymExpr& e, const EvalContext& ctx) {
  if (ctx.centers.empty()) throw DomainError("numeric_eval: empty configuration");
  if (ctx.anchor_sphere < 0 || ctx.anchor_sphere >= static_cast<int>(ctx.centers.size()))
    throw DomainError("numeric_eval: anchor sphere out of range");
  double acc = 0;
  for (const Term& t : e.terms()) acc += eval_term(t, ctx, e.anchor_label());
  return acc;
}

}  // namespace effcond::symb
