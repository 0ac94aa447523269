#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "effcond/errors.hpp"
#include "effcond/geometry.hpp"

namespace effcond::symb {

// Exact rational arithmetic for expansion coefficients.
struct Rational {
  long long num{0};
  long long den{1};

  static Rational of(long long n, long long d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return {-num, den}; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Points of the geometry: the origin, the free evaluation point x, or an
// indexed sphere center a_i. Indices may be negative after reindexing.
struct Point {
  enum class Kind : std::uint8_t { origin, x, center };
  Kind kind{Kind::origin};
  int index{0};

  static Point origin() { return {Kind::origin, 0}; }
  static Point x() { return {Kind::x, 0}; }
  static Point center(int i) { return {Kind::center, i}; }
  bool operator==(const Point& o) const { return kind == o.kind && index == o.index; }
  auto operator<=>(const Point& o) const = default;
};

// Monomial factors. A coordinate factor is the origin-based component
// (p)_axis; differences are represented expanded, so (p - q)_j is the
// two-term polynomial coord(p,j) - coord(q,j).
struct CoordFactor {
  Point p;
  int axis;  // 1..3
  auto operator<=>(const CoordFactor&) const = default;
};

// |p - q|^half_exp with an integer (possibly odd or negative) exponent of
// the plain norm.
struct NormFactor {
  Point p, q;  // canonically ordered, p < q
  int half_exp;
  auto operator<=>(const NormFactor&) const = default;
};

// Indexed scalar symbol family: 'c' (boundary constants) or 'z' (their
// shifted unknowns z_i = a_ij - c_i).
struct SymFactor {
  char family;
  int index;
  auto operator<=>(const SymFactor&) const = default;
};

struct Monomial {
  Rational coeff{1, 1};
  int r0_deg{0};
  std::vector<CoordFactor> coords;
  std::vector<NormFactor> norms;
  std::vector<SymFactor> syms;

  void normalize();  // sort factors, merge norm exponents
};

// Exclusion carried by each summation index: the admissible values differ
// from the anchor sphere, from the previous index in the chain, or are
// unconstrained.
enum class Exclusion : std::uint8_t { none, anchor, previous };

struct SumIndex {
  int label;
  Exclusion excl;
  bool operator==(const SumIndex&) const = default;
};

// One addend: a monomial under an optional indefinite sum. The index list is
// ordered outermost first; no sum nesting can occur by construction.
struct Term {
  Monomial mono;
  std::vector<SumIndex> chain;
};

// Expression in expanded normal form: a merged list of terms. The
// automatic-simplification rules (sums distribute over addition, multipliers
// are pulled inside, nested sums flatten over disjoint index lists, empty
// sums vanish) are maintained by every constructor, so values of this type
// are always at the rules' fixed point.
class SymExpr {
 public:
  SymExpr() = default;
  explicit SymExpr(std::vector<Term> terms, int anchor_label = kNoAnchor);

  static constexpr int kNoAnchor = INT32_MIN;

  const std::vector<Term>& terms() const { return terms_; }
  int anchor_label() const { return anchor_label_; }
  void set_anchor_label(int label) { anchor_label_ = label; }

  bool is_zero() const { return terms_.empty(); }
  int max_r0_degree() const;
  bool has_symbol_family(char family) const;
  std::vector<int> symbol_indices(char family) const;

 private:
  friend SymExpr merge_terms(std::vector<Term> terms, int anchor);
  std::vector<Term> terms_;
  int anchor_label_ = kNoAnchor;
};

// Low-level helpers shared with the engine: normalize/merge a raw term list
// into an expression, and multiply two terms (concatenating their index
// lists; throws IndexCollision on shared indices).
SymExpr merge_terms(std::vector<Term> terms, int anchor);
Term multiply_terms(const Term& a, const Term& b);

// --- builders -------------------------------------------------------------

SymExpr zero();
SymExpr constant(const Rational& r);
SymExpr r0_power(int deg);
SymExpr coord(Point p, int axis);
SymExpr coord_diff(Point p, Point q, int axis);  // (p - q)_axis
SymExpr norm_power(Point p, Point q, int half_exp);
SymExpr symbol(char family, int index);
SymExpr dot_diff(Point p, Point q, Point r, Point s);  // (p-q) . (r-s)

SymExpr add(const SymExpr& a, const SymExpr& b);
SymExpr sub(const SymExpr& a, const SymExpr& b);
SymExpr negate(const SymExpr& a);
SymExpr scale(const SymExpr& a, const Rational& r);

// Product; pulls factors inside sums and concatenates disjoint index lists.
// Throws IndexCollision when the operands share a summation index.
SymExpr mul(const SymExpr& a, const SymExpr& b);
SymExpr pow(const SymExpr& a, int exponent);  // exponent >= 0

// Indefinite sum over the given indices. Distributes over the terms of the
// body; wrapping a body that already sums over one of `indices` raises
// IndexCollision. By default the first index is unconstrained and each later
// index excludes its predecessor; with first_excludes_anchor the first index
// also excludes the anchor sphere.
SymExpr sum(const SymExpr& body, const std::vector<int>& indices,
            bool first_excludes_anchor = false);

// --- rule operations -------------------------------------------------------

// Re-asserts the normal form. Values are constructed at the rules' fixed
// point, so this is the identity; provided for contract completeness.
SymExpr simplify(const SymExpr& e);
// Expansion over sums of terms (maintained by construction as well).
SymExpr expand(const SymExpr& e);
// Drops every term of r0-degree above q.
SymExpr series_truncate(const SymExpr& e, int q);

// Canonical form: chain indices relabeled positionally below the anchor,
// identical terms merged, deterministic ordering. Two expressions are
// structurally equal iff their canonical forms are identical.
SymExpr canonicalize(const SymExpr& e);
bool structurally_equal(const SymExpr& a, const SymExpr& b);

// Uniform shift of every center index (points, symbol indices, chain labels)
// by delta. Relabels the anchor accordingly.
SymExpr shift_center_indices(const SymExpr& e, int delta);

// Replaces the linear symbol (family, index) by `replacement`, splicing the
// replacement's sums into the host chain (the inserted first index excludes
// what was the replacement's anchor, which by construction is the host
// chain's last index).
SymExpr substitute_symbol(const SymExpr& e, char family, int index, const SymExpr& replacement);

// d/dx_axis, applied to the free point x.
SymExpr differentiate_x(const SymExpr& e, int axis);

std::string to_text(const SymExpr& e);
std::string to_sexpr(const SymExpr& e);

// --- numeric evaluation ----------------------------------------------------

struct EvalContext {
  std::vector<Vec3> centers;  // finite cluster in R^3, no periodicity
  double r0{0};
  int anchor_sphere{0};  // binding of the anchor label
  Vec3 x{};              // binding of the free point
};

// Sums each term over all admissible index tuples (consecutive chain indices
// differ; an anchor-excluding index differs from the anchor sphere). Sums
// over an empty admissible set contribute zero. Throws UnboundSymbol when the
// expression still references c/z symbols or unbound center indices.
double numeric_eval(const SymExpr& e, const EvalContext& ctx);

}  // namespace effcond::symb
