#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fiberlab/field.hpp"

namespace fiberlab {

/// Exponent vector, one entry per ring variable.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial mono_mul(const Monomial& a, const Monomial& b);
/// b / a; requires divides(a, b).
Monomial mono_div(const Monomial& b, const Monomial& a);
Monomial mono_lcm(const Monomial& a, const Monomial& b);
Monomial mono_gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic comparison with x1 > x2 > ... > xn.
/// Returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) < 0; }
};

/// Graded reverse lexicographic order over an explicit variable order. The
/// variable order is always the ring's; it is kept here for reporting.
struct MonomialOrder {
  std::vector<std::string> variables;

  std::string name() const;
  int compare(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b); }
};

struct PolyRing {
  FieldSpec field;
  std::vector<std::string> vars;

  int nvars() const { return static_cast<int>(vars.size()); }
  /// -1 when absent.
  int index_of(const std::string& name) const;
  MonomialOrder order() const { return MonomialOrder{vars}; }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars);
bool same_ring(const PolyRing& a, const PolyRing& b);
std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars);

class Poly {
 public:
  struct Term {
    Monomial mono;
    Scalar coeff;
    friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }
  };

  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly variable(RingPtr ring, int index);
  static Poly monomial(RingPtr ring, Monomial m, const Scalar& c = Scalar(1));
  /// Builds from unsorted terms; combines duplicates and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_->field; }
  /// Sorted by decreasing grevlex; no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_homogeneous() const;
  /// A single term.
  bool is_monomial() const { return terms_.size() == 1; }
  /// Maximal total degree; requires nonzero.
  int degree() const;
  const Term& lead() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Scalar& c) const;
  Poly mul_term(const Monomial& m, const Scalar& c) const;
  Poly monic() const;
  Poly pow(int e) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_compatible(const Poly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class PolyOp { Add, Mul };

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);
Poly scalar_mul(const Poly& a, const Scalar& c);

struct OrderTerm {
  int order;      // minimal total degree among the terms
  Monomial lead;  // grevlex-maximal monomial
};

OrderTerm poly_order_term(const Poly& f);

/// The same polynomial in a ring whose variables include those of f's ring
/// (matched by name). Throws StructuralError on a missing variable or a
/// different field.
Poly map_into(const Poly& f, const RingPtr& target);

/// Parses the text syntax: terms joined by +/-, integer or a/b coefficients,
/// variables by name, ^ for powers, * optional, parentheses allowed.
/// Identifiers found in `params` are substituted by their value.
/// Errors carry `line` and the 1-based column within `text` offset by
/// `col_offset`.
Poly parse_poly(const std::string& text, const RingPtr& ring,
                const std::map<std::string, Scalar>& params = {}, int line = 1, int col_offset = 0);

}  // namespace fiberlab
