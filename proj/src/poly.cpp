#include "fiberlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "fiberlab/errors.hpp"

namespace fiberlab {

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

std::string MonomialOrder::name() const {
  std::string s = "grevlex(";
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (i) s += ">";
    s += variables[i];
  }
  return s + ")";
}

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == name) return static_cast<int>(i);
  }
  return -1;
}

RingPtr make_ring(FieldSpec field, std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j]) throw StructuralError("duplicate variable " + vars[i]);
    }
  }
  return std::make_shared<const PolyRing>(PolyRing{std::move(field), std::move(vars)});
}

bool same_ring(const PolyRing& a, const PolyRing& b) { return a.field == b.field && a.vars == b.vars; }

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  return monomial(ring, Monomial(ring->nvars(), 0), c);
}

Poly Poly::variable(RingPtr ring, int index) {
  Monomial m(ring->nvars(), 0);
  m.at(index) = 1;
  return monomial(std::move(ring), std::move(m));
}

Poly Poly::monomial(RingPtr ring, Monomial m, const Scalar& c) {
  Poly p(ring);
  Scalar v = ring->field.normalize(c);
  if (!fiberlab::is_zero(v)) p.terms_.push_back({std::move(m), v});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::map<Monomial, Scalar, GrevlexGreater> acc;
  for (auto& t : terms) {
    auto [it, fresh] = acc.try_emplace(std::move(t.mono), t.coeff);
    if (!fresh) it->second = ring->field.add(it->second, t.coeff);
  }
  Poly p(ring);
  for (auto& [m, c] : acc) {
    Scalar v = ring->field.normalize(c);
    if (!fiberlab::is_zero(v)) p.terms_.push_back({m, v});
  }
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].mono) == 0); }

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = total_degree(terms_.front().mono);
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return total_degree(t.mono) == d; });
}

int Poly::degree() const {
  if (terms_.empty()) throw UndefinedOrderError("degree of the zero polynomial");
  return total_degree(terms_.front().mono);
}

const Poly::Term& Poly::lead() const {
  if (terms_.empty()) throw UndefinedOrderError("lead term of the zero polynomial");
  return terms_.front();
}

void Poly::check_compatible(const Poly& o) const {
  if (ring_ != o.ring_ && !same_ring(*ring_, *o.ring_)) {
    throw StructuralError("polynomials live in different rings");
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_compatible(o);
  const FieldSpec& F = field();
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) {
      c = -1;
    } else if (j == o.terms_.size()) {
      c = 1;
    } else {
      c = grevlex_compare(terms_[i].mono, o.terms_[j].mono);
    }
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = F.add(terms_[i].coeff, o.terms_[j].coeff);
      if (!fiberlab::is_zero(s)) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, field().neg(t.coeff)});
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_compatible(o);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) acc.push_back({mono_mul(a.mono, b.mono), field().mul(a.coeff, b.coeff)});
  }
  return from_terms(ring_, std::move(acc));
}

Poly Poly::scaled(const Scalar& c) const {
  Scalar v = field().normalize(c);
  Poly r(ring_);
  if (fiberlab::is_zero(v)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, field().mul(t.coeff, v)});
  return r;
}

Poly Poly::mul_term(const Monomial& m, const Scalar& c) const {
  Scalar v = field().normalize(c);
  Poly r(ring_);
  if (fiberlab::is_zero(v)) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grevlex order.
  for (const auto& t : terms_) r.terms_.push_back({mono_mul(t.mono, m), field().mul(t.coeff, v)});
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field().inv(terms_.front().coeff));
}

Poly Poly::pow(int e) const {
  if (e < 0) throw StructuralError("negative exponent");
  Poly r = constant(ring_, Scalar(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.ring_ != b.ring_ && !same_ring(*a.ring_, *b.ring_)) return false;
  return a.terms_ == b.terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Scalar c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (i == 0) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    bool unit_mono = total_degree(t.mono) == 0;
    if (c != 1 || unit_mono) {
      s += fiberlab::to_string(c);
      if (!unit_mono) s += "*";
    }
    if (!unit_mono) s += monomial_to_string(t.mono, ring_->vars);
  }
  return s;
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add:
      return a + b;
    case PolyOp::Mul:
      return a * b;
  }
  return a;
}

Poly scalar_mul(const Poly& a, const Scalar& c) { return a.scaled(c); }

OrderTerm poly_order_term(const Poly& f) {
  if (f.is_zero()) throw UndefinedOrderError("order of the zero polynomial is undefined");
  int order = total_degree(f.terms().front().mono);
  for (const auto& t : f.terms()) order = std::min(order, total_degree(t.mono));
  return {order, f.lead().mono};
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const RingPtr& ring, const std::map<std::string, Scalar>& params, int line,
             int col_offset)
      : s_(text), ring_(ring), params_(params), line_(line), offset_(col_offset) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc(ring_);
    bool first = true;
    while (true) {
      skip();
      bool negate = false;
      if (peek('+') || peek('-')) {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
      skip();
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of polynomial");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den(1);
      if (peek('/')) {
        ++pos_;
        skip();
        std::string d = digits();
        if (d.empty()) fail("expected denominator after '/'");
        den = mpz_class(d);
        if (den == 0) fail("zero denominator");
      }
      Scalar q(num, den);
      q.canonicalize();
      if (ring_->field.is_prime_field() && ring_->field.characteristic() > 0) {
        if (den % ring_->field.characteristic() == 0) fail("denominator vanishes in the coefficient field");
      }
      return Poly::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (int idx = ring_->index_of(id); idx >= 0) return Poly::variable(ring_, idx);
      if (auto it = params_.find(id); it != params_.end()) return Poly::constant(ring_, it->second);
      std::vector<int> split;
      if (split_identifier(id, 0, split)) {
        Poly p = Poly::constant(ring_, Scalar(1));
        for (int v : split) p = p * Poly::variable(ring_, v);
        return p;
      }
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // Decomposes an identifier like "X1X3" into ring variables, longest match first.
  bool split_identifier(const std::string& id, std::size_t at, std::vector<int>& out) const {
    if (at == id.size()) return !out.empty();
    std::vector<int> candidates;
    for (int i = 0; i < ring_->nvars(); ++i) {
      const auto& v = ring_->vars[i];
      if (id.compare(at, v.size(), v) == 0) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return ring_->vars[a].size() > ring_->vars[b].size(); });
    for (int c : candidates) {
      out.push_back(c);
      if (split_identifier(id, at + ring_->vars[c].size(), out)) return true;
      out.pop_back();
    }
    return false;
  }

  const std::string& s_;
  const RingPtr& ring_;
  const std::map<std::string, Scalar>& params_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly map_into(const Poly& f, const RingPtr& target) {
  const PolyRing& src = *f.ring();
  if (!src.field.same_arithmetic(target->field)) throw StructuralError("map_into: field mismatch");
  std::vector<int> where(src.nvars());
  for (int i = 0; i < src.nvars(); ++i) {
    where[i] = target->index_of(src.vars[i]);
    if (where[i] < 0) throw StructuralError("map_into: variable " + src.vars[i] + " missing from target ring");
  }
  std::vector<Poly::Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars(), 0);
    for (int i = 0; i < src.nvars(); ++i) m[where[i]] += t.mono[i];
    terms.push_back({m, target->field.normalize(t.coeff)});
  }
  return Poly::from_terms(target, std::move(terms));
}

Poly parse_poly(const std::string& text, const RingPtr& ring, const std::map<std::string, Scalar>& params, int line,
                int col_offset) {
  return PolyParser(text, ring, params, line, col_offset).parse();
}

}  // namespace fiberlab
