#include "fiberlab/field.hpp"

#include "fiberlab/errors.hpp"

namespace fiberlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw StructuralError("Fp(" + std::to_string(p) + "): modulus is not prime");
  FieldSpec f;
  f.kind_ = FieldKind::PrimeField;
  f.p_ = p;
  return f;
}

FieldSpec FieldSpec::fraction_field(std::string tag) {
  FieldSpec f;
  f.kind_ = FieldKind::FractionField;
  f.tag_ = std::move(tag);
  return f;
}

std::string FieldSpec::name() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::PrimeField:
      return "Fp(" + std::to_string(p_) + ")";
    case FieldKind::FractionField:
      return "Q((" + tag_ + "))";
  }
  return "?";
}

Scalar FieldSpec::normalize(const Scalar& a) const {
  if (!p_) return a;
  mpz_class m(static_cast<long>(p_));
  mpz_class num = a.get_num() % m;
  mpz_class den = a.get_den() % m;
  if (den == 0) throw ArithmeticError("denominator divisible by the characteristic");
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * dinv) % m;
  if (r < 0) r += m;
  return Scalar(r);
}

Scalar FieldSpec::inv(const Scalar& a) const {
  if (is_zero(a)) throw ArithmeticError("division by zero");
  if (!p_) return Scalar(1) / a;
  mpz_class m(static_cast<long>(p_));
  mpz_class r;
  mpz_class n = a.get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return Scalar(r);
}

std::string to_string(const Scalar& a) { return a.get_str(); }

Scalar parse_rational(const std::string& text) {
  Scalar q;
  if (q.set_str(text, 10) != 0) throw ParseError("bad rational '" + text + "'", 1, 1);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'", 1, 1);
  q.canonicalize();
  return q;
}

}  // namespace fiberlab
