#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace fiberlab {

/// Exact field element. Prime-field elements are stored as their canonical
/// representative in [0, p) with denominator 1.
using Scalar = mpq_class;

enum class FieldKind { Rationals, PrimeField, FractionField };

/// Coefficient field. FractionField is Q((tag)) and only retags a rational
/// algebra: its elements never involve the transcendental, so arithmetic is
/// that of Q.
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec(); }
  static FieldSpec prime(std::int64_t p);
  static FieldSpec fraction_field(std::string tag);

  FieldKind kind() const noexcept { return kind_; }
  std::int64_t characteristic() const noexcept { return p_; }
  const std::string& tag() const noexcept { return tag_; }
  bool is_prime_field() const noexcept { return p_ != 0; }

  /// "Q", "Fp(7)" or "Q((Y))".
  std::string name() const;

  Scalar normalize(const Scalar& a) const;
  Scalar from_int(std::int64_t v) const { return normalize(Scalar(static_cast<long>(v))); }

  Scalar add(const Scalar& a, const Scalar& b) const { return p_ ? normalize(a + b) : Scalar(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return p_ ? normalize(a - b) : Scalar(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return p_ ? normalize(a * b) : Scalar(a * b); }
  Scalar neg(const Scalar& a) const { return p_ ? normalize(-a) : Scalar(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  /// Fused a -= c * b, the inner step of every elimination loop.
  void sub_mul(Scalar& a, const Scalar& c, const Scalar& b) const {
    if (p_) {
      a = normalize(a - c * b);
    } else {
      a -= c * b;
    }
  }

  /// Same arithmetic (Q and Q((Y)) share it).
  bool same_arithmetic(const FieldSpec& o) const noexcept { return p_ == o.p_; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.tag_ == b.tag_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

 private:
  FieldKind kind_ = FieldKind::Rationals;
  std::int64_t p_ = 0;
  std::string tag_;
};

inline bool is_zero(const Scalar& a) { return sgn(a) == 0; }

std::string to_string(const Scalar& a);

/// Parses "n" or "n/d" (optional leading sign).
Scalar parse_rational(const std::string& text);

bool is_prime(std::int64_t n);

}  // namespace fiberlab
