#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiberlab/field.hpp"

namespace fiberlab {

/// Power series over Q known exactly in degrees 0..trunc.
class SeriesTrunc {
 public:
  SeriesTrunc() = default;
  SeriesTrunc(std::vector<Scalar> coeffs, int trunc);
  static SeriesTrunc from_ints(const std::vector<std::int64_t>& coeffs, int trunc);
  /// Coefficients of a polynomial, truncated.
  static SeriesTrunc polynomial(const std::vector<Scalar>& coeffs, int trunc);
  static SeriesTrunc constant(const Scalar& c, int trunc) { return polynomial({c}, trunc); }
  /// t^k.
  static SeriesTrunc monomial(int k, int trunc);
  /// (1 + t)^n.
  static SeriesTrunc one_plus_t_pow(int n, int trunc);

  int trunc() const { return trunc_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& operator[](int i) const { return c_.at(i); }
  /// Index of the first nonzero coefficient, or -1 if zero through trunc.
  int order() const;
  /// Coefficients as integers; throws ArithmeticError if one is not integral.
  std::vector<std::int64_t> to_ints() const;
  SeriesTrunc truncated(int n) const;

  SeriesTrunc operator+(const SeriesTrunc& o) const;
  SeriesTrunc operator-(const SeriesTrunc& o) const;
  SeriesTrunc operator*(const SeriesTrunc& o) const;
  /// Requires a nonzero constant term in the divisor.
  SeriesTrunc operator/(const SeriesTrunc& o) const;
  SeriesTrunc operator-() const;

  friend bool operator==(const SeriesTrunc& a, const SeriesTrunc& b) { return a.trunc_ == b.trunc_ && a.c_ == b.c_; }
  friend bool operator!=(const SeriesTrunc& a, const SeriesTrunc& b) { return !(a == b); }

  /// "1 + 2t + 4t^2 + O(t^4)".
  std::string to_string() const;

 private:
  std::vector<Scalar> c_;
  int trunc_ = 0;
};

enum class SeriesOp { Add, Mul, Div };
SeriesTrunc series_arith(const SeriesTrunc& a, const SeriesTrunc& b, SeriesOp op);

}  // namespace fiberlab
