#include "fiberlab/series.hpp"

#include <algorithm>

#include "fiberlab/errors.hpp"

namespace fiberlab {

SeriesTrunc::SeriesTrunc(std::vector<Scalar> coeffs, int trunc) : c_(std::move(coeffs)), trunc_(trunc) {
  if (trunc < 0) throw StructuralError("series truncation must be non-negative");
  c_.resize(trunc + 1);
}

SeriesTrunc SeriesTrunc::from_ints(const std::vector<std::int64_t>& coeffs, int trunc) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < coeffs.size() && static_cast<int>(i) <= trunc; ++i) {
    c.emplace_back(static_cast<long>(coeffs[i]));
  }
  return SeriesTrunc(std::move(c), trunc);
}

SeriesTrunc SeriesTrunc::polynomial(const std::vector<Scalar>& coeffs, int trunc) {
  std::vector<Scalar> c(coeffs.begin(), coeffs.begin() + std::min<std::size_t>(coeffs.size(), trunc + 1));
  return SeriesTrunc(std::move(c), trunc);
}

SeriesTrunc SeriesTrunc::monomial(int k, int trunc) {
  std::vector<Scalar> c(trunc + 1);
  if (k >= 0 && k <= trunc) c[k] = 1;
  return SeriesTrunc(std::move(c), trunc);
}

SeriesTrunc SeriesTrunc::one_plus_t_pow(int n, int trunc) {
  std::vector<Scalar> c(trunc + 1);
  mpz_class b = 1;
  for (int k = 0; k <= std::min(n, trunc); ++k) {
    c[k] = b;
    b = b * (n - k) / (k + 1);
  }
  return SeriesTrunc(std::move(c), trunc);
}

int SeriesTrunc::order() const {
  for (int i = 0; i <= trunc_; ++i) {
    if (!is_zero(c_[i])) return i;
  }
  return -1;
}

std::vector<std::int64_t> SeriesTrunc::to_ints() const {
  std::vector<std::int64_t> out;
  for (const auto& x : c_) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) {
      throw ArithmeticError("series coefficient " + x.get_str() + " is not a machine integer");
    }
    out.push_back(x.get_num().get_si());
  }
  return out;
}

SeriesTrunc SeriesTrunc::truncated(int n) const {
  if (n > trunc_) throw StructuralError("cannot extend a truncated series");
  return SeriesTrunc(std::vector<Scalar>(c_.begin(), c_.begin() + n + 1), n);
}

SeriesTrunc SeriesTrunc::operator+(const SeriesTrunc& o) const {
  int n = std::min(trunc_, o.trunc_);
  std::vector<Scalar> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = c_[i] + o.c_[i];
  return SeriesTrunc(std::move(c), n);
}

SeriesTrunc SeriesTrunc::operator-() const {
  std::vector<Scalar> c(c_);
  for (auto& x : c) x = -x;
  return SeriesTrunc(std::move(c), trunc_);
}

SeriesTrunc SeriesTrunc::operator-(const SeriesTrunc& o) const { return *this + (-o); }

SeriesTrunc SeriesTrunc::operator*(const SeriesTrunc& o) const {
  int n = std::min(trunc_, o.trunc_);
  std::vector<Scalar> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (is_zero(c_[i])) continue;
    for (int j = 0; i + j <= n; ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return SeriesTrunc(std::move(c), n);
}

SeriesTrunc SeriesTrunc::operator/(const SeriesTrunc& o) const {
  if (is_zero(o.c_[0])) throw ArithmeticError("division by a series with zero constant term");
  int n = std::min(trunc_, o.trunc_);
  std::vector<Scalar> q(n + 1);
  for (int i = 0; i <= n; ++i) {
    Scalar s = c_[i];
    for (int j = 1; j <= i; ++j) s -= o.c_[j] * q[i - j];
    q[i] = s / o.c_[0];
  }
  return SeriesTrunc(std::move(q), n);
}

std::string SeriesTrunc::to_string() const {
  std::string out;
  for (int i = 0; i <= trunc_; ++i) {
    if (is_zero(c_[i])) continue;
    std::string coef = Scalar(abs(c_[i])).get_str();
    bool neg = sgn(c_[i]) < 0;
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0) {
      out += coef;
    } else {
      if (coef != "1") out += coef;
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out + " + O(t^" + std::to_string(trunc_ + 1) + ")";
}

SeriesTrunc series_arith(const SeriesTrunc& a, const SeriesTrunc& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::Add:
      return a + b;
    case SeriesOp::Mul:
      return a * b;
    case SeriesOp::Div:
      return a / b;
  }
  throw StructuralError("unknown series operation");
}

}  // namespace fiberlab
