#include "doctest.h"
#include "fiberlab/errors.hpp"
#include "fiberlab/linalg.hpp"
#include "fiberlab/series.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int r, int c, int density_pct) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (uniform(rng, 0, 99) < density_pct) m(i, j) = uniform(rng, -3, 3);
    }
  }
  return m;
}

SparseVec row_of(const Matrix& m, int i) {
  SparseVec v;
  for (int j = 0; j < m.cols(); ++j) {
    if (!is_zero(m(i, j))) v.emplace_back(j, m(i, j));
  }
  return v;
}

}  // namespace

TEST_CASE("rank-nullity and kernel vectors on random matrices") {
  std::mt19937_64 rng(11);
  auto Q = FieldSpec::rationals();
  for (int trial = 0; trial < 50; ++trial) {
    int r = uniform(rng, 1, 7), c = uniform(rng, 1, 7);
    Matrix m = random_matrix(rng, r, c, 45);
    auto ker = kernel(m, Q);
    CHECK(rank(m, Q) + static_cast<int>(ker.size()) == c);
    for (const auto& v : ker) {
      for (int i = 0; i < r; ++i) {
        Scalar s = 0;
        for (int j = 0; j < c; ++j) s += m(i, j) * v[j];
        CHECK(is_zero(s));
      }
    }
    std::vector<SparseVec> rows;
    for (int i = 0; i < r; ++i) rows.push_back(row_of(m, i));
    CHECK(sparse_rank(rows, c, Q) == rank(m, Q));
  }
}

TEST_CASE("tracked echelon relations") {
  std::mt19937_64 rng(12);
  auto Q = FieldSpec::rationals();
  for (int trial = 0; trial < 30; ++trial) {
    int n = uniform(rng, 2, 6);
    Matrix m = random_matrix(rng, 8, n, 40);
    Echelon e(Q, n, true);
    int dependent = 0;
    for (int i = 0; i < 8; ++i) {
      SparseVec rel;
      if (!e.insert(row_of(m, i), i, &rel)) {
        ++dependent;
        // coefficient of the new vector is 1 and the combination vanishes
        bool has_self = false;
        std::vector<Scalar> sum(n);
        for (const auto& [tag, coef] : rel) {
          if (tag == i) has_self = coef == 1;
          for (int j = 0; j < n; ++j) sum[j] += coef * m(tag, j);
        }
        CHECK(has_self);
        for (const auto& s : sum) CHECK(is_zero(s));
      }
    }
    CHECK(e.rank() + dependent == 8);
    CHECK(e.rank() == rank(m, Q));
  }
}

TEST_CASE("determinants") {
  std::mt19937_64 rng(13);
  auto Q = FieldSpec::rationals();
  for (int trial = 0; trial < 30; ++trial) {
    int n = uniform(rng, 1, 5);
    Matrix a = random_matrix(rng, n, n, 70), b = random_matrix(rng, n, n, 70);
    CHECK(determinant(mat_mul(a, b, Q), Q) == determinant(a, Q) * determinant(b, Q));
    CHECK((determinant(a, Q) == 0) == (rank(a, Q) < n));
    // Berkowitz on constant polynomials agrees with elimination.
    auto r = ring({"t"});
    std::vector<std::vector<Poly>> pm(n, std::vector<Poly>(n, Poly(r)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) pm[i][j] = Poly::constant(r, a(i, j));
    }
    CHECK(berkowitz_determinant(pm, r) == Poly::constant(r, determinant(a, Q)));
  }
  auto r = ring({"a", "b", "c", "d"});
  std::vector<std::vector<Poly>> m2 = {{P(r, "a"), P(r, "b")}, {P(r, "c"), P(r, "d")}};
  CHECK(berkowitz_determinant(m2, r) == P(r, "a*d - b*c"));
}

TEST_CASE("prime field elimination") {
  auto F = FieldSpec::prime(3);
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = F.from_int(4);
  CHECK(rank(m, F) == 1);
  CHECK(determinant(m, F) == 0);
}

TEST_CASE("series arithmetic") {
  auto one_plus_t = SeriesTrunc::from_ints({1, 1}, 6);
  auto one_minus_t = SeriesTrunc::from_ints({1, -1}, 6);
  CHECK((one_plus_t * one_minus_t).to_ints() == std::vector<std::int64_t>{1, 0, -1, 0, 0, 0, 0});
  auto geo = SeriesTrunc::constant(1, 5) / SeriesTrunc::from_ints({1, -2}, 5);
  CHECK(geo.to_ints() == std::vector<std::int64_t>{1, 2, 4, 8, 16, 32});
  auto q = series_arith(SeriesTrunc::from_ints({2, -1}, 3), SeriesTrunc::from_ints({1, -2}, 3), SeriesOp::Div);
  CHECK(q.to_ints() == std::vector<std::int64_t>{2, 3, 6, 12});
  CHECK_THROWS_AS(geo / SeriesTrunc::from_ints({0, 1}, 5), ArithmeticError);
  CHECK(SeriesTrunc::one_plus_t_pow(3, 5).to_ints() == std::vector<std::int64_t>{1, 3, 3, 1, 0, 0});
  CHECK((geo + SeriesTrunc::constant(1, 3)).trunc() == 3);
  CHECK(SeriesTrunc::from_ints({0, 0, 3}, 4).order() == 2);
  CHECK(SeriesTrunc::from_ints({1, -2, 0, 1}, 3).to_string() == "1 - 2t + t^3 + O(t^4)");
}

TEST_CASE("series division inverts multiplication") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::int64_t> a(7), b(7);
    for (auto& x : a) x = uniform(rng, -4, 4);
    for (auto& x : b) x = uniform(rng, -4, 4);
    b[0] = uniform(rng, 1, 3);
    auto A = SeriesTrunc::from_ints(a, 6), B = SeriesTrunc::from_ints(b, 6);
    CHECK((A / B) * B == A);
    CHECK((A * B) / B == A);
  }
}
