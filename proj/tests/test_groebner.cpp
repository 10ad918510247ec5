#include <set>

#include "doctest.h"
#include "fiberlab/errors.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

const std::vector<std::string> kQuadrics = {
    "2*X1*X3 + X2*X3", "X1*X4 + X2*X4", "X3^2 + 2*X1*X5 - X2*X5", "X4^2 + X1*X5 - X2*X5", "X1^2",
    "X2^2",            "X3*X4",         "X3*X5",                  "X4*X5",                  "X5^2"};

Poly spoly(const Poly& a, const Poly& b) {
  Monomial l = mono_lcm(a.lead().mono, b.lead().mono);
  return a.mul_term(mono_div(l, a.lead().mono), Scalar(1)) - b.mul_term(mono_div(l, b.lead().mono), Scalar(1));
}

void check_reduced_groebner(const GroebnerBasis& g) {
  const auto& B = g.basis();
  for (std::size_t i = 0; i < B.size(); ++i) {
    CHECK(B[i].lead().coeff == 1);
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : B[j].terms()) CHECK_FALSE(divides(B[i].lead().mono, t.mono));
      if (i < j) CHECK(g.normal_form(spoly(B[i], B[j])).is_zero());
    }
  }
  for (const auto& f : g.source().generators()) CHECK(g.contains(f));
}

std::int64_t brute_count(const std::vector<Monomial>& gens, int n, int deg) {
  std::int64_t c = 0;
  for (int d = 0; d <= deg; ++d) {
    for (const auto& m : monomials_of_degree(n, d)) {
      bool in = false;
      for (const auto& g : gens) in = in || divides(g, m);
      c += !in;
    }
  }
  return c;
}

std::vector<Monomial> random_monomials(std::mt19937_64& rng, int n, int count, int max_deg) {
  std::vector<Monomial> out;
  for (int i = 0; i < count; ++i) {
    Monomial m(n, 0);
    int d = uniform(rng, 1, max_deg);
    for (int k = 0; k < d; ++k) ++m[uniform(rng, 0, n - 1)];
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("monomial and principal ideals are their own bases") {
  auto r = ring({"x", "y"});
  auto g = buchberger(ideal(r, {"x^2", "x*y", "y^2"}));
  CHECK(g.basis().size() == 3);
  CHECK(g.cofinite());
  auto r2 = ring({"x", "z"});
  auto h = buchberger(ideal(r2, {"x*z"}));
  REQUIRE(h.basis().size() == 1);
  CHECK(h.basis()[0] == P(r2, "x*z"));
  CHECK_FALSE(h.cofinite());
}

TEST_CASE("quadrics of the Gorenstein algebra") {
  auto r = ring({"X1", "X2", "X3", "X4", "X5"});
  auto I = ideal(r, kQuadrics);
  CHECK(I.homogeneous());
  CHECK_FALSE(I.monomial());
  auto g = buchberger(I);
  check_reduced_groebner(g);
  CHECK(g.cofinite());
  CHECK(standard_basis(g).size() == 12);
  CHECK(standard_monomials(g, 10, true).size() == 12);
  // Rewriting by X3^2 + 2 X1X5 - X2X5.
  Poly nf = g.normal_form(P(r, "X3^2"));
  CHECK(nf == P(r, "-2*X1*X5 + X2*X5"));
  CHECK(g.normal_form(nf - P(r, "X3^2")).is_zero());
  // Determinism.
  auto g2 = buchberger(I);
  REQUIRE(g2.basis().size() == g.basis().size());
  for (std::size_t i = 0; i < g.basis().size(); ++i) CHECK(g.basis()[i].to_string() == g2.basis()[i].to_string());
}

TEST_CASE("normal forms modulo (x,y)^2") {
  auto r = ring({"x", "y"});
  auto g = buchberger(ideal(r, {"x^2", "x*y", "y^2"}));
  CHECK(g.normal_form(P(r, "x^2")).is_zero());
  CHECK(g.normal_form(P(r, "x + y")) == P(r, "x + y"));
}

TEST_CASE("standard monomials") {
  auto r = ring({"x", "y"});
  auto g = buchberger(ideal(r, {"x^2", "x*y", "y^2"}));
  auto sm = standard_monomials(g, 5);
  CHECK(sm == std::vector<Monomial>{{0, 0}, {0, 1}, {1, 0}});
  auto r1 = ring({"x"});
  CHECK(standard_monomials(buchberger(ideal(r1, {"x^2"})), 4).size() == 2);
  auto h = buchberger(ideal(ring({"x", "z"}), {"x*z"}));
  CHECK_THROWS_AS(standard_monomials(h, 6, true), NotCofiniteError);
  CHECK(standard_monomials(h, 3).size() == 7);
}

TEST_CASE("unit ideal") {
  auto r = ring({"x", "y"});
  auto g = buchberger(ideal(r, {"x + 1", "x"}));
  CHECK(g.is_unit());
  CHECK(standard_monomials(g, 3).empty());
  CHECK(krull_dimension(g) == -1);
}

TEST_CASE("Hilbert functions") {
  auto r = ring({"x", "z"});
  auto H = hilbert_function(ideal(r, {"x*z"}), 8);
  for (int n = 0; n <= 8; ++n) CHECK(H[n] == 2 * n + 1);
  auto Hm = hilbert_function(ideal(ring({"x", "y"}), {"x^2", "x*y", "y^2"}), 6);
  CHECK(Hm == std::vector<std::int64_t>{1, 3, 3, 3, 3, 3, 3});
  CHECK_THROWS_AS(hilbert_function(ideal(ring({"x", "y"}), {"x^2 - y^3"}), 4), UnsupportedInput);
}

TEST_CASE("multiplicity 13 from the one-dimensional presentation") {
  auto r = ring({"X1", "X2", "X3", "X4", "X5", "Y", "Z"});
  auto gens = kQuadrics;
  for (std::string v : {"Y", "X1", "X2", "X3", "X4", "X5"}) gens.push_back(v + "*Z");
  auto g = buchberger(ideal(r, gens));
  auto h = hilbert_analysis(g, 12);
  CHECK(h.dimension == 1);
  CHECK(h.multiplicity == 13);
  CHECK(h.stabilized);
  CHECK(h.values[12] - h.values[11] == 13);
  CHECK(krull_dimension(g) == 1);
  auto low = hilbert_analysis(g, 3);
  CHECK_FALSE(low.stabilized);
  CHECK(low.multiplicity == 13);
}

TEST_CASE("Hilbert numerator of simple ideals") {
  // k[x,y]/(xy): (1 - t^2)/(1-t)^2 = (1+t)/(1-t).
  CHECK(hilbert_numerator({{1, 1}}, 2) == IntPoly{1, 0, -1});
  CHECK(hilbert_numerator({}, 3) == IntPoly{1});
  // Components: the z-axis (length 1) and the y-axis with x^2 = 0 (length 2).
  auto r = ring({"x", "y", "z"});
  auto h = hilbert_analysis(buchberger(ideal(r, {"x^2", "x*z", "y*z"})), 10);
  CHECK(h.dimension == 1);
  CHECK(h.multiplicity == 3);
}

TEST_CASE("Hilbert function agrees with brute-force enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int n = uniform(rng, 1, 4);
    auto gens = random_monomials(rng, n, uniform(rng, 1, 4), 4);
    auto r = make_ring(FieldSpec::rationals(), [&] {
      std::vector<std::string> v;
      for (int i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
      return v;
    }());
    auto g = buchberger(IdealSpec::from_monomials(r, gens));
    auto H = hilbert_function(g, 8);
    for (int d = 0; d <= 8; ++d) CHECK(H[d] == brute_count(gens, n, d));
    // Also exercises the numerator/enumeration consistency check.
    auto h = hilbert_analysis(g, 8);
    CHECK(h.dimension == krull_dimension(g));
  }
}

TEST_CASE("radical and minimal primes") {
  auto r = ring({"x", "y", "z"});
  auto rad = monomial_radical(ideal(r, {"x^2", "x*y"}));
  REQUIRE(rad.generators().size() == 1);
  CHECK(rad.generators()[0] == P(r, "x"));
  CHECK(monomial_minimal_primes(ideal(ring({"x", "z"}), {"x*z"})) == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(monomial_minimal_primes(ideal(r, {"x^2", "x*y", "x*z", "y*z"})) ==
        std::vector<std::vector<int>>{{0, 1}, {0, 2}});
  CHECK(monomial_minimal_primes(ideal(ring({"x", "y"}), {"x^2", "x*y", "y^2"})) ==
        std::vector<std::vector<int>>{{0, 1}});
  CHECK_THROWS_AS(monomial_radical(ideal(r, {"x + y"})), UnsupportedInput);

  // (x^2, xz, yz): radical is (x, yz).
  auto rad2 = monomial_radical(ideal(r, {"x^2", "x*z", "y*z"}));
  std::set<std::string> got;
  for (const auto& g : rad2.generators()) got.insert(g.to_string());
  CHECK(got == std::set<std::string>{"x", "y*z"});
}

TEST_CASE("radical properties on random monomial ideals") {
  std::mt19937_64 rng(99);
  auto r = ring({"a", "b", "c"});
  for (int trial = 0; trial < 40; ++trial) {
    auto gens = random_monomials(rng, 3, uniform(rng, 1, 4), 4);
    auto I = IdealSpec::from_monomials(r, gens);
    auto rad = monomial_radical(I);
    auto radgens = rad.monomial_generators();
    CHECK(monomial_radical(rad).monomial_generators() == radgens);
    for (const auto& g : gens) {
      bool inside = false;
      for (const auto& q : radgens) inside = inside || divides(q, g);
      CHECK(inside);
    }
    // u is in the radical iff u^4 lies in I (exponents here are at most 4).
    for (int d = 0; d <= 3; ++d) {
      for (const auto& u : monomials_of_degree(3, d)) {
        Monomial u4 = u;
        for (auto& e : u4) e *= 4;
        bool in_I = false, in_rad = false;
        for (const auto& g : gens) in_I = in_I || divides(g, u4);
        for (const auto& q : radgens) in_rad = in_rad || divides(q, u);
        CHECK(in_I == in_rad);
      }
    }
  }
}

TEST_CASE("normal form absorbs ideal multiples") {
  std::mt19937_64 rng(5);
  auto r = ring({"X1", "X2", "X3", "X4", "X5"});
  auto I = ideal(r, kQuadrics);
  auto g = buchberger(I);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = I.generators()[uniform(rng, 0, 9)];
    Poly q = random_poly(rng, r, 3, 2), h = random_poly(rng, r, 4, 3);
    CHECK(g.normal_form(f * q + h) == g.normal_form(h));
  }
}

TEST_CASE("pair ceiling") {
  auto r = ring({"X1", "X2", "X3", "X4", "X5"});
  CHECK_THROWS_AS(buchberger(ideal(r, kQuadrics), BuchbergerOptions{3}), LimitExceeded);
}
