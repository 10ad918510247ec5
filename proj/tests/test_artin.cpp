#include "doctest.h"
#include "fiberlab/artin.hpp"
#include "fiberlab/errors.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

AlgPtr gorenstein_js(int alpha = 2) {
  auto r = ring({"X1", "X2", "X3", "X4", "X5"});
  std::string a = std::to_string(alpha);
  return quotient_algebra(ideal(r, {a + "*X1*X3 + X2*X3", "X1*X4 + X2*X4", "X3^2 + " + a + "*X1*X5 - X2*X5",
                                    "X4^2 + X1*X5 - X2*X5", "X1^2", "X2^2", "X3*X4", "X3*X5", "X4*X5", "X5^2"}));
}

AlgPtr square_of_max(const std::string& x, const std::string& y) {
  auto r = ring({x, y});
  return quotient_algebra(ideal(r, {x + "^2", x + "*" + y, y + "^2"}));
}

AlgPtr random_monomial_algebra(std::mt19937_64& rng) {
  int n = uniform(rng, 1, 2);
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("u" + std::to_string(uniform(rng, 0, 999)) + "_" + std::to_string(i));
  auto r = ring(vars);
  std::vector<Monomial> gens;
  for (int v = 0; v < n; ++v) {
    Monomial m(n, 0);
    m[v] = uniform(rng, 1, 3);
    gens.push_back(m);
  }
  if (n == 2 && uniform(rng, 0, 1)) gens.push_back({uniform(rng, 1, 2), uniform(rng, 1, 2)});
  return quotient_algebra(IdealSpec::from_monomials(r, gens));
}

}  // namespace

TEST_CASE("small quotient algebras") {
  auto a = quotient_algebra(ideal(ring({"x"}), {"x^2"}));
  CHECK(a->length() == 2);
  CHECK(a->basis_name(1) == "x");
  auto inv = local_invariants(*a);
  CHECK(inv.edim == 1);
  CHECK(inv.gorenstein);
  auto b = square_of_max("x", "y");
  CHECK(b->length() == 3);
  CHECK(b->product(1, 2).empty());
  auto ib = local_invariants(*b);
  CHECK(ib.length == 3);
  CHECK(ib.edim == 2);
  CHECK(ib.socle_dim == 2);
  CHECK_FALSE(ib.gorenstein);
  auto k = field_algebra(FieldSpec::rationals());
  auto ik = local_invariants(*k);
  CHECK(ik.length == 1);
  CHECK(ik.edim == 0);
  CHECK(ik.socle_dim == 1);
  CHECK(ik.gorenstein);
}

TEST_CASE("Gorenstein algebra from the quadrics") {
  auto a = gorenstein_js();
  auto inv = local_invariants(*a);
  CHECK(inv.length == 12);
  CHECK(inv.edim == 5);
  CHECK(inv.socle_dim == 1);
  CHECK(inv.gorenstein);
  CHECK(inv.loewy_length == 4);
  CHECK(inv.m_power_dims == std::vector<int>{12, 11, 6, 1, 0});
  // Z^2 grading found on the basis: X1, X2 share a degree, so do X3, X4.
  CHECK(a->grading_rank() == 2);
  CHECK(a->generator_degree(0) == a->generator_degree(1));
  CHECK(a->generator_degree(2) == a->generator_degree(3));
  auto over_y = base_change_fraction_field(a, "Y");
  CHECK(over_y->field().name() == "Q((Y))");
  auto iy = local_invariants(*over_y);
  CHECK(iy.length == 12);
  CHECK(iy.edim == 5);
  CHECK(iy.gorenstein);
  CHECK(iy.m_power_dims == inv.m_power_dims);
}

TEST_CASE("non-local and non-cofinite inputs") {
  CHECK_THROWS_AS(quotient_algebra(ideal(ring({"x"}), {"x^2 - x"})), StructuralError);
  CHECK_THROWS_AS(quotient_algebra(ideal(ring({"x", "z"}), {"x*z"})), NotCofiniteError);
}

TEST_CASE("tensor products of the length-3 algebra") {
  auto s1 = square_of_max("X11", "X21");
  auto s2 = tensor_algebra(s1, square_of_max("X12", "X22"));
  auto i2 = local_invariants(*s2);
  CHECK(i2.length == 9);
  CHECK(i2.edim == 4);
  CHECK(i2.socle_dim == 4);
  auto s3 = tensor_algebra(s2, square_of_max("X13", "X23"));
  auto i3 = local_invariants(*s3);
  CHECK(i3.length == 27);
  CHECK(i3.socle_dim == 8);
  CHECK(i3.edim == 6);
  auto k = field_algebra(FieldSpec::rationals());
  auto ak = tensor_algebra(s1, k);
  CHECK(ak->length() == 3);
  CHECK(local_invariants(*ak).socle_dim == 2);
  CHECK_THROWS_AS(tensor_algebra(s1, field_algebra(FieldSpec::prime(3))), StructuralError);
}

TEST_CASE("tensor invariants multiply and add on random pairs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    auto a = random_monomial_algebra(rng), b = random_monomial_algebra(rng);
    auto ia = local_invariants(*a), ib = local_invariants(*b);
    auto it = local_invariants(*tensor_algebra(a, b));
    CHECK(it.length == ia.length * ib.length);
    CHECK(it.socle_dim == ia.socle_dim * ib.socle_dim);
    CHECK(it.edim == ia.edim + ib.edim);
  }
}

TEST_CASE("socle computed two ways") {
  std::mt19937_64 rng(32);
  std::vector<AlgPtr> algs = {gorenstein_js(), square_of_max("x", "y")};
  for (int i = 0; i < 8; ++i) algs.push_back(random_monomial_algebra(rng));
  for (const auto& a : algs) {
    auto s1 = socle_by_generators(*a), s2 = socle_by_maximal_ideal(*a);
    REQUIRE(s1.size() == s2.size());
    // same subspace: the union has the same rank
    std::vector<SparseVec> both = s1;
    both.insert(both.end(), s2.begin(), s2.end());
    CHECK(sparse_rank(both, a->length(), a->field()) == static_cast<int>(s1.size()));
  }
}

TEST_CASE("dualizing modules") {
  auto a = quotient_algebra(ideal(ring({"x"}), {"x^2"}));
  auto w = dualizing_module(a);
  CHECK(w.dim() == 2);
  CHECK(w.mu() == 1);
  CHECK(is_isomorphic(w, free_module(a)));
  auto b = square_of_max("x", "y");
  auto wb = dualizing_module(b);
  CHECK(wb.dim() == 3);
  CHECK(wb.mu() == 2);
  CHECK_FALSE(is_isomorphic(free_module(b), wb));
  // Biduality.
  std::mt19937_64 rng(33);
  std::vector<AlgPtr> algs = {a, b, gorenstein_js()};
  for (int i = 0; i < 5; ++i) algs.push_back(random_monomial_algebra(rng));
  for (const auto& alg : algs) {
    auto ww = linear_dual(dualizing_module(alg));
    ww.validate();
    CHECK(is_isomorphic(ww, free_module(alg)));
    CHECK(dualizing_module(alg).mu() == local_invariants(*alg).socle_dim);
  }
}

TEST_CASE("tensor modules over the length-9 algebra") {
  auto s1 = square_of_max("X11", "X21");
  auto t1 = square_of_max("X12", "X22");
  auto s2 = tensor_algebra(s1, t1);
  auto A1 = free_module(s1), W1 = dualizing_module(s1);
  auto A2 = free_module(t1), W2 = dualizing_module(t1);
  auto AA = tensor_module(A1, A2, s2);
  CHECK(AA.dim() == 9);
  CHECK(AA.mu() == 1);
  CHECK(is_isomorphic(AA, free_module(s2)));
  auto AW = tensor_module(A1, W2, s2);
  auto WA = tensor_module(W1, A2, s2);
  auto WW = tensor_module(W1, W2, s2);
  CHECK(AW.dim() == 9);
  CHECK(AW.mu() == 2);
  CHECK(WW.mu() == 4);
  CHECK(is_isomorphic(WW, dualizing_module(s2)));
  CHECK_FALSE(is_isomorphic(AW, WA));
  CHECK_FALSE(is_isomorphic(AW, AA));
  CHECK_FALSE(is_isomorphic(WW, WA));
}

TEST_CASE("Hom dimensions") {
  auto a = gorenstein_js();
  auto A = free_module(a), k = residue_field(a), w = dualizing_module(a);
  CHECK(hom_dim(A, w) == 12);
  CHECK(hom_dim(k, A) == 1);
  CHECK(hom_dim(A, A) == 12);
  CHECK(hom_dim(k, k) == 1);
  CHECK(hom_dim(A, k) == 1);
  auto b = square_of_max("x", "y");
  CHECK(hom_dim(residue_field(b), free_module(b)) == 2);
  CHECK(hom_dim(residue_field(b), residue_field(b)) == 1);
  CHECK(hom_dim(dualizing_module(b), dualizing_module(b)) == 3);
}

TEST_CASE("isomorphism after rescaling a basis vector") {
  auto b = square_of_max("x", "y");
  auto w = dualizing_module(b);
  // Same module with v1 replaced by 2 v1.
  std::vector<std::vector<SparseVec>> act(b->ngens(), std::vector<SparseVec>(3));
  for (int g = 0; g < b->ngens(); ++g) {
    for (int i = 0; i < 3; ++i) {
      for (const auto& [j, x] : w.action(g)[i]) {
        Scalar s = x;
        if (j == 1) s *= 2;
        if (i == 1) s /= 2;
        act[g][i].emplace_back(j, s);
      }
    }
  }
  ModRep w2(b, w.degrees(), act);
  CHECK(is_isomorphic(w, w2));
  CHECK_FALSE(is_isomorphic(w2, residue_field(b)));
}

TEST_CASE("invalid module data is rejected") {
  auto a = quotient_algebra(ideal(ring({"x"}), {"x^2"}));
  // x acting as a single nilpotent Jordan block of size 3 violates x^2 = 0.
  std::vector<Degree> deg = {{0}, {1}, {2}};
  std::vector<std::vector<SparseVec>> act(1, std::vector<SparseVec>(3));
  act[0][0] = {{1, Scalar(1)}};
  act[0][1] = {{2, Scalar(1)}};
  CHECK_THROWS_AS(ModRep(a, deg, act), StructuralError);
  // Degree mismatch: x sending v0 to a vector of the same degree.
  std::vector<std::vector<SparseVec>> flat(1, std::vector<SparseVec>(2));
  flat[0][0] = {{1, Scalar(1)}};
  CHECK_THROWS_AS(ModRep(a, {{0}, {0}}, flat), StructuralError);
}
