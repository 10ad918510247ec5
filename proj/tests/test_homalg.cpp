#include "doctest.h"
#include "fiberlab/errors.hpp"
#include "fiberlab/homalg.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

AlgPtr algebra(const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
  return quotient_algebra(ideal(ring(vars), gens));
}

AlgPtr gorenstein_js() {
  return algebra({"X1", "X2", "X3", "X4", "X5"},
                 {"2*X1*X3 + X2*X3", "X1*X4 + X2*X4", "X3^2 + 2*X1*X5 - X2*X5", "X4^2 + X1*X5 - X2*X5", "X1^2",
                  "X2^2", "X3*X4", "X3*X5", "X4*X5", "X5^2"});
}

std::vector<std::int64_t> ints(std::initializer_list<std::int64_t> v) { return v; }

AlgPtr random_monomial_algebra(std::mt19937_64& rng, int max_vars) {
  int n = uniform(rng, 1, max_vars);
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("v" + std::to_string(i));
  auto r = ring(vars);
  std::vector<Monomial> gens;
  for (int v = 0; v < n; ++v) {
    Monomial m(n, 0);
    m[v] = uniform(rng, 1, 3);
    gens.push_back(m);
  }
  if (n >= 2 && uniform(rng, 0, 1)) {
    Monomial m(n, 0);
    m[0] = 1;
    m[1] = 1;
    gens.push_back(m);
  }
  return quotient_algebra(IdealSpec::from_monomials(r, gens));
}

}  // namespace

TEST_CASE("Betti numbers of the residue field") {
  auto dual_numbers = algebra({"x"}, {"x^2"});
  CHECK(minimal_resolution(residue_field(dual_numbers), 5).betti == ints({1, 1, 1, 1, 1, 1}));
  auto cube = algebra({"x"}, {"x^3"});
  CHECK(minimal_resolution(residue_field(cube), 4).betti == ints({1, 1, 1, 1, 1}));
  // m^2 = 0 with edim e: beta_i = e^i.
  auto sq2 = algebra({"x", "y"}, {"x^2", "x*y", "y^2"});
  CHECK(minimal_resolution(residue_field(sq2), 5).betti == ints({1, 2, 4, 8, 16, 32}));
  auto sq3 = algebra({"x", "y", "z"}, {"x^2", "y^2", "z^2", "x*y", "x*z", "y*z"});
  CHECK(minimal_resolution(residue_field(sq3), 4).betti == ints({1, 3, 9, 27, 81}));
  // Complete intersection of two quadrics: 1 / (1 - t)^2.
  auto ci = algebra({"x", "y"}, {"x^2", "y^2"});
  CHECK(poincare_series(ci, 5).to_ints() == ints({1, 2, 3, 4, 5, 6}));
  // Field: k is free.
  auto k = field_algebra(FieldSpec::rationals());
  CHECK(minimal_resolution(residue_field(k), 3).betti == ints({1, 0, 0, 0}));
}

TEST_CASE("resolutions of free modules and the structure of the output") {
  auto a = algebra({"x", "y"}, {"x^2", "y^3"});
  auto res = minimal_resolution(free_module(a, 3), 3);
  CHECK(res.betti == ints({3, 0, 0, 0}));
  CHECK(res.computed_to == 3);
  auto rk = minimal_resolution(residue_field(a), 4);
  CHECK(rk.is_minimal());
  CHECK(rk.exactness_checks > 0);
  REQUIRE(rk.maps.size() == 5);
  for (int i = 0; i <= 4; ++i) CHECK(static_cast<std::int64_t>(rk.maps[i].size()) == rk.betti[i]);
  REQUIRE(rk.generator_degrees[1].size() == 2);
  CHECK(rk.generator_degrees[1][0].size() == static_cast<std::size_t>(a->grading_rank()));
}

TEST_CASE("the ceiling on free module dimension") {
  auto sq2 = algebra({"x", "y"}, {"x^2", "x*y", "y^2"});
  ResolutionOptions opt;
  opt.max_free_dim = 20;
  CHECK_THROWS_AS(minimal_resolution(residue_field(sq2), 6, opt), LimitExceeded);
  opt.throw_on_ceiling = false;
  auto res = minimal_resolution(residue_field(sq2), 6, opt);
  CHECK(res.hit_ceiling);
  // F_2 has dimension 4 * 3 = 12, F_3 has 24 > 20: beta_0..beta_3 are known.
  CHECK(res.computed_to == 3);
  CHECK(res.betti == ints({1, 2, 4, 8}));
}

TEST_CASE("Ext dimensions") {
  auto dual_numbers = algebra({"x"}, {"x^2"});
  auto A = free_module(dual_numbers), k = residue_field(dual_numbers);
  CHECK(ext_dims(k, A, 3) == ints({1, 0, 0, 0}));
  CHECK(ext_dims(A, A, 3) == ints({2, 0, 0, 0}));
  CHECK(ext_dims(k, k, 3) == ints({1, 1, 1, 1}));
  auto sq2 = algebra({"x", "y"}, {"x^2", "x*y", "y^2"});
  auto w = dualizing_module(sq2);
  auto ew = ext_dims(w, w, 6);
  CHECK(ew == ints({3, 0, 0, 0, 0, 0, 0}));
  CHECK(ext_dims(residue_field(sq2), free_module(sq2), 3) == ints({2, 3, 6, 12}));
}

TEST_CASE("Ext^0 is Hom and Ext^i(M, k) counts generators of F_i") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = random_monomial_algebra(rng, 3);
    auto k = residue_field(a);
    std::vector<ModRep> mods = {k, free_module(a), dualizing_module(a)};
    for (const auto& m : mods) {
      auto res = minimal_resolution(m, 4);
      auto e = ext_dims(res, m, k, 3);
      for (int i = 0; i <= 3; ++i) CHECK(e[i] == res.betti[i]);
      for (const auto& n : mods) CHECK(ext_dims(m, n, 0)[0] == hom_dim(m, n));
    }
  }
}

TEST_CASE("Bass series two ways") {
  auto sq2 = algebra({"x", "z"}, {"x^2", "x*z", "z^2"});
  CHECK(bass_series(sq2, 4).to_ints() == ints({2, 3, 6, 12, 24}));
  CHECK(poincare_series(sq2, 3).to_ints() == ints({1, 2, 4, 8}));
  auto js = gorenstein_js();
  CHECK(bass_series(js, 3).to_ints() == ints({1, 0, 0, 0}));
  CHECK(bass_series_by_ext(js, 2).to_ints() == ints({1, 0, 0}));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = random_monomial_algebra(rng, 3);
    CHECK(bass_series(a, 3) == bass_series_by_ext(a, 3));
  }
}

TEST_CASE("Poincare series are multiplicative over tensor products") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_monomial_algebra(rng, 2);
    auto b = random_monomial_algebra(rng, 2);
    auto ab = tensor_algebra(a, b);
    CHECK(poincare_series(ab, 4) == poincare_series(a, 4) * poincare_series(b, 4));
  }
}

TEST_CASE("semidualizing modules") {
  auto sq2 = algebra({"x", "y"}, {"x^2", "x*y", "y^2"});
  auto free = is_semidualizing(free_module(sq2), 5);
  CHECK(free.verdict);
  CHECK(free.ext == ints({3, 0, 0, 0, 0, 0}));
  auto w = is_semidualizing(dualizing_module(sq2), 8);
  CHECK(w.verdict);
  CHECK(w.hom_dim == 3);
  CHECK(w.nat_map_injective);
  auto k = is_semidualizing(residue_field(sq2), 5);
  CHECK_FALSE(k.verdict);
  CHECK_FALSE(k.nat_map_injective);
  CHECK(k.ext.empty());
  auto dual_numbers = algebra({"x"}, {"x^2"});
  auto kk = is_semidualizing(residue_field(dual_numbers), 3);
  CHECK_FALSE(kk.verdict);
}
