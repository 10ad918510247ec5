#include "doctest.h"
#include "fiberlab/errors.hpp"
#include "fiberlab/homalg.hpp"
#include "fiberlab/paperlab.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

HarnessOptions fast() {
  HarnessOptions o;
  o.trunc = 4;
  o.ext_bound = 6;
  return o;
}

bool has_note(const Report& r, const std::string& prefix) {
  for (const auto& n : r.notes)
    if (n.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("named examples build and match their expected values") {
  for (const auto& id : named_example_ids()) {
    std::vector<std::optional<int>> ns = {std::nullopt};
    if (example_takes_n(id)) ns = {id.rfind("SQ_", 0) == 0 ? 1 : 2, id.rfind("SQ_", 0) == 0 ? 2 : 5};
    for (auto n : ns) {
      auto ex = build(id, n);
      CAPTURE(ex.id);
      CHECK_FALSE(ex.expected.empty());
      for (const auto& e : ex.expected) CHECK_FALSE(e.claim.empty());
      for (const auto& c : check_expected(ex, evaluate(ex, fast()))) {
        CAPTURE(c.id);
        CHECK(c.status == CheckStatus::Pass);
      }
    }
  }
}

TEST_CASE("build rejects unknown ids and out-of-range n") {
  CHECK_THROWS_AS(build("NOPE"), UnsupportedInput);
  CHECK_THROWS_AS(build("SQ_CORE", 0), UnsupportedInput);
  CHECK_THROWS_AS(build("SQ_CORE", 4), UnsupportedInput);
  CHECK_THROWS_AS(build("SQ_CORE"), UnsupportedInput);
  CHECK_THROWS_AS(build("HYPER", 1), UnsupportedInput);
  CHECK_THROWS_AS(build("NODE", 2), UnsupportedInput);
  CHECK(build("SQ_FIBER", 2).id == "SQ_FIBER(2)");
}

TEST_CASE("square-zero core sizes") {
  // Tensor power of k[x,y]/(x,y)^2: length 3^n, socle 2^n.
  auto a = quotient_algebra(square_core(2).ideal);
  auto inv = local_invariants(*a);
  CHECK(inv.length == 9);
  CHECK(inv.socle_dim == 4);
  CHECK(inv.edim == 4);
  auto fam = tensor_choice_family(2);
  CHECK(fam.algebra->length() == 9);
  CHECK(fam.labels == std::vector<std::string>{"AA", "Aw", "wA", "ww"});
  // mu of the tensor choice is 2 to the number of dualizing factors.
  CHECK(fam.modules[0].mu() == 1);
  CHECK(fam.modules[3].mu() == 4);
  CHECK(fam.algebra->field().kind() == FieldKind::FractionField);
}

TEST_CASE("the n = 1 family is the free module and the dualizing module") {
  auto r = verify_semidualizing_family(1, fast());
  CHECK(r.passed());
  CHECK(r.exit_code() == 0);
  CHECK(r.tallies.at("lower_bound_certified") == 2);
  CHECK(r.paper_asserted.size() == 2);
  CHECK(has_note(r, "ext bound used: 6"));
  CHECK(semidualizing_ext_bound(3, 12) == 8);
  CHECK(semidualizing_ext_bound(2, 12) == 12);
  CHECK_THROWS_AS(verify_semidualizing_family(4), UnsupportedInput);
}

TEST_CASE("Hilbert route is inconclusive below the stable range") {
  HarnessOptions o = fast();
  o.trunc = 2;
  o.hilbert_max = 3;
  auto r = verify_gorenstein_cone_fiber(o);
  const CheckResult* f = r.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->id == "R.multiplicity.hilbert");
  CHECK(f->status == CheckStatus::Inconclusive);
  CHECK(r.exit_code() == 3);
  CHECK(r.checks.size() == 10);
  CHECK_THROWS_AS(r.require_pass(), CheckFailure);
}

TEST_CASE("alpha of finite order is flagged, not failed") {
  HarnessOptions o = fast();
  o.trunc = 2;
  o.alpha = Scalar(1);
  auto r = verify_gorenstein_cone_fiber(o);
  CHECK(has_note(r, "UNVERIFIED PRECONDITION: alpha = 1"));
  CHECK(r.checks[0].id == "JS_A.length");
  CHECK(r.checks[0].actual == "12");
  o.alpha = Scalar(3, 2);
  CHECK(has_note(verify_gorenstein_cone_fiber(o), "precondition: alpha = 3/2"));
}

TEST_CASE("report bookkeeping") {
  Report r;
  r.harness = "h";
  r.add("a", 1, 1);
  CHECK(r.passed());
  r.add("b", 2, std::nullopt);
  CHECK(r.exit_code() == 3);
  r.add("c", 2, 3);
  CHECK(r.exit_code() == 1);
  CHECK(r.first_failure()->id == "c");
  auto text = format_report(r);
  CHECK(text.find("COMPUTED        FAIL  c  expected 2, got 3") != std::string::npos);
  CHECK(text.find("RESULT          FAIL") != std::string::npos);
}

TEST_CASE("monomial down-sets are counted by partitions") {
  auto sizes = [](int nvars, int max_len) {
    std::vector<int> count(max_len + 1, 0);
    for (const auto& d : monomial_down_sets(nvars, max_len)) ++count[d.size()];
    return std::vector<int>(count.begin() + 1, count.end());
  };
  // Oracles: p(n), plane partitions, solid partitions.
  CHECK(sizes(1, 8) == std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(sizes(2, 8) == std::vector<int>{1, 2, 3, 5, 7, 11, 15, 22});
  CHECK(sizes(3, 8) == std::vector<int>{1, 3, 6, 13, 24, 48, 86, 160});
  CHECK(sizes(4, 7) == std::vector<int>{1, 4, 10, 26, 59, 140, 307});
}

TEST_CASE("proof invariants hold on every down-set, also in four variables") {
  auto r3 = verify_proof_invariants(3, 8);
  CHECK(r3.passed());
  CHECK(r3.tallies.at("down_sets") == 341);
  CHECK(r3.tallies.at("hypothesis_holds") > 0);
  CHECK(verify_proof_invariants(4, 7).passed());
}

TEST_CASE("reduction multiplicity fixtures are certified") {
  auto r = verify_nil_multiplicity();
  CHECK(r.passed());
  CHECK(r.checks.size() >= 10);
  CHECK(r.tallies.at("certified") == r.tallies.at("fixtures"));
}

TEST_CASE("classification fixtures") {
  auto r = verify_classification();
  CHECK(r.passed());
  CHECK(r.checks.size() == 7);
  CHECK(r.tallies.at("pairs.decided") > 100);
}

TEST_CASE("a small corpus run is deterministic") {
  CorpusOptions c;
  c.seed = 7;
  c.count = 4;
  c.degree = 5;
  auto a = verify_corpus(c), b = verify_corpus(c);
  CHECK(a.passed());
  CHECK(format_report(a) == format_report(b));
  CHECK(a.tallies.at("pairs") == 4);
  std::mt19937_64 r1(11), r2(11);
  for (int i = 0; i < 5; ++i) {
    auto x = random_artinian_monomial_ideal(r1, "x", 8), y = random_artinian_monomial_ideal(r2, "x", 8);
    CHECK(x.monomial_generators() == y.monomial_generators());
    CHECK(standard_basis(buchberger(x)).size() <= 8);
  }
}
