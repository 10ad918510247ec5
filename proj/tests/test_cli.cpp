#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fiberlab/paperlab.hpp"
#include "fiberlab/ringspec.hpp"
#include "json.hpp"

using namespace fiberlab;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".ring"; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string gb_text(const IdealSpec& ideal) {
  std::string s;
  auto gb = buchberger(ideal);
  for (const auto& p : gb.basis()) s += p.to_string() + "; ";
  return s;
}

void same_ring(const RingPresentation& file, const RingPresentation& built) {
  auto a = full_ideal(file), b = full_ideal(built);
  CHECK(a.ring()->vars == b.ring()->vars);
  CHECK(file.cone_vars == built.cone_vars);
  CHECK(gb_text(a) == gb_text(b));
}

}  // namespace

TEST_CASE("fixture files present the same rings as the builders") {
  std::map<std::string, Scalar> params = {{"alpha", Scalar(2)}};
  auto load = [&](const std::string& n) { return load_ringspec(fixture(n), params); };

  same_ring(load("js_a"), *build("JS_A").ring);
  same_ring(load("js_a_cone"), build("GOR_FIBER").factors[0]);
  same_ring(load("gor_fiber"), *build("GOR_FIBER").ring);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    same_ring(load("s0_" + std::to_string(n)), *build("SQ_CORE", n).ring);
    same_ring(load("s0_" + std::to_string(n) + "_cone"), build("SQ_FIBER", n).factors[0]);
    same_ring(load("sq_fiber_" + std::to_string(n)), *build("SQ_FIBER", n).ring);
  }
  same_ring(load("node"), *build("NODE").ring);
  same_ring(load("hyper_2"), *build("HYPER", 2).ring);
  same_ring(load("hyper_3"), *build("HYPER", 3).ring);
  same_ring(load("dvr_z"), build("CUSP_FIBER", 2).factors[1]);
}

TEST_CASE("localized fixtures over Q((Y)) match the base-changed algebras") {
  HarnessOptions o;
  o.trunc = 3;
  auto po = profile_options(o);
  auto loc = load_ringspec(fixture("gor_fiber_loc"), {{"alpha", Scalar(2)}});
  CHECK(loc.ideal.ring()->field.name() == "Q((Y))");
  auto p = compute_profile(loc, po);
  auto q = evaluate(build("GOR_FIBER_LOC"), o);
  for (const char* k : {"length", "edim", "ecodepth", "gorenstein", "type"}) {
    CAPTURE(k);
    CHECK(profile_value(p, k) == profile_value(q, k));
  }
  for (int n = 1; n <= 2; ++n) {
    auto l = compute_profile(load_ringspec(fixture("sq_fiber_loc_" + std::to_string(n))), po);
    auto ex = build("SQ_FIBER_LOC", n);
    for (const auto& e : ex.expected) {
      CAPTURE(e.invariant);
      CHECK(profile_value(l, e.invariant) == e.value);
    }
  }
}

TEST_CASE("invariants verb emits stable JSON") {
  auto a = run({"--json", "--trunc", "4", "invariants", fixture("s0_2")});
  auto b = run({"--json", "--trunc", "4", "invariants", fixture("s0_2")});
  REQUIRE(a.code == cli::kPass);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  CHECK(j["command"] == "invariants");
  CHECK(j["computed"]["length"] == 9);
  CHECK(j["computed"]["type"] == 4);
  CHECK(j["computed"]["poincare_k"]["coeffs"] == json::array({1, 4, 12, 32, 80}));
  CHECK(j["bounds"]["trunc"] == 4);
  CHECK(j["verdicts"]["gorenstein"] == false);
  CHECK(j["paper_asserted"].empty());
}

TEST_CASE("text output mirrors the JSON sections") {
  auto r = run({"--trunc", "3", "invariants", fixture("hyper_2")});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.find("computed:\n") != std::string::npos);
  CHECK(r.out.find("  multiplicity: 2\n") != std::string::npos);
  CHECK(r.out.find("verdicts:\n") != std::string::npos);
}

TEST_CASE("fiber verb cross-checks against the explicit presentation") {
  auto r = run({"--json", "--trunc", "6", "fiber", fixture("s0_1"), fixture("square_uv")});
  REQUIRE(r.code == cli::kPass);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["direct_agrees"] == true);
  CHECK(j["computed"]["R"]["length"] == 5);
  CHECK(j["computed"]["direct"]["bass"] == j["computed"]["R"]["bass"]);

  r = run({"--json", "--trunc", "4", "fiber", fixture("hyper_2"), fixture("dvr_z")});
  REQUIRE(r.code == cli::kPass);
  j = json::parse(r.out);
  CHECK(j["computed"]["R"]["multiplicity"] == 3);
  CHECK(j["computed"]["direct"]["multiplicity"] == 3);

  // Not homogeneous: the direct route yields no multiplicity to compare.
  r = run({"--json", "--trunc", "4", "fiber", fixture("hyper_3"), fixture("dvr_z")});
  REQUIRE(r.code == cli::kPass);
  j = json::parse(r.out);
  CHECK(j["computed"]["R"]["multiplicity"] == 3);
  CHECK_FALSE(j["computed"]["direct"].contains("multiplicity"));
  CHECK(j["verdicts"]["gorenstein"]["value"] == false);

  r = run({"--json", "--trunc", "4", "fiber", fixture("dvr_x"), fixture("dvr_z")});
  j = json::parse(r.out);
  CHECK(j["verdicts"]["gorenstein"]["value"] == true);
}

TEST_CASE("classify verb") {
  auto r = run({"--json", "classify", fixture("hyper_3"), fixture("dvr_z")});
  REQUIRE(r.code == cli::kPass);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["finite_cm_type"] == true);
  CHECK(j["verdicts"]["normal_form"] == "x^2-y^n,xz,yz");
  CHECK(j["verdicts"]["curve_exponent"] == 3);
  CHECK(j["paper_asserted"].size() == 1);

  r = run({"--json", "classify", fixture("double_line"), fixture("dvr_z")});
  REQUIRE(r.code == cli::kPass);
  CHECK(json::parse(r.out)["verdicts"]["finite_cm_type"] == false);

  r = run({"--json", "classify", fixture("embedded_point"), fixture("dvr_z")});
  REQUIRE(r.code == cli::kPass);
  j = json::parse(r.out);
  CHECK_FALSE(j["verdicts"].contains("cm_classification"));
  CHECK(j["verdicts"]["depth_le1_classification"]["matched"] == "2");
}

TEST_CASE("errors map to exit codes") {
  auto r = run({"--json", "classify", fixture("opaque"), fixture("dvr_z")});
  CHECK(r.code == cli::kInputError);
  auto j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "incomplete-profile");
  CHECK(j["error"]["missing"] == json::array({"S.analytically_unramified"}));

  CHECK(run({"invariants", fixture("no_such_file")}).code == cli::kInputError);
  CHECK(run({"--alpha", "x", "invariants", fixture("js_a")}).code == cli::kInputError);
  CHECK(run({"--trunc", "-1", "invariants", fixture("js_a")}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"--help"}).code == cli::kPass);
  CHECK(run({"verify-paper", "--theorem", "9.9"}).code == cli::kInputError);

  std::string path = std::string(FIXTURE_DIR) + "/../build_tmp_bad.ring";
  {
    std::ofstream f(path);
    f << "name: bad\nvars: x\nideal: x^2 +\n";
  }
  r = run({"--json", "invariants", path});
  std::remove(path.c_str());
  CHECK(r.code == cli::kInputError);
  j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "parse");
  CHECK(j["error"]["line"] == 3);
}

TEST_CASE("truncated series are reported and a ceiling in a check exits 3") {
  auto r = run({"--json", "--max-free-dim", "50", "fiber", fixture("js_a"), fixture("s0_1")});
  REQUIRE(r.code == cli::kPass);
  CHECK(json::parse(r.out)["computed"]["notes"].size() >= 1);
  CHECK(json::parse(r.out)["verdicts"]["direct_agrees"] == true);

  CHECK(run({"fiber", fixture("js_a_cone"), fixture("js_a_cone")}).code == cli::kInputError);

  r = run({"--json", "--hilbert-max", "3", "verify-paper", "--theorem", "1.1"});
  CHECK(r.code == cli::kCeiling);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["passed"] == false);
  CHECK(j["verdicts"]["exit_code"] == 3);
}

TEST_CASE("verify-paper harness verbs") {
  auto r = run({"--json", "verify-paper", "--theorem", "reduction"});
  CHECK(r.code == cli::kPass);
  CHECK(json::parse(r.out)["verdicts"]["first_failure"].is_null());
  r = run({"verify-paper", "--theorem", "1.2", "--n", "1", "--ext-bound", "6"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("RESULT          pass") != std::string::npos);
  r = run({"--json", "--seed", "3", "--trunc", "5", "verify-paper", "--theorem", "corpus", "--count", "3"});
  auto again = run({"--json", "--seed", "3", "--trunc", "5", "verify-paper", "--theorem", "corpus", "--count", "3"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out == again.out);
  CHECK(json::parse(r.out)["inputs"]["seed"] == 3);
}
