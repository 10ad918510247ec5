#include "doctest.h"
#include "fiberlab/errors.hpp"
#include "fiberlab/ringspec.hpp"
#include "helpers.hpp"

using namespace fiberlab;
using namespace testing_support;

namespace {

void check_parse_error(const std::string& text, int line, int col) {
  try {
    parse_ringspec(text);
    FAIL("no error for: " << text);
  } catch (const ParseError& e) {
    CHECK_MESSAGE(e.line() == line, e.what());
    CHECK_MESSAGE(e.col() == col, e.what());
  }
}

}  // namespace

TEST_CASE("a complete spec") {
  auto p = parse_ringspec(
      "# the embedded point on a cone\n"
      "name: S0(1)\n"
      "field: Fp(7)\n"
      "vars: x, y   # coordinates\n"
      "ideal: x^2, x*y\n"
      "ideal: y^2\n"
      "cone_vars: Y\n"
      "flags: finite_cm_type=false, analytically_unramified = true\n");
  CHECK(p.name == "S0(1)");
  auto r = p.ideal.ring();
  CHECK(r->vars == std::vector<std::string>{"x", "y"});
  CHECK(r->field.characteristic() == 7);
  REQUIRE(p.ideal.generators().size() == 3);
  CHECK(p.ideal.generators()[2] == P(r, "y^2"));
  CHECK(p.cone_vars == std::vector<std::string>{"Y"});
  CHECK(p.declared.at("finite_cm_type") == false);
  CHECK(p.declared.at("analytically_unramified") == true);
}

TEST_CASE("defaults and parameters") {
  auto p = parse_ringspec("name: plane\nvars: x, y\n");
  CHECK(p.ideal.generators().empty());
  CHECK(p.ideal.ring()->field == FieldSpec::rationals());
  CHECK(p.cone_vars.empty());

  auto q = parse_ringspec("name: a\nvars: x, y\nideal: alpha*x*y + y^2\n", {{"alpha", Scalar(3)}});
  CHECK(q.ideal.generators()[0] == P(q.ideal.ring(), "3*x*y + y^2"));
}

TEST_CASE("errors carry line and column") {
  check_parse_error("name: a\nvars: x\ncolour: red\n", 3, 1);
  check_parse_error("name: a\nvars: x\nvars: y\n", 3, 1);
  check_parse_error("name: a\nfield: Fp(8)\nvars: x\n", 2, 11);
  check_parse_error("name: a\nfield: R\nvars: x\n", 2, 8);
  check_parse_error("name: a\nvars: x, 2y\n", 2, 10);
  check_parse_error("name: a\nvars: x, x\n", 2, 10);
  check_parse_error("name: a\nvars: x\ncone_vars: x\n", 3, 12);
  check_parse_error("name: a\nvars: x\nideal: x^2,, x\n", 3, 12);
  check_parse_error("name: a\nvars: x\nflags: smooth=true\n", 3, 8);
  check_parse_error("name: a\nvars: x\nflags: regular=yes\n", 3, 16);
  check_parse_error("name: a\nvars: x\nno colon here\n", 3, 1);
  check_parse_error("vars: x\n", 2, 1);
  check_parse_error("name: a\n", 2, 1);
  // Column inside a polynomial: the stray 'q' in the second entry.
  check_parse_error("name: a\nvars: x, y\nideal: x^2, x*q\n", 3, 15);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_ringspec("/nonexistent/ring.spec"), ParseError); }
