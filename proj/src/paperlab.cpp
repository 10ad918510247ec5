#include "fiberlab/paperlab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fiberlab/errors.hpp"
#include "fiberlab/homalg.hpp"

namespace fiberlab {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

RingPresentation make_presentation(const std::string& name, const std::vector<std::string>& vars,
                                   const std::vector<std::string>& gens, std::vector<std::string> cone = {},
                                   std::map<std::string, bool> declared = {},
                                   const std::map<std::string, Scalar>& params = {}) {
  auto ring = make_ring(FieldSpec::rationals(), vars);
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, ring, params));
  return RingPresentation{name, IdealSpec(ring, std::move(ps)), std::move(cone), std::move(declared)};
}

RingPresentation with_cone(RingPresentation p, const std::string& var) {
  p.name += "[[" + var + "]]";
  p.cone_vars.push_back(var);
  return p;
}

/// The explicit presentation of S x_k T.
RingPresentation fiber_presentation(const RingPresentation& s, const RingPresentation& t, const std::string& name) {
  return RingPresentation{name, fiber_present(full_ideal(s), full_ideal(t)), {}, {}};
}

std::string ideal_text(const IdealSpec& id) {
  std::string out = "k[";
  const auto& vars = id.ring()->vars;
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? "," : "") + vars[i];
  out += "]/(";
  const auto& g = id.generators();
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? ", " : "") + g[i].to_string();
  return out + ")";
}

std::string ints_text(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

CheckResult string_check(const std::string& id, const std::string& expected, const std::string& actual,
                         const std::string& detail = "") {
  return {id, expected, actual, expected == actual ? CheckStatus::Pass : CheckStatus::Fail, detail};
}

void require_n(const std::string& id, std::optional<int> n, int lo, int hi) {
  if (!n) throw UnsupportedInput(id + " needs n");
  if (*n < lo || *n > hi)
    throw UnsupportedInput(id + ": n = " + std::to_string(*n) + " outside " + std::to_string(lo) + ".." +
                           std::to_string(hi));
}

const char* kGorensteinClaim = "Gorenstein artinian algebra of length 12 and embedding dimension 5";
const char* kGorFiberClaim = "CM of dimension 1, type 2, multiplicity 13, embedding dimension 7, ecodepth 6";
const char* kGorLocClaim = "localization: Gorenstein of length 12, embedding dimension 5, ecodepth 5";
const char* kSqCoreClaim = "artinian of type 2^n, embedding dimension 2n, length 3^n";
const char* kSqFiberClaim = "CM of dimension 1, type 1+2^n, multiplicity 1+3^n, embedding dimension 2n+2";
const char* kSqLocClaim = "localization: type 2^n, multiplicity 3^n, embedding dimension 2n";
const char* kNodeClaim = "k[[x]] x_k k[[z]] = k[[x,z]]/(xz), a dimension-1 hypersurface";
const char* kHyperClaim = "k[[x,y]]/(x^2-y^n) is reduced of multiplicity 2";
const char* kCuspFiberClaim = "k[[x,y,z]]/(x^2-y^n,xz,yz): CM of finite CM type, multiplicity 3";

}  // namespace

const std::vector<std::string>& named_example_ids() {
  static const std::vector<std::string> ids = {"JS_A",         "GOR_FIBER", "GOR_FIBER_LOC", "SQ_CORE", "SQ_FIBER",
                                               "SQ_FIBER_LOC", "NODE",      "HYPER",         "CUSP_FIBER"};
  return ids;
}

bool example_takes_n(const std::string& id) {
  return id == "SQ_CORE" || id == "SQ_FIBER" || id == "SQ_FIBER_LOC" || id == "HYPER" || id == "CUSP_FIBER";
}

RingPresentation gorenstein_core(const Scalar& alpha) {
  return make_presentation("JS_A", {"X1", "X2", "X3", "X4", "X5"},
                           {"alpha*X1*X3 + X2*X3", "X1*X4 + X2*X4", "X3^2 + alpha*X1*X5 - X2*X5",
                            "X4^2 + X1*X5 - X2*X5", "X1^2", "X2^2", "X3*X4", "X3*X5", "X4*X5", "X5^2"},
                           {}, {}, {{"alpha", alpha}});
}

RingPresentation square_core(int n) {
  std::vector<std::string> vars, gens;
  for (int i = 1; i <= n; ++i) {
    std::string a = "X1_" + std::to_string(i), b = "X2_" + std::to_string(i);
    vars.push_back(a);
    vars.push_back(b);
    gens.push_back(a + "^2");
    gens.push_back(a + "*" + b);
    gens.push_back(b + "^2");
  }
  return make_presentation("S0(" + std::to_string(n) + ")", vars, gens);
}

RingPresentation dvr_presentation(const std::string& var) { return make_presentation("k[[" + var + "]]", {var}, {}); }

RingPresentation plane_curve(int n) {
  return make_presentation("A(" + std::to_string(n) + ")", {"x", "y"}, {"x^2 - y^" + std::to_string(n)}, {},
                           {{"finite_cm_type", true}});
}

NamedExample build(const std::string& id, std::optional<int> n, const Scalar& alpha) {
  NamedExample ex;
  ex.id = id;
  if (!example_takes_n(id) && n) throw UnsupportedInput(id + " takes no n");
  auto add = [&](const std::string& inv, std::int64_t v, const char* claim) { ex.expected.push_back({inv, v, claim}); };

  if (id == "JS_A") {
    ex.description = "Gorenstein artinian algebra on five quadratic-form generators";
    ex.ring = gorenstein_core(alpha);
    add("length", 12, kGorensteinClaim);
    add("edim", 5, kGorensteinClaim);
    add("gorenstein", 1, kGorensteinClaim);
  } else if (id == "GOR_FIBER") {
    ex.description = "JS_A[[Y]] x_k k[[Z]]";
    ex.factors = {with_cone(gorenstein_core(alpha), "Y"), dvr_presentation("Z")};
    ex.ring = fiber_presentation(ex.factors[0], ex.factors[1], "R");
    add("dim", 1, kGorFiberClaim);
    add("depth", 1, kGorFiberClaim);
    add("cm", 1, kGorFiberClaim);
    add("type", 2, kGorFiberClaim);
    add("multiplicity", 13, kGorFiberClaim);
    add("edim", 7, kGorFiberClaim);
    add("ecodepth", 6, kGorFiberClaim);
  } else if (id == "GOR_FIBER_LOC") {
    ex.description = "JS_A over Q((Y)), the localization of GOR_FIBER at (X, Z)";
    ex.algebra = base_change_fraction_field(quotient_algebra(gorenstein_core(alpha).ideal), "Y");
    add("length", 12, kGorLocClaim);
    add("edim", 5, kGorLocClaim);
    add("ecodepth", 5, kGorLocClaim);
    add("gorenstein", 1, kGorLocClaim);
  } else if (id == "SQ_CORE") {
    require_n(id, n, 1, 3);
    ex.description = "sum of (X1_i, X2_i)^2, i = 1.." + std::to_string(*n);
    ex.ring = square_core(*n);
    add("length", ipow(3, *n), kSqCoreClaim);
    add("type", ipow(2, *n), kSqCoreClaim);
    add("edim", 2 * *n, kSqCoreClaim);
  } else if (id == "SQ_FIBER") {
    require_n(id, n, 1, 3);
    ex.description = "S0(n)[[Y]] x_k k[[Z]]";
    ex.factors = {with_cone(square_core(*n), "Y"), dvr_presentation("Z")};
    ex.ring = fiber_presentation(ex.factors[0], ex.factors[1], "R");
    add("dim", 1, kSqFiberClaim);
    add("cm", 1, kSqFiberClaim);
    add("type", 1 + ipow(2, *n), kSqFiberClaim);
    add("multiplicity", 1 + ipow(3, *n), kSqFiberClaim);
    add("edim", 2 * *n + 2, kSqFiberClaim);
    add("ecodepth", 2 * *n + 1, kSqFiberClaim);
  } else if (id == "SQ_FIBER_LOC") {
    require_n(id, n, 1, 3);
    ex.description = "S0(n) over Q((Y)), the localization of SQ_FIBER(n) at (X, Z)";
    ex.algebra = base_change_fraction_field(quotient_algebra(square_core(*n).ideal), "Y");
    add("type", ipow(2, *n), kSqLocClaim);
    add("multiplicity", ipow(3, *n), kSqLocClaim);
    add("edim", 2 * *n, kSqLocClaim);
    add("ecodepth", 2 * *n, kSqLocClaim);
  } else if (id == "NODE") {
    ex.description = "k[[x]] x_k k[[z]]";
    ex.factors = {dvr_presentation("x"), dvr_presentation("z")};
    ex.ring = fiber_presentation(ex.factors[0], ex.factors[1], "node");
    add("dim", 1, kNodeClaim);
    add("multiplicity", 2, kNodeClaim);
    add("hypersurface", 1, kNodeClaim);
    add("gorenstein", 1, kNodeClaim);
  } else if (id == "HYPER") {
    require_n(id, n, 2, 12);
    ex.description = "k[[x,y]]/(x^2 - y^" + std::to_string(*n) + ")";
    ex.ring = plane_curve(*n);
    add("dim", 1, kHyperClaim);
    add("multiplicity", 2, kHyperClaim);
    add("hypersurface", 1, kHyperClaim);
    add("analytically_unramified", 1, kHyperClaim);
  } else if (id == "CUSP_FIBER") {
    require_n(id, n, 2, 12);
    ex.description = "k[[x,y]]/(x^2 - y^" + std::to_string(*n) + ") x_k k[[z]]";
    ex.factors = {plane_curve(*n), dvr_presentation("z")};
    ex.ring = fiber_presentation(ex.factors[0], ex.factors[1], "R");
    add("dim", 1, kCuspFiberClaim);
    add("cm", 1, kCuspFiberClaim);
    add("multiplicity", 3, kCuspFiberClaim);
    add("finite_cm_type", 1, kCuspFiberClaim);
  } else {
    throw UnsupportedInput("unknown example id '" + id + "'");
  }
  if (n) ex.id += "(" + std::to_string(*n) + ")";
  return ex;
}

ProfileOptions profile_options(const HarnessOptions& o) {
  ProfileOptions p;
  p.trunc = o.trunc;
  p.hilbert_max = o.hilbert_max;
  p.max_free_dim = o.max_free_dim;
  return p;
}

RingProfile evaluate(const NamedExample& ex, const HarnessOptions& o) {
  auto po = profile_options(o);
  if (ex.algebra) return artinian_profile(ex.algebra, po, ex.id);
  if (ex.factors.size() == 2) {
    FiberSpec f(compute_profile(ex.factors[0], po), compute_profile(ex.factors[1], po));
    auto p = fiber_profile(f, o.trunc);
    p.name = ex.id;
    if (p.dim && *p.dim == 1 && p.cm && *p.cm) {
      try {
        p.finite_cm_type = classify_fcmt_cm(f).finite_cm_type;
        p.computed("finite_cm_type", "CM fiber classification");
      } catch (const IncompleteProfile&) {
      }
    }
    return p;
  }
  return compute_profile(*ex.ring, po);
}

std::optional<std::int64_t> profile_value(const RingProfile& p, const std::string& inv) {
  auto b = [](const std::optional<bool>& v) -> std::optional<std::int64_t> {
    if (!v) return std::nullopt;
    return *v ? 1 : 0;
  };
  if (inv == "dim") return p.dim;
  if (inv == "depth") return p.depth;
  if (inv == "edim") return p.edim;
  if (inv == "ecodepth") return p.ecodepth();
  if (inv == "type") return p.type;
  if (inv == "multiplicity") return p.multiplicity;
  if (inv == "length") return p.length;
  if (inv == "regular") return b(p.regular);
  if (inv == "gorenstein") return b(p.gorenstein);
  if (inv == "cm") return b(p.cm);
  if (inv == "analytically_unramified") return b(p.analytically_unramified);
  if (inv == "finite_cm_type") return b(p.finite_cm_type);
  if (inv == "hypersurface") return b(p.hypersurface());
  throw UnsupportedInput("unknown invariant '" + inv + "'");
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Inconclusive:
      return "inconclusive";
  }
  return "";
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Pass; });
}

const CheckResult* Report::first_failure() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return &c;
  for (const auto& c : checks)
    if (c.status == CheckStatus::Inconclusive) return &c;
  return nullptr;
}

int Report::exit_code() const {
  const CheckResult* f = first_failure();
  if (!f) return 0;
  return f->status == CheckStatus::Fail ? 1 : 3;
}

void Report::require_pass() const {
  if (const CheckResult* f = first_failure())
    throw CheckFailure(harness + ": " + f->id + " expected " + f->expected + ", got " + f->actual + " (" +
                       to_string(f->status) + ")");
}

void Report::add(const std::string& id, std::int64_t expected, std::optional<std::int64_t> actual,
                 const std::string& detail) {
  CheckResult c{id, std::to_string(expected), actual ? std::to_string(*actual) : "undetermined", CheckStatus::Fail,
                detail};
  if (!actual)
    c.status = CheckStatus::Inconclusive;
  else if (*actual == expected)
    c.status = CheckStatus::Pass;
  checks.push_back(std::move(c));
}

std::string format_report(const Report& r) {
  std::ostringstream out;
  out << "== " << r.harness << "\n";
  for (const auto& c : r.checks) {
    out << "COMPUTED        " << to_string(c.status) << "  " << c.id << "  expected " << c.expected << ", got "
        << c.actual;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << "\n";
  }
  for (const auto& a : r.paper_asserted) out << "PAPER-ASSERTED  " << a << "\n";
  for (const auto& n : r.notes) out << "NOTE            " << n << "\n";
  for (const auto& [k, v] : r.tallies) out << "TALLY           " << k << " = " << v << "\n";
  out << "RESULT          " << (r.passed() ? "pass" : r.exit_code() == 1 ? "FAIL" : "inconclusive") << "\n";
  return out.str();
}

std::vector<CheckResult> check_expected(const NamedExample& ex, const RingProfile& p) {
  Report r;
  for (const auto& e : ex.expected) r.add(ex.id + "." + e.invariant, e.value, profile_value(p, e.invariant), e.claim);
  return r.checks;
}

namespace {

void alpha_note(Report& r, const Scalar& alpha) {
  // In Q^x only 1 and -1 have finite order; 0 is not a unit.
  if (alpha == 0 || alpha == 1 || alpha == -1)
    r.notes.push_back("UNVERIFIED PRECONDITION: alpha = " + to_string(alpha) +
                      " does not have infinite multiplicative order; the construction assumes it does");
  else
    r.notes.push_back("precondition: alpha = " + to_string(alpha) + " has infinite multiplicative order in Q^x");
}

}  // namespace

Report verify_gorenstein_cone_fiber(const HarnessOptions& o) {
  Report r;
  r.harness = "Gorenstein cone fiber product (verify-paper --theorem 1.1)";
  alpha_note(r, o.alpha);

  auto js = build("JS_A", std::nullopt, o.alpha);
  for (auto& c : check_expected(js, evaluate(js, o))) r.add(std::move(c));

  auto gf = build("GOR_FIBER", std::nullopt, o.alpha);
  auto p = evaluate(gf, o);
  auto v = [&](const char* inv) { return profile_value(p, inv); };
  auto dd = [&](const std::optional<std::int64_t>& x) { return x ? std::to_string(*x) : std::string("?"); };
  r.add(string_check("R.dim/depth/cm", "1/1/1", dd(v("dim")) + "/" + dd(v("depth")) + "/" + dd(v("cm")),
                     "fiber calculus"));
  r.add("R.type", 2, v("type"), "fiber type table");
  r.add("R.multiplicity", 13, v("multiplicity"), "e(S) + e(T)");

  // Direct route: the first difference of the Hilbert function of the
  // homogeneous presentation settles at the multiplicity.
  auto h = hilbert_analysis(buchberger(gf.ring->ideal), o.hilbert_max);
  CheckResult hc{"R.multiplicity.hilbert", "13", "", CheckStatus::Fail,
                 "first difference of H through n = " + std::to_string(o.hilbert_max)};
  hc.actual = h.differences.empty() ? "none" : std::to_string(h.differences.back());
  if (h.dimension != 1) {
    hc.actual = "dimension " + std::to_string(h.dimension);
  } else if (!h.stabilized) {
    hc.status = CheckStatus::Inconclusive;
    hc.detail += "; not yet stable, raise --hilbert-max";
  } else if (h.differences.back() == 13) {
    hc.status = CheckStatus::Pass;
  }
  r.add(hc);
  r.add("R.edim", 7, v("edim"), "edim S + edim T");
  r.add("R.ecodepth", 6, v("ecodepth"), "edim - depth");

  auto loc = build("GOR_FIBER_LOC", std::nullopt, o.alpha);
  auto lp = evaluate(loc, o);
  auto lv = [&](const char* inv) { return dd(profile_value(lp, inv)); };
  r.add(string_check("R_p.length/edim/ecodepth/gorenstein", "12/5/5/1",
                     lv("length") + "/" + lv("edim") + "/" + lv("ecodepth") + "/" + lv("gorenstein"),
                     "JS_A over Q((Y))"));

  r.paper_asserted = {
      "JS_A does not satisfy Auslander's condition (AC)",
      "R satisfies the uniform Auslander condition (UAC) with b = depth R",
      "R_p does not satisfy (AC), so (UAC) does not localize",
  };
  return r;
}

int semidualizing_ext_bound(int n, int requested) { return n >= 3 ? std::min(requested, 8) : requested; }

SemidualizingFamily tensor_choice_family(int n) {
  if (n < 1 || n > 3) throw UnsupportedInput("tensor_choice_family: n must be in 1..3");
  SemidualizingFamily fam;
  for (int i = 1; i <= n; ++i) {
    auto b = base_change_fraction_field(quotient_algebra(square_core(1).ideal), "Y");
    std::vector<ModRep> choices = {free_module(b), dualizing_module(b)};
    if (!fam.algebra) {
      fam.algebra = b;
      fam.modules = choices;
      fam.labels = {"A", "w"};
      continue;
    }
    auto ab = tensor_algebra(fam.algebra, b);
    std::vector<ModRep> next;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < fam.modules.size(); ++k) {
      next.push_back(tensor_module(fam.modules[k], choices[0], ab));
      labels.push_back(fam.labels[k] + "A");
      next.push_back(tensor_module(fam.modules[k], choices[1], ab));
      labels.push_back(fam.labels[k] + "w");
    }
    fam.algebra = ab;
    fam.modules = std::move(next);
    fam.labels = std::move(labels);
  }
  return fam;
}

Report verify_semidualizing_family(int n, const HarnessOptions& o) {
  if (n < 1 || n > 3) throw UnsupportedInput("n must be in 1..3, got " + std::to_string(n));
  Report r;
  r.harness = "square-zero family, n = " + std::to_string(n) + " (verify-paper --theorem 1.2)";
  const std::string N = "(" + std::to_string(n) + ")";

  auto core = build("SQ_CORE", n);
  for (auto& c : check_expected(core, evaluate(core, o))) r.add(std::move(c));

  auto fib = build("SQ_FIBER", n);
  auto fp = evaluate(fib, o);
  for (auto& c : check_expected(fib, fp)) r.add(std::move(c));
  // The homogeneous presentation of R gives the same type and multiplicity.
  HarnessOptions direct = o;
  direct.trunc = 2;
  auto dp = compute_profile(*fib.ring, profile_options(direct));
  r.add("SQ_FIBER" + N + ".type.direct", *fp.type, dp.type, "presentation (I, ZX, ZY)");
  r.add("SQ_FIBER" + N + ".multiplicity.direct", *fp.multiplicity, dp.multiplicity, "presentation (I, ZX, ZY)");

  auto loc = build("SQ_FIBER_LOC", n);
  for (auto& c : check_expected(loc, evaluate(loc, o))) r.add(std::move(c));

  const int bound = semidualizing_ext_bound(n, o.ext_bound);
  auto fam = tensor_choice_family(n);
  if (fam.algebra->length() != ipow(3, n)) throw CheckFailure("tensor family algebra has the wrong length");
  const std::int64_t size = static_cast<std::int64_t>(fam.modules.size());
  std::int64_t sd = 0;
  for (std::size_t k = 0; k < fam.modules.size(); ++k) {
    auto rep = is_semidualizing(fam.modules[k], bound);
    if (rep.verdict) ++sd;
    r.add(string_check("R_p.semidualizing[" + fam.labels[k] + "]", "true", rep.verdict ? "true" : "false",
                       "Ext^i(C, C) = 0 for 1 <= i <= " + std::to_string(bound)));
  }
  std::int64_t distinct = 0;
  for (std::size_t i = 0; i < fam.modules.size(); ++i)
    for (std::size_t j = i + 1; j < fam.modules.size(); ++j)
      if (!is_isomorphic(fam.modules[i], fam.modules[j])) ++distinct;
  r.add("R_p.pairwise_non_isomorphic", size * (size - 1) / 2, distinct, "pairs among the tensor choices");
  r.tallies["semidualizing_found"] = sd;
  r.tallies["lower_bound_certified"] = (sd == size && distinct == size * (size - 1) / 2) ? size : 0;

  r.paper_asserted = {
      "R has exactly two semidualizing modules: R and its dualizing module",
      "R_p has exactly 2^" + std::to_string(n) + " = " + std::to_string(size) +
          " semidualizing modules; only the lower bound is computed here",
  };
  r.notes.push_back("ext bound used: " + std::to_string(bound) + " (requested " + std::to_string(o.ext_bound) + ")");
  return r;
}

IdealSpec random_artinian_monomial_ideal(std::mt19937_64& rng, const std::string& prefix, int max_length) {
  // Raw engine output reduced by modulo, identical on every platform.
  auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  while (true) {
    // Two variables two times in three, so non-Gorenstein factors meet.
    int n = uniform(0, 2) == 0 ? 1 : 2;
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back(prefix + std::to_string(i));
    auto ring = make_ring(FieldSpec::rationals(), vars);
    std::vector<Monomial> gens;
    for (int v = 0; v < n; ++v) {
      Monomial m(n, 0);
      m[v] = uniform(2, 4);
      gens.push_back(m);
    }
    if (n == 2 && uniform(0, 2) > 0) gens.push_back({uniform(1, 2), uniform(1, 2)});
    auto id = IdealSpec::from_monomials(ring, gens);
    if (static_cast<int>(standard_basis(buchberger(id)).size()) <= max_length) return id;
  }
}

Report verify_corpus(const CorpusOptions& c, const HarnessOptions& o) {
  if (c.count < 1) throw UnsupportedInput("corpus count must be positive");
  Report r;
  r.harness = "fiber formulas against direct computation, seed " + std::to_string(c.seed) + " (verify-paper --theorem corpus)";
  ProfileOptions po = profile_options(o);
  po.trunc = c.degree;
  po.max_free_dim = std::max<std::int64_t>(o.max_free_dim, 4'000'000);
  std::mt19937_64 rng(c.seed);

  const std::vector<std::string> fields = {"type", "multiplicity", "length", "edim", "poincare_k", "bass"};
  std::map<std::string, std::int64_t> agree;
  std::int64_t pairs = 0, decided = 0, consistent = 0;
  std::optional<CheckResult> failure;
  for (int i = 0; i < c.count && !failure; ++i) {
    auto is = random_artinian_monomial_ideal(rng, "x", c.max_length);
    auto it = random_artinian_monomial_ideal(rng, "z", c.max_length);
    FiberSpec f(compute_profile(RingPresentation{"S", is, {}, {}}, po),
                compute_profile(RingPresentation{"T", it, {}, {}}, po));
    auto formula = fiber_profile(f, c.degree);
    auto direct = artinian_profile(quotient_algebra(fiber_present(is, it)), po);
    if (!formula.poincare_k || formula.poincare_k->trunc() < c.degree || direct.poincare_k->trunc() < c.degree ||
        !formula.bass || formula.bass->trunc() < c.degree || direct.bass->trunc() < c.degree) {
      failure = CheckResult{"corpus.pair[" + std::to_string(i) + "]", "series through degree " + std::to_string(c.degree),
                            "truncated at the free-dimension ceiling", CheckStatus::Inconclusive,
                            ideal_text(is) + " x_k " + ideal_text(it)};
      break;
    }
    ++pairs;
    ++r.tallies[fiber_case(f) == FiberCase::BothSingular ? "case.both_singular" : "case.other"];
    auto [lo, hi] = std::minmax(*f.left.type, *f.right.type);
    ++r.tallies["factor_types." + std::to_string(lo) + "," + std::to_string(hi)];
    for (const auto& fld : fields) {
      std::string a, b;
      if (fld == "poincare_k") {
        a = ints_text(formula.poincare_k->to_ints());
        b = ints_text(direct.poincare_k->to_ints());
      } else if (fld == "bass") {
        a = ints_text(formula.bass->to_ints());
        b = ints_text(direct.bass->to_ints());
      } else {
        a = std::to_string(*profile_value(formula, fld));
        b = std::to_string(*profile_value(direct, fld));
      }
      if (a == b) {
        ++agree[fld];
      } else if (!failure) {
        failure = CheckResult{"corpus.pair[" + std::to_string(i) + "]." + fld, b, a, CheckStatus::Fail,
                              "formula vs direct on " + ideal_text(is) + " x_k " + ideal_text(it)};
      }
    }
    try {
      classify_fcmt_cm(f);
      ++decided;
      ++consistent;
    } catch (const IncompleteProfile&) {
    } catch (const InconsistentInput&) {
      ++decided;
    }
  }
  for (const auto& fld : fields) r.add("corpus." + fld + ".formula_equals_direct", pairs, agree[fld]);
  if (failure) r.add(*failure);
  r.add("corpus.classification.conditions_agree", decided, consistent, "two CM conditions on completable pairs");
  r.tallies["pairs"] = pairs;

  // Fixed case: k[x]/(x^2) x_k k[z]/(z^2).
  auto xs = make_presentation("k[x]/(x^2)", {"x"}, {"x^2"});
  auto zs = make_presentation("k[z]/(z^2)", {"z"}, {"z^2"});
  FiberSpec fixed(compute_profile(xs, po), compute_profile(zs, po));
  auto node = quotient_algebra(fiber_present(xs.ideal, zs.ideal));
  auto fb = fiber_bass_series(fixed, 3).to_ints();
  auto db = bass_series(node, 3).to_ints();
  r.add(string_check("fixed.bass.formula", "2,3,6,12", ints_text(fb), "k[x]/(x^2) x_k k[z]/(z^2)"));
  r.add(string_check("fixed.bass.direct", "2,3,6,12", ints_text(db), "k[x,z]/(x^2, xz, z^2)"));
  r.add("fixed.length.direct", fiber_multiplicity(fixed), node->length(), "e(S) + e(T) - 1 = length of k[x,z]/(x^2,xz,z^2)");
  r.add("fixed.type", fiber_type(fixed), local_invariants(*node).socle_dim, "type table vs socle");

  // A trivial factor is refused.
  bool refused = false;
  try {
    FiberSpec bad(compute_profile(make_presentation("k", {}, {}), po), fixed.right);
  } catch (const InvalidFiber&) {
    refused = true;
  }
  r.add(string_check("guard.trivial_factor_rejected", "true", refused ? "true" : "false"));
  r.notes.push_back("pairs " + std::to_string(c.count) + ", factor length <= " + std::to_string(c.max_length) +
                    ", series through degree " + std::to_string(c.degree));
  return r;
}

namespace {

struct ClassFixture {
  std::string id;
  RingPresentation s, t;
  bool depth_le1;  // which classification applies
  std::string expected;
};

std::string verdict_text(const CmTypeVerdict& v) {
  std::string s = v.finite_cm_type ? "finite" : "infinite";
  s += "/" + v.matched;
  if (v.normal_form) s += "/" + *v.normal_form;
  if (v.curve_exponent) s += "/n=" + std::to_string(*v.curve_exponent);
  return s;
}

}  // namespace

Report verify_classification(const HarnessOptions& o) {
  Report r;
  r.harness = "finite CM type classification of fiber products";
  auto po = profile_options(o);
  po.trunc = std::min(o.trunc, 4);
  auto dvr = dvr_presentation("z");
  auto dbl = make_presentation("k[[x,y]]/(x^2)", {"x", "y"}, {"x^2"}, {}, {{"finite_cm_type", false}});
  auto emb = make_presentation("k[[x,y]]/(x^2,xy)", {"x", "y"}, {"x^2", "x*y"}, {}, {{"finite_cm_type", true}});
  auto sq = make_presentation("k[[u,v]]/(u,v)^2", {"u", "v"}, {"u^2", "u*v", "v^2"});
  const std::vector<ClassFixture> fixtures = {
      {"DVR x DVR", dvr_presentation("x"), dvr, false, "finite/ii/xz"},
      {"A(2) x DVR", plane_curve(2), dvr, false, "finite/ii/x^2-y^n,xz,yz/n=2"},
      {"A(3) x DVR", plane_curve(3), dvr, false, "finite/ii/x^2-y^n,xz,yz/n=3"},
      {"(x^2) x DVR", dbl, dvr, false, "infinite/none"},
      {"(x^2,xy) x DVR", emb, dvr, true, "finite/2"},
      {"A(3) x (u,v)^2", plane_curve(3), sq, true, "finite/1"},
  };
  for (const auto& fx : fixtures) {
    FiberSpec f(compute_profile(fx.s, po), compute_profile(fx.t, po));
    auto v = fx.depth_le1 ? classify_fcmt_depth_le1(f) : classify_fcmt_cm(f);
    r.add(string_check("classify[" + fx.id + "]", fx.expected, verdict_text(v), v.reason));
  }

  // Agreement of the two CM conditions over every ordered pair of a pool.
  std::vector<RingPresentation> pool = {dvr_presentation("x"),
                                        plane_curve(2),
                                        plane_curve(3),
                                        plane_curve(5),
                                        dbl,
                                        emb,
                                        sq,
                                        make_presentation("node", {"x", "y"}, {"x*y"}),
                                        make_presentation("plane", {"x", "y"}, {}),
                                        make_presentation("k[x]/(x^2)", {"x"}, {"x^2"}),
                                        with_cone(square_core(1), "Y")};
  std::vector<RingProfile> profiles;
  for (const auto& p : pool) profiles.push_back(compute_profile(p, po));
  std::int64_t decided = 0, consistent = 0, incomplete = 0;
  for (const auto& a : profiles) {
    for (const auto& b : profiles) {
      try {
        classify_fcmt_cm(FiberSpec(a, b));
        ++decided;
        ++consistent;
      } catch (const IncompleteProfile&) {
        ++incomplete;
      } catch (const InconsistentInput&) {
        ++decided;
      }
    }
  }
  r.add("classification.conditions_agree", decided, consistent, "ordered pairs with both conditions decided");
  r.tallies["pairs.decided"] = decided;
  r.tallies["pairs.incomplete"] = incomplete;
  r.paper_asserted = {
      "k[[x,y]]/(x^2-y^n) has finite CM type (declared on the factor, not derived)",
      "k[[x,y]]/(x^2,xy) has finite CM type (declared on the factor, not derived)",
      "k[[x,y]]/(x^2) has infinite CM type (declared on the factor, not derived)",
      "finite CM type of a CM fiber product is equivalent to each of the two conditions",
  };
  return r;
}

std::vector<RingPresentation> nil_multiplicity_fixtures() {
  const std::vector<std::string> xy = {"x", "y"}, xyz = {"x", "y", "z"}, xyzw = {"x", "y", "z", "w"};
  return {
      make_presentation("(xy)", xy, {"x*y"}),
      make_presentation("(x^2,xy)", xy, {"x^2", "x*y"}),
      make_presentation("(x^2,xy^2)", xy, {"x^2", "x*y^2"}),
      make_presentation("(x^2y,xy^2)", xy, {"x^2*y", "x*y^2"}),
      make_presentation("(x^3,xy)", xy, {"x^3", "x*y"}),
      make_presentation("(x^3y,xy^3)", xy, {"x^3*y", "x*y^3"}),
      make_presentation("(xy,xz,yz)", xyz, {"x*y", "x*z", "y*z"}),
      make_presentation("(x^2,xy,xz,yz)", xyz, {"x^2", "x*y", "x*z", "y*z"}),
      make_presentation("(x^2,xy,xz,y^2,yz)", xyz, {"x^2", "x*y", "x*z", "y^2", "y*z"}),
      make_presentation("(xy,xz,xw,yz,yw,zw)", xyzw, {"x*y", "x*z", "x*w", "y*z", "y*w", "z*w"}),
      make_presentation("(xy,z)", xyz, {"x*y", "z"}),
  };
}

Report verify_nil_multiplicity(const HarnessOptions& o) {
  Report r;
  r.harness = "multiplicity of the reduction in dimension 1";
  std::int64_t certified = 0;
  for (const auto& p : nil_multiplicity_fixtures()) {
    auto m = nil_multiplicity_check(p.ideal, o.hilbert_max);
    if (m.certified) ++certified;
    CheckResult c = string_check("e=e_red[" + p.name + "]", std::to_string(m.e), std::to_string(m.e_reduced),
                                 m.certified ? "m^i meets Nil trivially (certified)" : "not certified");
    if (!m.certified) c.status = CheckStatus::Inconclusive;
    r.add(c);
  }
  r.tallies["fixtures"] = static_cast<std::int64_t>(nil_multiplicity_fixtures().size());
  r.tallies["certified"] = certified;
  return r;
}

std::vector<std::vector<Monomial>> monomial_down_sets(int nvars, int max_length) {
  std::set<std::vector<Monomial>> seen;
  std::vector<std::vector<Monomial>> frontier = {{Monomial(nvars, 0)}};
  std::vector<std::vector<Monomial>> out;
  while (!frontier.empty()) {
    std::vector<std::vector<Monomial>> next;
    for (const auto& d : frontier) {
      out.push_back(d);
      if (static_cast<int>(d.size()) == max_length) continue;
      std::set<Monomial> in(d.begin(), d.end());
      for (const auto& m : d) {
        for (int v = 0; v < nvars; ++v) {
          Monomial u = m;
          ++u[v];
          if (in.count(u)) continue;
          bool addable = true;
          for (int w = 0; w < nvars && addable; ++w) {
            if (u[w] == 0) continue;
            Monomial q = u;
            --q[w];
            addable = in.count(q) > 0;
          }
          if (!addable) continue;
          auto e = d;
          e.push_back(u);
          std::sort(e.begin(), e.end());
          if (seen.insert(e).second) next.push_back(std::move(e));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Report verify_proof_invariants(int nvars, int max_length) {
  Report r;
  r.harness = "small-multiplicity proof invariants over monomial down-sets";
  std::vector<std::string> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back("x" + std::to_string(i));
  auto ring = make_ring(FieldSpec::rationals(), vars);
  auto sets = monomial_down_sets(nvars, max_length);
  std::int64_t identity = 0, implication = 0, hypothesis = 0;
  for (const auto& d : sets) {
    std::set<Monomial> in(d.begin(), d.end());
    std::vector<Monomial> corners;
    for (const auto& m : d) {
      for (int v = 0; v < nvars; ++v) {
        Monomial u = m;
        ++u[v];
        if (!in.count(u)) corners.push_back(u);
      }
    }
    auto a = quotient_algebra(IdealSpec::from_monomials(ring, minimalize_monomials(corners)));
    if (a->length() != static_cast<int>(d.size())) throw CheckFailure("down-set algebra has the wrong length");
    auto inv = proposition_proof_invariant(*a);
    if (inv.identity_holds) ++identity;
    if (inv.implication_holds) ++implication;
    if (inv.hypothesis) ++hypothesis;
  }
  const auto total = static_cast<std::int64_t>(sets.size());
  r.add("edim = length - 1 - dim m^2", total, identity, "all down-sets");
  r.add("(socle in m^2 and type >= 4) implies edim <= 3", total, implication, "all down-sets");
  r.tallies["down_sets"] = total;
  r.tallies["hypothesis_holds"] = hypothesis;
  r.notes.push_back(std::to_string(nvars) + " variables, length <= " + std::to_string(max_length));
  return r;
}

}  // namespace fiberlab
