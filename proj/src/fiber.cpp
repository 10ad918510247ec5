#include "fiberlab/fiber.hpp"

#include <algorithm>
#include <set>

#include "fiberlab/errors.hpp"

namespace fiberlab {

namespace {

template <class T>
const T& need(const std::optional<T>& v, const std::string& label, const char* field) {
  if (!v) throw IncompleteProfile({label + "." + field});
  return *v;
}

/// A condition that may be undecided; `missing` names what would decide it.
struct Tri {
  std::optional<bool> value;
  std::set<std::string> missing;

  static Tri known(bool b) { return Tri{b, {}}; }
  static Tri of(const std::optional<bool>& b, const std::string& name) {
    if (b) return known(*b);
    return Tri{std::nullopt, {name}};
  }
};

Tri all_of(const std::vector<Tri>& terms) {
  Tri out = Tri::known(true);
  for (const auto& t : terms) {
    if (t.value && !*t.value) return Tri::known(false);
    if (!t.value) {
      out.value.reset();
      out.missing.insert(t.missing.begin(), t.missing.end());
    }
  }
  return out;
}

Tri any_of(const std::vector<Tri>& terms) {
  Tri out = Tri::known(false);
  for (const auto& t : terms) {
    if (t.value && *t.value) return Tri::known(true);
    if (!t.value) {
      out.value.reset();
      out.missing.insert(t.missing.begin(), t.missing.end());
    }
  }
  return out;
}

template <class T, class Pred>
Tri test(const std::optional<T>& v, const std::string& name, Pred pred) {
  if (!v) return Tri{std::nullopt, {name}};
  return Tri::known(pred(*v));
}

Tri hypersurface_of(const RingProfile& p, const std::string& label) {
  Tri t;
  if (!p.edim) t.missing.insert(label + ".edim");
  if (!p.depth) t.missing.insert(label + ".depth");
  if (t.missing.empty()) t.value = *p.hypersurface();
  return t;
}

void require_decided(const std::vector<Tri>& conds) {
  std::set<std::string> missing;
  for (const auto& c : conds)
    if (!c.value) missing.insert(c.missing.begin(), c.missing.end());
  if (!missing.empty()) throw IncompleteProfile(std::vector<std::string>(missing.begin(), missing.end()));
}

const std::string kS = "S";
const std::string kT = "T";

}  // namespace

FiberSpec::FiberSpec(RingProfile s, RingProfile t) : left(std::move(s)), right(std::move(t)) {
  if (need(left.edim, kS, "edim") < 1) throw InvalidFiber("S is the residue field; the fiber product is trivial");
  if (need(right.edim, kT, "edim") < 1) throw InvalidFiber("T is the residue field; the fiber product is trivial");
}

DimDepth fiber_dim_depth(const FiberSpec& f) {
  int ds = need(f.left.dim, kS, "dim"), dt = need(f.right.dim, kT, "dim");
  int ps = need(f.left.depth, kS, "depth"), pt = need(f.right.depth, kT, "depth");
  DimDepth out;
  out.dim = std::max(ds, dt);
  out.depth = std::min({ps, pt, 1});
  out.cm = ps == ds && pt == dt && ds == dt && ds <= 1;
  return out;
}

FiberCase fiber_case(const FiberSpec& f) {
  bool rs = need(f.left.regular, kS, "regular"), rt = need(f.right.regular, kT, "regular");
  if (rs && rt) return FiberCase::BothRegular;
  if (rs || rt) return FiberCase::OneRegular;
  return FiberCase::BothSingular;
}

namespace {

/// Orders a one-regular spec as (singular, regular); checks dim T >= 1.
std::pair<const RingProfile*, const RingProfile*> singular_first(const FiberSpec& f, std::string& ls,
                                                                 std::string& lt) {
  bool s_regular = *f.left.regular;
  const RingProfile* s = s_regular ? &f.right : &f.left;
  const RingProfile* t = s_regular ? &f.left : &f.right;
  ls = s_regular ? kT : kS;
  lt = s_regular ? kS : kT;
  if (need(t->dim, lt, "dim") < 1) throw InvalidFiber("regular factor of dimension 0 is the residue field");
  return {s, t};
}

}  // namespace

std::int64_t fiber_type(const FiberSpec& f) {
  switch (fiber_case(f)) {
    case FiberCase::BothSingular: {
      std::int64_t rs = need(f.left.type, kS, "type"), rt = need(f.right.type, kT, "type");
      int ds = need(f.left.depth, kS, "depth"), dt = need(f.right.depth, kT, "depth");
      if (ds == 0 && dt == 0) return rs + rt;
      if (ds == 0) return rs;
      if (dt == 0) return rt;
      if (ds == 1 && dt == 1) return rs + rt + 1;
      if (ds == 1) return rs + 1;
      if (dt == 1) return rt + 1;
      return 1;
    }
    case FiberCase::OneRegular: {
      std::string ls, lt;
      auto [s, t] = singular_first(f, ls, lt);
      std::int64_t rs = need(s->type, ls, "type");
      int ds = need(s->depth, ls, "depth");
      if (ds == 0) return rs;
      if (ds == 1) return rs + 1;
      return 1;
    }
    case FiberCase::BothRegular:
      if (need(f.left.dim, kS, "dim") < 1 || need(f.right.dim, kT, "dim") < 1)
        throw InvalidFiber("regular factor of dimension 0 is the residue field");
      return 1;
  }
  throw InvalidFiber("unreachable fiber case");
}

std::int64_t fiber_multiplicity(const FiberSpec& f) {
  int ds = need(f.left.dim, kS, "dim"), dt = need(f.right.dim, kT, "dim");
  std::int64_t es = need(f.left.multiplicity, kS, "multiplicity");
  std::int64_t et = need(f.right.multiplicity, kT, "multiplicity");
  if (ds > dt) return es;
  if (ds < dt) return et;
  if (ds > 0) return es + et;
  return es + et - 1;
}

int fiber_edim(const FiberSpec& f) { return need(f.left.edim, kS, "edim") + need(f.right.edim, kT, "edim"); }

SeriesTrunc fiber_poincare_k(const SeriesTrunc& ps, const SeriesTrunc& pt) {
  for (const auto* p : {&ps, &pt}) {
    if ((*p)[0] != 1) throw ArithmeticError("Poincare series must have constant term 1");
    if (p->trunc() >= 1 && is_zero((*p)[1])) throw InvalidFiber("a factor with P = 1 is the residue field");
  }
  int n = std::min(ps.trunc(), pt.trunc());
  auto s = ps.truncated(n), t = pt.truncated(n);
  return s * t / (t + s - s * t);
}

SeriesTrunc fiber_bass_series(const FiberSpec& f, int n) {
  const DimDepth dd = fiber_dim_depth(f);
  const std::int64_t type = fiber_type(f);
  auto t1 = [](int k, int trunc) { return SeriesTrunc::monomial(k, trunc); };
  SeriesTrunc out;
  switch (fiber_case(f)) {
    case FiberCase::BothSingular: {
      const auto& ps = need(f.left.poincare_k, kS, "poincare_k");
      const auto& pt = need(f.right.poincare_k, kT, "poincare_k");
      const auto& is = need(f.left.bass, kS, "bass");
      const auto& it = need(f.right.bass, kT, "bass");
      int N = std::min({n, ps.trunc(), pt.trunc(), is.trunc(), it.trunc()});
      auto PS = ps.truncated(N), PT = pt.truncated(N), IS = is.truncated(N), IT = it.truncated(N);
      out = (t1(1, N) * PS * PT + IS * PT + IT * PS) / (PT + PS - PS * PT);
      break;
    }
    case FiberCase::OneRegular: {
      std::string ls, lt;
      auto [s, t] = singular_first(f, ls, lt);
      const auto& ps = need(s->poincare_k, ls, "poincare_k");
      const auto& is = need(s->bass, ls, "bass");
      const int m = *t->dim;
      int N = std::min({n, ps.trunc(), is.trunc()});
      auto PS = ps.truncated(N), IS = is.truncated(N);
      auto PT = SeriesTrunc::one_plus_t_pow(m, N);
      out = (t1(1, N) * PS * PT + IS * PT - t1(m + 1, N) * PS) / (PT + PS - PS * PT);
      break;
    }
    case FiberCase::BothRegular: {
      const int m = *f.left.dim, k = *f.right.dim;
      auto pm = SeriesTrunc::one_plus_t_pow(m, n), pk = SeriesTrunc::one_plus_t_pow(k, n);
      auto pmk = SeriesTrunc::one_plus_t_pow(m + k, n);
      out = (t1(1, n) * pmk - t1(m + 1, n) * pk - t1(k + 1, n) * pm) / (pk + pm - pmk);
      break;
    }
  }
  if (dd.depth <= out.trunc() && out[dd.depth] != type)
    throw CheckFailure("Bass coefficient at the depth " + to_string(out[dd.depth]) + " differs from the type " +
                       std::to_string(type));
  return out;
}

IdealSpec fiber_present(const IdealSpec& is, const IdealSpec& it) {
  const RingPtr& rs = is.ring();
  const RingPtr& rt = it.ring();
  if (rs->field != rt->field) throw StructuralError("fiber_present: factors over different fields");
  std::vector<std::string> vars = rs->vars;
  for (const auto& v : rt->vars) {
    if (rs->index_of(v) >= 0) throw StructuralError("fiber_present: variable " + v + " occurs in both factors");
    vars.push_back(v);
  }
  auto ring = make_ring(rs->field, vars);
  std::vector<Poly> gens;
  for (const auto& g : is.generators()) gens.push_back(map_into(g, ring));
  for (const auto& g : it.generators()) gens.push_back(map_into(g, ring));
  for (int x = 0; x < rs->nvars(); ++x)
    for (int z = 0; z < rt->nvars(); ++z)
      gens.push_back(Poly::variable(ring, x) * Poly::variable(ring, rs->nvars() + z));
  return IdealSpec(ring, std::move(gens));
}

RingProfile fiber_profile(const FiberSpec& f, int n) {
  RingProfile p;
  p.name = f.left.name + " x_k " + f.right.name;
  auto dd = fiber_dim_depth(f);
  p.dim = dd.dim;
  p.depth = dd.depth;
  p.cm = dd.cm;
  p.edim = fiber_edim(f);
  p.type = fiber_type(f);
  p.multiplicity = fiber_multiplicity(f);
  p.regular = false;
  p.gorenstein = classify_gorenstein_fiber(f).gorenstein;
  p.computed("dim", "maximum of the factor dimensions");
  p.computed("depth", "min(depth S, depth T, 1)");
  p.computed("cm", "both CM of equal dimension at most 1");
  p.computed("edim", "edim S + edim T");
  p.computed("type", "fiber type table");
  p.computed("multiplicity", "fiber multiplicity cases");
  p.computed("regular", "fiber products are never regular");
  p.computed("gorenstein", "Gorenstein iff both factors are DVRs");
  if (f.left.length && f.right.length) {
    p.length = *f.left.length + *f.right.length - 1;
    p.computed("length", "length S + length T - 1");
  }
  if (f.left.poincare_k && f.right.poincare_k) {
    p.poincare_k = fiber_poincare_k(*f.left.poincare_k, *f.right.poincare_k);
    p.computed("poincare_k", "PS PT / (PS + PT - PS PT)");
  }
  try {
    p.bass = fiber_bass_series(f, n);
    p.computed("bass", "fiber Bass series formula");
  } catch (const IncompleteProfile&) {
  }
  auto au = all_of({Tri::of(f.left.analytically_unramified, "S"), Tri::of(f.right.analytically_unramified, "T")});
  if (au.value) {
    p.analytically_unramified = *au.value;
    p.computed("analytically_unramified", "reduced iff both factors are");
  }
  p.close();
  return p;
}

GorensteinVerdict classify_gorenstein_fiber(const FiberSpec& f) {
  switch (fiber_case(f)) {
    case FiberCase::BothSingular:
      return {false, "both factors singular: never Gorenstein"};
    case FiberCase::OneRegular:
      return {false, "one singular factor: never Gorenstein"};
    case FiberCase::BothRegular: {
      int m = need(f.left.dim, kS, "dim"), n = need(f.right.dim, kT, "dim");
      if (m == 1 && n == 1) return {true, "dimension-1 hypersurface"};
      return {false, "regular factors of dimensions " + std::to_string(m) + " and " + std::to_string(n) +
                         ": Gorenstein needs both equal to 1"};
    }
  }
  return {false, ""};
}

namespace {

Tri condition_ii(const RingProfile& s, const RingProfile& t, const std::string& ls, const std::string& lt) {
  return all_of({test(s.dim, ls + ".dim", [](int d) { return d == 1; }),
                 test(s.multiplicity, ls + ".multiplicity", [](std::int64_t e) { return e <= 2; }),
                 hypersurface_of(s, ls), Tri::of(s.analytically_unramified, ls + ".analytically_unramified"),
                 Tri::of(t.regular, lt + ".regular"), test(t.dim, lt + ".dim", [](int d) { return d == 1; })});
}

Tri fiber_multiplicity_at_most(const FiberSpec& f, std::int64_t bound) {
  try {
    return Tri::known(fiber_multiplicity(f) <= bound);
  } catch (const IncompleteProfile& e) {
    return Tri{std::nullopt, std::set<std::string>(e.missing().begin(), e.missing().end())};
  }
}

void attach_normal_form(const FiberSpec& f, CmTypeVerdict& v) {
  if (*f.left.regular && *f.right.regular) {
    v.normal_form = "xz";
    return;
  }
  const RingProfile& s = *f.left.regular ? f.right : f.left;
  if (s.curve_exponent) {
    v.normal_form = "x^2-y^n,xz,yz";
    v.curve_exponent = s.curve_exponent;
  }
}

}  // namespace

CmTypeVerdict classify_fcmt_cm(const FiberSpec& f) {
  Tri ii = any_of({condition_ii(f.left, f.right, kS, kT), condition_ii(f.right, f.left, kT, kS)});
  auto one_dim = [](const std::optional<int>& d, const std::string& name) {
    return test(d, name, [](int x) { return x == 1; });
  };
  Tri iii = all_of({Tri::of(f.left.cm, "S.cm"), Tri::of(f.right.cm, "T.cm"), one_dim(f.left.dim, "S.dim"),
                    one_dim(f.right.dim, "T.dim"), Tri::of(f.left.finite_cm_type, "S.finite_cm_type"),
                    Tri::of(f.right.finite_cm_type, "T.finite_cm_type"), fiber_multiplicity_at_most(f, 3)});
  require_decided({ii, iii});
  if (*ii.value != *iii.value)
    throw InconsistentInput(std::string("the hypersurface-against-DVR condition is ") + (*ii.value ? "true" : "false") +
                            " but the multiplicity-at-most-3 condition is " + (*iii.value ? "true" : "false") +
                            "; the declared flags cannot both hold");
  CmTypeVerdict v;
  v.finite_cm_type = *ii.value;
  if (v.finite_cm_type) {
    v.matched = "ii";
    v.reason = "analytically unramified dimension-1 hypersurface of multiplicity <= 2 against a DVR";
    if (fiber_dim_depth(f).dim != 1) throw CheckFailure("finite CM type verdict with dim R != 1");
    attach_normal_form(f, v);
  } else {
    v.matched = "none";
    v.reason = "neither condition holds";
  }
  return v;
}

CmTypeVerdict classify_fcmt_depth_le1(const FiberSpec& f) {
  int ds = need(f.left.dim, kS, "dim"), dt = need(f.right.dim, kT, "dim");
  const int dim = std::max(ds, dt);
  if (dim > 1) throw UnsupportedInput("classification requires dim R <= 1, got " + std::to_string(dim));
  CmTypeVerdict v;
  if (dim == 0) {
    v.matched = "none";
    v.reason = "dim R = 0: a nontrivial fiber product of finite CM type has dim R >= 1";
    return v;
  }
  auto cond1 = [](const RingProfile& s, const RingProfile& t, const std::string& ls, const std::string& lt) {
    return all_of({test(s.dim, ls + ".dim", [](int d) { return d == 1; }),
                   Tri::of(s.finite_cm_type, ls + ".finite_cm_type"),
                   test(t.dim, lt + ".dim", [](int d) { return d == 0; })});
  };
  auto cond2 = [](const RingProfile& s, const RingProfile& t, const std::string& ls, const std::string& lt) {
    return all_of({test(s.dim, ls + ".dim", [](int d) { return d == 1; }),
                   test(t.dim, lt + ".dim", [](int d) { return d == 1; }),
                   Tri::of(s.finite_cm_type, ls + ".finite_cm_type"),
                   Tri::of(t.finite_cm_type, lt + ".finite_cm_type"),
                   test(s.multiplicity, ls + ".multiplicity", [](std::int64_t e) { return e <= 2; }),
                   test(t.multiplicity, lt + ".multiplicity", [](std::int64_t e) { return e == 1; })});
  };
  Tri c1 = any_of({cond1(f.left, f.right, kS, kT), cond1(f.right, f.left, kT, kS)});
  Tri c2 = any_of({cond2(f.left, f.right, kS, kT), cond2(f.right, f.left, kT, kS)});
  if (c1.value && *c1.value) {
    v.finite_cm_type = true;
    v.matched = "1";
    v.reason = "a dimension-1 factor of finite CM type against an artinian factor";
  } else if (c2.value && *c2.value) {
    v.finite_cm_type = true;
    v.matched = "2";
    v.reason = "dimension-1 factors of finite CM type with multiplicities <= 2 and 1";
  } else {
    require_decided({c1, c2});
    v.matched = "none";
    v.reason = "neither condition holds";
  }
  if (v.finite_cm_type && dim == 0) throw CheckFailure("finite CM type verdict with dim R = 0");
  return v;
}

namespace {

std::vector<Monomial> intersect_monomial(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(mono_lcm(x, y));
  return minimalize_monomials(std::move(out));
}

bool in_monomial_ideal(const std::vector<Monomial>& gens, const Monomial& u) {
  return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return divides(g, u); });
}

}  // namespace

std::vector<Monomial> monomial_saturation(const std::vector<Monomial>& gens, int nvars) {
  auto cur = minimalize_monomials(gens);
  while (true) {
    std::vector<Monomial> next;
    for (int j = 0; j < nvars; ++j) {
      Monomial x(nvars, 0);
      x[j] = 1;
      auto c = minimalize_monomials(monomial_colon(cur, x));
      next = j == 0 ? c : intersect_monomial(next, c);
    }
    if (next == cur) return cur;
    cur = next;
  }
}

NilMultiplicity nil_multiplicity_check(const IdealSpec& ideal, int n_max) {
  if (!ideal.monomial()) throw UnsupportedInput("nil_multiplicity_check needs a monomial ideal");
  const int n = ideal.ring()->nvars();
  int dim = -1;
  for (const auto& p : monomial_minimal_primes(ideal)) dim = std::max(dim, n - static_cast<int>(p.size()));
  if (dim != 1) throw UnsupportedInput("nil_multiplicity_check needs a one-dimensional ideal, got " +
                                       std::to_string(dim));
  auto rad = monomial_radical(ideal);
  NilMultiplicity out;
  out.e = hilbert_analysis(buchberger(ideal), n_max).multiplicity;
  out.e_reduced = hilbert_analysis(buchberger(rad), n_max).multiplicity;
  out.equal = out.e == out.e_reduced;
  auto sat = monomial_saturation(ideal.monomial_generators(), n);
  auto rgens = rad.monomial_generators();
  out.certified = std::all_of(rgens.begin(), rgens.end(), [&](const Monomial& u) { return in_monomial_ideal(sat, u); });
  if (out.certified && !out.equal)
    throw CheckFailure("nilradical of finite length but e(R) = " + std::to_string(out.e) +
                       " differs from e(R/Nil) = " + std::to_string(out.e_reduced));
  return out;
}

bool small_mult_semidualizing_flag(const RingProfile& p) {
  bool cm = need(p.cm, p.name, "cm");
  if (!cm) throw UnsupportedInput(p.name + ": the multiplicity bound applies to CM rings only");
  return need(p.multiplicity, p.name, "multiplicity") <= 8;
}

ProofInvariant proposition_proof_invariant(const ArtinAlgebra& a) {
  ProofInvariant out;
  auto inv = local_invariants(a);
  auto m2 = maximal_ideal_power(a, 2);
  auto soc = socle_by_generators(a);
  out.length = inv.length;
  out.edim = inv.edim;
  out.m2_dim = static_cast<int>(m2.size());
  out.type = inv.socle_dim;
  auto both = m2;
  both.insert(both.end(), soc.begin(), soc.end());
  out.socle_in_m2 = sparse_rank(both, a.length(), a.field()) == out.m2_dim;
  out.identity_holds = out.edim == out.length - 1 - out.m2_dim;
  out.hypothesis = out.length <= 8 && out.socle_in_m2 && out.type >= 4;
  out.implication_holds = !out.hypothesis || out.edim <= 3;
  return out;
}

}  // namespace fiberlab
