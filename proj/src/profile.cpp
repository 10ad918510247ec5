#include "fiberlab/profile.hpp"

#include <algorithm>

#include "fiberlab/errors.hpp"
#include "fiberlab/homalg.hpp"

namespace fiberlab {

std::optional<bool> RingProfile::singular() const {
  if (!regular) return std::nullopt;
  return !*regular;
}

std::optional<int> RingProfile::ecodepth() const {
  if (!edim || !depth) return std::nullopt;
  return *edim - *depth;
}

std::optional<bool> RingProfile::hypersurface() const {
  auto c = ecodepth();
  if (!c) return std::nullopt;
  return *c <= 1;
}

void RingProfile::computed(const std::string& field, const std::string& rule) {
  provenance[field] = FieldSource{Provenance::Computed, rule};
}

const std::vector<std::string>& declarable_flags() {
  static const std::vector<std::string> flags = {"analytically_unramified", "finite_cm_type", "regular"};
  return flags;
}

void RingProfile::declare(const std::string& flag, bool value) {
  std::optional<bool>* slot = nullptr;
  if (flag == "analytically_unramified") slot = &analytically_unramified;
  if (flag == "finite_cm_type") slot = &finite_cm_type;
  if (flag == "regular") slot = &regular;
  if (!slot) throw UnsupportedInput("flag '" + flag + "' cannot be declared");
  if (slot->has_value()) {
    if (**slot != value) {
      auto it = provenance.find(flag);
      std::string rule = it == provenance.end() ? "" : " (" + it->second.rule + ")";
      throw InconsistentInput(name + ": declared " + flag + " = " + (value ? "true" : "false") +
                              " contradicts the computed value" + rule);
    }
    return;
  }
  *slot = value;
  provenance[flag] = FieldSource{Provenance::Declared, "declared"};
}

namespace {

void set_flag(RingProfile& p, std::optional<bool>& slot, const std::string& field, bool value,
              const std::string& rule) {
  if (slot && *slot != value) throw InconsistentInput(p.name + ": " + field + " contradicts " + rule);
  if (!slot) {
    slot = value;
    p.computed(field, rule);
  }
}

}  // namespace

void RingProfile::close() {
  if (regular && *regular) {
    set_flag(*this, gorenstein, "gorenstein", true, "regular rings are Gorenstein");
    set_flag(*this, analytically_unramified, "analytically_unramified", true, "regular rings are domains");
    set_flag(*this, finite_cm_type, "finite_cm_type", true, "regular rings have finite CM type");
  }
  if (gorenstein && *gorenstein) set_flag(*this, cm, "cm", true, "Gorenstein rings are CM");
  if (dim && depth) {
    if (*depth > *dim) throw InconsistentInput(name + ": depth exceeds dimension");
    set_flag(*this, cm, "cm", *depth == *dim, "depth = dim");
  }
  if (regular && edim && dim && *regular != (*edim == *dim))
    throw InconsistentInput(name + ": regular flag disagrees with edim = dim");
  if (gorenstein && *gorenstein && type && *type != 1) throw InconsistentInput(name + ": Gorenstein with type > 1");
  if (cm && *cm && type) set_flag(*this, gorenstein, "gorenstein", *type == 1, "CM of type 1");
  if (dim && *dim == 0 && edim)
    set_flag(*this, finite_cm_type, "finite_cm_type", *edim <= 1, "artinian: finite type iff edim <= 1");
}

IdealSpec full_ideal(const RingPresentation& p) {
  if (p.cone_vars.empty()) return p.ideal;
  const RingPtr& r = p.ideal.ring();
  std::vector<std::string> vars = r->vars;
  for (const auto& c : p.cone_vars) {
    if (r->index_of(c) >= 0) throw StructuralError("cone variable " + c + " is also a ring variable");
    vars.push_back(c);
  }
  auto big = make_ring(r->field, vars);
  std::vector<Poly> gens;
  for (const auto& g : p.ideal.generators()) gens.push_back(map_into(g, big));
  return IdealSpec(big, std::move(gens));
}

SeriesTrunc bounded_poincare_series(const AlgPtr& a, int n, std::int64_t max_free_dim) {
  ResolutionOptions o;
  o.max_free_dim = max_free_dim;
  o.throw_on_ceiling = false;
  auto res = minimal_resolution(residue_field(a), n, o);
  return SeriesTrunc::from_ints(res.betti, res.computed_to);
}

SeriesTrunc bounded_bass_series(const AlgPtr& a, int n, std::int64_t max_free_dim) {
  ResolutionOptions o;
  o.max_free_dim = max_free_dim;
  o.throw_on_ceiling = false;
  auto res = minimal_resolution(dualizing_module(a), n, o);
  return SeriesTrunc::from_ints(res.betti, res.computed_to);
}

RingProfile artinian_profile(const AlgPtr& a, const ProfileOptions& opt, const std::string& name) {
  RingProfile p;
  p.name = name.empty() ? a->description() : name;
  auto inv = local_invariants(*a);
  const std::string rule = "artinian core";
  p.dim = 0;
  p.depth = 0;
  p.length = inv.length;
  p.multiplicity = inv.length;
  p.edim = inv.edim;
  p.type = inv.socle_dim;
  p.regular = inv.length == 1;
  p.gorenstein = inv.gorenstein;
  p.cm = true;
  p.analytically_unramified = inv.length == 1;
  for (const char* f : {"dim", "depth", "length", "multiplicity", "edim", "type", "regular", "gorenstein", "cm"})
    p.computed(f, rule);
  p.computed("analytically_unramified", "artinian: reduced iff a field");
  p.poincare_k = bounded_poincare_series(a, opt.trunc, opt.max_free_dim);
  p.computed("poincare_k", "minimal resolution of k");
  p.bass = bounded_bass_series(a, opt.trunc, opt.max_free_dim);
  p.computed("bass", "minimal resolution of the dualizing module");
  p.close();
  return p;
}

namespace {

RingProfile regular_profile(const std::string& name, int d, int trunc, const std::string& rule) {
  RingProfile p;
  p.name = name;
  p.dim = d;
  p.depth = d;
  p.edim = d;
  p.type = 1;
  p.multiplicity = 1;
  if (d == 0) p.length = 1;
  p.regular = true;
  p.poincare_k = SeriesTrunc::one_plus_t_pow(d, trunc);
  p.bass = SeriesTrunc::monomial(d, trunc);
  for (const char* f : {"dim", "depth", "edim", "type", "multiplicity", "regular", "poincare_k", "bass"})
    p.computed(f, rule);
  if (d == 0) p.computed("length", rule);
  return p;
}

bool has_unit_constant(const Poly& f) {
  for (const auto& t : f.terms())
    if (total_degree(t.mono) == 0) return true;
  return false;
}

/// a*x^2 + b*y^n with x != y, n >= 2: returns n.
std::optional<int> plane_curve_exponent(const Poly& f) {
  if (f.ring()->nvars() != 2 || f.terms().size() != 2) return std::nullopt;
  auto pure = [](const Monomial& m) -> std::optional<std::pair<int, int>> {
    int var = -1;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (m[i] == 0) continue;
      if (var >= 0) return std::nullopt;
      var = i;
    }
    if (var < 0) return std::nullopt;
    return std::make_pair(var, m[var]);
  };
  auto a = pure(f.terms()[0].mono), b = pure(f.terms()[1].mono);
  if (!a || !b || a->first == b->first) return std::nullopt;
  if (a->second == 2 && b->second >= 2) return b->second;
  if (b->second == 2 && a->second >= 2) return a->second;
  return std::nullopt;
}

/// Principal ideal (f) with f(0) = 0 and at least two variables.
RingProfile principal_profile(const RingPresentation& pr, const Poly& f, const ProfileOptions& opt) {
  const int n = pr.ideal.ring()->nvars();
  auto ot = poly_order_term(f);
  if (ot.order == 1) return regular_profile(pr.name, n - 1, opt.trunc, "principal ideal with a linear term");
  RingProfile p;
  p.name = pr.name;
  const std::string rule = "hypersurface of order " + std::to_string(ot.order);
  p.dim = n - 1;
  p.depth = n - 1;
  p.edim = n;
  p.type = 1;
  p.multiplicity = ot.order;
  p.regular = false;
  p.gorenstein = true;
  p.cm = true;
  p.poincare_k = SeriesTrunc::one_plus_t_pow(n, opt.trunc) /
                 (SeriesTrunc::constant(1, opt.trunc) - SeriesTrunc::monomial(2, opt.trunc));
  p.bass = SeriesTrunc::monomial(n - 1, opt.trunc);
  for (const char* fld : {"dim", "depth", "edim", "type", "regular", "gorenstein", "cm", "poincare_k", "bass"})
    p.computed(fld, rule);
  p.computed("multiplicity", "order of the defining equation");
  if (f.is_monomial()) {
    bool squarefree = std::all_of(f.lead().mono.begin(), f.lead().mono.end(), [](int e) { return e <= 1; });
    p.analytically_unramified = squarefree;
    p.computed("analytically_unramified", "monomial: squarefree test");
  } else if (auto m = plane_curve_exponent(f)) {
    p.curve_exponent = *m;
    p.computed("curve_exponent", "recognized a*x^2 + b*y^n");
    if (f.field().characteristic() != 2) {
      p.analytically_unramified = true;
      p.computed("analytically_unramified", "a*x^2 + b*y^n is reduced away from characteristic 2");
    }
  }
  return p;
}

/// Artinian data of R / l for a nonzerodivisor l: type, Bass and Poincare
/// series shift by one.
void fill_from_regular_element(RingProfile& p, const AlgPtr& a, const ProfileOptions& opt, const std::string& rule) {
  auto q = artinian_profile(a, opt);
  p.depth = 1;
  p.type = q.type;
  p.bass = SeriesTrunc::monomial(1, q.bass->trunc() + 1) * SeriesTrunc(q.bass->coeffs(), q.bass->trunc() + 1);
  if (q.edim && p.edim && *q.edim == *p.edim - 1) {
    p.poincare_k = SeriesTrunc::one_plus_t_pow(1, q.poincare_k->trunc()) * *q.poincare_k;
    p.computed("poincare_k", rule);
  }
  for (const char* f : {"depth", "type", "bass"}) p.computed(f, rule);
}

RingProfile monomial_profile(const RingPresentation& pr, const ProfileOptions& opt) {
  const RingPtr& ring = pr.ideal.ring();
  const int n = ring->nvars();
  auto gens = minimalize_monomials(pr.ideal.monomial_generators());
  // Variables that are generators drop out of the embedding.
  std::vector<bool> killed(n, false);
  std::vector<Monomial> rest;
  for (const auto& g : gens) {
    if (total_degree(g) == 1) {
      killed[std::find(g.begin(), g.end(), 1) - g.begin()] = true;
    } else {
      rest.push_back(g);
    }
  }
  std::vector<std::string> vars;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (killed[i]) continue;
    keep.push_back(i);
    vars.push_back(ring->vars[i]);
  }
  const std::string rule = "monomial ideal";
  if (rest.empty()) return regular_profile(pr.name, static_cast<int>(vars.size()), opt.trunc, rule);
  auto small = make_ring(ring->field, vars);
  const int m = small->nvars();
  std::vector<Monomial> sgens;
  for (const auto& g : rest) {
    Monomial s(m);
    for (int j = 0; j < m; ++j) s[j] = g[keep[j]];
    sgens.push_back(s);
  }
  auto ideal = IdealSpec::from_monomials(small, sgens);
  auto gb = buchberger(ideal);

  RingProfile p;
  p.name = pr.name;
  p.dim = krull_dimension(gb);
  p.edim = m;
  p.regular = false;
  auto ha = hilbert_analysis(gb, opt.hilbert_max);
  p.multiplicity = ha.multiplicity;
  auto rad = minimalize_monomials(monomial_radical(ideal).monomial_generators());
  p.analytically_unramified = rad == minimalize_monomials(sgens);
  for (const char* f : {"dim", "edim", "regular"}) p.computed(f, rule);
  p.computed("multiplicity", "Hilbert series");
  p.computed("analytically_unramified", "monomial: radical test");

  // Socle monomials u (u not in I, x_j u in I for all j) have u_j below the
  // largest exponent of x_j; a variable absent from every generator is a
  // nonzerodivisor and rules the socle out.
  std::vector<int> box(m, 0);
  bool any_free = false;
  for (int j = 0; j < m; ++j) {
    for (const auto& g : sgens) box[j] = std::max(box[j], g[j]);
    if (box[j] == 0) any_free = true;
  }
  std::int64_t socle = 0;
  if (!any_free) {
    Monomial u(m, 0);
    auto in_ideal = [&](const Monomial& w) {
      return std::any_of(sgens.begin(), sgens.end(), [&](const Monomial& g) { return divides(g, w); });
    };
    while (true) {
      if (!in_ideal(u)) {
        bool soc = true;
        for (int j = 0; j < m && soc; ++j) {
          ++u[j];
          soc = in_ideal(u);
          --u[j];
        }
        if (soc) ++socle;
      }
      int j = 0;
      while (j < m && u[j] == box[j] - 1) u[j++] = 0;
      if (j == m) break;
      ++u[j];
    }
  }
  if (socle > 0) {
    p.depth = 0;
    p.type = socle;
    p.computed("depth", "socle monomial present");
    p.computed("type", "count of socle monomials");
  } else if (*p.dim == 1) {
    // m is not associated, so the sum of the variables avoids every
    // (monomial) associated prime.
    Poly l(small);
    for (int j = 0; j < m; ++j) l = l + Poly::variable(small, j);
    auto gens2 = ideal.generators();
    gens2.push_back(l);
    auto a = quotient_algebra(IdealSpec(small, gens2));
    if (a->length() != *p.multiplicity)
      throw CheckFailure(pr.name + ": length modulo a regular linear form " + std::to_string(a->length()) +
                         " differs from the multiplicity " + std::to_string(*p.multiplicity));
    fill_from_regular_element(p, a, opt, "reduction modulo the sum of the variables");
  }
  return p;
}

RingProfile homogeneous_profile(const RingPresentation& pr, const ProfileOptions& opt) {
  const RingPtr& ring = pr.ideal.ring();
  const int n = ring->nvars();
  auto gb = buchberger(pr.ideal);
  int linear = 0;
  for (const auto& g : gb.basis())
    if (g.degree() == 1) ++linear;
  int dim = krull_dimension(gb);
  const int edim = n - linear;
  if (edim == dim) return regular_profile(pr.name, dim, opt.trunc, "homogeneous ideal with edim = dim");
  RingProfile p;
  p.name = pr.name;
  p.dim = dim;
  p.edim = edim;
  p.regular = false;
  p.multiplicity = hilbert_analysis(gb, opt.hilbert_max).multiplicity;
  for (const char* f : {"dim", "edim", "regular"}) p.computed(f, "homogeneous ideal");
  p.computed("multiplicity", "Hilbert series");
  if (dim == 1) {
    // A generic linear form l is regular iff length(R / l) = e(R).
    Poly l(ring);
    for (int j = 0; j < n; ++j) l = l + Poly::variable(ring, j).scaled(Scalar(j + 1));
    auto gens = pr.ideal.generators();
    gens.push_back(l);
    auto gl = buchberger(IdealSpec(ring, gens));
    if (gl.cofinite()) {
      auto a = quotient_algebra(gl);
      if (a->length() == *p.multiplicity)
        fill_from_regular_element(p, a, opt, "reduction modulo a certified regular linear form");
    }
  }
  return p;
}

RingProfile core_profile(const RingPresentation& pr, const ProfileOptions& opt) {
  const IdealSpec& ideal = pr.ideal;
  const int n = ideal.ring()->nvars();
  if (ideal.generators().empty()) return regular_profile(pr.name, n, opt.trunc, "zero ideal");
  for (const auto& g : ideal.generators())
    if (has_unit_constant(g)) throw StructuralError(pr.name + ": generator " + g.to_string() + " is a unit");
  auto gb = buchberger(ideal);
  if (gb.cofinite()) return artinian_profile(quotient_algebra(gb), opt, pr.name);
  if (ideal.generators().size() == 1) return principal_profile(pr, ideal.generators()[0], opt);
  if (ideal.monomial()) return monomial_profile(pr, opt);
  if (ideal.homogeneous()) return homogeneous_profile(pr, opt);
  throw NotCofiniteError(pr.name + ": no invariant rule for a non-homogeneous ideal that is neither cofinite nor "
                         "principal");
}

}  // namespace

RingProfile compute_profile(const RingPresentation& pr, const ProfileOptions& opt) {
  RingProfile p = core_profile(pr, opt);
  const int c = static_cast<int>(pr.cone_vars.size());
  for (const auto& v : pr.cone_vars)
    if (pr.ideal.ring()->index_of(v) >= 0) throw StructuralError("cone variable " + v + " is also a ring variable");
  if (c > 0) {
    const std::string rule = "adjoined " + std::to_string(c) + " cone variable(s)";
    auto shift = [&](std::optional<int>& f, const char* field) {
      if (!f) return;
      *f += c;
      p.provenance[field].rule += "; " + rule;
    };
    shift(p.dim, "dim");
    shift(p.depth, "depth");
    shift(p.edim, "edim");
    if (p.length) {
      p.length.reset();
      p.provenance.erase("length");
    }
    if (p.bass) {
      int t = p.bass->trunc();
      p.bass = SeriesTrunc::monomial(c, t + c) * SeriesTrunc(p.bass->coeffs(), t + c);
      p.provenance["bass"].rule += "; " + rule;
    }
    if (p.poincare_k) {
      p.poincare_k = SeriesTrunc::one_plus_t_pow(c, p.poincare_k->trunc()) * *p.poincare_k;
      p.provenance["poincare_k"].rule += "; " + rule;
    }
    // Over a field core the cone is regular; otherwise finite type is not a
    // cone invariant we compute.
    if (p.finite_cm_type && !(p.regular && *p.regular)) {
      p.finite_cm_type.reset();
      p.provenance.erase("finite_cm_type");
    }
  }
  // Bass series are truncated where the inputs are known; cap at trunc.
  if (p.bass && p.bass->trunc() > opt.trunc) p.bass = p.bass->truncated(opt.trunc);
  p.close();
  for (const auto& [flag, value] : pr.declared) p.declare(flag, value);
  p.close();
  return p;
}

}  // namespace fiberlab
