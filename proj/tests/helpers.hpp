#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "fiberlab/artin.hpp"
#include "fiberlab/groebner.hpp"
#include "fiberlab/poly.hpp"
#include "fiberlab/profile.hpp"

namespace testing_support {

using namespace fiberlab;

inline RingPtr ring(const std::vector<std::string>& vars, FieldSpec f = FieldSpec::rationals()) {
  return make_ring(f, vars);
}

inline Poly P(const RingPtr& r, const std::string& text) { return parse_poly(text, r); }

inline IdealSpec ideal(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(P(r, g));
  return IdealSpec(r, ps);
}

/// Uniform integer in [lo, hi] from raw engine output, identical on every
/// platform (std distributions are implementation-defined).
inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Poly random_poly(std::mt19937_64& rng, const RingPtr& r, int terms, int max_deg) {
  std::vector<Poly::Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m(r->nvars(), 0);
    int d = uniform(rng, 0, max_deg);
    for (int k = 0; k < d; ++k) ++m[uniform(rng, 0, r->nvars() - 1)];
    ts.push_back({m, r->field.from_int(uniform(rng, -5, 5))});
  }
  return Poly::from_terms(r, ts);
}

inline RingPresentation presentation(const std::string& name, const std::vector<std::string>& vars,
                                     const std::vector<std::string>& gens,
                                     const std::vector<std::string>& cone = {},
                                     const std::map<std::string, bool>& declared = {}) {
  return RingPresentation{name, ideal(ring(vars), gens), cone, declared};
}

/// Random artinian monomial ideal in 1 or 2 variables named prefix0,
/// prefix1 with quotient of length at most max_length.
inline IdealSpec random_artinian_monomial(std::mt19937_64& rng, const std::string& prefix, int max_length = 8) {
  while (true) {
    int n = uniform(rng, 1, 2);
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back(prefix + std::to_string(i));
    auto r = ring(vars);
    std::vector<Monomial> gens;
    for (int v = 0; v < n; ++v) {
      Monomial m(n, 0);
      m[v] = uniform(rng, 2, 4);
      gens.push_back(m);
    }
    if (n == 2 && uniform(rng, 0, 2) > 0) gens.push_back({uniform(rng, 1, 2), uniform(rng, 1, 2)});
    auto id = IdealSpec::from_monomials(r, gens);
    if (standard_basis(buchberger(id)).size() <= static_cast<std::size_t>(max_length)) return id;
  }
}

/// All monomials in n variables of total degree exactly d.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial m(n, 0);
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (v == n - 1) {
      m[v] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[v] = e;
      self(self, v + 1, left - e);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, d);
  return out;
}

}  // namespace testing_support
