#include "fiberlab/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fiberlab/errors.hpp"

namespace fiberlab {

IdealSpec::IdealSpec(RingPtr ring, std::vector<Poly> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.ring() != ring_ && !same_ring(*g.ring(), *ring_)) throw StructuralError("generator from a different ring");
    if (g.is_zero()) continue;
    homogeneous_ = homogeneous_ && g.is_homogeneous();
    monomial_ = monomial_ && g.is_monomial();
    generators_.push_back(std::move(g));
  }
}

std::vector<Monomial> IdealSpec::monomial_generators() const {
  if (!monomial_) throw UnsupportedInput("ideal is not generated by monomials");
  std::vector<Monomial> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.lead().mono);
  return out;
}

IdealSpec IdealSpec::from_monomials(RingPtr ring, const std::vector<Monomial>& gens) {
  std::vector<Poly> polys;
  polys.reserve(gens.size());
  for (const auto& m : gens) polys.push_back(Poly::monomial(ring, m));
  return IdealSpec(std::move(ring), std::move(polys));
}

GroebnerBasis::GroebnerBasis(std::vector<Poly> reduced, IdealSpec source)
    : basis_(std::move(reduced)), source_(std::move(source)) {
  for (const auto& g : basis_) leads_.push_back(g.lead().mono);
}

std::vector<Monomial> GroebnerBasis::leads() const { return leads_; }

bool GroebnerBasis::is_unit() const {
  return std::any_of(leads_.begin(), leads_.end(), [](const Monomial& m) { return total_degree(m) == 0; });
}

bool GroebnerBasis::cofinite() const {
  int n = ring()->nvars();
  for (int v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& m : leads_) {
      if (m[v] > 0 && total_degree(m) == m[v]) found = true;
    }
    if (!found && !is_unit()) return false;
  }
  return true;
}

int GroebnerBasis::socle_degree_bound() const {
  if (!cofinite()) throw NotCofiniteError("ideal is not cofinite");
  int n = ring()->nvars();
  int bound = 0;
  for (int v = 0; v < n; ++v) {
    int best = -1;
    for (const auto& m : leads_) {
      if (m[v] > 0 && total_degree(m) == m[v]) best = best < 0 ? m[v] : std::min(best, m[v]);
    }
    if (best > 0) bound += best - 1;
  }
  return bound;
}

bool GroebnerBasis::lead_divisible(const Monomial& m) const {
  return std::any_of(leads_.begin(), leads_.end(), [&](const Monomial& l) { return divides(l, m); });
}

namespace {

// Full reduction of f modulo polys (whose leads are `leads`); polys are monic.
Poly reduce_full(const Poly& f, const std::vector<Poly>& polys, const std::vector<Monomial>& leads) {
  const FieldSpec& F = f.field();
  std::map<Monomial, Scalar, GrevlexGreater> work;
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);
  std::vector<Poly::Term> remainder;
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    Scalar c = it->second;
    work.erase(it);
    if (is_zero(c)) continue;
    int reducer = -1;
    for (std::size_t i = 0; i < leads.size(); ++i) {
      if (divides(leads[i], m)) {
        reducer = static_cast<int>(i);
        break;
      }
    }
    if (reducer < 0) {
      remainder.push_back({std::move(m), std::move(c)});
      continue;
    }
    const Poly& g = polys[reducer];
    Monomial q = mono_div(m, leads[reducer]);
    const Scalar& lc = g.lead().coeff;
    Scalar factor = F.div(c, lc);
    for (std::size_t k = 1; k < g.terms().size(); ++k) {
      const auto& t = g.terms()[k];
      Monomial mm = mono_mul(t.mono, q);
      auto [pos, fresh] = work.try_emplace(std::move(mm), F.neg(F.mul(factor, t.coeff)));
      if (!fresh) {
        F.sub_mul(pos->second, factor, t.coeff);
        if (is_zero(pos->second)) work.erase(pos);
      }
    }
  }
  Poly r(f.ring());
  return Poly::from_terms(f.ring(), std::move(remainder));
}

Poly s_polynomial(const Poly& a, const Poly& b) {
  const Monomial& la = a.lead().mono;
  const Monomial& lb = b.lead().mono;
  Monomial l = mono_lcm(la, lb);
  const FieldSpec& F = a.field();
  Poly pa = a.mul_term(mono_div(l, la), F.inv(a.lead().coeff));
  Poly pb = b.mul_term(mono_div(l, lb), F.inv(b.lead().coeff));
  return pa - pb;
}

struct Pair {
  int i;
  int j;
  Monomial lcm;
};

bool pair_before(const Pair& a, const Pair& b) {
  int c = grevlex_compare(a.lcm, b.lcm);
  if (c != 0) return c < 0;
  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
}

}  // namespace

Poly GroebnerBasis::normal_form(const Poly& f) const {
  if (f.ring() != ring() && !same_ring(*f.ring(), *ring())) {
    throw StructuralError("normal_form: polynomial and basis live in different rings");
  }
  return reduce_full(f, basis_, leads_);
}

GroebnerBasis buchberger(const IdealSpec& ideal, const BuchbergerOptions& options) {
  std::vector<Poly> G;
  std::vector<Monomial> leads;
  std::vector<Pair> pending;
  std::set<std::pair<int, int>> pending_keys;

  auto add = [&](Poly p) {
    p = p.monic();
    int n = static_cast<int>(G.size());
    for (int i = 0; i < n; ++i) {
      pending.push_back({i, n, mono_lcm(leads[i], p.lead().mono)});
      pending_keys.insert({i, n});
    }
    leads.push_back(p.lead().mono);
    G.push_back(std::move(p));
  };

  for (const auto& g : ideal.generators()) {
    Poly r = reduce_full(g, G, leads);
    if (!r.is_zero()) add(std::move(r));
  }

  std::int64_t examined = 0;
  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), pair_before);
    Pair p = *best;
    pending.erase(best);
    pending_keys.erase({p.i, p.j});
    if (++examined > options.max_pairs) {
      throw LimitExceeded("buchberger: more than " + std::to_string(options.max_pairs) + " S-pairs examined");
    }
    if (coprime(leads[p.i], leads[p.j])) continue;
    bool chain = false;
    for (int k = 0; k < static_cast<int>(G.size()) && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!divides(leads[k], p.lcm)) continue;
      auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending_keys.count(key(p.i, k)) && !pending_keys.count(key(p.j, k))) chain = true;
    }
    if (chain) continue;
    Poly r = reduce_full(s_polynomial(G[p.i], G[p.j]), G, leads);
    if (!r.is_zero()) add(std::move(r));
  }

  // Minimal basis, then interreduce.
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(G.size()); ++i) {
    bool redundant = false;
    for (int j = 0; j < static_cast<int>(G.size()) && !redundant; ++j) {
      if (i == j) continue;
      if (divides(leads[j], leads[i]) && (leads[j] != leads[i] || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  std::vector<Poly> minimal;
  for (int i : keep) minimal.push_back(G[i]);
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    std::vector<Monomial> other_leads;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j == i) continue;
      others.push_back(minimal[j]);
      other_leads.push_back(minimal[j].lead().mono);
    }
    const Poly& g = minimal[i];
    Poly tail = reduce_full(g - Poly::monomial(g.ring(), g.lead().mono, g.lead().coeff), others, other_leads);
    reduced.push_back((Poly::monomial(g.ring(), g.lead().mono, g.lead().coeff) + tail).monic());
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly& a, const Poly& b) { return grevlex_compare(a.lead().mono, b.lead().mono) < 0; });
  return GroebnerBasis(std::move(reduced), ideal);
}

namespace {

// Standard monomials grouped by degree, levels[d] sorted increasingly.
std::vector<std::vector<Monomial>> standard_levels(const GroebnerBasis& g, int cap, bool* overflow) {
  int n = g.ring()->nvars();
  std::vector<std::vector<Monomial>> levels;
  if (g.is_unit()) return levels;
  levels.push_back({Monomial(n, 0)});
  for (int d = 0; d < cap + 1; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : levels[d]) {
      int last = 0;
      for (int v = 0; v < n; ++v) {
        if (m[v]) last = v;
      }
      for (int v = last; v < n; ++v) {
        Monomial u = m;
        ++u[v];
        if (!g.lead_divisible(u)) next.push_back(std::move(u));
      }
    }
    std::sort(next.begin(), next.end(), GrevlexLess());
    if (d + 1 > cap) {
      if (overflow) *overflow = !next.empty();
      break;
    }
    if (next.empty()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace

std::vector<Monomial> standard_monomials(const GroebnerBasis& g, int degree_cap, bool assert_cofinite) {
  if (degree_cap < 0) throw UnsupportedInput("degree cap must be non-negative");
  if (assert_cofinite && !g.cofinite()) throw NotCofiniteError("ideal is not cofinite");
  bool overflow = false;
  auto levels = standard_levels(g, degree_cap, &overflow);
  if (assert_cofinite && overflow) {
    throw NotCofiniteError("standard monomials still present beyond degree " + std::to_string(degree_cap));
  }
  std::vector<Monomial> out;
  for (auto& lvl : levels) out.insert(out.end(), lvl.begin(), lvl.end());
  return out;
}

std::vector<Monomial> standard_basis(const GroebnerBasis& g) {
  if (!g.cofinite()) throw NotCofiniteError("ideal is not cofinite in the variables");
  return standard_monomials(g, g.socle_degree_bound(), true);
}

std::vector<std::int64_t> hilbert_function(const GroebnerBasis& g, int n_max) {
  if (!g.source().homogeneous()) {
    throw UnsupportedInput("hilbert_function requires a homogeneous ideal");
  }
  if (n_max < 0) throw UnsupportedInput("n_max must be non-negative");
  auto levels = standard_levels(g, n_max, nullptr);
  std::vector<std::int64_t> H(n_max + 1, 0);
  std::int64_t acc = 0;
  for (int d = 0; d <= n_max; ++d) {
    if (d < static_cast<int>(levels.size())) acc += static_cast<std::int64_t>(levels[d].size());
    H[d] = acc;
  }
  return H;
}

std::vector<std::int64_t> hilbert_function(const IdealSpec& ideal, int n_max) {
  if (!ideal.homogeneous()) throw UnsupportedInput("hilbert_function requires a homogeneous ideal");
  return hilbert_function(buchberger(ideal), n_max);
}

std::vector<Monomial> minimalize_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), GrevlexLess());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (const auto& m : gens) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& k) { return divides(k, m); });
    if (!redundant) out.push_back(m);
  }
  return out;
}

std::vector<Monomial> monomial_colon(const std::vector<Monomial>& gens, const Monomial& u) {
  std::vector<Monomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    Monomial q(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) q[i] = std::max(0, g[i] - u[i]);
    out.push_back(std::move(q));
  }
  return minimalize_monomials(std::move(out));
}

namespace {

IntPoly poly_add(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

bool pairwise_coprime(const std::vector<Monomial>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!coprime(gens[i], gens[j])) return false;
    }
  }
  return true;
}

}  // namespace

IntPoly hilbert_numerator(const std::vector<Monomial>& raw, int nvars) {
  std::vector<Monomial> gens = minimalize_monomials(raw);
  if (gens.empty()) return {1};
  if (total_degree(gens.front()) == 0) return {0};
  if (pairwise_coprime(gens)) {
    IntPoly r{1};
    for (const auto& g : gens) {
      IntPoly f(total_degree(g) + 1, 0);
      f[0] = 1;
      f.back() = -1;
      r = poly_mul(r, f);
    }
    return r;
  }
  int pivot = 0, best = -1;
  for (int v = 0; v < nvars; ++v) {
    int count = 0;
    for (const auto& g : gens) count += g[v] > 0;
    if (count > best) {
      best = count;
      pivot = v;
    }
  }
  Monomial x(nvars, 0);
  x[pivot] = 1;
  std::vector<Monomial> plus{x};
  for (const auto& g : gens) {
    if (g[pivot] == 0) plus.push_back(g);
  }
  IntPoly a = hilbert_numerator(plus, nvars);
  IntPoly b = hilbert_numerator(monomial_colon(gens, x), nvars);
  b.insert(b.begin(), 0);
  return poly_add(a, b);
}

HilbertAnalysis hilbert_analysis(const GroebnerBasis& g, int n_max) {
  if (g.is_unit()) throw UnsupportedInput("hilbert_analysis of the unit ideal");
  HilbertAnalysis h;
  h.values = hilbert_function(g, n_max);
  int n = g.ring()->nvars();
  IntPoly Q = hilbert_numerator(g.leads(), n);
  int k = 0;
  auto eval1 = [](const IntPoly& p) {
    std::int64_t s = 0;
    for (auto c : p) s += c;
    return s;
  };
  while (eval1(Q) == 0) {
    // Synthetic division by (1 - t): Q = (1 - t) R, R_i = sum_{j<=i} Q_j.
    IntPoly R(Q.size() - 1, 0);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i + 1 < Q.size(); ++i) {
      acc += Q[i];
      R[i] = acc;
    }
    Q = R.empty() ? IntPoly{0} : R;
    ++k;
  }
  h.dimension = n - k;
  h.reduced_numerator = Q;
  h.multiplicity = eval1(Q);

  // dim-th backward difference of H with H(n) = 0 for n < 0.
  std::vector<std::int64_t> diff = h.values;
  for (int r = 0; r < h.dimension; ++r) {
    for (int i = n_max; i >= 1; --i) diff[i] -= diff[i - 1];
  }
  h.differences = diff;
  // Its generating series is Q(t)/(1-t): partial sums of Q.
  std::int64_t partial = 0;
  for (int i = 0; i <= n_max; ++i) {
    if (i < static_cast<int>(Q.size())) partial += Q[i];
    if (diff[i] != partial) {
      throw CheckFailure("Hilbert function enumeration disagrees with the Hilbert numerator at degree " +
                         std::to_string(i));
    }
  }
  int degQ = static_cast<int>(Q.size()) - 1;
  h.stabilized = n_max >= degQ + 1 && diff[n_max] == h.multiplicity && diff[n_max - 1] == h.multiplicity;
  return h;
}

IdealSpec monomial_radical(const IdealSpec& ideal) {
  auto gens = ideal.monomial_generators();
  for (auto& m : gens) {
    for (auto& e : m) e = e > 0 ? 1 : 0;
  }
  return IdealSpec::from_monomials(ideal.ring(), minimalize_monomials(std::move(gens)));
}

namespace {

void vertex_covers(const std::vector<Monomial>& gens, std::vector<int>& chosen, std::vector<char>& in,
                   std::vector<std::vector<int>>& out) {
  for (const auto& c : out) {
    if (std::all_of(c.begin(), c.end(), [&](int v) { return in[v] != 0; })) return;
  }
  const Monomial* uncovered = nullptr;
  for (const auto& g : gens) {
    bool hit = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (g[v] && in[v]) hit = true;
    }
    if (!hit) {
      uncovered = &g;
      break;
    }
  }
  if (!uncovered) {
    std::vector<int> s = chosen;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  for (std::size_t v = 0; v < uncovered->size(); ++v) {
    if (!(*uncovered)[v]) continue;
    chosen.push_back(static_cast<int>(v));
    in[v] = 1;
    vertex_covers(gens, chosen, in, out);
    in[v] = 0;
    chosen.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> monomial_minimal_primes(const std::vector<Monomial>& raw, int nvars) {
  auto gens = minimalize_monomials(raw);
  if (!gens.empty() && total_degree(gens.front()) == 0) return {};
  std::vector<std::vector<int>> covers;
  std::vector<int> chosen;
  std::vector<char> in(nvars, 0);
  vertex_covers(gens, chosen, in, covers);
  // Drop non-minimal covers.
  std::vector<std::vector<int>> minimal;
  for (const auto& c : covers) {
    bool superset = false;
    for (const auto& d : covers) {
      if (&c == &d || d.size() >= c.size()) continue;
      if (std::includes(c.begin(), c.end(), d.begin(), d.end())) superset = true;
    }
    if (!superset) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end());
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  return minimal;
}

std::vector<std::vector<int>> monomial_minimal_primes(const IdealSpec& ideal) {
  return monomial_minimal_primes(ideal.monomial_generators(), ideal.ring()->nvars());
}

int krull_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  int n = g.ring()->nvars();
  auto primes = monomial_minimal_primes(g.leads(), n);
  if (primes.empty()) return n;
  std::size_t smallest = primes.front().size();
  for (const auto& p : primes) smallest = std::min(smallest, p.size());
  return n - static_cast<int>(smallest);
}

}  // namespace fiberlab
