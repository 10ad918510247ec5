#include "fiberlab/artin.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "fiberlab/errors.hpp"

namespace fiberlab {

Degree degree_add(const Degree& a, const Degree& b) {
  Degree r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Degree degree_sub(const Degree& a, const Degree& b) {
  Degree r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Degree degree_neg(const Degree& a) {
  Degree r(a);
  for (auto& x : r) x = -x;
  return r;
}

namespace {

// sum_k a_k * cols[k]
SparseVec combine(const SparseVec& a, const std::vector<SparseVec>& cols, const FieldSpec& F, Accumulator& acc) {
  for (const auto& [k, c] : a) {
    for (const auto& [i, x] : cols[k]) F.sub_mul(acc.ref(i), -c, x);
  }
  return acc.take();
}

SparseVec unit(int i) { return SparseVec{{i, Scalar(1)}}; }

}  // namespace

std::string ArtinAlgebra::basis_name(int k) const { return monomial_to_string(basis_[k], gen_names_); }

SparseVec ArtinAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  Accumulator acc(length());
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      Scalar xy = field_.mul(x, y);
      for (const auto& [k, z] : product(i, j)) field_.sub_mul(acc.ref(k), -xy, z);
    }
  }
  return acc.take();
}

AlgPtr ArtinAlgebra::create(FieldSpec field, std::vector<std::string> gen_names, std::vector<SparseVec> gen_elements,
                            std::vector<Monomial> basis, std::vector<SparseVec> table, std::vector<Degree> gen_degrees,
                            std::string description) {
  std::shared_ptr<ArtinAlgebra> a(new ArtinAlgebra());
  a->field_ = std::move(field);
  a->gen_names_ = std::move(gen_names);
  a->gen_elements_ = std::move(gen_elements);
  a->basis_ = std::move(basis);
  a->table_ = std::move(table);
  a->gen_degrees_ = std::move(gen_degrees);
  a->description_ = std::move(description);
  a->finish();
  return a;
}

void ArtinAlgebra::finish() {
  const int L = length();
  const int G = ngens();
  if (L == 0) throw StructuralError("algebra with empty basis");
  if (static_cast<int>(table_.size()) != L * L) throw StructuralError("structure table has the wrong size");
  if (static_cast<int>(gen_elements_.size()) != G || static_cast<int>(gen_degrees_.size()) != G) {
    throw StructuralError("generator data has the wrong size");
  }
  if (total_degree(basis_[0]) != 0) throw StructuralError("basis[0] must be 1");
  std::map<Monomial, int> index;
  for (int k = 0; k < L; ++k) {
    if (static_cast<int>(basis_[k].size()) != G) throw StructuralError("basis monomial of wrong arity");
    index[basis_[k]] = k;
  }

  // Unit, commutativity, locality.
  for (int k = 0; k < L; ++k) {
    if (product(0, k) != unit(k)) throw StructuralError("basis[0] is not the unit");
    for (int j = 0; j < L; ++j) {
      if (product(k, j) != product(j, k)) throw StructuralError("structure table is not commutative");
      if (k > 0 && j > 0) {
        for (const auto& e : product(k, j)) {
          if (e.first == 0) throw StructuralError("algebra is not local: m is not an ideal");
        }
      }
    }
  }
  for (const auto& ge : gen_elements_) {
    for (const auto& e : ge) {
      if (e.first == 0) throw StructuralError("a generator is a unit");
    }
  }

  // Generator multiplication, parents and chains.
  gen_mul_.assign(G, std::vector<SparseVec>(L));
  for (int g = 0; g < G; ++g) {
    for (int k = 0; k < L; ++k) gen_mul_[g][k] = multiply(gen_elements_[g], unit(k));
  }
  parent_.assign(L, -1);
  parent_gen_.assign(L, -1);
  chain_.assign(L, {});
  std::vector<int> order(L);
  for (int k = 0; k < L; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return total_degree(basis_[a]) < total_degree(basis_[b]); });
  for (int k : order) {
    if (k == 0) continue;
    bool found = false;
    for (int g = G - 1; g >= 0 && !found; --g) {
      if (basis_[k][g] == 0) continue;
      Monomial p = basis_[k];
      --p[g];
      auto it = index.find(p);
      if (it == index.end()) continue;
      if (gen_mul_[g][it->second] != unit(k)) continue;
      parent_[k] = it->second;
      parent_gen_[k] = g;
      chain_[k] = chain_[it->second];
      chain_[k].push_back(g);
      found = true;
    }
    if (!found) throw StructuralError("basis monomial " + basis_name(k) + " has no parent in the basis");
  }

  // Associativity on all triples of maximal-ideal basis elements.
  for (int i = 1; i < L; ++i) {
    for (int j = 1; j < L; ++j) {
      for (int k = 1; k < L; ++k) {
        if (multiply(product(i, j), unit(k)) != multiply(unit(i), product(j, k))) {
          throw StructuralError("structure table is not associative");
        }
      }
    }
  }

  // Nilpotency of m.
  std::vector<SparseVec> power;
  for (int k = 1; k < L; ++k) power.push_back(unit(k));
  for (int step = 0; !power.empty(); ++step) {
    if (step > L) throw StructuralError("algebra is not local: m is not nilpotent");
    Echelon e(field_, L);
    std::vector<SparseVec> next;
    for (const auto& v : power) {
      for (int g = 0; g < G; ++g) {
        Accumulator acc(L);
        SparseVec w = combine(v, gen_mul_[g], field_, acc);
        if (!w.empty() && e.insert(w)) next.push_back(std::move(w));
      }
    }
    if (!next.empty() && next.size() >= power.size()) {
      throw StructuralError("algebra is not local: m is not nilpotent");
    }
    power = std::move(next);
  }

  // Degrees and homogeneity of the table.
  int r = grading_rank();
  basis_degrees_.assign(L, Degree(r, 0));
  for (int k = 0; k < L; ++k) {
    for (int g = 0; g < G; ++g) {
      for (int t = 0; t < r; ++t) basis_degrees_[k][t] += basis_[k][g] * gen_degrees_[g][t];
    }
  }
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      Degree d = degree_add(basis_degrees_[i], basis_degrees_[j]);
      for (const auto& e : product(i, j)) {
        if (basis_degrees_[e.first] != d) throw StructuralError("structure table is not homogeneous");
      }
    }
  }
  for (int g = 0; g < G; ++g) {
    for (const auto& e : gen_elements_[g]) {
      if (basis_degrees_[e.first] != gen_degrees_[g]) throw StructuralError("generator is not homogeneous");
    }
  }
}

bool same_algebra(const ArtinAlgebra& a, const ArtinAlgebra& b) {
  if (&a == &b) return true;
  if (a.field() != b.field() || a.basis() != b.basis() || a.generator_names() != b.generator_names()) return false;
  for (int i = 0; i < a.length(); ++i) {
    for (int j = 0; j < a.length(); ++j) {
      if (a.product(i, j) != b.product(i, j)) return false;
    }
  }
  for (int g = 0; g < a.ngens(); ++g) {
    if (a.generator_element(g) != b.generator_element(g) || a.generator_degree(g) != b.generator_degree(g)) {
      return false;
    }
  }
  return true;
}

std::vector<Degree> detect_multigrading(const GroebnerBasis& g) {
  const int n = g.ring()->nvars();
  std::vector<SparseVec> rows;
  for (const auto& f : g.basis()) {
    const Monomial& lead = f.lead().mono;
    for (std::size_t t = 1; t < f.terms().size(); ++t) {
      SparseVec row;
      for (int v = 0; v < n; ++v) {
        int d = f.terms()[t].mono[v] - lead[v];
        if (d) row.emplace_back(v, Scalar(d));
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  auto sol = sparse_nullspace(rows, n, FieldSpec::rationals());
  std::vector<Degree> degrees(n, Degree(sol.size(), 0));
  for (std::size_t c = 0; c < sol.size(); ++c) {
    mpz_class l = 1;
    for (const auto& e : sol[c]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    for (const auto& e : sol[c]) {
      mpq_class v = e.second * l;
      degrees[e.first][c] = static_cast<int>(v.get_num().get_si());
    }
  }
  return degrees;
}

AlgPtr quotient_algebra(const IdealSpec& ideal) { return quotient_algebra(buchberger(ideal)); }

AlgPtr quotient_algebra(const GroebnerBasis& g) {
  if (g.is_unit()) throw StructuralError("quotient by the unit ideal is the zero ring");
  if (!g.cofinite()) throw NotCofiniteError("ideal is not cofinite; the quotient is not artinian");
  const RingPtr& ring = g.ring();
  const int n = ring->nvars();
  auto basis = standard_basis(g);
  const int L = static_cast<int>(basis.size());
  std::map<Monomial, int> index;
  for (int k = 0; k < L; ++k) index[basis[k]] = k;
  auto coords = [&](const Poly& p) {
    SparseVec v;
    for (const auto& t : p.terms()) v.emplace_back(index.at(t.mono), t.coeff);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  std::vector<SparseVec> table(static_cast<std::size_t>(L) * L);
  for (int i = 0; i < L; ++i) {
    for (int j = i; j < L; ++j) {
      Monomial m = mono_mul(basis[i], basis[j]);
      SparseVec v;
      auto it = index.find(m);
      if (it != index.end()) {
        v = unit(it->second);
      } else {
        v = coords(g.normal_form(Poly::monomial(ring, m)));
      }
      table[static_cast<std::size_t>(i) * L + j] = v;
      table[static_cast<std::size_t>(j) * L + i] = v;
    }
  }
  std::vector<SparseVec> gens;
  for (int v = 0; v < n; ++v) gens.push_back(coords(g.normal_form(Poly::variable(ring, v))));
  std::string desc = "k[";
  for (int v = 0; v < n; ++v) desc += (v ? "," : "") + ring->vars[v];
  desc += "]/(";
  for (std::size_t i = 0; i < g.source().generators().size(); ++i) {
    desc += (i ? ", " : "") + g.source().generators()[i].to_string();
  }
  desc += ")";
  return ArtinAlgebra::create(ring->field, ring->vars, std::move(gens), std::move(basis), std::move(table),
                              detect_multigrading(g), desc);
}

AlgPtr field_algebra(const FieldSpec& field) {
  return ArtinAlgebra::create(field, {}, {}, {Monomial{}}, {unit(0)}, {}, "k");
}

AlgPtr tensor_algebra(const AlgPtr& a, const AlgPtr& b) {
  if (a->field() != b->field()) throw StructuralError("tensor_algebra: base fields differ");
  const int LA = a->length(), LB = b->length();
  const int GA = a->ngens(), GB = b->ngens();
  const int rA = a->grading_rank(), rB = b->grading_rank();
  std::vector<std::string> names = a->generator_names();
  for (auto name : b->generator_names()) {
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
  }
  std::vector<SparseVec> gens;
  std::vector<Degree> gdeg;
  for (int g = 0; g < GA; ++g) {
    SparseVec v;
    for (const auto& [i, x] : a->generator_element(g)) v.emplace_back(i * LB, x);
    gens.push_back(v);
    Degree d = a->generator_degree(g);
    d.resize(rA + rB, 0);
    gdeg.push_back(d);
  }
  for (int g = 0; g < GB; ++g) {
    SparseVec v;
    for (const auto& [j, y] : b->generator_element(g)) v.emplace_back(j, y);
    gens.push_back(v);
    Degree d(rA, 0);
    const Degree& e = b->generator_degree(g);
    d.insert(d.end(), e.begin(), e.end());
    gdeg.push_back(d);
  }
  std::vector<Monomial> basis;
  for (int i = 0; i < LA; ++i) {
    for (int j = 0; j < LB; ++j) {
      Monomial m = a->basis()[i];
      m.insert(m.end(), b->basis()[j].begin(), b->basis()[j].end());
      basis.push_back(std::move(m));
    }
  }
  const int L = LA * LB;
  std::vector<SparseVec> table(static_cast<std::size_t>(L) * L);
  const FieldSpec& F = a->field();
  for (int i = 0; i < LA; ++i) {
    for (int j = 0; j < LB; ++j) {
      for (int k = 0; k < LA; ++k) {
        for (int l = 0; l < LB; ++l) {
          SparseVec v;
          for (const auto& [p, x] : a->product(i, k)) {
            for (const auto& [q, y] : b->product(j, l)) v.emplace_back(p * LB + q, F.mul(x, y));
          }
          table[static_cast<std::size_t>(i * LB + j) * L + (k * LB + l)] = std::move(v);
        }
      }
    }
  }
  return ArtinAlgebra::create(F, names, std::move(gens), std::move(basis), std::move(table), std::move(gdeg),
                              "(" + a->description() + ") (x) (" + b->description() + ")");
}

AlgPtr base_change_fraction_field(const AlgPtr& a, const std::string& tag) {
  if (a->field().kind() != FieldKind::Rationals) {
    throw StructuralError("base change to a fraction field needs an algebra over Q");
  }
  std::vector<SparseVec> table;
  for (int i = 0; i < a->length(); ++i) {
    for (int j = 0; j < a->length(); ++j) table.push_back(a->product(i, j));
  }
  std::vector<SparseVec> gens;
  std::vector<Degree> gdeg;
  for (int g = 0; g < a->ngens(); ++g) {
    gens.push_back(a->generator_element(g));
    gdeg.push_back(a->generator_degree(g));
  }
  return ArtinAlgebra::create(FieldSpec::fraction_field(tag), a->generator_names(), std::move(gens), a->basis(),
                              std::move(table), std::move(gdeg), a->description() + " over Q((" + tag + "))");
}

std::vector<SparseVec> maximal_ideal_power(const ArtinAlgebra& a, int j) {
  const int L = a.length();
  std::vector<SparseVec> power;
  if (j == 0) {
    for (int k = 0; k < L; ++k) power.push_back(unit(k));
    return power;
  }
  for (int k = 1; k < L; ++k) power.push_back(unit(k));
  Accumulator acc(L);
  for (int step = 1; step < j && !power.empty(); ++step) {
    Echelon e(a.field(), L);
    std::vector<SparseVec> next;
    for (const auto& v : power) {
      for (int g = 0; g < a.ngens(); ++g) {
        SparseVec w;
        for (const auto& [k, c] : v) {
          for (const auto& [i, x] : a.gen_times(g, k)) a.field().sub_mul(acc.ref(i), -c, x);
        }
        w = acc.take();
        if (!w.empty() && e.insert(w)) next.push_back(std::move(w));
      }
    }
    power = std::move(next);
  }
  return power;
}

namespace {

// Common kernel of the linear maps given by columns (each map: L columns).
std::vector<SparseVec> common_kernel(const std::vector<const std::vector<SparseVec>*>& maps, int dim,
                                     const FieldSpec& F) {
  std::map<std::pair<int, int>, SparseVec> rows;  // (map, output index) -> row
  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (int k = 0; k < dim; ++k) {
      for (const auto& [i, x] : (*maps[m])[k]) rows[{static_cast<int>(m), i}].emplace_back(k, x);
    }
  }
  std::vector<SparseVec> eqs;
  for (auto& [key, r] : rows) eqs.push_back(std::move(r));
  return sparse_nullspace(eqs, dim, F);
}

}  // namespace

std::vector<SparseVec> socle_by_generators(const ArtinAlgebra& a) {
  std::vector<std::vector<SparseVec>> maps;
  for (int g = 0; g < a.ngens(); ++g) {
    std::vector<SparseVec> cols;
    for (int k = 0; k < a.length(); ++k) cols.push_back(a.gen_times(g, k));
    maps.push_back(std::move(cols));
  }
  std::vector<const std::vector<SparseVec>*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  return common_kernel(ptrs, a.length(), a.field());
}

std::vector<SparseVec> socle_by_maximal_ideal(const ArtinAlgebra& a) {
  std::vector<std::vector<SparseVec>> maps;
  for (int i = 1; i < a.length(); ++i) {
    std::vector<SparseVec> cols;
    for (int k = 0; k < a.length(); ++k) cols.push_back(a.product(i, k));
    maps.push_back(std::move(cols));
  }
  std::vector<const std::vector<SparseVec>*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  return common_kernel(ptrs, a.length(), a.field());
}

LocalInvariants local_invariants(const ArtinAlgebra& a) {
  LocalInvariants inv;
  inv.length = a.length();
  for (int j = 0;; ++j) {
    int d = static_cast<int>(maximal_ideal_power(a, j).size());
    inv.m_power_dims.push_back(d);
    if (d == 0) {
      inv.loewy_length = j;
      break;
    }
  }
  int m1 = inv.m_power_dims.size() > 1 ? inv.m_power_dims[1] : 0;
  int m2 = inv.m_power_dims.size() > 2 ? inv.m_power_dims[2] : 0;
  inv.edim = m1 - m2;
  inv.socle_dim = static_cast<int>(socle_by_generators(a).size());
  inv.gorenstein = inv.socle_dim == 1;
  return inv;
}

// ---------------------------------------------------------------------------
// Modules

ModRep::ModRep(AlgPtr algebra, std::vector<Degree> degrees, std::vector<std::vector<SparseVec>> action,
               bool check)
    : alg_(std::move(algebra)), degrees_(std::move(degrees)), action_(std::move(action)) {
  if (static_cast<int>(action_.size()) != alg_->ngens()) throw StructuralError("one action matrix per generator");
  for (const auto& cols : action_) {
    if (static_cast<int>(cols.size()) != dim()) throw StructuralError("action matrix of wrong size");
  }
  for (const auto& d : degrees_) {
    if (static_cast<int>(d.size()) != alg_->grading_rank()) throw StructuralError("module degree of wrong rank");
  }
  if (check) validate();
  Echelon e(alg_->field(), dim());
  for (const auto& v : maximal_ideal_image()) e.insert(v);
  for (int i = 0; i < dim(); ++i) {
    if (e.insert(unit(i))) min_gens_.push_back(i);
  }
}

SparseVec ModRep::apply_gen(int g, const SparseVec& v) const {
  Accumulator acc(dim());
  return combine(v, action_[g], alg_->field(), acc);
}

SparseVec ModRep::apply_basis(int k, const SparseVec& v) const {
  SparseVec w = v;
  for (int g : alg_->chain(k)) w = apply_gen(g, w);
  return w;
}

SparseVec ModRep::apply(const SparseVec& a, const SparseVec& v) const {
  Accumulator acc(dim());
  const FieldSpec& F = alg_->field();
  for (const auto& [k, c] : a) {
    for (const auto& [i, x] : apply_basis(k, v)) F.sub_mul(acc.ref(i), -c, x);
  }
  return acc.take();
}

std::vector<SparseVec> ModRep::maximal_ideal_image() const {
  std::vector<SparseVec> out;
  for (const auto& cols : action_) {
    for (const auto& c : cols) {
      if (!c.empty()) out.push_back(c);
    }
  }
  return out;
}

int ModRep::socle_dim() const {
  std::vector<const std::vector<SparseVec>*> ptrs;
  for (const auto& cols : action_) ptrs.push_back(&cols);
  return static_cast<int>(common_kernel(ptrs, dim(), alg_->field()).size());
}

void ModRep::validate() const {
  const int L = alg_->length(), G = alg_->ngens(), D = dim();
  for (int g = 0; g < G; ++g) {
    for (int i = 0; i < D; ++i) {
      Degree want = degree_add(degrees_[i], alg_->generator_degree(g));
      for (const auto& e : action_[g][i]) {
        if (degrees_[e.first] != want) throw StructuralError("action is not homogeneous");
      }
    }
  }
  // act[k] = columns of multiplication by b_k.
  std::vector<std::vector<SparseVec>> act(L);
  for (int i = 0; i < D; ++i) act[0].push_back(unit(i));
  for (int k = 1; k < L; ++k) {
    int p = alg_->parent(k);
    if (act[p].empty()) throw StructuralError("basis chain out of order");
    for (int i = 0; i < D; ++i) act[k].push_back(apply_gen(alg_->parent_gen(k), act[p][i]));
  }
  Accumulator acc(D);
  const FieldSpec& F = alg_->field();
  for (int g = 0; g < G; ++g) {
    for (int k = 0; k < L; ++k) {
      const SparseVec& xb = alg_->gen_times(g, k);
      for (int i = 0; i < D; ++i) {
        SparseVec lhs = apply_gen(g, act[k][i]);
        for (const auto& [l, c] : xb) {
          for (const auto& [j, x] : act[l][i]) F.sub_mul(acc.ref(j), -c, x);
        }
        if (lhs != acc.take()) throw StructuralError("actions do not define a module over the algebra");
      }
    }
  }
}

ModRep free_module(const AlgPtr& a, int rank) {
  const int L = a->length();
  std::vector<Degree> degrees;
  std::vector<std::vector<SparseVec>> action(a->ngens());
  for (int s = 0; s < rank; ++s) {
    for (int k = 0; k < L; ++k) degrees.push_back(a->basis_degree(k));
  }
  for (int g = 0; g < a->ngens(); ++g) {
    for (int s = 0; s < rank; ++s) {
      for (int k = 0; k < L; ++k) {
        SparseVec v;
        for (const auto& [i, x] : a->gen_times(g, k)) v.emplace_back(s * L + i, x);
        action[g].push_back(std::move(v));
      }
    }
  }
  return ModRep(a, std::move(degrees), std::move(action), false);
}

ModRep residue_field(const AlgPtr& a) {
  std::vector<std::vector<SparseVec>> action(a->ngens(), std::vector<SparseVec>(1));
  return ModRep(a, {Degree(a->grading_rank(), 0)}, std::move(action), false);
}

ModRep linear_dual(const ModRep& m) {
  const int D = m.dim();
  std::vector<Degree> degrees;
  for (const auto& d : m.degrees()) degrees.push_back(degree_neg(d));
  std::vector<std::vector<SparseVec>> action(m.algebra()->ngens(), std::vector<SparseVec>(D));
  for (int g = 0; g < m.algebra()->ngens(); ++g) {
    for (int j = 0; j < D; ++j) {
      for (const auto& [i, x] : m.action(g)[j]) action[g][i].emplace_back(j, x);
    }
  }
  return ModRep(m.algebra(), std::move(degrees), std::move(action), false);
}

ModRep dualizing_module(const AlgPtr& a) { return linear_dual(free_module(a)); }

ModRep tensor_module(const ModRep& m, const ModRep& n, const AlgPtr& ab_in) {
  const AlgPtr& A = m.algebra();
  const AlgPtr& B = n.algebra();
  AlgPtr ab = ab_in ? ab_in : tensor_algebra(A, B);
  if (ab->length() != A->length() * B->length() || ab->ngens() != A->ngens() + B->ngens() ||
      ab->grading_rank() != A->grading_rank() + B->grading_rank()) {
    throw StructuralError("tensor_module: algebra is not the tensor product of the module algebras");
  }
  const int DM = m.dim(), DN = n.dim();
  std::vector<Degree> degrees;
  for (int i = 0; i < DM; ++i) {
    for (int j = 0; j < DN; ++j) {
      Degree d = m.degrees()[i];
      d.insert(d.end(), n.degrees()[j].begin(), n.degrees()[j].end());
      degrees.push_back(std::move(d));
    }
  }
  std::vector<std::vector<SparseVec>> action;
  for (int g = 0; g < A->ngens(); ++g) {
    std::vector<SparseVec> cols;
    for (int i = 0; i < DM; ++i) {
      for (int j = 0; j < DN; ++j) {
        SparseVec v;
        for (const auto& [p, x] : m.action(g)[i]) v.emplace_back(p * DN + j, x);
        cols.push_back(std::move(v));
      }
    }
    action.push_back(std::move(cols));
  }
  for (int g = 0; g < B->ngens(); ++g) {
    std::vector<SparseVec> cols;
    for (int i = 0; i < DM; ++i) {
      for (int j = 0; j < DN; ++j) {
        SparseVec v;
        for (const auto& [q, y] : n.action(g)[j]) v.emplace_back(i * DN + q, y);
        cols.push_back(std::move(v));
      }
    }
    action.push_back(std::move(cols));
  }
  bool small = static_cast<long>(DM) * DN * ab->length() <= 200000;
  return ModRep(ab, std::move(degrees), std::move(action), small);
}

HomSpace hom_space(const ModRep& m, const ModRep& n) {
  if (!same_algebra(*m.algebra(), *n.algebra())) throw StructuralError("Hom between modules over different algebras");
  const AlgPtr& A = m.algebra();
  const FieldSpec& F = A->field();
  const int DM = m.dim(), DN = n.dim(), G = A->ngens();
  HomSpace hs;
  hs.source_dim = DM;
  hs.target_dim = DN;
  // Unknowns grouped by degree shift.
  std::map<Degree, std::vector<int>> groups;
  std::vector<int> local(static_cast<std::size_t>(DM) * DN);
  for (int i = 0; i < DM; ++i) {
    for (int j = 0; j < DN; ++j) {
      auto& grp = groups[degree_sub(n.degrees()[j], m.degrees()[i])];
      local[static_cast<std::size_t>(i) * DN + j] = static_cast<int>(grp.size());
      grp.push_back(i * DN + j);
    }
  }
  // Rows of each Y_g (Y_g[j][j'] = coefficient of w_j in x_g w_j').
  std::vector<std::vector<SparseVec>> yrows(G, std::vector<SparseVec>(DN));
  for (int g = 0; g < G; ++g) {
    for (int jp = 0; jp < DN; ++jp) {
      for (const auto& [j, y] : n.action(g)[jp]) yrows[g][j].emplace_back(jp, y);
    }
  }
  // Equation (g, i, j): sum_i' X[i'][i] u(i', j) - sum_j' Y[j][j'] u(i, j') = 0.
  std::map<Degree, std::vector<SparseVec>> equations;
  for (int g = 0; g < G; ++g) {
    for (int i = 0; i < DM; ++i) {
      for (int j = 0; j < DN; ++j) {
        const SparseVec& xcol = m.action(g)[i];
        const SparseVec& yrow = yrows[g][j];
        if (xcol.empty() && yrow.empty()) continue;
        Degree shift = degree_sub(degree_sub(n.degrees()[j], m.degrees()[i]), A->generator_degree(g));
        auto git = groups.find(shift);
        if (git == groups.end()) continue;  // no unknowns of this shift
        std::map<int, Scalar> eq;
        for (const auto& [ip, x] : xcol) {
          Scalar& e = eq[local[static_cast<std::size_t>(ip) * DN + j]];
          e = F.add(e, x);
        }
        for (const auto& [jp, y] : yrow) {
          Scalar& e = eq[local[static_cast<std::size_t>(i) * DN + jp]];
          e = F.sub(e, y);
        }
        SparseVec row;
        for (auto& [idx, c] : eq) {
          if (!is_zero(c)) row.emplace_back(idx, c);
        }
        if (!row.empty()) equations[shift].push_back(std::move(row));
      }
    }
  }
  for (const auto& [shift, unknowns] : groups) {
    auto sol = sparse_nullspace(equations[shift], static_cast<int>(unknowns.size()), F);
    for (auto& v : sol) {
      SparseVec global;
      for (const auto& [li, c] : v) global.emplace_back(unknowns[li], c);
      std::sort(global.begin(), global.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      hs.basis.push_back(std::move(global));
    }
  }
  return hs;
}

int hom_dim(const ModRep& m, const ModRep& n) { return hom_space(m, n).dim(); }

namespace {

Matrix hom_matrix(const HomSpace& hs, const std::vector<Scalar>& coeffs, const FieldSpec& F) {
  Matrix mat(hs.target_dim, hs.source_dim);
  for (std::size_t l = 0; l < hs.basis.size(); ++l) {
    if (is_zero(coeffs[l])) continue;
    for (const auto& [u, c] : hs.basis[l]) {
      int i = u / hs.target_dim, j = u % hs.target_dim;
      mat(j, i) = F.add(mat(j, i), F.mul(coeffs[l], c));
    }
  }
  return mat;
}

}  // namespace

bool is_isomorphic(const ModRep& m, const ModRep& n, const IsoOptions& opt) {
  if (!same_algebra(*m.algebra(), *n.algebra())) throw StructuralError("is_isomorphic: different algebras");
  if (m.dim() != n.dim() || m.mu() != n.mu() || m.socle_dim() != n.socle_dim()) return false;
  if (m.dim() == 0) return true;
  HomSpace mn = hom_space(m, n);
  int h_mm = hom_dim(m, m);
  if (mn.dim() != h_mm || hom_dim(n, n) != h_mm || hom_dim(n, m) != h_mm) return false;
  const AlgPtr& A = m.algebra();
  for (const ModRep& x : {free_module(A), residue_field(A), dualizing_module(A)}) {
    if (hom_dim(x, m) != hom_dim(x, n) || hom_dim(m, x) != hom_dim(n, x)) return false;
  }
  if (mn.dim() == 0) return false;

  const FieldSpec& F = A->field();
  std::mt19937_64 rng(opt.seed);
  for (int t = 0; t < opt.random_tries; ++t) {
    std::vector<Scalar> c(mn.dim());
    for (auto& x : c) x = F.from_int(static_cast<std::int64_t>(rng() % 33) - 16);
    if (!is_zero(determinant(hom_matrix(mn, c, F), F))) return true;
  }
  if (!F.is_prime_field() && m.dim() <= opt.symbolic_max_dim && mn.dim() <= opt.symbolic_max_params) {
    std::vector<std::string> params;
    for (int l = 0; l < mn.dim(); ++l) params.push_back("t" + std::to_string(l));
    RingPtr pr = make_ring(FieldSpec::rationals(), params);
    const int D = m.dim();
    std::vector<std::vector<Poly>> pm(D, std::vector<Poly>(D, Poly(pr)));
    for (int l = 0; l < mn.dim(); ++l) {
      for (const auto& [u, c] : mn.basis[l]) {
        int i = u / D, j = u % D;
        pm[j][i] = pm[j][i] + Poly::variable(pr, l).scaled(c);
      }
    }
    return !berkowitz_determinant(pm, pr).is_zero();
  }
  throw Inconclusive("is_isomorphic: no invertible map found by random search and the symbolic fallback is too large");
}

}  // namespace fiberlab
