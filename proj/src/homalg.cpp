#include "fiberlab/homalg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "fiberlab/errors.hpp"

namespace fiberlab {

namespace {

SparseVec unit(int i) { return SparseVec{{i, Scalar(1)}}; }

// act[k][i] = b_k . v_i, built along the basis chains.
std::vector<std::vector<SparseVec>> basis_action(const ModRep& m) {
  const AlgPtr& A = m.algebra();
  const int L = A->length();
  std::vector<std::vector<SparseVec>> act(L);
  for (int i = 0; i < m.dim(); ++i) act[0].push_back(unit(i));
  std::vector<int> order(L);
  for (int k = 0; k < L; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return A->total_degree_of(a) < A->total_degree_of(b); });
  for (int k : order) {
    if (k == 0) continue;
    const auto& prev = act[A->parent(k)];
    for (int i = 0; i < m.dim(); ++i) act[k].push_back(m.apply_gen(A->parent_gen(k), prev[i]));
  }
  return act;
}

// Groups the indices 0..n-1 by degree; local[i] is the position of i in its group.
struct Blocks {
  std::map<Degree, std::vector<int>> members;
  std::vector<int> local;
};

Blocks group_by_degree(const std::vector<Degree>& degs) {
  Blocks b;
  b.local.resize(degs.size());
  for (std::size_t i = 0; i < degs.size(); ++i) {
    auto& grp = b.members[degs[i]];
    b.local[i] = static_cast<int>(grp.size());
    grp.push_back(static_cast<int>(i));
  }
  return b;
}

// One stage: the map F -> T with F free on generators of the given degrees
// sending e_s to images[s]. Computes minimal generators of the kernel.
struct StageResult {
  std::vector<Degree> gen_degrees;
  std::vector<SparseVec> gen_images;           // in F, index s * L + k
  std::map<Degree, std::int64_t> kernel_dims;  // per degree block of F
  std::map<Degree, std::int64_t> ranks;        // rank of the map per block of T
};

class StageSolver {
 public:
  // target_act: when T is not free, act[k][i] = b_k . v_i in T.
  StageSolver(const AlgPtr& a, const std::vector<Degree>& target_degrees,
              const std::vector<std::vector<SparseVec>>* target_act)
      : A_(a), F_(a->field()), L_(a->length()), target_degrees_(target_degrees), target_act_(target_act) {}

  StageResult run(const std::vector<Degree>& gen_degrees, const std::vector<SparseVec>& images) {
    const int nF = static_cast<int>(gen_degrees.size());
    const int dimF = nF * L_;
    std::vector<Degree> col_deg(dimF);
    for (int s = 0; s < nF; ++s) {
      for (int k = 0; k < L_; ++k) col_deg[s * L_ + k] = degree_add(gen_degrees[s], A_->basis_degree(k));
    }
    Blocks cols = group_by_degree(col_deg);
    Blocks tgt = group_by_degree(target_degrees_);

    StageResult out;
    // Kernel of each column block, with identity on the dependent columns.
    std::vector<int> free_pos(dimF, -1);  // column -> position among dependent columns of its block
    std::map<Degree, std::vector<SparseVec>> kernels;
    std::map<Degree, std::vector<int>> dependent;
    Accumulator acc(static_cast<int>(target_degrees_.size()));
    for (const auto& [deg, members] : cols.members) {
      auto tit = tgt.members.find(deg);
      int tdim = tit == tgt.members.end() ? 0 : static_cast<int>(tit->second.size());
      Echelon ech(F_, std::max(tdim, 1), true);
      auto& ker = kernels[deg];
      auto& dep = dependent[deg];
      for (std::size_t c = 0; c < members.size(); ++c) {
        int col = members[c];
        SparseVec image = column(col / L_, col % L_, images, acc);
        SparseVec loc;
        for (const auto& [i, x] : image) loc.emplace_back(tgt.local[i], x);
        std::sort(loc.begin(), loc.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        SparseVec rel;
        if (ech.insert(loc, static_cast<int>(c), &rel)) continue;
        SparseVec kv;
        for (const auto& [lc, x] : rel) kv.emplace_back(members[lc], x);
        std::sort(kv.begin(), kv.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        free_pos[col] = static_cast<int>(dep.size());
        dep.push_back(col);
        ker.push_back(std::move(kv));
      }
      if (ech.rank() > 0) out.ranks[deg] = ech.rank();
      if (!ker.empty()) out.kernel_dims[deg] = static_cast<std::int64_t>(ker.size());
    }

    // m K projected onto the dependent columns, then new generators.
    std::map<Degree, std::vector<SparseVec>> mk;
    Accumulator facc(dimF);
    for (const auto& [deg, ker] : kernels) {
      for (const auto& w : ker) {
        for (int g = 0; g < A_->ngens(); ++g) {
          for (const auto& [idx, c] : w) {
            int s = idx / L_, k = idx % L_;
            for (const auto& [l, y] : A_->gen_times(g, k)) F_.sub_mul(facc.ref(s * L_ + l), -c, y);
          }
          SparseVec xw = facc.take();
          if (xw.empty()) continue;
          SparseVec proj;
          for (const auto& [idx, c] : xw) {
            if (free_pos[idx] >= 0) proj.emplace_back(free_pos[idx], c);
          }
          if (proj.empty()) {
            throw CheckFailure("resolution: nonzero element of m*ker vanishes on the dependent columns");
          }
          mk[col_deg[xw.front().first]].push_back(std::move(proj));
        }
      }
    }
    for (const auto& [deg, ker] : kernels) {
      const auto& dep = dependent[deg];
      Echelon ech(F_, static_cast<int>(dep.size()));
      for (const auto& v : mk[deg]) ech.insert(v);
      for (std::size_t j = 0; j < dep.size(); ++j) {
        if (ech.insert(unit(static_cast<int>(j)))) {
          out.gen_degrees.push_back(deg);
          out.gen_images.push_back(ker[j]);
        }
      }
    }
    return out;
  }

 private:
  // b_k . images[s] in T.
  SparseVec column(int s, int k, const std::vector<SparseVec>& images, Accumulator& acc) const {
    if (target_act_) {
      for (const auto& [i, c] : images[s]) {
        for (const auto& [j, x] : (*target_act_)[k][i]) F_.sub_mul(acc.ref(j), -c, x);
      }
    } else {
      for (const auto& [idx, c] : images[s]) {
        int t = idx / L_, l = idx % L_;
        for (const auto& [j, x] : A_->product(k, l)) F_.sub_mul(acc.ref(t * L_ + j), -c, x);
      }
    }
    return acc.take();
  }

  AlgPtr A_;
  FieldSpec F_;
  int L_;
  const std::vector<Degree>& target_degrees_;
  const std::vector<std::vector<SparseVec>>* target_act_;
};

std::vector<Degree> free_degrees(const AlgPtr& a, const std::vector<Degree>& gens) {
  std::vector<Degree> out;
  for (const auto& d : gens) {
    for (int k = 0; k < a->length(); ++k) out.push_back(degree_add(d, a->basis_degree(k)));
  }
  return out;
}

}  // namespace

bool Resolution::is_minimal() const {
  if (!algebra) return false;
  const int L = algebra->length();
  for (std::size_t i = 1; i < maps.size(); ++i) {
    for (const auto& v : maps[i]) {
      for (const auto& e : v) {
        if (e.first % L == 0) return false;
      }
    }
  }
  return true;
}

Resolution minimal_resolution(const ModRep& m, int n, const ResolutionOptions& opt) {
  if (n < 0) throw UnsupportedInput("resolution length must be nonnegative");
  const AlgPtr& A = m.algebra();
  const int L = A->length();
  Resolution res;
  res.algebra = A;
  res.trunc = n;

  std::vector<Degree> gdeg;
  std::vector<SparseVec> gimg;
  for (int i : m.minimal_generators()) {
    gdeg.push_back(m.degrees()[i]);
    gimg.push_back(unit(i));
  }
  res.betti.push_back(static_cast<std::int64_t>(gdeg.size()));
  res.generator_degrees.push_back(gdeg);
  res.maps.push_back(gimg);

  auto act = basis_action(m);
  std::vector<Degree> target_degrees = m.degrees();
  std::map<Degree, std::int64_t> prev_kernel;
  bool have_prev = false;
  for (int i = 0; i < n; ++i) {
    if (gdeg.empty()) {
      // Zero module from here on.
      if (have_prev && !prev_kernel.empty()) throw CheckFailure("resolution: kernel left uncovered");
      while (static_cast<int>(res.betti.size()) <= n) {
        res.betti.push_back(0);
        res.generator_degrees.emplace_back();
        res.maps.emplace_back();
      }
      break;
    }
    std::int64_t fdim = static_cast<std::int64_t>(gdeg.size()) * L;
    if (fdim > opt.max_free_dim) {
      std::string what = "resolution: free module of dimension " + std::to_string(fdim) + " in homological degree " +
                         std::to_string(i) + " exceeds the ceiling " + std::to_string(opt.max_free_dim);
      if (opt.throw_on_ceiling) throw LimitExceeded(what);
      res.hit_ceiling = true;
      break;
    }
    StageSolver solver(A, target_degrees, i == 0 ? &act : nullptr);
    StageResult st = solver.run(gdeg, gimg);
    if (have_prev) {
      // image of this stage's map must be the previous kernel, block by block.
      if (st.ranks != prev_kernel) throw CheckFailure("resolution: complex is not exact");
      res.exactness_checks += static_cast<std::int64_t>(prev_kernel.size());
    }
    prev_kernel = st.kernel_dims;
    have_prev = true;
    target_degrees = free_degrees(A, gdeg);
    gdeg = std::move(st.gen_degrees);
    gimg = std::move(st.gen_images);
    res.betti.push_back(static_cast<std::int64_t>(gdeg.size()));
    res.generator_degrees.push_back(gdeg);
    res.maps.push_back(gimg);
  }
  res.computed_to = static_cast<int>(res.betti.size()) - 1;
  if (!res.is_minimal()) throw CheckFailure("resolution: a differential has a unit entry");
  return res;
}

std::vector<std::int64_t> ext_dims(const ModRep& m, const ModRep& n, int bound, const ResolutionOptions& opt) {
  if (!same_algebra(*m.algebra(), *n.algebra())) throw StructuralError("Ext between modules over different algebras");
  ResolutionOptions o = opt;
  o.throw_on_ceiling = true;
  Resolution res = minimal_resolution(m, bound + 1, o);
  return ext_dims(res, m, n, bound);
}

std::vector<std::int64_t> ext_dims(const Resolution& res, const ModRep& m, const ModRep& n, int bound) {
  if (res.computed_to < bound + 1) throw LimitExceeded("ext_dims: resolution is too short for the requested bound");
  if (!same_algebra(*res.algebra, *m.algebra()) || !same_algebra(*m.algebra(), *n.algebra())) {
    throw StructuralError("Ext between modules over different algebras");
  }
  const AlgPtr& A = res.algebra;
  const FieldSpec& F = A->field();
  const int L = A->length();
  const int DN = n.dim();
  auto actN = basis_action(n);

  // Hom(F_i, N) has basis (s, c): e_s -> w_c, index s * DN + c, of shift
  // deg w_c - deg e_s; the induced maps preserve the shift.
  auto shifts = [&](int i) {
    std::vector<Degree> d;
    for (const auto& gd : res.generator_degrees[i]) {
      for (int c = 0; c < DN; ++c) d.push_back(degree_sub(n.degrees()[c], gd));
    }
    return d;
  };
  // rank of Hom(d_j, N): Hom(F_{j-1}, N) -> Hom(F_j, N).
  auto cochain_rank = [&](int j) -> std::int64_t {
    const auto& dj = res.maps[j];
    const std::int64_t nprev = res.betti[j - 1];
    if (dj.empty() || nprev == 0 || DN == 0) return 0;
    // rev[s] = (t, k, coefficient) with e_s b_k appearing in d(e_t).
    std::vector<std::vector<std::tuple<int, int, Scalar>>> rev(nprev);
    for (std::size_t t = 0; t < dj.size(); ++t) {
      for (const auto& [idx, c] : dj[t]) rev[idx / L].emplace_back(static_cast<int>(t), idx % L, c);
    }
    Blocks tb = group_by_degree(shifts(j));
    std::vector<Degree> src = shifts(j - 1);
    Blocks sb = group_by_degree(src);
    std::int64_t total = 0;
    Accumulator acc(static_cast<int>(res.betti[j]) * DN);
    for (const auto& [sigma, members] : sb.members) {
      auto tit = tb.members.find(sigma);
      if (tit == tb.members.end()) continue;
      Echelon ech(F, static_cast<int>(tit->second.size()));
      for (int u : members) {
        int s = u / DN, c = u % DN;
        for (const auto& [t, k, coef] : rev[s]) {
          for (const auto& [cp, y] : actN[k][c]) F.sub_mul(acc.ref(t * DN + cp), -coef, y);
        }
        SparseVec img = acc.take();
        if (img.empty()) continue;
        SparseVec loc;
        for (const auto& [idx, x] : img) loc.emplace_back(tb.local[idx], x);
        std::sort(loc.begin(), loc.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        ech.insert(loc);
      }
      total += ech.rank();
    }
    return total;
  };

  std::vector<std::int64_t> out;
  std::int64_t rank_in = 0;  // rank of the map into Hom(F_i, N)
  for (int i = 0; i <= bound; ++i) {
    std::int64_t rank_out = cochain_rank(i + 1);
    out.push_back(res.betti[i] * DN - rank_in - rank_out);
    rank_in = rank_out;
  }
  return out;
}

SeriesTrunc poincare_series(const AlgPtr& a, int n, const ResolutionOptions& opt) {
  ResolutionOptions o = opt;
  o.throw_on_ceiling = true;
  return SeriesTrunc::from_ints(minimal_resolution(residue_field(a), n, o).betti, n);
}

SeriesTrunc bass_series(const AlgPtr& a, int n, const ResolutionOptions& opt) {
  ResolutionOptions o = opt;
  o.throw_on_ceiling = true;
  return SeriesTrunc::from_ints(minimal_resolution(dualizing_module(a), n, o).betti, n);
}

SeriesTrunc bass_series_by_ext(const AlgPtr& a, int n, const ResolutionOptions& opt) {
  return SeriesTrunc::from_ints(ext_dims(residue_field(a), free_module(a), n, opt), n);
}

SemidualizingReport is_semidualizing(const ModRep& c, int bound, const ResolutionOptions& opt) {
  const AlgPtr& A = c.algebra();
  const int L = A->length();
  const int D = c.dim();
  SemidualizingReport rep;
  rep.bound = bound;
  rep.hom_dim = hom_dim(c, c);
  // a -> (multiplication by a), flattened column by column.
  auto act = basis_action(c);
  std::vector<SparseVec> flat;
  for (int k = 0; k < L; ++k) {
    SparseVec v;
    for (int i = 0; i < D; ++i) {
      for (const auto& [j, x] : act[k][i]) v.emplace_back(i * D + j, x);
    }
    flat.push_back(std::move(v));
  }
  rep.nat_map_injective = sparse_rank(flat, std::max(D * D, 1), A->field()) == L;
  if (!rep.nat_map_injective || rep.hom_dim != L) return rep;
  rep.ext = ext_dims(c, c, bound, opt);
  rep.verdict = std::all_of(rep.ext.begin() + 1, rep.ext.end(), [](std::int64_t e) { return e == 0; });
  return rep;
}

}  // namespace fiberlab
