#include "fiberlab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "fiberlab/errors.hpp"

namespace fiberlab {

void Accumulator::resize(int dim) {
  clear();
  values_.resize(dim);
  present_.assign(dim, 0);
}

void Accumulator::add(int i, const Scalar& v) {
  touch(i);
  values_[i] += v;
}

void Accumulator::axpy(const Scalar& c, const SparseVec& v, const FieldSpec& F) {
  for (const auto& [i, x] : v) {
    touch(i);
    F.sub_mul(values_[i], -c, x);
  }
}

void Accumulator::load(const SparseVec& v) {
  for (const auto& [i, x] : v) {
    touch(i);
    values_[i] = x;
  }
}

SparseVec Accumulator::take() {
  std::sort(support_.begin(), support_.end());
  SparseVec out;
  for (int i : support_) {
    if (!is_zero(values_[i])) out.emplace_back(i, values_[i]);
    values_[i] = 0;
    present_[i] = 0;
  }
  support_.clear();
  return out;
}

void Accumulator::clear() {
  for (int i : support_) {
    values_[i] = 0;
    present_[i] = 0;
  }
  support_.clear();
}

Echelon::Echelon(FieldSpec field, int ambient_dim, bool track)
    : field_(std::move(field)), track_(track), slot_(ambient_dim, -1), acc_(ambient_dim) {}

namespace {

using MinHeap = std::priority_queue<int, std::vector<int>, std::greater<int>>;

}  // namespace

void Echelon::grow_combo(int dim) {
  // Keeps the (empty) accumulator state; only called between insertions.
  combo_acc_.resize(std::max(dim, 2 * combo_acc_.dim()));
}

SparseVec Echelon::reduce(const SparseVec& v) {
  reduce_into_acc(v, false);
  return acc_.take();
}

// Leading-term reduction: eliminates pivot indices in increasing order and
// stops at the first surviving index without a pivot. Returns that index, or
// -1 when v reduced to zero. The residual stays in acc_.
int Echelon::reduce_into_acc(const SparseVec& v, bool with_combo) {
  MinHeap heap;
  for (const auto& [i, x] : v) acc_.add(i, x);
  for (int i : acc_.support()) heap.push(i);
  while (!heap.empty()) {
    int i = heap.top();
    heap.pop();
    if (is_zero(acc_.at(i))) continue;
    int s = slot_[i];
    if (s < 0) return i;
    Scalar c = acc_.at(i);
    const Pivot& p = pivots_[s];
    for (const auto& [j, x] : p.vec) {
      if (!acc_.touched(j)) heap.push(j);
      field_.sub_mul(acc_.ref(j), c, x);
    }
    if (with_combo) {
      for (const auto& [j, x] : p.combo) {
        field_.sub_mul(combo_acc_.ref(j), c, x);
      }
    }
  }
  return -1;
}

bool Echelon::insert(const SparseVec& v, int tag, SparseVec* relation) {
  if (track_) {
    if (tag < 0) throw StructuralError("Echelon: tracked insertion needs a tag");
    if (tag >= combo_acc_.dim()) grow_combo(tag + 1);
    combo_acc_.add(tag, Scalar(1));
  }
  int lead = reduce_into_acc(v, track_);
  if (lead < 0) {
    acc_.clear();
    if (track_) {
      SparseVec rel = combo_acc_.take();
      if (relation) *relation = std::move(rel);
    }
    return false;
  }
  Scalar inv = field_.inv(acc_.at(lead));
  Pivot p;
  p.vec = acc_.take();
  for (auto& e : p.vec) e.second = field_.mul(e.second, inv);
  if (track_) {
    p.combo = combo_acc_.take();
    for (auto& e : p.combo) e.second = field_.mul(e.second, inv);
  }
  slot_[lead] = static_cast<int>(pivots_.size());
  pivots_.push_back(std::move(p));
  pivot_order_.push_back(lead);
  return true;
}

std::vector<SparseVec> sparse_nullspace(const std::vector<SparseVec>& rows, int ncols, const FieldSpec& F,
                                        std::vector<int>* free_columns) {
  // Echelon form of the rows indexed by leading column, then back
  // substitution per free column.
  std::vector<SparseVec> piv(ncols);
  std::vector<char> is_pivot(ncols, 0);
  Accumulator acc(ncols);
  for (const auto& r : rows) {
    acc.load(r);
    MinHeap heap;
    for (int i : acc.support()) heap.push(i);
    int lead = -1;
    while (!heap.empty()) {
      int i = heap.top();
      heap.pop();
      if (is_zero(acc.at(i))) continue;
      if (!is_pivot[i]) {
        lead = i;
        break;
      }
      Scalar c = acc.at(i);
      for (const auto& [j, x] : piv[i]) {
        if (!acc.touched(j)) heap.push(j);
        F.sub_mul(acc.ref(j), c, x);
      }
    }
    if (lead < 0) {
      acc.clear();
      continue;
    }
    Scalar inv = F.inv(acc.at(lead));
    SparseVec vec = acc.take();
    for (auto& e : vec) e.second = F.mul(e.second, inv);
    piv[lead] = std::move(vec);
    is_pivot[lead] = 1;
  }
  std::vector<int> pivots_desc;
  std::vector<int> frees;
  for (int c = ncols - 1; c >= 0; --c) {
    if (is_pivot[c]) pivots_desc.push_back(c);
  }
  for (int c = 0; c < ncols; ++c) {
    if (!is_pivot[c]) frees.push_back(c);
  }
  std::vector<SparseVec> basis;
  std::vector<Scalar> x(ncols);
  for (int f : frees) {
    std::fill(x.begin(), x.end(), Scalar(0));
    x[f] = 1;
    for (int p : pivots_desc) {
      if (p > f) continue;  // entries of pivot rows lie at indices >= p
      Scalar s = 0;
      for (const auto& [j, v] : piv[p]) {
        if (j != p && !is_zero(x[j])) F.sub_mul(s, v, x[j]);
      }
      x[p] = s;
    }
    SparseVec sol;
    for (int c = 0; c < ncols; ++c) {
      if (!is_zero(x[c])) sol.emplace_back(c, x[c]);
    }
    basis.push_back(std::move(sol));
  }
  if (free_columns) *free_columns = frees;
  return basis;
}

int sparse_rank(const std::vector<SparseVec>& vectors, int ambient_dim, const FieldSpec& F) {
  Echelon e(F, ambient_dim);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, const FieldSpec& F) {
  if (a.cols() != b.rows()) throw StructuralError("mat_mul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) c(i, j) = F.add(c(i, j), F.mul(a(i, k), b(k, j)));
      }
    }
  }
  return c;
}

namespace {

// In-place row echelon; returns pivot columns.
std::vector<int> echelonize(Matrix& m, const FieldSpec& F, int* swaps = nullptr) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (swaps) ++*swaps;
    }
    Scalar inv = F.inv(m(r, c));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      Scalar f = F.mul(m(i, c), inv);
      for (int j = c; j < m.cols(); ++j) F.sub_mul(m(i, j), f, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(Matrix m, const FieldSpec& F) { return static_cast<int>(echelonize(m, F).size()); }

Scalar determinant(Matrix m, const FieldSpec& F) {
  if (m.rows() != m.cols()) throw StructuralError("determinant of a non-square matrix");
  int swaps = 0;
  auto piv = echelonize(m, F, &swaps);
  if (static_cast<int>(piv.size()) < m.rows()) return Scalar(0);
  Scalar d = swaps % 2 ? Scalar(-1) : Scalar(1);
  for (int i = 0; i < m.rows(); ++i) d = F.mul(d, m(i, i));
  return F.normalize(d);
}

std::vector<std::vector<Scalar>> kernel(const Matrix& m, const FieldSpec& F) {
  std::vector<SparseVec> rows;
  for (int i = 0; i < m.rows(); ++i) {
    SparseVec r;
    for (int j = 0; j < m.cols(); ++j) {
      if (!is_zero(m(i, j))) r.emplace_back(j, m(i, j));
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<Scalar>> out;
  for (const auto& v : sparse_nullspace(rows, m.cols(), F)) {
    std::vector<Scalar> d(m.cols());
    for (const auto& [j, x] : v) d[j] = x;
    out.push_back(std::move(d));
  }
  return out;
}

Poly berkowitz_determinant(const std::vector<std::vector<Poly>>& a, const RingPtr& ring) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return Poly::constant(ring, Scalar(1));
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw StructuralError("berkowitz: matrix is not square");
  }
  // Characteristic polynomial coefficients of leading principal submatrices,
  // built up one row/column at a time (Toeplitz products).
  std::vector<Poly> c{Poly::constant(ring, Scalar(1)), -a[0][0]};
  for (int r = 1; r < n; ++r) {
    // Partition: A_r = [[M, col], [row, a_rr]] where M is r x r.
    std::vector<Poly> T(r + 2, Poly(ring));
    T[0] = Poly::constant(ring, Scalar(-1));
    T[1] = a[r][r];
    // v_k = row * M^{k} * col for k = 0..r-1.
    std::vector<Poly> vec(r, Poly(ring));
    for (int i = 0; i < r; ++i) vec[i] = a[i][r];
    for (int k = 0; k < r; ++k) {
      Poly s(ring);
      for (int i = 0; i < r; ++i) s = s + a[r][i] * vec[i];
      T[k + 2] = s;
      if (k + 1 < r) {
        std::vector<Poly> next(r, Poly(ring));
        for (int i = 0; i < r; ++i) {
          Poly t(ring);
          for (int j = 0; j < r; ++j) t = t + a[i][j] * vec[j];
          next[i] = t;
        }
        vec = std::move(next);
      }
    }
    // New coefficients: lower-triangular Toeplitz matrix of -T applied to c.
    std::vector<Poly> nc(r + 2, Poly(ring));
    for (int i = 0; i < r + 2; ++i) {
      Poly s(ring);
      for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j) s = s + T[i - j] * c[j];
      nc[i] = -s;
    }
    c = std::move(nc);
  }
  // c[k] are coefficients of det(x I - A) from x^n downwards, up to sign
  // conventions: c[n] = (-1)^n det(A) with c[0] = 1.
  Poly det = c[n];
  if (n % 2) det = -det;
  return det;
}

}  // namespace fiberlab
