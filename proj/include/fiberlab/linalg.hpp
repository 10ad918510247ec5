#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fiberlab/field.hpp"
#include "fiberlab/poly.hpp"

namespace fiberlab {

/// Sparse vector: (index, nonzero value) pairs sorted by index.
using SparseVec = std::vector<std::pair<int, Scalar>>;

/// Dense accumulator over a fixed ambient dimension that remembers which
/// entries were touched, so clearing costs only the support.
class Accumulator {
 public:
  explicit Accumulator(int dim = 0) : values_(dim), present_(dim, 0) {}
  void resize(int dim);
  int dim() const { return static_cast<int>(values_.size()); }

  void add(int i, const Scalar& v);
  /// this += c * v.
  void axpy(const Scalar& c, const SparseVec& v, const FieldSpec& F);
  void load(const SparseVec& v);
  /// Extracts the nonzero entries (sorted) and clears.
  SparseVec take();
  void clear();
  Scalar& at(int i) { return values_[i]; }
  /// Entry i, marked as touched.
  Scalar& ref(int i) {
    touch(i);
    return values_[i];
  }
  bool touched(int i) const { return present_[i] != 0; }
  const std::vector<int>& support() const { return support_; }

 private:
  void touch(int i) {
    if (!present_[i]) {
      present_[i] = 1;
      support_.push_back(i);
    }
  }

  std::vector<Scalar> values_;
  std::vector<char> present_;
  std::vector<int> support_;
};

/// Incremental echelon form over the ambient index space. Each stored pivot
/// vector has leading (smallest) index equal to its pivot and value 1 there.
/// With tracking enabled, every inserted vector carries a tag and a dependent
/// insertion yields the relation among tags that produced zero.
class Echelon {
 public:
  Echelon(FieldSpec field, int ambient_dim, bool track = false);

  int rank() const { return static_cast<int>(pivots_.size()); }
  int ambient_dim() const { return acc_.dim(); }

  /// Reduces v modulo the stored pivots (leading-term reduction only).
  SparseVec reduce(const SparseVec& v);
  bool in_span(const SparseVec& v) { return reduce(v).empty(); }

  /// Inserts v. Returns true if v was independent. When tracking, a dependent
  /// v sets *relation to the combination of tags summing to zero; the
  /// coefficient of `tag` in it is 1.
  bool insert(const SparseVec& v, int tag = -1, SparseVec* relation = nullptr);

  /// Pivot indices in insertion order.
  const std::vector<int>& pivot_indices() const { return pivot_order_; }

 private:
  struct Pivot {
    SparseVec vec;
    SparseVec combo;  // tags, only when tracking
  };

  int reduce_into_acc(const SparseVec& v, bool with_combo);
  void grow_combo(int dim);

  FieldSpec field_;
  bool track_;
  std::vector<int> slot_;  // ambient index -> pivot slot or -1
  std::vector<Pivot> pivots_;
  std::vector<int> pivot_order_;
  Accumulator acc_;
  Accumulator combo_acc_;
};

/// Basis of the solution space of the homogeneous system whose equations are
/// `rows` (sparse over ncols unknowns). Each basis vector has coefficient 1 at
/// its own free column and 0 at every other free column.
std::vector<SparseVec> sparse_nullspace(const std::vector<SparseVec>& rows, int ncols, const FieldSpec& field,
                                        std::vector<int>* free_columns = nullptr);

/// Rank of a family of sparse vectors.
int sparse_rank(const std::vector<SparseVec>& vectors, int ambient_dim, const FieldSpec& field);

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  static Matrix identity(int n);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b, const FieldSpec& F);
int rank(Matrix m, const FieldSpec& F);
Scalar determinant(Matrix m, const FieldSpec& F);
/// Null space basis of m (vectors of length m.cols()).
std::vector<std::vector<Scalar>> kernel(const Matrix& m, const FieldSpec& F);

/// Division-free determinant (Berkowitz) of a square matrix of polynomials.
Poly berkowitz_determinant(const std::vector<std::vector<Poly>>& m, const RingPtr& ring);

}  // namespace fiberlab
