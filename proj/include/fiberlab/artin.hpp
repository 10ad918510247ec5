#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiberlab/groebner.hpp"
#include "fiberlab/linalg.hpp"

namespace fiberlab {

/// Multidegree in Z^r; r is the grading rank of the algebra (0 = ungraded).
using Degree = std::vector<int>;

Degree degree_add(const Degree& a, const Degree& b);
Degree degree_sub(const Degree& a, const Degree& b);
Degree degree_neg(const Degree& a);

/// Finite-dimensional commutative local algebra generated by named elements
/// x_0..x_{g-1}. The basis consists of monomials in the generators
/// (basis[0] = 1) closed under division, so every basis element b_k with
/// k > 0 is x_{parent_gen(k)} * b_{parent(k)}.
class ArtinAlgebra {
 public:
  const FieldSpec& field() const { return field_; }
  int length() const { return static_cast<int>(basis_.size()); }
  int ngens() const { return static_cast<int>(gen_names_.size()); }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::string basis_name(int k) const;

  /// b_i * b_j.
  const SparseVec& product(int i, int j) const { return table_[static_cast<std::size_t>(i) * length() + j]; }
  /// x_g * b_k.
  const SparseVec& gen_times(int g, int k) const { return gen_mul_[g][k]; }
  int parent(int k) const { return parent_[k]; }
  int parent_gen(int k) const { return parent_gen_[k]; }
  /// Generators whose product (applied right to left) is b_k.
  const std::vector<int>& chain(int k) const { return chain_[k]; }

  int grading_rank() const { return static_cast<int>(gen_degrees_.empty() ? 0 : gen_degrees_[0].size()); }
  const Degree& generator_degree(int g) const { return gen_degrees_[g]; }
  const Degree& basis_degree(int k) const { return basis_degrees_[k]; }
  /// Standard total degree of b_k.
  int total_degree_of(int k) const { return total_degree(basis_[k]); }

  /// Products of two algebra elements given in basis coordinates.
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

  /// Human-readable origin ("k[x,y]/(x^2, x*y, y^2)", "A (x) B", ...).
  const std::string& description() const { return description_; }

  /// The image of x_g in basis coordinates.
  const SparseVec& generator_element(int g) const { return gen_elements_[g]; }

  /// Builds from explicit data and validates associativity, commutativity,
  /// unitality, locality and homogeneity. Used by the constructors below.
  static std::shared_ptr<const ArtinAlgebra> create(FieldSpec field, std::vector<std::string> gen_names,
                                                    std::vector<SparseVec> gen_elements, std::vector<Monomial> basis,
                                                    std::vector<SparseVec> table, std::vector<Degree> gen_degrees,
                                                    std::string description);

 private:
  ArtinAlgebra() = default;
  void finish();

  FieldSpec field_;
  std::vector<std::string> gen_names_;
  std::vector<Monomial> basis_;
  std::vector<SparseVec> table_;
  std::vector<Degree> gen_degrees_;
  std::vector<Degree> basis_degrees_;
  std::vector<std::vector<SparseVec>> gen_mul_;
  std::vector<SparseVec> gen_elements_;
  std::vector<int> parent_;
  std::vector<int> parent_gen_;
  std::vector<std::vector<int>> chain_;
  std::string description_;
};

using AlgPtr = std::shared_ptr<const ArtinAlgebra>;

bool same_algebra(const ArtinAlgebra& a, const ArtinAlgebra& b);

/// Finest multigrading of k[x]/I visible on a reduced Groebner basis: a basis
/// of the integer solutions d of d . (m - m') = 0 for every pair of terms of
/// every basis element. Returns one degree vector per variable.
std::vector<Degree> detect_multigrading(const GroebnerBasis& g);

AlgPtr quotient_algebra(const IdealSpec& ideal);
AlgPtr quotient_algebra(const GroebnerBasis& g);
/// The field itself as a zero-generator algebra.
AlgPtr field_algebra(const FieldSpec& field);
AlgPtr tensor_algebra(const AlgPtr& a, const AlgPtr& b);
/// Same basis and structure constants over Q((tag)).
AlgPtr base_change_fraction_field(const AlgPtr& a, const std::string& tag);

struct LocalInvariants {
  int length = 0;
  int edim = 0;
  int socle_dim = 0;  // the type
  int loewy_length = 0;
  bool gorenstein = false;
  std::vector<int> m_power_dims;  // dim m^j for j = 0.. until zero
};

LocalInvariants local_invariants(const ArtinAlgebra& a);
/// Socle as the common kernel of the generator multiplications.
std::vector<SparseVec> socle_by_generators(const ArtinAlgebra& a);
/// Socle as the common kernel of multiplication by every element of m.
std::vector<SparseVec> socle_by_maximal_ideal(const ArtinAlgebra& a);
/// Basis of m^j as vectors in the algebra basis.
std::vector<SparseVec> maximal_ideal_power(const ArtinAlgebra& a, int j);

/// Finitely generated module: a graded vector space with one action matrix
/// per algebra generator, stored by columns (action(g)[i] = x_g . v_i).
class ModRep {
 public:
  ModRep(AlgPtr algebra, std::vector<Degree> degrees, std::vector<std::vector<SparseVec>> action,
         bool validate = true);

  const AlgPtr& algebra() const { return alg_; }
  int dim() const { return static_cast<int>(degrees_.size()); }
  const std::vector<Degree>& degrees() const { return degrees_; }
  const std::vector<SparseVec>& action(int g) const { return action_[g]; }

  SparseVec apply_gen(int g, const SparseVec& v) const;
  /// b_k . v.
  SparseVec apply_basis(int k, const SparseVec& v) const;
  /// a . v for an algebra element a in basis coordinates.
  SparseVec apply(const SparseVec& a, const SparseVec& v) const;

  /// Number of minimal generators, dim M / mM.
  int mu() const { return static_cast<int>(min_gens_.size()); }
  /// Basis indices whose classes form a basis of M / mM (greedy, in index
  /// order after the span of mM).
  const std::vector<int>& minimal_generators() const { return min_gens_; }
  /// Spanning vectors of mM.
  std::vector<SparseVec> maximal_ideal_image() const;
  int socle_dim() const;

  /// Re-checks that the actions define a module (commuting, satisfying all
  /// relations). Throws StructuralError otherwise.
  void validate() const;

 private:
  AlgPtr alg_;
  std::vector<Degree> degrees_;
  std::vector<std::vector<SparseVec>> action_;
  std::vector<int> min_gens_;
};

ModRep free_module(const AlgPtr& a, int rank = 1);
ModRep residue_field(const AlgPtr& a);
/// Linear dual Hom_k(M, k) with the contragredient action.
ModRep linear_dual(const ModRep& m);
/// The dualizing module of an artinian algebra: the linear dual of A.
ModRep dualizing_module(const AlgPtr& a);
/// M (x)_k N over tensor_algebra(A, B). Pass the tensor algebra to share it
/// among several modules; otherwise a new one is built.
ModRep tensor_module(const ModRep& m, const ModRep& n, const AlgPtr& ab = nullptr);

/// Hom_A(M, N): each element is a sparse vector over index i * dim N + j,
/// the coefficient of w_j in phi(v_i).
struct HomSpace {
  int source_dim = 0;
  int target_dim = 0;
  std::vector<SparseVec> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

HomSpace hom_space(const ModRep& m, const ModRep& n);
int hom_dim(const ModRep& m, const ModRep& n);

struct IsoOptions {
  std::uint64_t seed = 20240607;
  int random_tries = 8;
  /// Symbolic determinant fallback limits.
  int symbolic_max_dim = 8;
  int symbolic_max_params = 6;
};

/// Decides M isomorphic to N. Refutes by invariants (dimension, mu, socle,
/// Hom dimensions against A, k, the dualizing module and each other),
/// confirms by an invertible element of Hom(M, N) found by seeded random
/// combination, falls back to a symbolic determinant, and otherwise throws
/// Inconclusive.
bool is_isomorphic(const ModRep& m, const ModRep& n, const IsoOptions& options = {});

}  // namespace fiberlab
