#pragma once

#include <cstdint>
#include <vector>

#include "fiberlab/artin.hpp"
#include "fiberlab/series.hpp"

namespace fiberlab {

struct ResolutionOptions {
  /// Ceiling on the vector-space dimension of a free module whose syzygies
  /// are computed.
  std::int64_t max_free_dim = 4'000'000;
  /// On hitting the ceiling: throw LimitExceeded (true) or stop early and
  /// report the reached degree (false).
  bool throw_on_ceiling = true;
};

/// Minimal graded free resolution ... -> F_1 -> F_0 -> M, computed stage by
/// stage as minimal generators of kernels.
struct Resolution {
  AlgPtr algebra;
  int trunc = 0;            // requested
  int computed_to = 0;      // betti[0..computed_to] are exact
  bool hit_ceiling = false;
  std::vector<std::int64_t> betti;
  /// generator_degrees[i][s]: degree of the s-th generator of F_i.
  std::vector<std::vector<Degree>> generator_degrees;
  /// maps[0][s] = image of generator s of F_0 in M; for i >= 1,
  /// maps[i][s] = d_i(e_s) in F_{i-1} over the basis (t, k) -> t * length + k.
  std::vector<std::vector<SparseVec>> maps;
  /// Degree blocks where image(d_{i+1}) = ker(d_i) was confirmed by rank.
  std::int64_t exactness_checks = 0;

  /// No unit entries in d_i for i >= 1.
  bool is_minimal() const;
};

Resolution minimal_resolution(const ModRep& m, int n, const ResolutionOptions& options = {});

/// dim Ext^i(M, N) for i = 0..bound.
std::vector<std::int64_t> ext_dims(const ModRep& m, const ModRep& n, int bound,
                                   const ResolutionOptions& options = {});
/// Same, reusing a resolution of M computed at least to bound + 1.
std::vector<std::int64_t> ext_dims(const Resolution& res, const ModRep& m, const ModRep& n, int bound);

/// Poincare series of the residue field through degree n.
SeriesTrunc poincare_series(const AlgPtr& a, int n, const ResolutionOptions& options = {});
/// Bass series of A through degree n, as the Betti numbers of the dualizing
/// module (Matlis duality: Ext^i(k, A) and Ext^i(omega, k) have equal rank).
SeriesTrunc bass_series(const AlgPtr& a, int n, const ResolutionOptions& options = {});
/// Bass numbers straight from the definition, dim Ext^i(k, A).
SeriesTrunc bass_series_by_ext(const AlgPtr& a, int n, const ResolutionOptions& options = {});

struct SemidualizingReport {
  bool verdict = false;  // holds up to `bound` only
  int bound = 0;
  int hom_dim = 0;
  bool nat_map_injective = false;
  std::vector<std::int64_t> ext;  // dim Ext^i(C, C), i = 0..bound (empty if not reached)
};

/// A -> Hom(C, C) injective, dim Hom(C, C) = length(A), and Ext^i(C, C) = 0
/// for 1 <= i <= bound.
SemidualizingReport is_semidualizing(const ModRep& c, int bound, const ResolutionOptions& options = {});

}  // namespace fiberlab
