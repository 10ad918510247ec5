#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiberlab/artin.hpp"
#include "fiberlab/groebner.hpp"
#include "fiberlab/profile.hpp"
#include "fiberlab/series.hpp"

namespace fiberlab {

/// The fiber product S x_k T of two local rings with residue field k, given
/// by their profiles. Neither factor may be k itself.
struct FiberSpec {
  RingProfile left;   // S
  RingProfile right;  // T

  FiberSpec(RingProfile s, RingProfile t);
  FiberSpec swapped() const { return FiberSpec(right, left); }
};

struct DimDepth {
  int dim = 0;
  int depth = 0;
  bool cm = false;
};

/// dim = max, depth = min(depth S, depth T, 1); CM iff both CM of equal
/// dimension at most 1.
DimDepth fiber_dim_depth(const FiberSpec& f);

/// Which row of the type table applies.
enum class FiberCase { BothSingular, OneRegular, BothRegular };
FiberCase fiber_case(const FiberSpec& f);

/// Type of S x_k T from the case table on singularity and depth.
std::int64_t fiber_type(const FiberSpec& f);
std::int64_t fiber_multiplicity(const FiberSpec& f);
int fiber_edim(const FiberSpec& f);
/// P^R_k = PS PT / (PT + PS - PS PT).
SeriesTrunc fiber_poincare_k(const SeriesTrunc& ps, const SeriesTrunc& pt);
/// Bass series of S x_k T through degree n (or less if the factor series
/// are shorter). Cross-checks the coefficient at depth R against fiber_type.
SeriesTrunc fiber_bass_series(const FiberSpec& f, int n);

/// Presentation of S x_k T: IS + IT + (x z : x in X, z in Z) over the union
/// of the variable sets.
IdealSpec fiber_present(const IdealSpec& is, const IdealSpec& it);

/// Every invariant the fiber calculus yields, with provenance.
RingProfile fiber_profile(const FiberSpec& f, int n);

struct GorensteinVerdict {
  bool gorenstein = false;
  std::string reason;
};

/// Gorenstein iff both factors are regular of dimension 1.
GorensteinVerdict classify_gorenstein_fiber(const FiberSpec& f);

struct CmTypeVerdict {
  bool finite_cm_type = false;
  /// "ii", "iii", "1", "2" or "none".
  std::string matched;
  std::string reason;
  /// Normal form over an algebraically closed field of characteristic 0,
  /// when one applies: "xz" or "x^2-y^n,xz,yz" with curve_exponent n.
  std::optional<std::string> normal_form;
  std::optional<int> curve_exponent;
};

/// CM finite-type test for fiber products: (ii) a dimension-1 analytically
/// unramified hypersurface of multiplicity <= 2 against a DVR, and (iii)
/// dimension-1 CM factors of finite type with e(R) <= 3. Both are evaluated
/// and must agree. Missing flags raise IncompleteProfile.
CmTypeVerdict classify_fcmt_cm(const FiberSpec& f);

/// Finite-type test for fiber products of dimension at most 1: (1) S of
/// dimension 1 and finite type with T artinian, or (2) both of dimension 1
/// and finite type with e(S) <= 2 and e(T) = 1.
CmTypeVerdict classify_fcmt_depth_le1(const FiberSpec& f);

struct NilMultiplicity {
  std::int64_t e = 0;
  std::int64_t e_reduced = 0;
  bool equal = false;
  /// m^i meets the nilradical trivially for large i, witnessed by
  /// rad(I) contained in I : m^infinity.
  bool certified = false;
};

/// Multiplicities of k[x]/I and of its reduction, for a one-dimensional
/// monomial ideal. A certified ideal with unequal multiplicities raises
/// CheckFailure.
NilMultiplicity nil_multiplicity_check(const IdealSpec& ideal, int n_max);

/// I : m^infinity for a monomial ideal.
std::vector<Monomial> monomial_saturation(const std::vector<Monomial>& gens, int nvars);

/// CM with e <= 8: at most two semidualizing modules are guaranteed.
bool small_mult_semidualizing_flag(const RingProfile& p);

struct ProofInvariant {
  int length = 0;
  int edim = 0;
  int m2_dim = 0;
  int type = 0;
  bool socle_in_m2 = false;
  /// edim = length - 1 - dim m^2.
  bool identity_holds = false;
  /// length <= 8, socle in m^2 and type >= 4.
  bool hypothesis = false;
  /// hypothesis implies edim <= 3.
  bool implication_holds = false;
};

ProofInvariant proposition_proof_invariant(const ArtinAlgebra& a);

}  // namespace fiberlab
