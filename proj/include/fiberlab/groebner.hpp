#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fiberlab/poly.hpp"

namespace fiberlab {

/// An ideal given by generators; the homogeneous/monomial flags are computed.
class IdealSpec {
 public:
  IdealSpec(RingPtr ring, std::vector<Poly> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return generators_; }
  bool homogeneous() const { return homogeneous_; }
  bool monomial() const { return monomial_; }

  /// Exponent vectors of the generators; requires monomial().
  std::vector<Monomial> monomial_generators() const;
  static IdealSpec from_monomials(RingPtr ring, const std::vector<Monomial>& gens);

 private:
  RingPtr ring_;
  std::vector<Poly> generators_;
  bool homogeneous_ = true;
  bool monomial_ = true;
};

struct BuchbergerOptions {
  /// Ceiling on the number of S-pairs examined.
  std::int64_t max_pairs = 2'000'000;
};

class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Poly> reduced, IdealSpec source);

  /// Reduced basis, monic, sorted by increasing lead monomial.
  const std::vector<Poly>& basis() const { return basis_; }
  const IdealSpec& source() const { return source_; }
  const RingPtr& ring() const { return source_.ring(); }
  MonomialOrder order() const { return ring()->order(); }
  std::vector<Monomial> leads() const;

  /// Unit ideal.
  bool is_unit() const;
  /// Every variable has a pure power among the lead monomials.
  bool cofinite() const;
  /// Upper bound on the degree of a standard monomial of a cofinite ideal.
  int socle_degree_bound() const;

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  bool lead_divisible(const Monomial& m) const;

 private:
  std::vector<Poly> basis_;
  IdealSpec source_;
  std::vector<Monomial> leads_;
};

GroebnerBasis buchberger(const IdealSpec& ideal, const BuchbergerOptions& options = {});

/// All standard monomials of degree <= degree_cap in increasing grevlex
/// order (so 1 comes first). With assert_cofinite, a standard monomial of
/// degree degree_cap + 1 raises NotCofiniteError.
std::vector<Monomial> standard_monomials(const GroebnerBasis& g, int degree_cap, bool assert_cofinite = false);

/// The full standard-monomial basis of a cofinite ideal.
std::vector<Monomial> standard_basis(const GroebnerBasis& g);

/// H[n] = length of ring / (I + m^{n+1}) for n = 0..n_max. I must be
/// homogeneous.
std::vector<std::int64_t> hilbert_function(const IdealSpec& ideal, int n_max);
std::vector<std::int64_t> hilbert_function(const GroebnerBasis& g, int n_max);

/// Integer polynomial, coefficient i at index i.
using IntPoly = std::vector<std::int64_t>;

/// Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x_1..x_n]/J for a
/// monomial ideal J (pivot recursion on variables).
IntPoly hilbert_numerator(const std::vector<Monomial>& gens, int nvars);

struct HilbertAnalysis {
  std::vector<std::int64_t> values;       // H[0..n_max]
  int dimension = 0;                      // Krull dimension of the graded ring
  IntPoly reduced_numerator;              // Q(t) with HS = Q(t)/(1-t)^dim
  std::int64_t multiplicity = 0;          // Q(1)
  std::vector<std::int64_t> differences;  // dim-th difference of H, index n (n >= dim)
  /// The dim-th difference equals its eventual value on at least two
  /// consecutive observed degrees at or past deg Q.
  bool stabilized = false;
};

/// Hilbert function plus exact Hilbert-series data of a homogeneous ideal.
HilbertAnalysis hilbert_analysis(const GroebnerBasis& g, int n_max);

/// Drops generators divisible by another generator; sorted, deduplicated.
std::vector<Monomial> minimalize_monomials(std::vector<Monomial> gens);

IdealSpec monomial_radical(const IdealSpec& ideal);

/// Minimal primes of a monomial ideal as sorted variable-index sets (minimal
/// vertex covers of the generator supports).
std::vector<std::vector<int>> monomial_minimal_primes(const IdealSpec& ideal);
std::vector<std::vector<int>> monomial_minimal_primes(const std::vector<Monomial>& gens, int nvars);

/// Krull dimension of k[x]/I computed from the lead-term ideal.
int krull_dimension(const GroebnerBasis& g);

/// (I : u) for a monomial ideal I and monomial u.
std::vector<Monomial> monomial_colon(const std::vector<Monomial>& gens, const Monomial& u);

}  // namespace fiberlab
