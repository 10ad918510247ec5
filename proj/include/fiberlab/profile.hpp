#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fiberlab/artin.hpp"
#include "fiberlab/groebner.hpp"
#include "fiberlab/series.hpp"

namespace fiberlab {

enum class Provenance { Computed, Declared };

/// Where a profile field came from; `rule` names the computation or says
/// "declared".
struct FieldSource {
  Provenance kind = Provenance::Computed;
  std::string rule;
};

/// Invariants of a local ring. Every field is optional: what cannot be
/// decided from a presentation stays empty until declared, and consumers
/// raise IncompleteProfile instead of guessing.
struct RingProfile {
  std::string name;

  std::optional<int> dim;
  std::optional<int> depth;
  std::optional<int> edim;
  std::optional<std::int64_t> type;
  std::optional<std::int64_t> multiplicity;
  std::optional<std::int64_t> length;  // artinian only
  std::optional<SeriesTrunc> poincare_k;
  std::optional<SeriesTrunc> bass;

  std::optional<bool> regular;
  std::optional<bool> gorenstein;
  std::optional<bool> cm;
  std::optional<bool> analytically_unramified;
  std::optional<bool> finite_cm_type;

  /// Recognized normal form a*x^2 + b*y^n of a plane curve, with its n.
  std::optional<int> curve_exponent;

  std::map<std::string, FieldSource> provenance;

  std::optional<bool> singular() const;
  std::optional<int> ecodepth() const;
  /// ecodepth <= 1.
  std::optional<bool> hypersurface() const;

  /// Record a computed field's rule.
  void computed(const std::string& field, const std::string& rule);
  /// Set a boolean flag from a declaration. A declaration disagreeing with
  /// a computed value raises InconsistentInput.
  void declare(const std::string& flag, bool value);

  /// Fills implications (regular => Gorenstein => CM) and checks the
  /// relations between fields. Throws InconsistentInput on a contradiction.
  void close();
};

/// Names of the declarable flags.
const std::vector<std::string>& declarable_flags();

/// A local ring k[[vars, cone_vars]] / (ideal), localized at the origin.
/// Cone variables are formally adjoined regular variables: S = core[[Y]].
struct RingPresentation {
  std::string name;
  IdealSpec ideal;
  std::vector<std::string> cone_vars;
  std::map<std::string, bool> declared;
};

/// The ideal in the ring with the cone variables appended.
IdealSpec full_ideal(const RingPresentation& p);

struct ProfileOptions {
  int trunc = 10;
  int hilbert_max = 12;
  /// Resolutions stop early past this free-module dimension; the series
  /// then carry the reached truncation.
  std::int64_t max_free_dim = 250'000;
};

/// Invariants of an artinian algebra: length, edim, type, Poincare and Bass
/// series (possibly truncated below options.trunc at the ceiling).
RingProfile artinian_profile(const AlgPtr& a, const ProfileOptions& options = {}, const std::string& name = "");

/// Computes what the presentation determines (cofinite, zero, principal,
/// monomial and one-dimensional homogeneous ideals), applies the cone
/// variables, then the declared flags.
RingProfile compute_profile(const RingPresentation& p, const ProfileOptions& options = {});

/// Poincare series of k through degree n with a dimension ceiling: stops
/// early instead of throwing, truncating the result at the reached degree.
SeriesTrunc bounded_poincare_series(const AlgPtr& a, int n, std::int64_t max_free_dim);
SeriesTrunc bounded_bass_series(const AlgPtr& a, int n, std::int64_t max_free_dim);

}  // namespace fiberlab
