#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fiberlab/artin.hpp"
#include "fiberlab/fiber.hpp"
#include "fiberlab/profile.hpp"

namespace fiberlab {

/// One published invariant value. Booleans are stored as 0/1.
struct ExpectedValue {
  std::string invariant;
  std::int64_t value = 0;
  /// The published statement the value comes from.
  std::string claim;
};

/// A named ring from the constructions: a single presentation, a fiber
/// product of two presentations, or an artinian algebra (the localizations,
/// built over Q((Y))).
struct NamedExample {
  std::string id;  // e.g. "SQ_FIBER(2)"
  std::string description;
  std::optional<RingPresentation> ring;
  std::vector<RingPresentation> factors;  // S, T for fiber products
  AlgPtr algebra;
  std::vector<ExpectedValue> expected;
};

/// Known ids: JS_A, GOR_FIBER, GOR_FIBER_LOC, SQ_CORE, SQ_FIBER,
/// SQ_FIBER_LOC (1 <= n <= 3), NODE, HYPER and CUSP_FIBER (2 <= n <= 12).
const std::vector<std::string>& named_example_ids();
bool example_takes_n(const std::string& id);

/// Assembles the example over Q with the given alpha in the Gorenstein
/// algebra. Unknown ids and n out of range raise UnsupportedInput.
NamedExample build(const std::string& id, std::optional<int> n = std::nullopt, const Scalar& alpha = Scalar(2));

/// The Gorenstein artinian algebra on X1..X5 (length 12 for alpha of
/// infinite multiplicative order).
RingPresentation gorenstein_core(const Scalar& alpha);
/// (X1_i, X2_i)^2 summed over i = 1..n.
RingPresentation square_core(int n);
RingPresentation dvr_presentation(const std::string& var);
/// x^2 - y^n, declared of finite CM type.
RingPresentation plane_curve(int n);

struct HarnessOptions {
  int trunc = 10;
  int ext_bound = 12;
  int hilbert_max = 12;
  Scalar alpha = Scalar(2);
  std::int64_t max_free_dim = 250'000;
};

ProfileOptions profile_options(const HarnessOptions& o);

/// Profile of the example: compute_profile, fiber_profile or
/// artinian_profile. Fiber products of dimension 1 also get a
/// finite_cm_type verdict when the classification is decided.
RingProfile evaluate(const NamedExample& ex, const HarnessOptions& o);

/// Named invariant of a profile as an integer (booleans 0/1); nullopt when
/// the profile leaves it open.
std::optional<std::int64_t> profile_value(const RingProfile& p, const std::string& invariant);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string id;
  std::string expected;
  std::string actual;
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
};

/// Outcome of a harness. `checks` are computed; `paper_asserted` lists the
/// published statements that are reported without being recomputed;
/// `notes` carries unverified preconditions and the bounds actually used.
struct Report {
  std::string harness;
  std::vector<CheckResult> checks;
  std::vector<std::string> paper_asserted;
  std::vector<std::string> notes;
  std::map<std::string, std::int64_t> tallies;

  bool passed() const;
  const CheckResult* first_failure() const;
  /// 0 all pass, 1 a computed mismatch, 3 an inconclusive check.
  int exit_code() const;
  /// Raises CheckFailure naming the first failing check with both values.
  void require_pass() const;
  void add(const std::string& id, std::int64_t expected, std::optional<std::int64_t> actual,
           const std::string& detail = "");
  void add(CheckResult c) { checks.push_back(std::move(c)); }
};

/// Plain-text rendering: one COMPUTED line per check, one PAPER-ASSERTED
/// line per assertion, then notes and tallies.
std::string format_report(const Report& r);

/// Expected values of the example against its evaluated profile.
std::vector<CheckResult> check_expected(const NamedExample& ex, const RingProfile& p);

/// Gorenstein algebra, its cone fibered with a DVR, and the localization:
/// ten checks including the Hilbert-function route to the multiplicity.
Report verify_gorenstein_cone_fiber(const HarnessOptions& o = {});

/// The square-zero family for 1 <= n <= 3: core, fiber product with a DVR,
/// localization, and the 2^n tensor-choice semidualizing modules.
Report verify_semidualizing_family(int n, const HarnessOptions& o = {});

/// Ext bound used for the semidualizing check at size n.
int semidualizing_ext_bound(int n, int requested);

/// The 2^n modules B_1' (x) ... (x) B_n' with B_i' in {B_i, omega(B_i)}
/// over the tensor product of the B_i = K[x, y]/(x, y)^2, K = Q((Y)).
struct SemidualizingFamily {
  AlgPtr algebra;
  std::vector<ModRep> modules;
  std::vector<std::string> labels;  // "A", "w", "Aw", ...
};
SemidualizingFamily tensor_choice_family(int n);

/// Random artinian monomial ideal in one or two variables prefix0, prefix1
/// with quotient length at most max_length; deterministic in the engine.
IdealSpec random_artinian_monomial_ideal(std::mt19937_64& rng, const std::string& prefix, int max_length);

struct CorpusOptions {
  std::uint64_t seed = 0;
  int count = 25;
  int degree = 8;
  int max_length = 8;
};

/// Fiber calculus against direct computation on random artinian pairs plus
/// the fixed (x^2) x (z^2) case: type, multiplicity, length, edim, the
/// Poincare series and the Bass series through `degree`.
Report verify_corpus(const CorpusOptions& c, const HarnessOptions& o = {});

/// The six classification fixtures and the agreement of the two CM
/// conditions over a pool of completable profiles.
Report verify_classification(const HarnessOptions& o = {});

/// e(R) = e(R / Nil R) on one-dimensional monomial fixtures.
Report verify_nil_multiplicity(const HarnessOptions& o = {});
std::vector<RingPresentation> nil_multiplicity_fixtures();

/// Every monomial down-set of size <= max_length in `nvars` variables.
std::vector<std::vector<Monomial>> monomial_down_sets(int nvars, int max_length);
/// The invariants of the small-multiplicity argument over all down-sets.
Report verify_proof_invariants(int nvars = 3, int max_length = 8);

}  // namespace fiberlab
