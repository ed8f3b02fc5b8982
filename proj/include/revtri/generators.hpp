#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "revtri/bounds.hpp"
#include "revtri/certify.hpp"
#include "revtri/linalg.hpp"

namespace revtri {

/// Proposals drawn per vector before a sampler gives up on a thin set.
inline constexpr std::size_t kProposalCap = 10'000;

struct FeasibilityReport {
  bool feasible = false;
  std::string reason;
  /// A point of the constraint intersection, when one is known.
  std::optional<Vector> geometric_witness;
};

using SampleOutcome = std::variant<VectorFamily, FeasibilityReport>;

/// Draws n vectors in C^d that satisfy the theorem's hypotheses at tolerance
/// zero. Single-vector theorems use frame[0] as a. Analytically infeasible
/// constraint sets return a report without sampling; exhausting
/// kProposalCap for some vector returns a report with reason "sampling cap".
SampleOutcome sample_family(const TheoremSpec& spec, const OrthonormalFrame& frame,
                            std::size_t n, std::size_t d, std::uint64_t seed);

/// A family attaining the theorem's bound with equality and with the
/// requested norms. Supported for dm, thm1, thm5, cor6, cor3 and cor8.
///
/// thm1/thm5/cor6/dm: with v = Σ_t (r_t + iρ_t) a_t and s = ‖v‖ <= 1,
///   x_k = ‖x_k‖ v + ‖x_k‖ sqrt(1 - s²) e^{iθ_k} b, b ⊥ frame, where the
///   phases θ_k close the polygon so the b-components cancel. s < 1 therefore
///   needs d > m and a closable set of norms (largest <= sum of the rest).
/// cor3/cor8: all norms equal to some α <= sqrt(2/m), and
///   x_k = α²(1+i)/2 Σ_t a_t + w_k with cancelling w_k ⊥ frame.
/// The seed only picks b and the polygon's rotation.
SampleOutcome equality_family(const TheoremSpec& spec, const OrthonormalFrame& frame,
                              std::span<const double> norms, std::uint64_t seed = 0);

/// Unit phases p_k with Σ sides_k p_k = 0, or nullopt when no closed polygon
/// with these side lengths exists.
std::optional<std::vector<Complex>> closing_phases(std::span<const double> sides,
                                                   std::mt19937_64& rng);

struct FuzzViolation {
  std::size_t trial = 0;
  TheoremSpec spec;
  OrthonormalFrame frame;
  VectorFamily family;
  BoundCertificate certificate;
};

struct FuzzSummary {
  TheoremId theorem = TheoremId::dm;
  std::size_t trials_run = 0;
  /// Trials whose certificate reports satisfied hypotheses.
  std::size_t hypothesis_hits = 0;
  /// Trials whose family came from sample_family.
  std::size_t sampled_families = 0;
  /// Trials where sample_family reported infeasibility and an unconstrained
  /// family was used instead.
  std::size_t infeasible_draws = 0;
  /// Trials whose parameters were inadmissible for the drawn family.
  std::size_t rejected_inputs = 0;
  std::vector<FuzzViolation> violations;
};

/// Randomized falsification campaign. Trial i is driven entirely by
/// mix_seed(seed, i), so the summary does not depend on `threads`
/// (0 = hardware concurrency). Throws InputError when trials == 0.
FuzzSummary fuzz_falsify(TheoremId theorem, std::size_t trials, std::size_t d_max,
                         std::size_t n_max, std::uint64_t seed, unsigned threads = 0);

}  // namespace revtri
