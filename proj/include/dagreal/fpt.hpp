#ifndef DAGREAL_FPT_HPP
#define DAGREAL_FPT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagreal/exact.hpp"
#include "dagreal/potential.hpp"
#include "dagreal/types.hpp"

namespace dagreal {

/// Saturating forms of the theoretical enumeration bounds. They are
/// astronomically large for delta >= 3; effective caps are always clamped to
/// the instance size, beyond which they exclude nothing.
std::uint64_t theory_prefix_suffix_cap(int delta);   // delta^(2*delta)
std::uint64_t theory_supertype_len_cap(int delta);   // delta^(2*delta)
std::uint64_t theory_nonrepeating_cap(int delta);

struct FptConfig {
    int high_threshold = 0;  // 0 = delta^2, the high-potential bar
    std::uint64_t prefix_suffix_cap = 0;
    std::uint64_t nonrepeating_cap = 0;
    std::uint64_t supertype_len_cap = 0;
    std::uint64_t budget = kDefaultBudget;

    /// Full effective caps (theoretical bounds clamped to n): negatives are
    /// then proofs, budget permitting.
    static FptConfig for_sequence(const DegreeSequence& seq);
    /// User caps; 0 leaves the corresponding cap at its effective bound.
    static FptConfig with_user_caps(const DegreeSequence& seq, std::uint64_t prefix_suffix,
                                    std::uint64_t nonrepeating, std::uint64_t supertype_len);
};

/// A block of an ordering that leaves the potential unchanged: the boundary
/// potential recurs at both ends and nowhere strictly inside. Balanced by
/// construction. `first_*` record where its first occurrence sits in the
/// ordering it was detected in (trace positions).
struct SuperType {
    Ordering body;
    Potential boundary_potential;
    int first_start = 0;
    int first_end = 0;
};

/// All super-types of a feasible ordering with body length <= cap,
/// deduplicated by (body, boundary), in order of first occurrence.
std::vector<SuperType> detect_supertypes(const std::vector<Potential>& trace,
                                         const Ordering& ordering, std::uint64_t cap);

enum class PhaseOutcome {
    Realizable,
    Negative,
    ResourceLimit,
};

struct HighPhaseResult {
    PhaseOutcome outcome = PhaseOutcome::Negative;
    std::optional<Realization> witness;
    /// True when the caps reached their effective bounds, making the negative
    /// a proof that no high-potential realization exists.
    bool complete = false;
    SolveStats stats;
};

struct LowPhaseResult {
    PhaseOutcome outcome = PhaseOutcome::Negative;
    std::optional<Realization> witness;
    bool complete = false;
    SolveStats stats;
    /// On success: the accepted non-repeating ordering, its super-types, and
    /// the repetition counts chosen by the filling system.
    Ordering nonrepeating;
    std::vector<SuperType> supertypes;
    std::vector<long long> filling;
};

/// Searches for a realization whose potential value reaches the threshold:
/// enumerates initializing prefixes I and closing suffixes E (lengths capped),
/// lays out the rest as good types before bad types, and checks the assembled
/// ordering.
HighPhaseResult solve_high_potential(const DegreeSequence& seq, const FptConfig& cfg);

/// Searches for a realization all of whose potential values stay below the
/// threshold: enumerates capped non-repeating orderings, then re-inserts
/// repetitions chosen by the Sequence Filling system.
LowPhaseResult solve_low_potential(const DegreeSequence& seq, const FptConfig& cfg);

enum class FptVerdict {
    Realizable,
    Unrealizable,  // both phases exhausted their effective bounds
    Unknown,       // negative within user caps only
    ResourceLimit,
};

struct FptResult {
    FptVerdict verdict = FptVerdict::Unknown;
    std::optional<Realization> witness;
    std::string note;
    SolveStats stats;
    HighPhaseResult high;
    LowPhaseResult low;
};

/// Dispatcher over the two phases.
FptResult solve_fpt(const DegreeSequence& seq, const FptConfig& cfg);

}  // namespace dagreal

#endif
