#ifndef DAGREAL_EXACT_HPP
#define DAGREAL_EXACT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagreal/potential.hpp"
#include "dagreal/types.hpp"

namespace dagreal {

class TooLarge : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

enum class SolveVerdict {
    Realizable,
    Unrealizable,
    ResourceLimit,  // budget exhausted: unknown, never a wrong decision
};

struct SolveStats {
    std::uint64_t states_visited = 0;
    double millis = 0.0;
};

struct SolveResult {
    SolveVerdict verdict = SolveVerdict::Unrealizable;
    std::optional<Realization> witness;  // set iff Realizable; isolates re-added
    SolveStats stats;
    std::string note;
};

struct SolveOptions {
    std::uint64_t budget = kDefaultBudget;  // max search-state visits
    int threads = 1;
    bool pruning = true;  // opposed-order candidate pruning
};

/// Search state: per-type remaining multiplicities (aligned to the canonical
/// TypeTable) plus the current potential. Feasibility of the remainder
/// depends only on this pair, which is what makes memoization sound.
struct SearchState {
    std::vector<int> remaining;
    Potential potential;
};

/// Type indices worth trying from `state`: remaining > 0, in_deg fits the
/// potential, and no distinct remaining type is opposed-smaller. Survivors
/// are ordered by descending out-in surplus (a speed heuristic only).
std::vector<int> pruned_candidates(const SearchState& state, const TypeTable& table,
                                   bool pruning = true);

/// Complete decision procedure: memoized depth-first search over
/// (remaining, potential) states; returns a verified witness when realizable.
SolveResult solve_exact(const DegreeSequence& seq, const SolveOptions& opts = {});

enum class OracleVerdict {
    Realizable,
    Unrealizable,
};

/// Independent validation oracle: checks every distinct permutation of the
/// multiset. Guarded to n <= 9 (throws TooLarge beyond).
OracleVerdict brute_force_oracle(std::vector<DegreePair> pairs);
OracleVerdict brute_force_oracle(const DegreeSequence& seq);

enum class ChainVerdict {
    Realizable,
    Unrealizable,
    NotAChain,
};

struct ChainResult {
    ChainVerdict verdict = ChainVerdict::NotAChain;
    std::optional<Realization> witness;
};

/// Polynomial special case: when all distinct types are pairwise comparable
/// in the opposed order, the opposed-sorted ordering decides the instance.
ChainResult solve_chain(const DegreeSequence& seq);

}  // namespace dagreal

#endif
