#ifndef DAGREAL_POTENTIAL_HPP
#define DAGREAL_POTENTIAL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dagreal/types.hpp"

namespace dagreal {

class PotentialMismatch : public Error {
public:
    using Error::Error;
};

class InfeasibleOrdering : public Error {
public:
    using Error::Error;
};

/// Potential vector at a prefix/suffix cut: counts[l-1] is the number of
/// already-placed vertices that still have at least l arcs into the suffix.
/// Always non-increasing; stored dense with fixed length delta so equality
/// and hashing are structural.
struct Potential {
    std::vector<int> counts;

    Potential() = default;
    explicit Potential(int delta) : counts(static_cast<std::size_t>(delta), 0) {}

    static Potential zero(int delta) { return Potential(delta); }

    int delta() const { return static_cast<int>(counts.size()); }

    /// Value: the number of arcs crossing the cut.
    int value() const;

    bool is_zero() const { return value() == 0; }

    friend bool operator==(const Potential&, const Potential&) = default;
};

/// Potential order (prefix-sum dominance): p >= q iff every prefix sum of p
/// is at least the corresponding prefix sum of q. Requires equal delta.
bool potential_ge(const Potential& p, const Potential& q);

/// The balanced potential of value x: the unique minimum of the potential
/// order on the value-x slice.
Potential min_potential(int x, int delta);

/// Ground-truth prefix state: the multiset of remaining outdegrees of the
/// already-placed vertices (zeros dropped, kept sorted descending).
struct PrefixState {
    std::vector<int> remaining;
    int delta = 0;

    PrefixState() = default;
    explicit PrefixState(int delta_) : delta(delta_) {}

    Potential potential() const;
};

/// Places `pair` after the current prefix: decrements the pair.in_deg largest
/// remaining outdegrees by one, then inserts pair.out_deg. Returns nullopt
/// when fewer than pair.in_deg positive entries exist (the ordering cannot be
/// realized at this position).
std::optional<PrefixState> step(const PrefixState& state, DegreePair pair);

/// Closed-form potential update. Cross-checked against step(); the
/// overlapping cases are resolved first-match-wins.
std::optional<Potential> recurrence_step(const Potential& p, DegreePair pair);

struct TraceResult {
    bool feasible = false;
    /// 0 when feasible; 1..n for the first element that cannot be placed;
    /// n+1 when every step succeeded but the final potential is nonzero.
    int fail_pos = 0;
    /// Potentials p_0 .. p_k (k = last position reached).
    std::vector<Potential> trace;
};

/// Folds step() over the ordering. Feasible iff every step succeeds and the
/// final potential is zero.
TraceResult check_ordering(const Ordering& ordering, int delta);
TraceResult check_ordering(const Ordering& ordering);

/// Maximum degree occurring in an ordering (0 when empty).
int max_degree(const Ordering& ordering);

/// Materializes the canonical well-connected DAG of a feasible ordering:
/// vertex i takes its in-arcs from the prefix vertices with highest remaining
/// outdegree, earliest-placed first on ties. The vertex numbering equals the
/// ordering positions, so topo_order is the identity.
Realization well_connect(const Ordering& ordering);

/// A reusable ordering fragment with equal-delta boundary potentials.
struct PartialOrderingSpec {
    Ordering body;
    Potential input_potential;
    Potential output_potential;
};

/// Builds the block descriptor by stepping `body` from `input`; throws
/// InfeasibleOrdering when some element cannot be placed.
PartialOrderingSpec make_partial_ordering(const Ordering& body, const Potential& input);

/// Cut-out: removes elements i+1..j (trace positions, 0 <= i <= j <= n) from a
/// feasible ordering whose trace satisfies p_i = p_j. The remainder is a
/// feasible ordering of the reduced multiset.
Ordering splice_out(const Ordering& ordering, int i, int j, int delta);

/// Inserts `block` after trace position i of a feasible ordering; requires
/// block.input = block.output = p_i. Callers re-check the result; it is never
/// assumed feasible.
Ordering insert_at(const Ordering& ordering, const PartialOrderingSpec& block, int i,
                   int delta);

}  // namespace dagreal

#endif
