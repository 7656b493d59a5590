#ifndef DAGREAL_TYPES_HPP
#define DAGREAL_TYPES_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagreal {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NormalizeError : public Error {
public:
    using Error::Error;
};

/// One degree demand: the vertex realizing it needs exactly `in_deg` ingoing
/// and `out_deg` outgoing arcs.
struct DegreePair {
    int in_deg = 0;
    int out_deg = 0;

    friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

/// Opposed order: p <=opp q iff p.in_deg <= q.in_deg and p.out_deg >= q.out_deg.
/// A partial order; incomparable pairs exist.
inline bool opposed_le(DegreePair p, DegreePair q) {
    return p.in_deg <= q.in_deg && p.out_deg >= q.out_deg;
}

/// A normalized problem instance. `pairs` holds the non-isolated demands in
/// input order, `isolates` counts the stripped (0,0) entries, and `delta` is
/// the maximum degree over all remaining entries.
struct DegreeSequence {
    std::vector<DegreePair> pairs;
    int isolates = 0;
    int delta = 0;

    int n() const { return static_cast<int>(pairs.size()); }
    int total_vertices() const { return n() + isolates; }
};

/// Strips (0,0) pairs (recorded in `isolates`), computes n and delta, and
/// rejects entries that can never fit a simple DAG on n vertices.
DegreeSequence normalize(const std::vector<DegreePair>& raw);

enum class NecessaryCheck {
    Pass,
    SumMismatch,
    NoSource,
    NoSink,
};

struct NecessaryResult {
    NecessaryCheck kind = NecessaryCheck::Pass;
    std::string reason;
    long long sum_in = 0;
    long long sum_out = 0;

    bool ok() const { return kind == NecessaryCheck::Pass; }
};

/// Fast screening: arc conservation, presence of a source and a sink.
/// Passing is necessary but not sufficient.
NecessaryResult necessary_checks(const DegreeSequence& seq);

struct TypeEntry {
    DegreePair pair;
    int multiplicity = 0;
    bool good = false;  // in_deg <= out_deg
};

/// Distinct degree pairs with multiplicities, sorted lexicographically by
/// (in_deg, out_deg) so that derived keys and outputs are deterministic.
struct TypeTable {
    std::vector<TypeEntry> entries;

    int size() const { return static_cast<int>(entries.size()); }
    /// Index of `p` in the canonical order, or -1 if absent.
    int index_of(DegreePair p) const;
};

TypeTable type_table(const DegreeSequence& seq);

/// A candidate topological ordering: a permutation of the multiset, stored as
/// the element sequence itself.
using Ordering = std::vector<DegreePair>;

/// A witness DAG. Vertices are 0-based; arcs are kept sorted and unique.
/// `degree_assignment[v]` is the demand vertex v is supposed to realize and
/// `topo_order` is a topological ordering of the vertices.
struct Realization {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
    std::vector<DegreePair> degree_assignment;
    std::vector<int> topo_order;
};

/// Appends `count` isolated (0,0) vertices to a witness. Normalization strips
/// them from instances; solvers re-add them before returning witnesses.
Realization with_isolates(Realization real, int count);

}  // namespace dagreal

#endif
