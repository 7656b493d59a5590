#include "dagreal/potential.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace dagreal {

int Potential::value() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

bool potential_ge(const Potential& p, const Potential& q) {
    if (p.delta() != q.delta())
        throw PotentialMismatch("potential_ge: dimension mismatch");
    long long sp = 0, sq = 0;
    for (int j = 0; j < p.delta(); ++j) {
        sp += p.counts[j];
        sq += q.counts[j];
        if (sp < sq) return false;
    }
    return true;
}

Potential min_potential(int x, int delta) {
    assert(delta >= 1 && x >= 0);
    Potential p(delta);
    const int q = x / delta;
    const int r = x % delta;
    for (int j = 0; j < delta; ++j) p.counts[j] = j < r ? q + 1 : q;
    return p;
}

Potential PrefixState::potential() const {
    Potential p(delta);
    for (int r : remaining) {
        assert(r >= 1 && r <= delta);
        for (int l = 0; l < r; ++l) ++p.counts[l];
    }
    return p;
}

std::optional<PrefixState> step(const PrefixState& state, DegreePair pair) {
    if (pair.in_deg > state.delta || pair.out_deg > state.delta)
        throw Error("step: degree exceeds the potential dimension");
    if (pair.in_deg > static_cast<int>(state.remaining.size()))
        return std::nullopt;  // not enough prefix vertices with positive remaining outdegree
    PrefixState next(state.delta);
    next.remaining.reserve(state.remaining.size() + 1);
    // remaining is sorted descending, so the first in_deg entries are the largest
    for (std::size_t i = 0; i < state.remaining.size(); ++i) {
        int r = state.remaining[i];
        if (i < static_cast<std::size_t>(pair.in_deg)) --r;
        if (r > 0) next.remaining.push_back(r);
    }
    if (pair.out_deg > 0) next.remaining.push_back(pair.out_deg);
    std::sort(next.remaining.begin(), next.remaining.end(), std::greater<int>());
    return next;
}

std::optional<Potential> recurrence_step(const Potential& p, DegreePair pair) {
    const int delta = p.delta();
    const int din = pair.in_deg;
    if (delta == 0) return din == 0 ? std::optional<Potential>(p) : std::nullopt;
    if (din > p.counts[0]) return std::nullopt;
    Potential next(delta);
    for (int j = 0; j < delta; ++j) {
        if (j + 1 < delta) {
            if (p.counts[j + 1] >= din)
                next.counts[j] = p.counts[j];
            else if (p.counts[j] >= din)
                next.counts[j] = p.counts[j] - (din - p.counts[j + 1]);
            else
                next.counts[j] = p.counts[j + 1];
        } else {
            next.counts[j] = std::max(0, p.counts[j] - din);
        }
        if (pair.out_deg >= j + 1) ++next.counts[j];
    }
    return next;
}

int max_degree(const Ordering& ordering) {
    int delta = 0;
    for (const DegreePair& p : ordering) delta = std::max({delta, p.in_deg, p.out_deg});
    return delta;
}

TraceResult check_ordering(const Ordering& ordering, int delta) {
    TraceResult res;
    res.trace.reserve(ordering.size() + 1);
    PrefixState state(delta);
    res.trace.push_back(state.potential());
    for (std::size_t i = 0; i < ordering.size(); ++i) {
        auto next = step(state, ordering[i]);
        if (!next) {
            res.fail_pos = static_cast<int>(i) + 1;
            return res;
        }
        state = std::move(*next);
        res.trace.push_back(state.potential());
    }
    if (!res.trace.back().is_zero()) {
        res.fail_pos = static_cast<int>(ordering.size()) + 1;
        return res;
    }
    res.feasible = true;
    return res;
}

TraceResult check_ordering(const Ordering& ordering) {
    return check_ordering(ordering, max_degree(ordering));
}

Realization well_connect(const Ordering& ordering) {
    const int n = static_cast<int>(ordering.size());
    Realization real;
    real.n = n;
    real.degree_assignment = ordering;
    real.topo_order.resize(n);
    std::iota(real.topo_order.begin(), real.topo_order.end(), 0);

    std::vector<int> rem(n, 0);  // remaining outdegree per placed vertex
    for (int i = 0; i < n; ++i) {
        // pick the in_deg prefix vertices with highest remaining outdegree,
        // earliest-placed first among ties
        std::vector<int> order(i);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int u, int v) { return rem[u] > rem[v]; });
        const int din = ordering[i].in_deg;
        if (din > i)
            throw InfeasibleOrdering("ordering infeasible at position " + std::to_string(i + 1));
        for (int k = 0; k < din; ++k) {
            const int u = order[k];
            if (rem[u] <= 0)
                throw InfeasibleOrdering("ordering infeasible at position " +
                                         std::to_string(i + 1));
            --rem[u];
            real.arcs.emplace_back(u, i);
        }
        rem[i] = ordering[i].out_deg;
    }
    for (int v = 0; v < n; ++v)
        if (rem[v] != 0)
            throw InfeasibleOrdering("ordering leaves unfilled outdegree at vertex " +
                                     std::to_string(v + 1));
    std::sort(real.arcs.begin(), real.arcs.end());
    return real;
}

PartialOrderingSpec make_partial_ordering(const Ordering& body, const Potential& input) {
    PartialOrderingSpec spec;
    spec.body = body;
    spec.input_potential = input;
    const int delta = input.delta();
    PrefixState state(delta);
    // rebuild the multiset behind the input potential: counts[l-1]-counts[l]
    // vertices have remaining outdegree exactly l
    for (int l = delta; l >= 1; --l) {
        const int above = l < delta ? input.counts[l] : 0;
        for (int c = input.counts[l - 1] - above; c > 0; --c) state.remaining.push_back(l);
    }
    std::sort(state.remaining.begin(), state.remaining.end(), std::greater<int>());
    for (std::size_t i = 0; i < body.size(); ++i) {
        auto next = step(state, body[i]);
        if (!next)
            throw InfeasibleOrdering("partial ordering infeasible at position " +
                                     std::to_string(i + 1));
        state = std::move(*next);
    }
    spec.output_potential = state.potential();
    return spec;
}

Ordering splice_out(const Ordering& ordering, int i, int j, int delta) {
    const int n = static_cast<int>(ordering.size());
    if (i < 0 || j < i || j > n) throw Error("splice_out: positions out of range");
    TraceResult tr = check_ordering(ordering, delta);
    if (!tr.feasible) throw InfeasibleOrdering("splice_out: ordering is not feasible");
    if (!(tr.trace[i] == tr.trace[j]))
        throw PotentialMismatch("splice_out: potentials at positions " + std::to_string(i) +
                                " and " + std::to_string(j) + " differ");
    Ordering out;
    out.reserve(n - (j - i));
    out.insert(out.end(), ordering.begin(), ordering.begin() + i);
    out.insert(out.end(), ordering.begin() + j, ordering.end());
    return out;
}

Ordering insert_at(const Ordering& ordering, const PartialOrderingSpec& block, int i,
                   int delta) {
    const int n = static_cast<int>(ordering.size());
    if (i < 0 || i > n) throw Error("insert_at: position out of range");
    if (!(block.input_potential == block.output_potential))
        throw PotentialMismatch("insert_at: block input and output potentials differ");
    TraceResult tr = check_ordering(ordering, delta);
    if (!tr.feasible) throw InfeasibleOrdering("insert_at: ordering is not feasible");
    if (!(tr.trace[i] == block.input_potential))
        throw PotentialMismatch("insert_at: host potential at position " + std::to_string(i) +
                                " does not match the block boundary");
    Ordering out;
    out.reserve(n + block.body.size());
    out.insert(out.end(), ordering.begin(), ordering.begin() + i);
    out.insert(out.end(), block.body.begin(), block.body.end());
    out.insert(out.end(), ordering.begin() + i, ordering.end());
    return out;
}

}  // namespace dagreal
