#include "dagreal/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <thread>
#include <unordered_set>

#include "state_key.hpp"

namespace dagreal {

namespace {

using detail::StateKey;
using detail::StateKeyHash;

StateKey pack(const SearchState& state) {
    return detail::pack_state(state.remaining, state.potential);
}

int first_count(const Potential& p) { return p.counts.empty() ? 0 : p.counts[0]; }

class Searcher {
public:
    Searcher(const TypeTable& table, std::uint64_t budget, bool pruning)
        : table_(table), budget_(budget), pruning_(pruning) {}

    bool budget_hit() const { return budget_hit_; }
    std::uint64_t visited() const { return visited_; }

    // Depth-first search for a completion of `state`; appends the chosen type
    // indices to `path` on success. Only fully explored failures are memoized.
    bool dfs(SearchState& state, std::vector<int>& path) {
        if (++visited_ > budget_) {
            budget_hit_ = true;
            return false;
        }
        if (std::all_of(state.remaining.begin(), state.remaining.end(),
                        [](int r) { return r == 0; })) {
            // arc conservation was pre-checked, so the final potential must be zero
            assert(state.potential.is_zero());
            return state.potential.is_zero();
        }
        for (int t : pruned_candidates(state, table_, pruning_)) {
            auto next_pot = recurrence_step(state.potential, table_.entries[t].pair);
            assert(next_pot);
            SearchState child{state.remaining, std::move(*next_pot)};
            --child.remaining[t];
            StateKey key = pack(child);
            if (failed_.contains(key)) continue;
            path.push_back(t);
            if (dfs(child, path)) return true;
            path.pop_back();
            if (budget_hit_) return false;  // subtree not fully explored
            failed_.insert(std::move(key));
        }
        return false;
    }

private:
    const TypeTable& table_;
    std::uint64_t budget_;
    bool pruning_;
    std::uint64_t visited_ = 0;
    bool budget_hit_ = false;
    std::unordered_set<StateKey, StateKeyHash> failed_;
};

Ordering ordering_from_path(const TypeTable& table, const std::vector<int>& path) {
    Ordering ordering;
    ordering.reserve(path.size());
    for (int t : path) ordering.push_back(table.entries[t].pair);
    return ordering;
}

struct RootOutcome {
    bool found = false;
    bool budget_hit = false;
    std::uint64_t visited = 0;
    std::vector<int> path;
};

}  // namespace

std::vector<int> pruned_candidates(const SearchState& state, const TypeTable& table,
                                   bool pruning) {
    std::vector<int> cands;
    const int p1 = first_count(state.potential);
    for (int t = 0; t < table.size(); ++t) {
        if (state.remaining[t] == 0) continue;
        const DegreePair pair = table.entries[t].pair;
        if (pair.in_deg > p1) continue;
        if (pruning) {
            bool dominated = false;
            for (int u = 0; u < table.size() && !dominated; ++u)
                dominated = u != t && state.remaining[u] > 0 &&
                            opposed_le(table.entries[u].pair, pair);
            if (dominated) continue;  // the smaller type goes first in some optimal ordering
        }
        cands.push_back(t);
    }
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
        const DegreePair pa = table.entries[a].pair;
        const DegreePair pb = table.entries[b].pair;
        return pa.out_deg - pa.in_deg > pb.out_deg - pb.in_deg;
    });
    return cands;
}

SolveResult solve_exact(const DegreeSequence& seq, const SolveOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    auto finish = [&](SolveResult r) {
        r.stats.millis = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        return r;
    };

    if (seq.n() == 0) {
        res.verdict = SolveVerdict::Realizable;
        res.witness = with_isolates(Realization{}, seq.isolates);
        return finish(std::move(res));
    }
    NecessaryResult nc = necessary_checks(seq);
    if (!nc.ok()) {
        res.verdict = SolveVerdict::Unrealizable;
        res.note = nc.reason;
        return finish(std::move(res));
    }

    const TypeTable table = type_table(seq);
    SearchState initial;
    initial.potential = Potential::zero(seq.delta);
    for (const TypeEntry& e : table.entries) initial.remaining.push_back(e.multiplicity);

    const std::uint64_t budget = opts.budget == 0 ? kDefaultBudget : opts.budget;
    std::vector<int> roots = pruned_candidates(initial, table, opts.pruning);

    auto run_root = [&](int t, std::uint64_t slice) {
        RootOutcome out;
        Searcher searcher(table, slice, opts.pruning);
        auto pot = recurrence_step(initial.potential, table.entries[t].pair);
        assert(pot);
        SearchState child{initial.remaining, std::move(*pot)};
        --child.remaining[t];
        out.path.push_back(t);
        out.found = searcher.dfs(child, out.path);
        out.budget_hit = searcher.budget_hit();
        out.visited = searcher.visited() + 1;
        return out;
    };

    std::vector<RootOutcome> outcomes(roots.size());
    const int threads = std::max(1, opts.threads);
    if (threads == 1 || roots.size() <= 1) {
        // sequential: a single searcher shares its memo and budget across roots
        Searcher searcher(table, budget, opts.pruning);
        std::vector<int> path;
        SearchState state = initial;
        const bool found = searcher.dfs(state, path);
        res.stats.states_visited = searcher.visited();
        if (found) {
            res.verdict = SolveVerdict::Realizable;
            res.witness =
                with_isolates(well_connect(ordering_from_path(table, path)), seq.isolates);
        } else if (searcher.budget_hit()) {
            res.verdict = SolveVerdict::ResourceLimit;
            res.note = "state budget of " + std::to_string(budget) + " visits exhausted";
        } else {
            res.verdict = SolveVerdict::Unrealizable;
        }
        return finish(std::move(res));
    }

    // parallel mode: every root branch gets a private memo and an equal budget
    // slice, and outcomes are harvested in canonical order, so the result does
    // not depend on scheduling
    const std::uint64_t slice = std::max<std::uint64_t>(1, budget / roots.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < roots.size(); i = next.fetch_add(1))
            outcomes[i] = run_root(roots[i], slice);
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min<int>(threads, static_cast<int>(roots.size())); ++i)
        pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    for (const RootOutcome& out : outcomes) res.stats.states_visited += out.visited;
    for (const RootOutcome& out : outcomes) {
        if (out.budget_hit) {
            res.verdict = SolveVerdict::ResourceLimit;
            res.note = "state budget of " + std::to_string(budget) + " visits exhausted";
            return finish(std::move(res));
        }
        if (out.found) {
            res.verdict = SolveVerdict::Realizable;
            res.witness = with_isolates(well_connect(ordering_from_path(table, out.path)),
                                        seq.isolates);
            return finish(std::move(res));
        }
    }
    res.verdict = SolveVerdict::Unrealizable;
    return finish(std::move(res));
}

OracleVerdict brute_force_oracle(std::vector<DegreePair> pairs) {
    if (pairs.size() > 9) throw TooLarge("brute_force_oracle is guarded to n <= 9");
    // (0,0) entries never change a potential; dropping them shrinks the
    // permutation space without affecting the verdict
    std::erase_if(pairs, [](DegreePair p) { return p.in_deg == 0 && p.out_deg == 0; });
    const int delta = max_degree(pairs);
    std::sort(pairs.begin(), pairs.end());
    do {
        if (check_ordering(pairs, delta).feasible) return OracleVerdict::Realizable;
    } while (std::next_permutation(pairs.begin(), pairs.end()));
    return OracleVerdict::Unrealizable;
}

OracleVerdict brute_force_oracle(const DegreeSequence& seq) {
    return brute_force_oracle(seq.pairs);
}

ChainResult solve_chain(const DegreeSequence& seq) {
    ChainResult res;
    const TypeTable table = type_table(seq);
    for (int a = 0; a < table.size(); ++a)
        for (int b = a + 1; b < table.size(); ++b) {
            const DegreePair pa = table.entries[a].pair;
            const DegreePair pb = table.entries[b].pair;
            if (!opposed_le(pa, pb) && !opposed_le(pb, pa)) {
                res.verdict = ChainVerdict::NotAChain;
                return res;
            }
        }
    Ordering ordering = seq.pairs;
    std::stable_sort(ordering.begin(), ordering.end(), [](DegreePair a, DegreePair b) {
        if (a.in_deg != b.in_deg) return a.in_deg < b.in_deg;
        return a.out_deg > b.out_deg;
    });
    if (check_ordering(ordering, seq.delta).feasible) {
        res.verdict = ChainVerdict::Realizable;
        res.witness = with_isolates(well_connect(ordering), seq.isolates);
    } else {
        res.verdict = ChainVerdict::Unrealizable;
    }
    return res;
}

}  // namespace dagreal
