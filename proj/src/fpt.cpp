#include "dagreal/fpt.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "dagreal/filling.hpp"
#include "state_key.hpp"

namespace dagreal {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max() / 4;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
    if (base <= 1) return base;
    if (exp >= 64) return kSat;
    std::uint64_t r = 1;
    for (; exp > 0; --exp) {
        r = sat_mul(r, base);
        if (r >= kSat) return kSat;
    }
    return r;
}

std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

}  // namespace

std::uint64_t theory_prefix_suffix_cap(int delta) {
    return sat_pow(delta, 2ull * delta);
}

std::uint64_t theory_supertype_len_cap(int delta) {
    return sat_pow(delta, 2ull * delta);
}

std::uint64_t theory_nonrepeating_cap(int delta) {
    // delta^(2 delta) * (delta^(2 delta^(2 delta) + 2 delta) + delta^(2 delta))
    const std::uint64_t a = sat_pow(delta, 2ull * delta);
    const std::uint64_t exp = sat_add(sat_mul(2, a), 2ull * delta);
    const std::uint64_t b = sat_pow(delta, exp);
    return sat_mul(a, sat_add(b, a));
}

FptConfig FptConfig::for_sequence(const DegreeSequence& seq) {
    return with_user_caps(seq, 0, 0, 0);
}

FptConfig FptConfig::with_user_caps(const DegreeSequence& seq, std::uint64_t prefix_suffix,
                                    std::uint64_t nonrepeating, std::uint64_t supertype_len) {
    const int d = std::max(1, seq.delta);
    const std::uint64_t n = std::max<std::uint64_t>(1, seq.n());
    auto eff = [&](std::uint64_t theory, std::uint64_t user) {
        std::uint64_t cap = std::min(theory, n);  // caps beyond n exclude nothing
        if (user > 0) cap = std::min(cap, user);
        return std::max<std::uint64_t>(cap, 1);
    };
    FptConfig cfg;
    cfg.high_threshold = d * d;
    cfg.prefix_suffix_cap = eff(theory_prefix_suffix_cap(d), prefix_suffix);
    cfg.nonrepeating_cap = eff(theory_nonrepeating_cap(d), nonrepeating);
    cfg.supertype_len_cap = eff(theory_supertype_len_cap(d), supertype_len);
    return cfg;
}

namespace {

// Fills unset fields and re-clamps caps to their effective bounds.
FptConfig resolve_config(const DegreeSequence& seq, const FptConfig& cfg) {
    FptConfig eff = FptConfig::with_user_caps(seq, cfg.prefix_suffix_cap,
                                              cfg.nonrepeating_cap, cfg.supertype_len_cap);
    if (cfg.high_threshold > 0) eff.high_threshold = cfg.high_threshold;
    eff.budget = cfg.budget == 0 ? kDefaultBudget : cfg.budget;
    return eff;
}

bool caps_reach_bound(std::uint64_t cap, std::uint64_t theory, std::uint64_t n) {
    return cap >= std::min(theory, std::max<std::uint64_t>(n, 1));
}

}  // namespace

std::vector<SuperType> detect_supertypes(const std::vector<Potential>& trace,
                                         const Ordering& ordering, std::uint64_t cap) {
    assert(trace.size() == ordering.size() + 1);
    std::vector<SuperType> out;
    std::map<std::vector<int>, int> last_pos;
    std::set<std::pair<Ordering, std::vector<int>>> seen;
    for (int pos = 0; pos < static_cast<int>(trace.size()); ++pos) {
        const std::vector<int>& key = trace[pos].counts;
        auto [it, inserted] = last_pos.try_emplace(key, pos);
        if (inserted) continue;
        const int prev = it->second;
        it->second = pos;
        if (static_cast<std::uint64_t>(pos - prev) > cap) continue;
        Ordering body(ordering.begin() + prev, ordering.begin() + pos);
        if (seen.emplace(body, key).second)
            out.push_back({std::move(body), trace[pos], prev, pos});
    }
    return out;
}

namespace {

using detail::StateKey;
using detail::StateKeyHash;

std::vector<DegreePair> table_pairs(const TypeTable& table) {
    std::vector<DegreePair> pairs;
    pairs.reserve(table.entries.size());
    for (const TypeEntry& e : table.entries) pairs.push_back(e.pair);
    return pairs;
}

// Type indices ordered by descending out-in surplus (finds witnesses sooner;
// never affects decisions).
std::vector<int> surplus_order(const TypeTable& table) {
    std::vector<int> order(table.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const DegreePair pa = table.entries[a].pair;
        const DegreePair pb = table.entries[b].pair;
        return pa.out_deg - pa.in_deg > pb.out_deg - pb.in_deg;
    });
    return order;
}

class HighSearcher {
public:
    HighSearcher(const DegreeSequence& seq, const FptConfig& cfg)
        : cfg_(cfg),
          table_(type_table(seq)),
          pairs_(table_pairs(table_)),
          order_(surplus_order(table_)),
          delta_(seq.delta) {
        for (const TypeEntry& e : table_.entries) avail_.push_back(e.multiplicity);
    }

    bool run() { return extend_prefix(Potential::zero(delta_)); }

    bool budget_hit() const { return budget_hit_; }
    std::uint64_t visited() const { return visited_; }
    Realization take_witness() { return std::move(witness_); }

private:
    bool tick() {
        if (++visited_ > cfg_.budget) budget_hit_ = true;
        return !budget_hit_;
    }

    // Enumerates initializing prefixes; a prefix is complete at its first
    // potential of value >= threshold. Dead (remaining, potential) states are
    // memoized: the continuation depends on nothing else.
    bool extend_prefix(const Potential& p) {
        if (!tick()) return false;
        for (int t : order_) {
            if (avail_[t] == 0) continue;
            auto np = recurrence_step(p, pairs_[t]);
            if (!np) continue;
            --avail_[t];
            prefix_.push_back(pairs_[t]);
            bool ok = false;
            if (np->value() >= cfg_.high_threshold) {
                if (prefix_.size() <= cfg_.prefix_suffix_cap) ok = enumerate_suffix(0);
            } else if (prefix_.size() < cfg_.prefix_suffix_cap) {
                StateKey key = detail::pack_state(avail_, *np);
                if (!dead_.contains(key)) {
                    ok = extend_prefix(*np);
                    if (!ok && !budget_hit_) dead_.insert(std::move(key));
                }
            }
            ++avail_[t];
            prefix_.pop_back();
            if (ok) return true;
            if (budget_hit_) return false;
        }
        return false;
    }

    // Builds the closing suffix back to front. `sigma` is the potential value
    // at the cut before the current suffix; it must stay below the threshold
    // strictly inside the suffix and reach it at the suffix start.
    bool enumerate_suffix(long long sigma) {
        if (!tick()) return false;
        for (int t : order_) {
            if (avail_[t] == 0) continue;
            const DegreePair pair = pairs_[t];
            if (pair.out_deg > sigma) continue;  // its out-arcs cross this cut
            if (pair.out_deg > static_cast<int>(suffix_rev_.size()))
                continue;  // out-neighbors must fit inside the suffix
            const long long s2 = sigma + pair.in_deg - pair.out_deg;
            --avail_[t];
            suffix_rev_.push_back(pair);
            bool ok = false;
            if (s2 >= cfg_.high_threshold) {
                if (suffix_rev_.size() <= cfg_.prefix_suffix_cap) ok = assemble();
            } else if (suffix_rev_.size() < cfg_.prefix_suffix_cap) {
                ok = enumerate_suffix(s2);
            }
            ++avail_[t];
            suffix_rev_.pop_back();
            if (ok) return true;
            if (budget_hit_) return false;
        }
        return false;
    }

    // Middle section: the leftover elements, good types before bad types,
    // canonical order within each class.
    bool assemble() {
        if (!tick()) return false;
        Ordering full = prefix_;
        for (int pass = 0; pass < 2; ++pass)
            for (int t = 0; t < table_.size(); ++t) {
                if (table_.entries[t].good != (pass == 0)) continue;
                for (int c = 0; c < avail_[t]; ++c) full.push_back(pairs_[t]);
            }
        full.insert(full.end(), suffix_rev_.rbegin(), suffix_rev_.rend());
        const TraceResult tr = check_ordering(full, delta_);
        if (!tr.feasible) return false;
        const std::size_t ipos = prefix_.size();
        const std::size_t jpos = full.size() - suffix_rev_.size();
        if (tr.trace[ipos].value() < cfg_.high_threshold) return false;
        if (tr.trace[jpos].value() < cfg_.high_threshold) return false;
        witness_ = well_connect(full);
        return true;
    }

    const FptConfig cfg_;
    const TypeTable table_;
    const std::vector<DegreePair> pairs_;
    const std::vector<int> order_;
    const int delta_;
    std::vector<int> avail_;
    Ordering prefix_;
    Ordering suffix_rev_;
    std::unordered_set<StateKey, StateKeyHash> dead_;
    std::uint64_t visited_ = 0;
    bool budget_hit_ = false;
    Realization witness_;
};

class LowSearcher {
public:
    LowSearcher(const DegreeSequence& seq, const FptConfig& cfg, LowPhaseResult& out)
        : cfg_(cfg),
          table_(type_table(seq)),
          pairs_(table_pairs(table_)),
          order_(surplus_order(table_)),
          delta_(seq.delta),
          out_(out) {
        for (const TypeEntry& e : table_.entries) avail_.push_back(e.multiplicity);
        trace_.push_back(Potential::zero(delta_));
    }

    bool run() { return dfs(); }

    bool budget_hit() const { return budget_hit_; }
    std::uint64_t visited() const { return visited_; }
    Realization take_witness() { return std::move(witness_); }

private:
    bool tick() {
        if (++visited_ > cfg_.budget) budget_hit_ = true;
        return !budget_hit_;
    }

    bool dfs() {
        if (!tick()) return false;
        if (trace_.back().is_zero() && try_filling()) return true;
        if (budget_hit_) return false;
        if (path_.size() >= cfg_.nonrepeating_cap) return false;
        for (int t : order_) {
            if (avail_[t] == 0) continue;
            auto np = recurrence_step(trace_.back(), pairs_[t]);
            if (!np) continue;
            if (np->value() >= cfg_.high_threshold) continue;  // low-potential constraint
            --avail_[t];
            path_.push_back(pairs_[t]);
            trace_.push_back(std::move(*np));
            const bool ok = !has_immediate_repetition() && dfs();
            ++avail_[t];
            path_.pop_back();
            trace_.pop_back();
            if (ok) return true;
            if (budget_hit_) return false;
        }
        return false;
    }

    // A non-repeating ordering never contains two immediately consecutive
    // occurrences of the same super-type; such tails are re-created by the
    // filling step instead of being enumerated.
    bool has_immediate_repetition() const {
        const int j = static_cast<int>(path_.size());
        const int max_len =
            static_cast<int>(std::min<std::uint64_t>(cfg_.supertype_len_cap, j / 2));
        for (int len = 1; len <= max_len; ++len) {
            if (!(trace_[j] == trace_[j - len]) || !(trace_[j] == trace_[j - 2 * len]))
                continue;
            if (!std::equal(path_.end() - len, path_.end(), path_.end() - 2 * len)) continue;
            bool interior = false;
            for (int t = j - len + 1; t < j && !interior; ++t)
                interior = trace_[t] == trace_[j];
            if (!interior) return true;
        }
        return false;
    }

    // The current zero-potential path is a candidate non-repeating ordering:
    // solve the filling system over its super-types and re-check the filled
    // ordering from scratch.
    bool try_filling() {
        if (!tick()) return false;
        std::vector<SuperType> supers =
            detect_supertypes(trace_, path_, cfg_.supertype_len_cap);
        std::vector<long long> demand(avail_.begin(), avail_.end());
        std::vector<std::vector<long long>> occurrence;
        occurrence.reserve(supers.size());
        for (const SuperType& s : supers) {
            std::vector<long long> col(table_.size(), 0);
            for (const DegreePair& p : s.body) ++col[table_.index_of(p)];
            occurrence.push_back(std::move(col));
        }
        auto f = solve_filling(FillingSystem(std::move(occurrence), std::move(demand)));
        if (!f) return false;

        Ordering filled;
        for (std::size_t pos = 1; pos <= path_.size(); ++pos) {
            filled.push_back(path_[pos - 1]);
            for (std::size_t i = 0; i < supers.size(); ++i) {
                if (supers[i].first_end != static_cast<int>(pos)) continue;
                for (long long c = 0; c < (*f)[i]; ++c)
                    filled.insert(filled.end(), supers[i].body.begin(),
                                  supers[i].body.end());
            }
        }
        // the system guarantees the counts; assert rather than assume
        std::vector<int> counts(table_.size(), 0);
        for (const DegreePair& p : filled) ++counts[table_.index_of(p)];
        for (int t = 0; t < table_.size(); ++t)
            if (counts[t] != table_.entries[t].multiplicity) return false;
        if (!check_ordering(filled, delta_).feasible) return false;

        out_.nonrepeating = path_;
        out_.supertypes = std::move(supers);
        out_.filling = std::move(*f);
        witness_ = well_connect(filled);
        return true;
    }

    const FptConfig cfg_;
    const TypeTable table_;
    const std::vector<DegreePair> pairs_;
    const std::vector<int> order_;
    const int delta_;
    LowPhaseResult& out_;
    std::vector<int> avail_;
    Ordering path_;
    std::vector<Potential> trace_;
    std::uint64_t visited_ = 0;
    bool budget_hit_ = false;
    Realization witness_;
};

}  // namespace

HighPhaseResult solve_high_potential(const DegreeSequence& seq, const FptConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const FptConfig eff = resolve_config(seq, cfg);
    HighPhaseResult res;
    if (seq.n() == 0) {
        // the empty realization has no positions, hence no high potential
        res.outcome = PhaseOutcome::Negative;
        res.complete = true;
        res.stats.millis = static_cast<double>(elapsed_ms(start));
        return res;
    }
    HighSearcher searcher(seq, eff);
    const bool found = searcher.run();
    res.stats.states_visited = searcher.visited();
    res.stats.millis = static_cast<double>(elapsed_ms(start));
    if (found) {
        res.outcome = PhaseOutcome::Realizable;
        res.witness = with_isolates(searcher.take_witness(), seq.isolates);
        return res;
    }
    if (searcher.budget_hit()) {
        res.outcome = PhaseOutcome::ResourceLimit;
        return res;
    }
    res.outcome = PhaseOutcome::Negative;
    res.complete = caps_reach_bound(eff.prefix_suffix_cap,
                                    theory_prefix_suffix_cap(std::max(1, seq.delta)),
                                    seq.n());
    return res;
}

LowPhaseResult solve_low_potential(const DegreeSequence& seq, const FptConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const FptConfig eff = resolve_config(seq, cfg);
    LowPhaseResult res;
    if (seq.n() == 0) {
        res.outcome = PhaseOutcome::Realizable;
        res.witness = with_isolates(Realization{}, seq.isolates);
        res.complete = true;
        res.stats.millis = static_cast<double>(elapsed_ms(start));
        return res;
    }
    LowSearcher searcher(seq, eff, res);
    const bool found = searcher.run();
    res.stats.states_visited = searcher.visited();
    res.stats.millis = static_cast<double>(elapsed_ms(start));
    if (found) {
        res.outcome = PhaseOutcome::Realizable;
        res.witness = with_isolates(searcher.take_witness(), seq.isolates);
        return res;
    }
    if (searcher.budget_hit()) {
        res.outcome = PhaseOutcome::ResourceLimit;
        return res;
    }
    const int d = std::max(1, seq.delta);
    res.outcome = PhaseOutcome::Negative;
    res.complete = caps_reach_bound(eff.nonrepeating_cap, theory_nonrepeating_cap(d),
                                    seq.n()) &&
                   caps_reach_bound(eff.supertype_len_cap, theory_supertype_len_cap(d),
                                    seq.n());
    return res;
}

FptResult solve_fpt(const DegreeSequence& seq, const FptConfig& cfg) {
    FptResult res;
    if (seq.n() == 0) {
        res.verdict = FptVerdict::Realizable;
        res.witness = with_isolates(Realization{}, seq.isolates);
        return res;
    }
    const NecessaryResult nc = necessary_checks(seq);
    if (!nc.ok()) {
        res.verdict = FptVerdict::Unrealizable;
        res.note = nc.reason;
        return res;
    }

    res.low = solve_low_potential(seq, cfg);
    res.stats.states_visited += res.low.stats.states_visited;
    res.stats.millis += res.low.stats.millis;
    if (res.low.outcome == PhaseOutcome::Realizable) {
        res.verdict = FptVerdict::Realizable;
        res.witness = res.low.witness;
        return res;
    }

    res.high = solve_high_potential(seq, cfg);
    res.stats.states_visited += res.high.stats.states_visited;
    res.stats.millis += res.high.stats.millis;
    if (res.high.outcome == PhaseOutcome::Realizable) {
        res.verdict = FptVerdict::Realizable;
        res.witness = res.high.witness;
        return res;
    }

    if (res.low.outcome == PhaseOutcome::ResourceLimit ||
        res.high.outcome == PhaseOutcome::ResourceLimit) {
        res.verdict = FptVerdict::ResourceLimit;
        res.note = "search budget exhausted";
        return res;
    }
    if (res.low.complete && res.high.complete) {
        res.verdict = FptVerdict::Unrealizable;
        return res;
    }
    const FptConfig eff = resolve_config(seq, cfg);
    res.verdict = FptVerdict::Unknown;
    res.note = "no realization found within caps (prefix/suffix=" +
               std::to_string(eff.prefix_suffix_cap) +
               ", nonrepeating=" + std::to_string(eff.nonrepeating_cap) +
               ", supertype=" + std::to_string(eff.supertype_len_cap) + ")";
    return res;
}

}  // namespace dagreal
