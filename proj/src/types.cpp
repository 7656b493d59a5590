#include "dagreal/types.hpp"

#include <algorithm>
#include <map>

namespace dagreal {

DegreeSequence normalize(const std::vector<DegreePair>& raw) {
    DegreeSequence seq;
    for (const DegreePair& p : raw) {
        if (p.in_deg < 0 || p.out_deg < 0)
            throw NormalizeError("negative degree entry");
        if (p.in_deg == 0 && p.out_deg == 0) {
            ++seq.isolates;
            continue;
        }
        seq.pairs.push_back(p);
    }
    const int n = seq.n();
    for (const DegreePair& p : seq.pairs) {
        if (p.in_deg >= n)
            throw NormalizeError("in_deg " + std::to_string(p.in_deg) +
                                 " >= n=" + std::to_string(n));
        if (p.out_deg >= n)
            throw NormalizeError("out_deg " + std::to_string(p.out_deg) +
                                 " >= n=" + std::to_string(n));
        seq.delta = std::max({seq.delta, p.in_deg, p.out_deg});
    }
    return seq;
}

NecessaryResult necessary_checks(const DegreeSequence& seq) {
    NecessaryResult res;
    bool has_source = false;
    bool has_sink = false;
    for (const DegreePair& p : seq.pairs) {
        res.sum_in += p.in_deg;
        res.sum_out += p.out_deg;
        has_source |= p.in_deg == 0;
        has_sink |= p.out_deg == 0;
    }
    if (res.sum_in != res.sum_out) {
        res.kind = NecessaryCheck::SumMismatch;
        res.reason = "sum mismatch: in=" + std::to_string(res.sum_in) +
                     ", out=" + std::to_string(res.sum_out);
    } else if (seq.n() >= 1 && !has_source) {
        res.kind = NecessaryCheck::NoSource;
        res.reason = "no source (no pair with in_deg = 0)";
    } else if (seq.n() >= 1 && !has_sink) {
        res.kind = NecessaryCheck::NoSink;
        res.reason = "no sink (no pair with out_deg = 0)";
    }
    return res;
}

int TypeTable::index_of(DegreePair p) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), p,
                               [](const TypeEntry& e, DegreePair q) { return e.pair < q; });
    if (it == entries.end() || it->pair != p) return -1;
    return static_cast<int>(it - entries.begin());
}

TypeTable type_table(const DegreeSequence& seq) {
    std::map<DegreePair, int> counts;
    for (const DegreePair& p : seq.pairs) ++counts[p];
    TypeTable table;
    table.entries.reserve(counts.size());
    for (const auto& [pair, mult] : counts)
        table.entries.push_back({pair, mult, pair.in_deg <= pair.out_deg});
    return table;
}

Realization with_isolates(Realization real, int count) {
    for (int i = 0; i < count; ++i) {
        real.degree_assignment.push_back({0, 0});
        real.topo_order.push_back(real.n + i);
    }
    real.n += count;
    return real;
}

}  // namespace dagreal
