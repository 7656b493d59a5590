#ifndef DAGREAL_TESTS_HELPERS_HPP
#define DAGREAL_TESTS_HELPERS_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "dagreal/types.hpp"

namespace dagreal::testing {

// Builds a DegreeSequence directly, bypassing normalize's simple-graph degree
// bound; several solver edge cases (e.g. {(0,2),(2,0)}) are only reachable
// this way.
inline DegreeSequence seq_of(const std::vector<DegreePair>& raw) {
    DegreeSequence seq;
    for (const DegreePair& p : raw) {
        if (p.in_deg == 0 && p.out_deg == 0) {
            ++seq.isolates;
            continue;
        }
        seq.pairs.push_back(p);
        seq.delta = std::max({seq.delta, p.in_deg, p.out_deg});
    }
    return seq;
}

// 12-element example sequence; its listed order is a realizing ordering.
inline std::vector<DegreePair> example12_pairs() {
    return {{0, 1}, {0, 1}, {0, 2}, {2, 2}, {2, 2}, {1, 2},
            {2, 3}, {3, 2}, {2, 1}, {3, 2}, {2, 0}, {1, 0}};
}

// Two-type repetition family: (0,2),(0,4), k x [(2,1),(3,4)], (2,0),(2,0),(1,0),(1,0).
inline std::vector<DegreePair> repetition_family_pairs(int k) {
    std::vector<DegreePair> pairs = {{0, 2}, {0, 4}};
    for (int i = 0; i < k; ++i) {
        pairs.push_back({2, 1});
        pairs.push_back({3, 4});
    }
    pairs.push_back({2, 0});
    pairs.push_back({2, 0});
    pairs.push_back({1, 0});
    pairs.push_back({1, 0});
    return pairs;
}

// Enumerates every multiset of size 1..max_n over pairs in [0,delta]^2 minus
// (0,0), as sorted vectors.
inline void for_each_multiset(int max_n, int delta,
                              const std::function<void(const std::vector<DegreePair>&)>& fn) {
    std::vector<DegreePair> universe;
    for (int a = 0; a <= delta; ++a)
        for (int b = 0; b <= delta; ++b)
            if (a != 0 || b != 0) universe.push_back({a, b});
    std::vector<DegreePair> current;
    const std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!current.empty()) fn(current);
        if (static_cast<int>(current.size()) == max_n) return;
        for (std::size_t i = from; i < universe.size(); ++i) {
            current.push_back(universe[i]);
            rec(i);
            current.pop_back();
        }
    };
    rec(0);
}

}  // namespace dagreal::testing

#endif
