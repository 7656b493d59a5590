#ifndef DAGREAL_SRC_STATE_KEY_HPP
#define DAGREAL_SRC_STATE_KEY_HPP

#include <cstddef>
#include <vector>

#include "dagreal/potential.hpp"

namespace dagreal::detail {

// Memoization key: remaining type multiplicities followed by the potential
// counts, packed flat.
struct StateKey {
    std::vector<int> packed;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : k.packed) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline StateKey pack_state(const std::vector<int>& remaining, const Potential& potential) {
    StateKey key;
    key.packed.reserve(remaining.size() + potential.counts.size());
    key.packed.insert(key.packed.end(), remaining.begin(), remaining.end());
    key.packed.insert(key.packed.end(), potential.counts.begin(), potential.counts.end());
    return key;
}

}  // namespace dagreal::detail

#endif
