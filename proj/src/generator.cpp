#include "dagreal/generator.hpp"

#include <algorithm>
#include <random>

namespace dagreal {

std::vector<DegreePair> generate_instance(int n, int delta, std::uint64_t seed,
                                          bool shuffle_degrees) {
    if (n < 0 || delta < 0) throw Error("generate_instance: n and delta must be nonnegative");
    if (n > 5000) throw Error("generate_instance: n is capped at 5000");
    std::mt19937_64 rng(seed);
    std::vector<int> in(n, 0), out(n, 0);

    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) candidates.emplace_back(u, v);
    std::shuffle(candidates.begin(), candidates.end(), rng);

    const double density =
        std::uniform_real_distribution<double>(0.25, 0.9)(rng);
    std::bernoulli_distribution keep(density);
    for (const auto& [u, v] : candidates) {
        if (out[u] >= delta || in[v] >= delta) continue;
        if (!keep(rng)) continue;
        ++out[u];
        ++in[v];
    }

    std::vector<DegreePair> pairs(n);
    for (int v = 0; v < n; ++v) pairs[v] = {in[v], out[v]};
    if (shuffle_degrees) {
        std::vector<int> outs(n);
        for (int v = 0; v < n; ++v) outs[v] = pairs[v].out_deg;
        std::shuffle(outs.begin(), outs.end(), rng);
        for (int v = 0; v < n; ++v) pairs[v].out_deg = outs[v];
    }
    return pairs;
}

}  // namespace dagreal
