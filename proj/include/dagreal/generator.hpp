#ifndef DAGREAL_GENERATOR_HPP
#define DAGREAL_GENERATOR_HPP

#include <cstdint>
#include <vector>

#include "dagreal/types.hpp"

namespace dagreal {

/// Samples a random simple DAG on n vertices with max degree <= delta and
/// returns its degree pairs in topological (vertex) order, so the result is
/// always realizable and the returned list itself is a feasible ordering.
/// With `shuffle_degrees`, the out-degrees are reshuffled across pairs, which
/// preserves the degree sums but usually breaks realizability.
std::vector<DegreePair> generate_instance(int n, int delta, std::uint64_t seed,
                                          bool shuffle_degrees = false);

}  // namespace dagreal

#endif
