#ifndef DAGREAL_FILLING_HPP
#define DAGREAL_FILLING_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dagreal/types.hpp"

namespace dagreal {

class MalformedSystem : public Error {
public:
    using Error::Error;
};

/// Nonnegative integer equality system: find f >= 0 with
///   sum_i f[i] * occurrence[i][e] = demand[e]   for every element type e.
/// occurrence[i] is the per-element-type count column of repeatable block i.
struct FillingSystem {
    std::vector<std::vector<long long>> occurrence;
    std::vector<long long> demand;

    FillingSystem(std::vector<std::vector<long long>> occurrence_,
                  std::vector<long long> demand_);

    std::size_t k() const { return occurrence.size(); }
    std::size_t element_types() const { return demand.size(); }
};

/// Exact solver by bounded depth-first enumeration with constraint
/// propagation. Returns the lexicographically smallest solution, or nullopt
/// as a proof that none exists.
std::optional<std::vector<long long>> solve_filling(const FillingSystem& sys);

}  // namespace dagreal

#endif
