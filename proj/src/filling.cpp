#include "dagreal/filling.hpp"

#include <algorithm>
#include <limits>

namespace dagreal {

FillingSystem::FillingSystem(std::vector<std::vector<long long>> occurrence_,
                             std::vector<long long> demand_)
    : occurrence(std::move(occurrence_)), demand(std::move(demand_)) {
    for (long long d : demand)
        if (d < 0) throw MalformedSystem("negative demand");
    for (const auto& col : occurrence) {
        if (col.size() != demand.size())
            throw MalformedSystem("occurrence column size does not match demand size");
        for (long long o : col)
            if (o < 0) throw MalformedSystem("negative occurrence count");
    }
}

namespace {

bool search(const FillingSystem& sys, std::size_t i, std::vector<long long>& demand,
            std::vector<long long>& f) {
    if (i == sys.k())
        return std::all_of(demand.begin(), demand.end(), [](long long d) { return d == 0; });

    const auto& col = sys.occurrence[i];
    long long ub = 0;
    bool has_positive = false;
    for (std::size_t e = 0; e < col.size(); ++e) {
        if (col[e] == 0) continue;
        const long long bound = demand[e] / col[e];
        ub = has_positive ? std::min(ub, bound) : bound;
        has_positive = true;
    }
    if (!has_positive) ub = 0;  // all-zero column: inserting it cannot fill anything

    for (long long v = 0; v <= ub; ++v) {
        f[i] = v;
        if (v > 0)
            for (std::size_t e = 0; e < col.size(); ++e) demand[e] -= col[e];
        if (search(sys, i + 1, demand, f)) return true;
    }
    // undo the ub decrements taken above
    for (std::size_t e = 0; e < col.size(); ++e) demand[e] += ub * col[e];
    f[i] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<long long>> solve_filling(const FillingSystem& sys) {
    std::vector<long long> demand = sys.demand;
    std::vector<long long> f(sys.k(), 0);
    if (!search(sys, 0, demand, f)) return std::nullopt;
    return f;
}

}  // namespace dagreal
