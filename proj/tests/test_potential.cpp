#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "dagreal/generator.hpp"
#include "dagreal/potential.hpp"
#include "dagreal/reduction.hpp"
#include "helpers.hpp"

using namespace dagreal;

namespace {

PrefixState state_of(std::vector<int> remaining, int delta) {
    PrefixState s(delta);
    s.remaining = std::move(remaining);
    std::sort(s.remaining.begin(), s.remaining.end(), std::greater<int>());
    return s;
}

Potential pot(std::vector<int> counts) {
    Potential p;
    p.counts = std::move(counts);
    return p;
}

// All non-increasing vectors of the given length with value exactly x.
void enumerate_potentials(int delta, int x, int max_entry, std::vector<Potential>& out,
                          std::vector<int>& current) {
    if (static_cast<int>(current.size()) == delta) {
        if (x == 0) {
            Potential p;
            p.counts = current;
            out.push_back(p);
        }
        return;
    }
    const int cap = current.empty() ? max_entry : current.back();
    for (int v = std::min(cap, x); v >= 0; --v) {
        current.push_back(v);
        enumerate_potentials(delta, x - v, max_entry, out, current);
        current.pop_back();
    }
}

std::vector<Potential> all_potentials(int delta, int value, int max_entry) {
    std::vector<Potential> out;
    std::vector<int> current;
    enumerate_potentials(delta, value, max_entry, out, current);
    return out;
}

PrefixState state_from_potential(const Potential& p) {
    PrefixState s(p.delta());
    for (int l = p.delta(); l >= 1; --l) {
        const int above = l < p.delta() ? p.counts[l] : 0;
        for (int c = p.counts[l - 1] - above; c > 0; --c) s.remaining.push_back(l);
    }
    std::sort(s.remaining.begin(), s.remaining.end(), std::greater<int>());
    return s;
}

}  // namespace

TEST_CASE("step examples") {
    // not enough positive remaining outdegrees
    CHECK_FALSE(step(state_of({2, 4}, 4), {3, 4}).has_value());

    // mid-trace step of the 12-element example: {1,1,1,2} + (2,3)
    const auto next = step(state_of({1, 1, 1, 2}, 3), {2, 3});
    REQUIRE(next.has_value());
    CHECK(next->remaining == std::vector<int>{3, 1, 1, 1});
    CHECK(next->potential() == pot({4, 1, 1}));

    // first source
    const auto first = step(PrefixState(3), {0, 1});
    REQUIRE(first.has_value());
    CHECK(first->remaining == std::vector<int>{1});
    CHECK(first->potential() == pot({1, 0, 0}));
}

TEST_CASE("recurrence_step examples") {
    // prefix {1,1,2} followed by (2,2)
    const Potential p3 = state_of({1, 1, 2}, 3).potential();
    const auto p4 = recurrence_step(p3, {2, 2});
    REQUIRE(p4.has_value());
    CHECK(*p4 == pot({3, 1, 0}));

    // lone source from the zero potential
    const auto lone = recurrence_step(Potential::zero(4), {0, 3});
    REQUIRE(lone.has_value());
    CHECK(*lone == pot({1, 1, 1, 0}));

    // simulated on the multiset {2,4}: decrement 4->3 and 2->1
    const auto sink = recurrence_step(pot({2, 2, 1, 1}), {2, 0});
    REQUIRE(sink.has_value());
    CHECK(*sink == pot({2, 1, 1, 0}));

    CHECK_FALSE(recurrence_step(pot({2, 2, 1, 1}), {3, 4}).has_value());
}

TEST_CASE("check_ordering reproduces the example trace") {
    const TraceResult tr = check_ordering(testing::example12_pairs(), 3);
    REQUIRE(tr.feasible);
    REQUIRE(tr.trace.size() == 13);
    CHECK(tr.trace[3] == pot({3, 1, 0}));
    CHECK(tr.trace[7] == pot({4, 1, 1}));
    CHECK(tr.trace[8] == pot({3, 2, 0}));
    CHECK(tr.trace[12] == Potential::zero(3));
}

TEST_CASE("check_ordering rejects a parallel-arc demand") {
    const TraceResult tr = check_ordering({{0, 2}, {2, 0}}, 2);
    CHECK_FALSE(tr.feasible);
    CHECK(tr.fail_pos == 2);
}

TEST_CASE("check_ordering on the repetition family at k=1") {
    const TraceResult tr = check_ordering(testing::repetition_family_pairs(1), 4);
    REQUIRE(tr.feasible);
    int max_value = 0;
    for (const Potential& p : tr.trace) max_value = std::max(max_value, p.value());
    CHECK(max_value == 6);
}

TEST_CASE("check_ordering flags a nonzero final potential") {
    const TraceResult tr = check_ordering({{0, 2}, {1, 0}}, 2);
    CHECK_FALSE(tr.feasible);
    CHECK(tr.fail_pos == 3);
}

TEST_CASE("step and recurrence_step agree everywhere") {
    // exhaustive: delta <= 3, every potential of value <= 9, every pair
    for (int delta = 1; delta <= 3; ++delta)
        for (int value = 0; value <= 9; ++value)
            for (const Potential& p : all_potentials(delta, value, 9))
                for (int a = 0; a <= delta; ++a)
                    for (int b = 0; b <= delta; ++b) {
                        const PrefixState st = state_from_potential(p);
                        const auto via_sim = step(st, {a, b});
                        const auto via_rec = recurrence_step(p, {a, b});
                        REQUIRE(via_sim.has_value() == via_rec.has_value());
                        if (via_sim) CHECK(via_sim->potential() == *via_rec);
                    }

    // randomized at delta <= 5
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20000; ++trial) {
        const int delta = std::uniform_int_distribution<int>(1, 5)(rng);
        PrefixState st(delta);
        const int len = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < len; ++i)
            st.remaining.push_back(std::uniform_int_distribution<int>(1, delta)(rng));
        std::sort(st.remaining.begin(), st.remaining.end(), std::greater<int>());
        const DegreePair pair{std::uniform_int_distribution<int>(0, delta)(rng),
                              std::uniform_int_distribution<int>(0, delta)(rng)};
        const auto via_sim = step(st, pair);
        const auto via_rec = recurrence_step(st.potential(), pair);
        REQUIRE(via_sim.has_value() == via_rec.has_value());
        if (via_sim) CHECK(via_sim->potential() == *via_rec);
    }
}

TEST_CASE("potential value changes match in minus out along feasible orderings") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 10)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 4)(rng);
        const Ordering ordering = generate_instance(n, delta, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        for (std::size_t i = 0; i + 1 < tr.trace.size(); ++i)
            CHECK(tr.trace[i].value() - tr.trace[i + 1].value() ==
                  ordering[i].in_deg - ordering[i].out_deg);
    }
}

TEST_CASE("well_connect examples") {
    const Realization two = well_connect({{0, 1}, {1, 0}});
    CHECK(two.arcs == std::vector<std::pair<int, int>>{{0, 1}});

    const Realization star = well_connect({{0, 2}, {1, 0}, {1, 0}});
    CHECK(star.arcs == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

    const Realization ex = well_connect(testing::example12_pairs());
    CHECK(ex.arcs.size() == 18);  // sum of in-degrees
    const DegreeSequence seq = normalize(testing::example12_pairs());
    CHECK(verify(seq, ex).valid);
}

TEST_CASE("well_connect output is topologically ordered and verifies") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 4)(rng);
        const std::vector<DegreePair> pairs = generate_instance(n, delta, rng());
        // well_connect keeps isolated entries as arc-less vertices, so the
        // realization already covers the whole raw multiset
        const Realization real = well_connect(pairs);
        for (const auto& [u, v] : real.arcs) CHECK(u < v);
        CHECK(verify(normalize(pairs), real).valid);
    }
}

TEST_CASE("well_connect rejects infeasible orderings") {
    CHECK_THROWS_AS(well_connect({{0, 2}, {2, 0}}), InfeasibleOrdering);
    CHECK_THROWS_AS(well_connect({{1, 0}}), InfeasibleOrdering);
}

TEST_CASE("potential_ge prefix dominance") {
    CHECK(potential_ge(pot({3, 1, 0}), pot({2, 2, 0})));
    CHECK_FALSE(potential_ge(pot({2, 2, 0}), pot({3, 1, 0})));
    CHECK(potential_ge(pot({2, 2, 0}), pot({2, 2, 0})));
}

TEST_CASE("potential_ge is a partial order") {
    const std::vector<Potential> ps = [] {
        std::vector<Potential> out;
        for (int value = 0; value <= 6; ++value)
            for (const Potential& p : all_potentials(3, value, 6)) out.push_back(p);
        return out;
    }();
    for (const Potential& p : ps) {
        CHECK(potential_ge(p, p));
        for (const Potential& q : ps) {
            if (potential_ge(p, q) && potential_ge(q, p))
                CHECK(std::accumulate(p.counts.begin(), p.counts.end(), 0) ==
                      std::accumulate(q.counts.begin(), q.counts.end(), 0));
            for (const Potential& r : ps)
                if (potential_ge(p, q) && potential_ge(q, r)) CHECK(potential_ge(p, r));
        }
    }
}

TEST_CASE("min_potential examples and minimality") {
    CHECK(min_potential(7, 3) == pot({3, 2, 2}));
    CHECK(min_potential(9, 3) == pot({3, 3, 3}));
    CHECK(min_potential(0, 4) == pot({0, 0, 0, 0}));

    for (int delta = 1; delta <= 4; ++delta)
        for (int x = 0; x <= 8; ++x) {
            const Potential lo = min_potential(x, delta);
            CHECK(lo.value() == x);
            for (const Potential& q : all_potentials(delta, x, x))
                CHECK(potential_ge(q, lo));
        }
}

TEST_CASE("splice_out examples") {
    const Ordering fam2 = testing::repetition_family_pairs(2);
    const TraceResult tr = check_ordering(fam2, 4);
    REQUIRE(tr.feasible);
    // the boundary potential of the repeated block recurs at positions 2 and 4
    REQUIRE(tr.trace[2] == pot({2, 2, 1, 1}));
    REQUIRE(tr.trace[4] == pot({2, 2, 1, 1}));
    const Ordering spliced = splice_out(fam2, 2, 4, 4);
    CHECK(spliced == testing::repetition_family_pairs(1));
    CHECK(check_ordering(spliced, 4).feasible);

    CHECK(splice_out(fam2, 3, 3, 4) == fam2);
    CHECK_THROWS_AS(splice_out(fam2, 1, 2, 4), PotentialMismatch);
}

TEST_CASE("insert_at examples") {
    const Ordering fam1 = testing::repetition_family_pairs(1);
    const Potential boundary = pot({2, 2, 1, 1});
    const PartialOrderingSpec block = make_partial_ordering({{2, 1}, {3, 4}}, boundary);
    CHECK(block.output_potential == boundary);

    const Ordering inserted = insert_at(fam1, block, 4, 4);
    CHECK(inserted == testing::repetition_family_pairs(2));
    CHECK(check_ordering(inserted, 4).feasible);

    const PartialOrderingSpec empty = make_partial_ordering({}, boundary);
    CHECK(insert_at(fam1, empty, 4, 4) == fam1);

    CHECK_THROWS_AS(insert_at(fam1, block, 1, 4), PotentialMismatch);
}

TEST_CASE("partial ordering specs balance their boundary values") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 10)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 4)(rng);
        const Ordering ordering = generate_instance(n, delta, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int j = std::uniform_int_distribution<int>(i, n)(rng);
        const Ordering body(ordering.begin() + i, ordering.begin() + j);
        const PartialOrderingSpec spec = make_partial_ordering(body, tr.trace[i]);
        int sum = 0;
        for (const DegreePair& p : body) sum += p.in_deg - p.out_deg;
        CHECK(spec.input_potential.value() - spec.output_potential.value() == sum);
        CHECK(spec.output_potential == tr.trace[j]);
    }
}

TEST_CASE("cut-out preserves feasibility whenever potentials repeat") {
    std::mt19937_64 rng(41);
    int applied = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 11)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 3)(rng);
        const Ordering ordering = generate_instance(n, delta, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (!(tr.trace[i] == tr.trace[j])) continue;
                ++applied;
                const Ordering cut = splice_out(ordering, i, j, max_degree(ordering));
                const TraceResult tr2 = check_ordering(cut, max_degree(ordering));
                CHECK(tr2.feasible);
                // the tail of the trace shifts unchanged
                for (int l = 0; j + l <= n; ++l)
                    CHECK(tr2.trace[i + l] == tr.trace[j + l]);
            }
    }
    CHECK(applied > 50);
}

TEST_CASE("three equal potentials allow the block swap") {
    std::mt19937_64 rng(43);
    int applied = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(4, 11)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 3)(rng);
        const Ordering ordering = generate_instance(n, delta, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (!(tr.trace[i] == tr.trace[j])) continue;
                for (int k = j + 1; k <= n; ++k) {
                    if (!(tr.trace[j] == tr.trace[k])) continue;
                    ++applied;
                    Ordering swapped(ordering.begin(), ordering.begin() + i);
                    swapped.insert(swapped.end(), ordering.begin() + j, ordering.begin() + k);
                    swapped.insert(swapped.end(), ordering.begin() + i, ordering.begin() + j);
                    swapped.insert(swapped.end(), ordering.begin() + k, ordering.end());
                    CHECK(check_ordering(swapped, max_degree(ordering)).feasible);
                }
            }
    }
    CHECK(applied > 20);
}
