#include <doctest.h>

#include <algorithm>
#include <random>

#include "dagreal/exact.hpp"
#include "dagreal/fpt.hpp"
#include "dagreal/generator.hpp"
#include "dagreal/reduction.hpp"
#include "helpers.hpp"

using namespace dagreal;

namespace {

std::vector<DegreePair> sorted(std::vector<DegreePair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::vector<DegreePair> witness_multiset(const Realization& real) {
    return sorted(real.degree_assignment);
}

}  // namespace

TEST_CASE("theoretical cap formulas") {
    CHECK(theory_prefix_suffix_cap(1) == 1);
    CHECK(theory_prefix_suffix_cap(2) == 16);
    CHECK(theory_prefix_suffix_cap(3) == 729);
    CHECK(theory_nonrepeating_cap(1) == 2);
    CHECK(theory_nonrepeating_cap(2) == 16ull * ((1ull << 36) + 16));
}

TEST_CASE("high phase accepts a sequence that needs high potential") {
    // delta = 2, threshold 4: two sources must open before any sink
    const DegreeSequence seq =
        normalize({{0, 2}, {0, 2}, {0, 2}, {0, 2}, {2, 0}, {2, 0}, {2, 0}, {2, 0}});
    const HighPhaseResult res = solve_high_potential(seq, FptConfig::for_sequence(seq));
    REQUIRE(res.outcome == PhaseOutcome::Realizable);
    REQUIRE(res.witness.has_value());
    CHECK(verify(seq, *res.witness).valid);
    CHECK(brute_force_oracle(seq) == OracleVerdict::Realizable);
    CHECK(solve_exact(seq).verdict == SolveVerdict::Realizable);

    // the witness trace must actually reach the threshold
    Ordering ordering(res.witness->n);
    for (int i = 0; i < res.witness->n; ++i)
        ordering[i] = res.witness->degree_assignment[res.witness->topo_order[i]];
    const TraceResult tr = check_ordering(ordering, seq.delta);
    REQUIRE(tr.feasible);
    int max_value = 0;
    for (const Potential& p : tr.trace) max_value = std::max(max_value, p.value());
    CHECK(max_value >= 4);
}

TEST_CASE("high phase rejects the low-potential repetition family") {
    // max potential value is 6, strictly below delta^2 = 16
    const DegreeSequence seq = normalize(testing::repetition_family_pairs(3));
    const HighPhaseResult res = solve_high_potential(seq, FptConfig::for_sequence(seq));
    CHECK(res.outcome == PhaseOutcome::Negative);
    CHECK(res.complete);  // caps at their effective bounds: a genuine proof
}

TEST_CASE("detect_supertypes on the repetition family at k=2") {
    const Ordering fam2 = testing::repetition_family_pairs(2);
    const TraceResult tr = check_ordering(fam2, 4);
    REQUIRE(tr.feasible);
    const std::vector<SuperType> supers = detect_supertypes(tr.trace, fam2, 4);
    const Ordering want_body = {{2, 1}, {3, 4}};
    bool found = false;
    for (const SuperType& s : supers) {
        if (s.body != want_body) continue;
        found = true;
        CHECK(s.boundary_potential.counts == std::vector<int>{2, 2, 1, 1});
        CHECK(s.first_start == 2);
        CHECK(s.first_end == 4);
    }
    CHECK(found);
}

TEST_CASE("detect_supertypes with strictly falling potential values") {
    const Ordering ordering = {{0, 3}, {1, 0}, {1, 0}, {1, 0}};
    const TraceResult tr = check_ordering(ordering, 3);
    REQUIRE(tr.feasible);
    // every potential differs except the zero endpoints, which span length 4
    CHECK(detect_supertypes(tr.trace, ordering, 3).empty());
}

TEST_CASE("detect_supertypes finds singleton balanced blocks") {
    const Ordering ordering = {{0, 1}, {1, 1}, {1, 0}};
    const TraceResult tr = check_ordering(ordering, 1);
    REQUIRE(tr.feasible);
    const std::vector<SuperType> supers = detect_supertypes(tr.trace, ordering, 3);
    bool found = false;
    for (const SuperType& s : supers)
        if (s.body == Ordering{{1, 1}}) found = true;
    CHECK(found);
}

TEST_CASE("low phase fills the repetition family") {
    for (int k = 1; k <= 6; ++k) {
        const DegreeSequence seq = normalize(testing::repetition_family_pairs(k));
        const FptConfig cfg = FptConfig::with_user_caps(seq, 0, 8, 4);
        const LowPhaseResult res = solve_low_potential(seq, cfg);
        REQUIRE(res.outcome == PhaseOutcome::Realizable);
        CHECK(verify(seq, *res.witness).valid);
        // the filling must re-insert the repeated block k-1 times
        long long repeated = 0;
        const Ordering want_body = {{2, 1}, {3, 4}};
        for (std::size_t i = 0; i < res.supertypes.size(); ++i) {
            if (sorted(res.supertypes[i].body) == sorted(want_body))
                repeated += res.filling[i];
            else
                CHECK(res.filling[i] == 0);
        }
        CHECK(repeated == k - 1);
    }
}

TEST_CASE("low phase keeps short feasible sequences as-is") {
    // delta = 2, so the trace values 2,1,0 stay below the threshold 4
    const DegreeSequence seq = normalize({{0, 2}, {1, 0}, {1, 0}});
    const LowPhaseResult res = solve_low_potential(seq, FptConfig::for_sequence(seq));
    REQUIRE(res.outcome == PhaseOutcome::Realizable);
    for (long long f : res.filling) CHECK(f == 0);
}

TEST_CASE("delta 1 realizations are always high potential") {
    // any placement immediately reaches the threshold delta^2 = 1
    const DegreeSequence seq = normalize({{0, 1}, {1, 1}, {1, 0}});
    const LowPhaseResult low = solve_low_potential(seq, FptConfig::for_sequence(seq));
    CHECK(low.outcome == PhaseOutcome::Negative);
    CHECK(low.complete);
    const FptResult full = solve_fpt(seq, FptConfig::for_sequence(seq));
    REQUIRE(full.verdict == FptVerdict::Realizable);
    CHECK(full.high.outcome == PhaseOutcome::Realizable);
}

TEST_CASE("low phase reports an unfillable imbalance") {
    // one extra (2,1) breaks arc conservation; no filling can repair it
    std::vector<DegreePair> pairs = testing::repetition_family_pairs(2);
    pairs.push_back({2, 1});
    const DegreeSequence seq = normalize(pairs);
    const LowPhaseResult res = solve_low_potential(seq, FptConfig::for_sequence(seq));
    CHECK(res.outcome == PhaseOutcome::Negative);
    CHECK(solve_exact(seq).verdict == SolveVerdict::Unrealizable);
}

TEST_CASE("solve_fpt examples") {
    const DegreeSequence tiny = normalize({{0, 1}, {1, 0}});
    const FptResult r1 = solve_fpt(tiny, FptConfig::for_sequence(tiny));
    REQUIRE(r1.verdict == FptVerdict::Realizable);
    CHECK(verify(tiny, *r1.witness).valid);

    const DegreeSequence par = testing::seq_of({{0, 2}, {2, 0}});
    const FptResult r2 = solve_fpt(par, FptConfig::for_sequence(par));
    CHECK(r2.verdict == FptVerdict::Unrealizable);

    const DegreeSequence ex = normalize(testing::example12_pairs());
    const FptResult r3 = solve_fpt(ex, FptConfig::for_sequence(ex));
    REQUIRE(r3.verdict == FptVerdict::Realizable);
    CHECK(verify(ex, *r3.witness).valid);
    // found by the low phase: the max trace value 6 stays below delta^2 = 9
    CHECK(r3.low.outcome == PhaseOutcome::Realizable);
}

TEST_CASE("fpt phases report budget exhaustion") {
    const DegreeSequence seq = normalize(testing::repetition_family_pairs(3));
    FptConfig cfg = FptConfig::for_sequence(seq);
    cfg.budget = 2;
    CHECK(solve_low_potential(seq, cfg).outcome == PhaseOutcome::ResourceLimit);
    CHECK(solve_high_potential(seq, cfg).outcome == PhaseOutcome::ResourceLimit);
    CHECK(solve_fpt(seq, cfg).verdict == FptVerdict::ResourceLimit);
}

TEST_CASE("solve_fpt agrees with the oracle on small multisets") {
    int checked = 0;
    testing::for_each_multiset(6, 2, [&](const std::vector<DegreePair>& pairs) {
        ++checked;
        DegreeSequence seq;
        try {
            seq = normalize(pairs);
        } catch (const NormalizeError&) {
            CHECK(brute_force_oracle(pairs) == OracleVerdict::Unrealizable);
            return;
        }
        const FptResult got = solve_fpt(seq, FptConfig::for_sequence(seq));
        const OracleVerdict want = brute_force_oracle(pairs);
        REQUIRE((got.verdict == FptVerdict::Realizable ||
                 got.verdict == FptVerdict::Unrealizable));
        CHECK((got.verdict == FptVerdict::Realizable) ==
              (want == OracleVerdict::Realizable));
        if (got.witness) CHECK(witness_multiset(*got.witness) == sorted(pairs));
    });
    CHECK(checked > 3000);
}

TEST_CASE("solve_fpt agrees with solve_exact on random instances") {
    std::mt19937_64 rng(8888);
    std::uniform_int_distribution<int> deg(0, 3);
    int checked = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 10)(rng);
        std::vector<DegreePair> raw;
        if (trial % 3 == 0) raw = generate_instance(n, 3, rng());
        else
            for (int i = 0; i < n; ++i) raw.push_back({deg(rng), deg(rng)});
        DegreeSequence seq;
        try {
            seq = normalize(raw);
        } catch (const NormalizeError&) {
            continue;
        }
        const SolveResult ex = solve_exact(seq);
        REQUIRE(ex.verdict != SolveVerdict::ResourceLimit);
        const FptResult fp = solve_fpt(seq, FptConfig::for_sequence(seq));
        REQUIRE((fp.verdict == FptVerdict::Realizable ||
                 fp.verdict == FptVerdict::Unrealizable));
        CHECK((fp.verdict == FptVerdict::Realizable) ==
              (ex.verdict == SolveVerdict::Realizable));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("good-before-bad reordering between high potentials stays feasible") {
    std::mt19937_64 rng(601);
    int applied = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(6, 12)(rng);
        const Ordering ordering = generate_instance(n, 2, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        const int delta = max_degree(ordering);
        const int threshold = delta * delta;
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(tr.trace.size()); ++i) {
            if (tr.trace[i].value() < threshold) continue;
            if (first < 0) first = i;
            last = i;
        }
        if (first < 0 || last <= first) continue;
        ++applied;
        Ordering middle(ordering.begin() + first, ordering.begin() + last);
        std::stable_sort(middle.begin(), middle.end(), [](DegreePair a, DegreePair b) {
            const bool ga = a.in_deg <= a.out_deg, gb = b.in_deg <= b.out_deg;
            if (ga != gb) return ga;
            return a < b;
        });
        Ordering permuted(ordering.begin(), ordering.begin() + first);
        permuted.insert(permuted.end(), middle.begin(), middle.end());
        permuted.insert(permuted.end(), ordering.begin() + last, ordering.end());
        CHECK(check_ordering(permuted, delta).feasible);
    }
    CHECK(applied > 30);
}

TEST_CASE("reinserting a detected super-type preserves feasibility") {
    std::mt19937_64 rng(701);
    int applied = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(4, 10)(rng);
        const int delta = std::uniform_int_distribution<int>(1, 3)(rng);
        const Ordering ordering = generate_instance(n, delta, rng());
        const TraceResult tr = check_ordering(ordering);
        REQUIRE(tr.feasible);
        const int d = max_degree(ordering);
        const std::vector<SuperType> supers = detect_supertypes(tr.trace, ordering, n);
        for (const SuperType& s : supers) {
            const PartialOrderingSpec block{s.body, s.boundary_potential,
                                            s.boundary_potential};
            for (int i = 0; i < static_cast<int>(tr.trace.size()); ++i) {
                if (!(tr.trace[i] == s.boundary_potential)) continue;
                ++applied;
                const Ordering grown = insert_at(ordering, block, i, d);
                CHECK(check_ordering(grown, d).feasible);
            }
        }
    }
    CHECK(applied > 100);
}
