#include "dagreal/reduction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace dagreal {

namespace {

// Keeps 2mB + 3m vertices and int degrees comfortably in range.
constexpr long long kMaxReducedVertices = 2'000'000;

std::string ll(long long v) { return std::to_string(v); }

}  // namespace

void validate(const ThreePartitionInstance& tp) {
    if (tp.m < 1) throw InvalidInstance("m must be at least 1");
    if (tp.big_b < 1) throw InvalidInstance("B must be at least 1");
    if (static_cast<long long>(tp.a.size()) != 3 * tp.m)
        throw InvalidInstance("expected " + ll(3 * tp.m) + " integers, got " +
                              ll(static_cast<long long>(tp.a.size())));
    long long sum = 0;
    for (long long v : tp.a) {
        if (v < 1) throw InvalidInstance("all integers must be positive");
        if (4 * v <= tp.big_b || 2 * v >= tp.big_b)
            throw InvalidInstance("a_i = " + ll(v) + " violates B/4 < a_i < B/2 for B = " +
                                  ll(tp.big_b));
        sum += v;
    }
    if (sum != tp.m * tp.big_b)
        throw InvalidInstance("sum of integers is " + ll(sum) + ", expected m*B = " +
                              ll(tp.m * tp.big_b));
    if (2 * tp.m * tp.big_b + 3 * tp.m > kMaxReducedVertices)
        throw InvalidInstance("reduced instance would exceed " + ll(kMaxReducedVertices) +
                              " vertices");
}

namespace {

// x-element of block i at offset j; valid for any 1 <= m, B without alphas.
DegreePair x_element(long long m, long long b, long long i, long long j) {
    if (i == 0) return {static_cast<int>(j), static_cast<int>(2 * m * b - j)};
    if (i == m)
        return {static_cast<int>((2 * m - 1) * b + j + 1), static_cast<int>(b - 1 - j)};
    if (j < b)
        return {static_cast<int>((2 * i - 1) * b + j + 1),
                static_cast<int>((2 * m - 2 * i + 1) * b - 1 - j)};
    return {static_cast<int>((2 * i - 1) * b + j),
            static_cast<int>((2 * m - 2 * i + 1) * b - j)};
}

long long block_size(long long m, long long i) { return (i == 0 || i == m) ? 1 : 2; }

}  // namespace

ReducedInstance reduce(const ThreePartitionInstance& tp) {
    validate(tp);
    const long long m = tp.m, b = tp.big_b;
    ReducedInstance ri;
    ri.m = m;
    ri.big_b = b;
    for (long long i = 0; i <= m; ++i)
        for (long long j = 0; j < block_size(m, i) * b; ++j) {
            ri.sequence.pairs.push_back(x_element(m, b, i, j));
            ri.roles.push_back({true, static_cast<int>(i), static_cast<int>(j)});
        }
    for (std::size_t t = 0; t < tp.a.size(); ++t) {
        ri.sequence.pairs.push_back(
            {static_cast<int>(tp.a[t]), static_cast<int>(tp.a[t])});
        ri.roles.push_back({false, 0, static_cast<int>(t)});
    }
    ri.sequence.delta = static_cast<int>(2 * m * b);
    return ri;
}

CountingIdentities counting_identities(long long m, long long big_b) {
    CountingIdentities id;
    id.d_minus_x_closed = 2 * m * m * big_b * big_b;
    id.xi_closed = 2 * m * m * big_b * big_b - m * big_b;
    for (long long i = 0; i <= m; ++i)
        for (long long j = 0; j < block_size(m, i) * big_b; ++j)
            id.d_minus_x_summed += x_element(m, big_b, i, j).in_deg;
    return id;
}

Realization witness_from_partition(const ThreePartitionInstance& tp,
                                   const std::vector<Triple>& triples) {
    validate(tp);
    const long long m = tp.m, b = tp.big_b;
    // the complete dag over the x-vertices has ~2(mB)^2 arcs
    if (m * b > 2000)
        throw InvalidInstance("witness construction is capped at m*B <= 2000");
    if (static_cast<long long>(triples.size()) != m)
        throw InvalidPartition("expected " + ll(m) + " triples, got " +
                               ll(static_cast<long long>(triples.size())));
    std::vector<int> used(tp.a.size() + 1, 0);
    for (const Triple& t : triples) {
        long long sum = 0;
        for (int idx : t) {
            if (idx < 1 || idx > static_cast<int>(tp.a.size()))
                throw InvalidPartition("index " + ll(idx) + " out of range");
            if (used[idx]++) throw InvalidPartition("index " + ll(idx) + " used twice");
            sum += tp.a[idx - 1];
        }
        if (sum != b)
            throw InvalidPartition("triple sums to " + ll(sum) + ", expected B = " + ll(b));
    }

    const ReducedInstance ri = reduce(tp);
    const int num_x = static_cast<int>(2 * m * b);
    Realization real;
    real.n = ri.sequence.n();
    real.degree_assignment = ri.sequence.pairs;
    auto a_vertex = [&](int idx_1based) { return num_x + idx_1based - 1; };

    // complete dag over the x-vertices in global block order
    for (int u = 0; u < num_x; ++u)
        for (int v = u + 1; v < num_x; ++v) real.arcs.emplace_back(u, v);

    // per gap g: the senders of block g-1 feed the gap's a-vertices, which
    // feed the receivers of block g; quotas are the a-values
    std::vector<long long> block_start(m + 2, 0);
    for (long long i = 0; i <= m; ++i)
        block_start[i + 1] = block_start[i] + block_size(m, i) * b;
    for (long long g = 1; g <= m; ++g) {
        const Triple& triple = triples[g - 1];
        std::array<int, 3> sorted = triple;
        std::sort(sorted.begin(), sorted.end());

        const long long sender_base =
            g - 1 == 0 ? 0 : block_start[g - 1] + b;  // right part of block g-1
        const long long receiver_base = block_start[g];  // left part of block g
        long long sender = sender_base, receiver = receiver_base;
        for (int idx : sorted) {
            const int av = a_vertex(idx);
            for (long long q = 0; q < tp.a[idx - 1]; ++q) {
                real.arcs.emplace_back(static_cast<int>(sender++), av);
                real.arcs.emplace_back(av, static_cast<int>(receiver++));
            }
        }
    }
    std::sort(real.arcs.begin(), real.arcs.end());

    // topological order: block 0, gap-1 a-vertices, block 1, ..., block m
    for (long long i = 0; i <= m; ++i) {
        for (long long j = 0; j < block_size(m, i) * b; ++j)
            real.topo_order.push_back(static_cast<int>(block_start[i] + j));
        if (i < m) {
            std::array<int, 3> sorted = triples[i];
            std::sort(sorted.begin(), sorted.end());
            for (int idx : sorted) real.topo_order.push_back(a_vertex(idx));
        }
    }
    return real;
}

VerifyResult verify(const DegreeSequence& seq, const Realization& real) {
    auto fail = [](VerifyReason r, std::string msg) {
        return VerifyResult{false, r, std::move(msg)};
    };
    const int n = real.n;
    if (static_cast<int>(real.degree_assignment.size()) != n)
        return fail(VerifyReason::DegreeMismatch,
                    "degree assignment covers " +
                        std::to_string(real.degree_assignment.size()) + " of " +
                        std::to_string(n) + " vertices");
    if (n != seq.total_vertices())
        return fail(VerifyReason::DegreeMismatch,
                    "witness has " + std::to_string(n) + " vertices, sequence needs " +
                        std::to_string(seq.total_vertices()));

    std::vector<int> in(n, 0), out(n, 0);
    std::vector<std::pair<int, int>> arcs = real.arcs;
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto [u, v] = arcs[i];
        if (u < 0 || u >= n || v < 0 || v >= n)
            return fail(VerifyReason::BadVertex, "arc endpoint out of range");
        if (u == v)
            return fail(VerifyReason::SelfLoop, "self-loop at vertex " + std::to_string(u + 1));
        if (i > 0 && arcs[i] == arcs[i - 1])
            return fail(VerifyReason::DuplicateArc,
                        "duplicate arc " + std::to_string(u + 1) + " -> " +
                            std::to_string(v + 1));
        ++out[u];
        ++in[v];
    }

    // Kahn's algorithm over the arc relation
    std::vector<std::vector<int>> adj(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [u, v] : arcs) {
        adj[u].push_back(v);
        ++indeg[v];
    }
    std::queue<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    int processed = 0;
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop();
        ++processed;
        for (int w : adj[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (processed != n) return fail(VerifyReason::Cycle, "arc relation contains a cycle");

    if (!real.topo_order.empty()) {
        if (static_cast<int>(real.topo_order.size()) != n)
            return fail(VerifyReason::BadVertex, "stored order has wrong length");
        std::vector<int> pos(n, -1);
        for (int i = 0; i < n; ++i) {
            const int v = real.topo_order[i];
            if (v < 0 || v >= n || pos[v] != -1)
                return fail(VerifyReason::BadVertex, "stored order is not a permutation");
            pos[v] = i;
        }
        for (const auto& [u, v] : arcs)
            if (pos[u] >= pos[v])
                return fail(VerifyReason::Cycle, "stored order is not topological");
    }

    for (int v = 0; v < n; ++v)
        if (in[v] != real.degree_assignment[v].in_deg ||
            out[v] != real.degree_assignment[v].out_deg)
            return fail(VerifyReason::DegreeMismatch,
                        "vertex " + std::to_string(v + 1) + " has degrees (" +
                            std::to_string(in[v]) + "/" + std::to_string(out[v]) +
                            "), assigned (" +
                            std::to_string(real.degree_assignment[v].in_deg) + "/" +
                            std::to_string(real.degree_assignment[v].out_deg) + ")");

    std::vector<DegreePair> want = seq.pairs;
    want.resize(want.size() + seq.isolates, DegreePair{0, 0});
    std::vector<DegreePair> have = real.degree_assignment;
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have)
        return fail(VerifyReason::DegreeMismatch,
                    "degree multiset does not match the sequence");
    return {true, VerifyReason::Valid, ""};
}

std::vector<Triple> extract_partition(const DegreeSequence& seq, const Realization& real) {
    const VerifyResult vr = verify(seq, real);
    if (!vr.valid)
        throw MalformedRealization("realization does not verify: " + vr.message);
    if (seq.isolates != 0)
        throw MalformedRealization("reduced instances contain no isolated vertices");

    // recover m and B from n = 2mB + 3m and delta = 2mB
    const long long n = seq.n();
    const long long delta = seq.delta;
    if (delta < 2 || (n - delta) % 3 != 0)
        throw MalformedRealization("sequence shape does not match a reduced instance");
    const long long m = (n - delta) / 3;
    if (m < 1 || delta % (2 * m) != 0)
        throw MalformedRealization("sequence shape does not match a reduced instance");
    const long long b = delta / (2 * m);

    // classify vertices: x-elements are exactly those with in+out = 2mB
    std::vector<int> block_of(real.n, -1);
    std::vector<int> a_value(real.n, -1);
    long long num_x = 0;
    for (int v = 0; v < real.n; ++v) {
        const DegreePair p = real.degree_assignment[v];
        if (static_cast<long long>(p.in_deg) + p.out_deg == delta) {
            block_of[v] = static_cast<int>((p.in_deg + b) / (2 * b));
            ++num_x;
        } else {
            if (p.in_deg != p.out_deg)
                throw MalformedRealization("non-x vertex with unbalanced degrees");
            a_value[v] = p.in_deg;
        }
    }
    if (num_x != 2 * m * b)
        throw MalformedRealization("unexpected number of x-vertices");

    // each a-vertex feeds exactly one gap: the least block among its
    // out-neighbors (all of which must be x-vertices)
    std::vector<std::vector<int>> out_adj(real.n);
    for (const auto& [u, w] : real.arcs) out_adj[u].push_back(w);
    std::vector<std::vector<int>> gap_vertices(m + 1);
    for (int v = 0; v < real.n; ++v) {
        if (a_value[v] < 0) continue;
        int gap = -1;
        for (int w : out_adj[v]) {
            if (block_of[w] < 0)
                throw MalformedRealization("a-vertex with an arc to another a-vertex");
            gap = gap < 0 ? block_of[w] : std::min(gap, block_of[w]);
        }
        if (gap < 1 || gap > m)
            throw MalformedRealization("a-vertex without a usable gap assignment");
        gap_vertices[gap].push_back(v);
    }

    // map gap members back to 1-based indices into A, smallest unused index
    // with the same value first
    std::vector<long long> a_list;
    for (const DegreePair& p : seq.pairs)
        if (static_cast<long long>(p.in_deg) + p.out_deg != delta) a_list.push_back(p.in_deg);
    std::vector<bool> used(a_list.size(), false);
    auto claim_index = [&](long long value) {
        for (std::size_t i = 0; i < a_list.size(); ++i)
            if (!used[i] && a_list[i] == value) {
                used[i] = true;
                return static_cast<int>(i) + 1;
            }
        throw MalformedRealization("gap value has no matching element of A");
    };

    std::vector<Triple> triples;
    for (long long g = 1; g <= m; ++g) {
        if (gap_vertices[g].size() != 3)
            throw MalformedRealization("gap " + ll(g) + " holds " +
                                       ll(static_cast<long long>(gap_vertices[g].size())) +
                                       " a-vertices, expected 3");
        std::sort(gap_vertices[g].begin(), gap_vertices[g].end(),
                  [&](int x, int y) { return a_value[x] < a_value[y]; });
        Triple t{};
        long long sum = 0;
        for (int i = 0; i < 3; ++i) {
            sum += a_value[gap_vertices[g][i]];
            t[i] = claim_index(a_value[gap_vertices[g][i]]);
        }
        if (sum != b)
            throw MalformedRealization("gap " + ll(g) + " sums to " + ll(sum) +
                                       ", expected B = " + ll(b));
        std::sort(t.begin(), t.end());
        triples.push_back(t);
    }
    return triples;
}

std::vector<Triple> extract_partition(const ReducedInstance& ri, const Realization& real) {
    return extract_partition(ri.sequence, real);
}

}  // namespace dagreal
