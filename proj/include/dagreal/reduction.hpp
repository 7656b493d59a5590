#ifndef DAGREAL_REDUCTION_HPP
#define DAGREAL_REDUCTION_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dagreal/types.hpp"

namespace dagreal {

class InvalidInstance : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

/// Raised when a verified realization of a reduced instance does not exhibit
/// the block structure; signals a bug, never a valid outcome.
class MalformedRealization : public Error {
public:
    using Error::Error;
};

/// 3-Partition instance: 3m positive integers summing to m*B, each strictly
/// between B/4 and B/2.
struct ThreePartitionInstance {
    std::vector<long long> a;
    long long m = 0;
    long long big_b = 0;
};

/// Throws InvalidInstance when the invariants fail.
void validate(const ThreePartitionInstance& tp);

struct ElementRole {
    bool is_x = false;
    int block = 0;   // x: block index 0..m
    int offset = 0;  // x: j within the block; a: 0-based index into A
};

/// The reduced degree sequence, elements in construction order
/// (X_0, ..., X_m, then the a-elements), with per-slot roles.
struct ReducedInstance {
    DegreeSequence sequence;
    std::vector<ElementRole> roles;
    long long m = 0;
    long long big_b = 0;
};

ReducedInstance reduce(const ThreePartitionInstance& tp);

struct CountingIdentities {
    long long d_minus_x_closed = 0;  // 2 m^2 B^2
    long long xi_closed = 0;         // 2 m^2 B^2 - m B
    long long d_minus_x_summed = 0;  // recomputed from the construction formulas
};

CountingIdentities counting_identities(long long m, long long big_b);

using Triple = std::array<int, 3>;

/// Builds the block-structured witness realization from a solved partition
/// (triples of 1-based indices into A, each summing to B).
Realization witness_from_partition(const ThreePartitionInstance& tp,
                                   const std::vector<Triple>& triples);

enum class VerifyReason {
    Valid,
    SelfLoop,
    DuplicateArc,
    BadVertex,
    Cycle,
    DegreeMismatch,
};

struct VerifyResult {
    bool valid = false;
    VerifyReason reason = VerifyReason::Valid;
    std::string message;
};

/// Checks the full witness contract: simple arcs, acyclicity, per-vertex
/// degrees matching the assignment, and the degree multiset matching the
/// sequence (isolates included).
VerifyResult verify(const DegreeSequence& seq, const Realization& real);

/// Recovers a 3-Partition solution from any verified realization of a reduced
/// instance. Triples are 1-based indices into A, grouped by gap.
std::vector<Triple> extract_partition(const DegreeSequence& seq, const Realization& real);
std::vector<Triple> extract_partition(const ReducedInstance& ri, const Realization& real);

}  // namespace dagreal

#endif
