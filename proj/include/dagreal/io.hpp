#ifndef DAGREAL_IO_HPP
#define DAGREAL_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dagreal/reduction.hpp"
#include "dagreal/types.hpp"

namespace dagreal {

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                message),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Instance files: `#` comment lines, then one `a b` pair per line.
std::vector<DegreePair> parse_instance(std::string_view text);
std::string print_instance(const std::vector<DegreePair>& pairs,
                           const std::vector<std::string>& comments = {});

/// Witness files: `n <count>`, 1-indexed `u v` arc lines, then a trailing
/// `order: i1 i2 ... in` topological order.
Realization parse_witness(std::string_view text);
std::string print_witness(const Realization& real);

/// 3-Partition files: `m B` on the first line, then the 3m integers.
ThreePartitionInstance parse_three_partition(std::string_view text);
std::string print_three_partition(const ThreePartitionInstance& tp);

/// Partition certificates: one `i j k` line per triple (1-based indices).
std::vector<Triple> parse_triples(std::string_view text);
std::string print_triples(const std::vector<Triple>& triples);

/// DOT digraph with vertices labeled `v<i> (a/b)`; deterministic ordering.
std::string witness_to_dot(const Realization& real);

}  // namespace dagreal

#endif
