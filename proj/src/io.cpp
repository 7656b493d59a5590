#include "dagreal/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dagreal {

namespace {

struct Token {
    std::string_view text;
    int line;
    int col;
};

// Whitespace-separated tokens with positions; `#` comments out the rest of a
// line.
std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
        } else {
            const std::size_t start = i;
            const int start_col = col;
            while (i < text.size() && text[i] != ' ' && text[i] != '\t' &&
                   text[i] != '\r' && text[i] != '\n' && text[i] != '#') {
                ++i;
                ++col;
            }
            tokens.push_back({text.substr(start, i - start), line, start_col});
        }
    }
    return tokens;
}

long long parse_int(const Token& tok, long long min_value, long long max_value) {
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
        throw ParseError(tok.line, tok.col,
                         "expected an integer, got '" + std::string(tok.text) + "'");
    if (value < min_value)
        throw ParseError(tok.line, tok.col,
                         "value " + std::to_string(value) + " is below " +
                             std::to_string(min_value));
    if (value > max_value)
        throw ParseError(tok.line, tok.col, "value " + std::to_string(value) + " is too large");
    return value;
}

constexpr long long kMaxDegree = 100'000'000;
constexpr long long kMaxVertices = 10'000'000;

}  // namespace

std::vector<DegreePair> parse_instance(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    std::vector<DegreePair> pairs;
    for (std::size_t i = 0; i < tokens.size(); i += 2) {
        const Token& a = tokens[i];
        if (i + 1 >= tokens.size() || tokens[i + 1].line != a.line)
            throw ParseError(a.line, a.col, "expected two integers per line");
        const Token& b = tokens[i + 1];
        if (i + 2 < tokens.size() && tokens[i + 2].line == a.line)
            throw ParseError(tokens[i + 2].line, tokens[i + 2].col,
                             "expected two integers per line");
        pairs.push_back({static_cast<int>(parse_int(a, 0, kMaxDegree)),
                         static_cast<int>(parse_int(b, 0, kMaxDegree))});
    }
    return pairs;
}

std::string print_instance(const std::vector<DegreePair>& pairs,
                           const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const std::string& c : comments) out << "# " << c << "\n";
    for (const DegreePair& p : pairs) out << p.in_deg << " " << p.out_deg << "\n";
    return out.str();
}

Realization parse_witness(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    std::size_t i = 0;
    auto need = [&](const char* what) -> const Token& {
        if (i >= tokens.size()) {
            const Token& last = tokens.empty() ? Token{"", 1, 1} : tokens.back();
            throw ParseError(last.line, last.col, std::string("expected ") + what);
        }
        return tokens[i];
    };
    const Token& header = need("'n <count>'");
    if (header.text != "n") throw ParseError(header.line, header.col, "expected 'n <count>'");
    ++i;
    const long long n = parse_int(need("vertex count"), 0, kMaxVertices);
    ++i;

    Realization real;
    real.n = static_cast<int>(n);
    while (i < tokens.size() && tokens[i].text != "order:") {
        const Token& u = tokens[i];
        if (i + 1 >= tokens.size() || tokens[i + 1].line != u.line)
            throw ParseError(u.line, u.col, "expected an arc 'u v'");
        const Token& v = tokens[i + 1];
        real.arcs.emplace_back(static_cast<int>(parse_int(u, 1, n)) - 1,
                               static_cast<int>(parse_int(v, 1, n)) - 1);
        i += 2;
    }
    if (i >= tokens.size()) {
        const Token last = tokens.empty() ? Token{"", 1, 1} : tokens.back();
        throw ParseError(last.line, last.col, "missing 'order:' block");
    }
    const Token order_tok = tokens[i];
    ++i;
    std::vector<bool> seen(n, false);
    for (long long k = 0; k < n; ++k) {
        const int v = static_cast<int>(parse_int(need("order entry"), 1, n)) - 1;
        if (seen[v])
            throw ParseError(tokens[i].line, tokens[i].col, "order repeats a vertex");
        seen[v] = true;
        real.topo_order.push_back(v);
        ++i;
    }
    if (i != tokens.size())
        throw ParseError(tokens[i].line, tokens[i].col, "trailing tokens after the order");
    (void)order_tok;

    std::sort(real.arcs.begin(), real.arcs.end());
    real.degree_assignment.assign(real.n, DegreePair{0, 0});
    for (const auto& [u, v] : real.arcs) {
        ++real.degree_assignment[u].out_deg;
        ++real.degree_assignment[v].in_deg;
    }
    return real;
}

std::string print_witness(const Realization& real) {
    std::ostringstream out;
    out << "n " << real.n << "\n";
    std::vector<std::pair<int, int>> arcs = real.arcs;
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [u, v] : arcs) out << u + 1 << " " << v + 1 << "\n";
    out << "order:";
    for (int v : real.topo_order) out << " " << v + 1;
    out << "\n";
    return out.str();
}

ThreePartitionInstance parse_three_partition(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.size() < 2) throw ParseError(1, 1, "expected 'm B' on the first line");
    ThreePartitionInstance tp;
    tp.m = parse_int(tokens[0], 1, 1'000'000);
    tp.big_b = parse_int(tokens[1], 1, kMaxDegree);
    for (std::size_t i = 2; i < tokens.size(); ++i)
        tp.a.push_back(parse_int(tokens[i], 1, kMaxDegree));
    if (static_cast<long long>(tp.a.size()) != 3 * tp.m) {
        const Token& last = tokens.back();
        throw ParseError(last.line, last.col,
                         "expected " + std::to_string(3 * tp.m) + " integers, got " +
                             std::to_string(tp.a.size()));
    }
    return tp;
}

std::string print_three_partition(const ThreePartitionInstance& tp) {
    std::ostringstream out;
    out << tp.m << " " << tp.big_b << "\n";
    for (std::size_t i = 0; i < tp.a.size(); ++i) out << (i ? " " : "") << tp.a[i];
    out << "\n";
    return out.str();
}

std::vector<Triple> parse_triples(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.size() % 3 != 0) {
        const Token last = tokens.empty() ? Token{"", 1, 1} : tokens.back();
        throw ParseError(last.line, last.col, "expected 'i j k' lines");
    }
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < tokens.size(); i += 3)
        triples.push_back({static_cast<int>(parse_int(tokens[i], 1, kMaxDegree)),
                           static_cast<int>(parse_int(tokens[i + 1], 1, kMaxDegree)),
                           static_cast<int>(parse_int(tokens[i + 2], 1, kMaxDegree))});
    return triples;
}

std::string print_triples(const std::vector<Triple>& triples) {
    std::ostringstream out;
    for (const Triple& t : triples) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    return out.str();
}

std::string witness_to_dot(const Realization& real) {
    std::ostringstream out;
    out << "digraph realization {\n";
    for (int v = 0; v < real.n; ++v) {
        const DegreePair p = static_cast<int>(real.degree_assignment.size()) == real.n
                                 ? real.degree_assignment[v]
                                 : DegreePair{0, 0};
        out << "  v" << v + 1 << " [label=\"v" << v + 1 << " (" << p.in_deg << "/"
            << p.out_deg << ")\"];\n";
    }
    std::vector<std::pair<int, int>> arcs = real.arcs;
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [u, v] : arcs) out << "  v" << u + 1 << " -> v" << v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace dagreal
