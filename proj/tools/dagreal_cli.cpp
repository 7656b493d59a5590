// Command-line interface for the dagreal solver. Everything goes through the
// public C API in dagreal.h; this file only handles arguments, files, and
// output formatting.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dagreal.h"

namespace {

constexpr int kExitRealizable = 0;
constexpr int kExitUnrealizable = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct InstanceDeleter {
    void operator()(dagreal_instance* p) const { dagreal_instance_free(p); }
};
struct WitnessDeleter {
    void operator()(dagreal_witness* p) const { dagreal_witness_free(p); }
};
struct ResultDeleter {
    void operator()(dagreal_result* p) const { dagreal_result_free(p); }
};
struct TraceDeleter {
    void operator()(dagreal_trace* p) const { dagreal_trace_free(p); }
};
struct TpDeleter {
    void operator()(dagreal_tp* p) const { dagreal_tp_free(p); }
};

using InstancePtr = std::unique_ptr<dagreal_instance, InstanceDeleter>;
using WitnessPtr = std::unique_ptr<dagreal_witness, WitnessDeleter>;
using ResultPtr = std::unique_ptr<dagreal_result, ResultDeleter>;
using TracePtr = std::unique_ptr<dagreal_trace, TraceDeleter>;
using TpPtr = std::unique_ptr<dagreal_tp, TpDeleter>;

std::string take_string(char* s) {
    std::string out = s ? s : "";
    dagreal_string_free(s);
    return out;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return out.good();
}

int input_error(const std::string& what) {
    std::cerr << "error: " << what << "\n";
    return kExitParse;
}

InstancePtr load_instance(const std::string& path, int& exit_code) {
    const auto text = read_file(path);
    if (!text) {
        exit_code = input_error("cannot read '" + path + "'");
        return nullptr;
    }
    dagreal_instance* inst = nullptr;
    if (dagreal_instance_parse(text->c_str(), &inst) != DAGREAL_OK) {
        exit_code = input_error(path + ": " + dagreal_last_error());
        return nullptr;
    }
    return InstancePtr(inst);
}

WitnessPtr load_witness(const std::string& path, int& exit_code) {
    const auto text = read_file(path);
    if (!text) {
        exit_code = input_error("cannot read '" + path + "'");
        return nullptr;
    }
    dagreal_witness* wit = nullptr;
    if (dagreal_witness_parse(text->c_str(), &wit) != DAGREAL_OK) {
        exit_code = input_error(path + ": " + dagreal_last_error());
        return nullptr;
    }
    return WitnessPtr(wit);
}

TpPtr load_tp(const std::string& path, int& exit_code) {
    const auto text = read_file(path);
    if (!text) {
        exit_code = input_error("cannot read '" + path + "'");
        return nullptr;
    }
    dagreal_tp* tp = nullptr;
    if (dagreal_tp_parse(text->c_str(), &tp) != DAGREAL_OK) {
        exit_code = input_error(path + ": " + dagreal_last_error());
        return nullptr;
    }
    return TpPtr(tp);
}

const char* verdict_name(dagreal_verdict v) {
    switch (v) {
        case DAGREAL_REALIZABLE: return "REALIZABLE";
        case DAGREAL_UNREALIZABLE: return "UNREALIZABLE";
        default: return "UNKNOWN";
    }
}

nlohmann::json witness_json(const dagreal_witness* wit) {
    nlohmann::json out;
    out["n"] = dagreal_witness_vertices(wit);
    nlohmann::json arcs = nlohmann::json::array();
    for (size_t i = 0; i < dagreal_witness_arc_count(wit); ++i) {
        int32_t u = 0, v = 0;
        dagreal_witness_arc(wit, i, &u, &v);
        arcs.push_back({u, v});
    }
    out["arcs"] = std::move(arcs);
    return out;
}

uint64_t env_budget() {
    const char* raw = std::getenv("DAGREAL_BUDGET");
    if (!raw) return 0;
    const long long value = std::atoll(raw);
    return value > 0 ? static_cast<uint64_t>(value) : 0;
}

struct SolveArgs {
    std::string instance_path;
    std::string mode = "auto";
    std::string witness_path;
    std::string format = "text";
    uint64_t budget = 0;
    int threads = 1;
    bool no_pruning = false;
    uint64_t prefix_cap = 0;
    uint64_t nonrep_cap = 0;
    uint64_t supertype_cap = 0;
};

int run_solve(const SolveArgs& args) {
    int exit_code = 0;
    const InstancePtr inst = load_instance(args.instance_path, exit_code);
    if (!inst) return exit_code;

    dagreal_solve_options opts = dagreal_solve_options_default();
    if (args.mode == "exact") opts.mode = DAGREAL_MODE_EXACT;
    else if (args.mode == "fpt") opts.mode = DAGREAL_MODE_FPT;
    else if (args.mode == "chain") opts.mode = DAGREAL_MODE_CHAIN;
    else opts.mode = DAGREAL_MODE_AUTO;
    opts.budget = args.budget > 0 ? args.budget : env_budget();
    opts.threads = args.threads;
    opts.pruning = args.no_pruning ? 0 : 1;
    opts.prefix_cap = args.prefix_cap;
    opts.nonrep_cap = args.nonrep_cap;
    opts.supertype_cap = args.supertype_cap;

    dagreal_result* raw = nullptr;
    if (dagreal_solve(inst.get(), &opts, &raw) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    const ResultPtr result(raw);

    const dagreal_verdict verdict = dagreal_result_verdict(result.get());
    const dagreal_witness* wit = dagreal_result_witness(result.get());
    const std::string note = dagreal_result_note(result.get());

    if (!args.witness_path.empty() && wit) {
        char* text = nullptr;
        if (dagreal_witness_to_text(wit, &text) != DAGREAL_OK)
            return input_error(dagreal_last_error());
        if (!write_output(args.witness_path, take_string(text)))
            return input_error("cannot write '" + args.witness_path + "'");
    }

    if (args.format == "json") {
        nlohmann::json out;
        out["verdict"] = verdict_name(verdict);
        out["stats"] = {{"states", dagreal_result_states(result.get())},
                        {"millis", dagreal_result_millis(result.get())}};
        if (!note.empty()) out["note"] = note;
        if (wit) out["witness"] = witness_json(wit);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << verdict_name(verdict);
        if (!note.empty()) std::cout << " (" << note << ")";
        std::cout << "\n";
        std::cout << "states: " << dagreal_result_states(result.get())
                  << ", millis: " << dagreal_result_millis(result.get()) << "\n";
    }
    return static_cast<int>(verdict);
}

int run_trace(const std::string& instance_path, const std::vector<int32_t>& order,
              const std::string& format) {
    int exit_code = 0;
    const InstancePtr inst = load_instance(instance_path, exit_code);
    if (!inst) return exit_code;

    dagreal_trace* raw = nullptr;
    if (dagreal_trace_run(inst.get(), order.empty() ? nullptr : order.data(), order.size(),
                          &raw) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    const TracePtr trace(raw);

    const size_t rows = dagreal_trace_rows(trace.get());
    const size_t delta = dagreal_trace_delta(trace.get());
    const bool feasible = dagreal_trace_feasible(trace.get()) != 0;
    const size_t fail_pos = dagreal_trace_fail_position(trace.get());
    const size_t n = dagreal_instance_size(inst.get());

    std::vector<int32_t> counts(delta, 0);
    if (format == "json") {
        nlohmann::json out;
        out["feasible"] = feasible;
        if (!feasible) out["fail_position"] = fail_pos;
        nlohmann::json steps = nlohmann::json::array();
        for (size_t pos = 1; pos <= rows; ++pos) {
            dagreal_trace_counts(trace.get(), pos, counts.data(), counts.size());
            steps.push_back({{"position", pos},
                             {"counts", counts},
                             {"value", dagreal_trace_value(trace.get(), pos)}});
        }
        out["trace"] = std::move(steps);
        std::cout << out.dump(2) << "\n";
    } else {
        for (size_t pos = 1; pos <= rows; ++pos) {
            dagreal_trace_counts(trace.get(), pos, counts.data(), counts.size());
            std::cout << pos << ": (";
            for (size_t j = 0; j < delta; ++j) std::cout << (j ? "," : "") << counts[j];
            std::cout << ") value=" << dagreal_trace_value(trace.get(), pos) << "\n";
        }
        if (!feasible) {
            if (fail_pos == n + 1)
                std::cout << "infeasible: final potential is nonzero\n";
            else
                std::cout << "infeasible at position " << fail_pos << "\n";
        }
    }
    return feasible ? kExitRealizable : kExitUnrealizable;
}

int run_reduce(const std::string& tp_path, const std::string& out_path) {
    int exit_code = 0;
    const TpPtr tp = load_tp(tp_path, exit_code);
    if (!tp) return exit_code;
    dagreal_instance* inst = nullptr;
    if (dagreal_reduce(tp.get(), &inst) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    const InstancePtr guard(inst);
    char* text = nullptr;
    if (dagreal_instance_to_text(inst, &text) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    if (!write_output(out_path, take_string(text)))
        return input_error("cannot write '" + out_path + "'");
    return 0;
}

int run_witness(const std::string& tp_path, const std::string& triples_path,
                const std::string& out_path) {
    int exit_code = 0;
    const TpPtr tp = load_tp(tp_path, exit_code);
    if (!tp) return exit_code;
    const auto text = read_file(triples_path);
    if (!text) return input_error("cannot read '" + triples_path + "'");
    std::vector<int32_t> triples;
    {
        std::istringstream in(*text);
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            try {
                triples.push_back(std::stoi(tok));
            } catch (...) {
                return input_error(triples_path + ": bad index '" + tok + "'");
            }
        }
    }
    dagreal_witness* wit = nullptr;
    if (dagreal_witness_from_partition(tp.get(), triples.data(), triples.size(), &wit) !=
        DAGREAL_OK)
        return input_error(dagreal_last_error());
    const WitnessPtr guard(wit);
    char* wtext = nullptr;
    if (dagreal_witness_to_text(wit, &wtext) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    if (!write_output(out_path, take_string(wtext)))
        return input_error("cannot write '" + out_path + "'");
    return 0;
}

int run_extract(const std::string& instance_path, const std::string& witness_path) {
    int exit_code = 0;
    const InstancePtr inst = load_instance(instance_path, exit_code);
    if (!inst) return exit_code;
    const WitnessPtr wit = load_witness(witness_path, exit_code);
    if (!wit) return exit_code;

    const size_t n = dagreal_instance_size(inst.get());
    std::vector<int32_t> indices(n, 0);
    size_t m = 0;
    if (dagreal_extract_partition(inst.get(), wit.get(), indices.data(), indices.size(),
                                  &m) != DAGREAL_OK) {
        std::cerr << "error: " << dagreal_last_error() << "\n";
        return kExitUnrealizable;
    }
    for (size_t g = 0; g < m; ++g)
        std::cout << indices[3 * g] << " " << indices[3 * g + 1] << " " << indices[3 * g + 2]
                  << "\n";
    return 0;
}

int run_verify(const std::string& instance_path, const std::string& witness_path) {
    int exit_code = 0;
    const InstancePtr inst = load_instance(instance_path, exit_code);
    if (!inst) return exit_code;
    const WitnessPtr wit = load_witness(witness_path, exit_code);
    if (!wit) return exit_code;

    int valid = 0;
    char* reason = nullptr;
    if (dagreal_verify(inst.get(), wit.get(), &valid, &reason) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    const std::string why = take_string(reason);
    if (valid) {
        std::cout << "VALID\n";
        return kExitRealizable;
    }
    std::cout << "INVALID: " << why << "\n";
    return kExitUnrealizable;
}

int run_dot(const std::string& witness_path, const std::string& out_path) {
    int exit_code = 0;
    const WitnessPtr wit = load_witness(witness_path, exit_code);
    if (!wit) return exit_code;
    char* text = nullptr;
    if (dagreal_witness_to_dot(wit.get(), &text) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    if (!write_output(out_path, take_string(text)))
        return input_error("cannot write '" + out_path + "'");
    return 0;
}

int run_gen(int n, int delta, uint64_t seed, bool shuffle, const std::string& out_path) {
    dagreal_instance* inst = nullptr;
    if (dagreal_generate(n, delta, seed, shuffle ? 1 : 0, &inst) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    const InstancePtr guard(inst);
    char* text = nullptr;
    if (dagreal_instance_to_text(inst, &text) != DAGREAL_OK)
        return input_error(dagreal_last_error());
    std::ostringstream out;
    out << "# generated: n=" << n << " delta=" << delta << " seed=" << seed
        << (shuffle ? " shuffled" : "") << "\n"
        << take_string(text);
    if (!write_output(out_path, out.str()))
        return input_error("cannot write '" + out_path + "'");
    return 0;
}

int run_oracle(const std::string& instance_path) {
    int exit_code = 0;
    const InstancePtr inst = load_instance(instance_path, exit_code);
    if (!inst) return exit_code;
    dagreal_verdict verdict = DAGREAL_UNKNOWN;
    const dagreal_status st = dagreal_oracle(inst.get(), &verdict);
    if (st == DAGREAL_ERR_TOO_LARGE) {
        std::cerr << "error: " << dagreal_last_error() << "\n";
        return kExitUsage;
    }
    if (st != DAGREAL_OK) return input_error(dagreal_last_error());
    std::cout << verdict_name(verdict) << "\n";
    return static_cast<int>(verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dagreal: decide and construct DAG realizations of degree sequences"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dagreal_version()));

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "decide whether an instance is realizable");
    solve->add_option("instance", solve_args.instance_path, "instance file")->required();
    solve->add_option("--mode", solve_args.mode, "auto|exact|fpt|chain")
        ->check(CLI::IsMember({"auto", "exact", "fpt", "chain"}));
    solve->add_option("--budget", solve_args.budget, "max search-state visits");
    solve->add_option("--threads", solve_args.threads, "parallel branches in exact mode");
    solve->add_flag("--no-pruning", solve_args.no_pruning, "disable opposed-order pruning");
    solve->add_option("--prefix-cap", solve_args.prefix_cap, "fpt prefix/suffix length cap");
    solve->add_option("--nonrep-cap", solve_args.nonrep_cap,
                      "fpt non-repeating ordering length cap");
    solve->add_option("--supertype-cap", solve_args.supertype_cap,
                      "fpt super-type length cap");
    solve->add_option("--witness", solve_args.witness_path, "write the witness DAG here");
    solve->add_option("--format", solve_args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string trace_instance, trace_format = "text";
    std::vector<int32_t> trace_order;
    CLI::App* trace = app.add_subcommand("trace", "print the potential trace of an ordering");
    trace->add_option("instance", trace_instance, "instance file")->required();
    trace->add_option("order", trace_order, "1-based positions (default: file order)");
    trace->add_option("--format", trace_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string reduce_tp, reduce_out;
    CLI::App* reduce = app.add_subcommand("reduce", "build an instance from a 3-partition");
    reduce->add_option("three-partition", reduce_tp, "3-partition file")->required();
    reduce->add_option("-o,--output", reduce_out, "output file (default: stdout)");

    std::string witness_tp, witness_triples, witness_out;
    CLI::App* witness =
        app.add_subcommand("witness", "build a witness DAG from a solved 3-partition");
    witness->add_option("three-partition", witness_tp, "3-partition file")->required();
    witness->add_option("triples", witness_triples, "triples file ('i j k' lines)")
        ->required();
    witness->add_option("-o,--output", witness_out, "output file (default: stdout)");

    std::string extract_instance, extract_witness;
    CLI::App* extract =
        app.add_subcommand("extract", "recover a 3-partition from a witness DAG");
    extract->add_option("instance", extract_instance, "reduced instance file")->required();
    extract->add_option("witness", extract_witness, "witness file")->required();

    std::string verify_instance, verify_witness;
    CLI::App* verify = app.add_subcommand("verify", "check a witness against an instance");
    verify->add_option("instance", verify_instance, "instance file")->required();
    verify->add_option("witness", verify_witness, "witness file")->required();

    std::string dot_witness, dot_out;
    CLI::App* dot = app.add_subcommand("dot", "export a witness DAG as DOT");
    dot->add_option("witness", dot_witness, "witness file")->required();
    dot->add_option("-o,--output", dot_out, "output file (default: stdout)");

    int gen_n = 0, gen_delta = 0;
    uint64_t gen_seed = 0;
    bool gen_shuffle = false;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("n", gen_n, "number of vertices")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("delta", gen_delta, "maximum degree")
        ->required()
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_flag("--shuffle-degrees", gen_shuffle,
                  "reshuffle out-degrees (may break realizability)");
    gen->add_option("-o,--output", gen_out, "output file (default: stdout)");

    std::string oracle_instance;
    CLI::App* oracle =
        app.add_subcommand("oracle", "brute-force verdict over all orderings (n <= 9)");
    oracle->add_option("instance", oracle_instance, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    if (solve->parsed()) return run_solve(solve_args);
    if (trace->parsed()) return run_trace(trace_instance, trace_order, trace_format);
    if (reduce->parsed()) return run_reduce(reduce_tp, reduce_out);
    if (witness->parsed()) return run_witness(witness_tp, witness_triples, witness_out);
    if (extract->parsed()) return run_extract(extract_instance, extract_witness);
    if (verify->parsed()) return run_verify(verify_instance, verify_witness);
    if (dot->parsed()) return run_dot(dot_witness, dot_out);
    if (gen->parsed()) return run_gen(gen_n, gen_delta, gen_seed, gen_shuffle, gen_out);
    if (oracle->parsed()) return run_oracle(oracle_instance);
    return kExitUsage;
}
