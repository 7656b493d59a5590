#include "dagreal.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <numeric>
#include <string>

#include "dagreal/exact.hpp"
#include "dagreal/fpt.hpp"
#include "dagreal/generator.hpp"
#include "dagreal/io.hpp"
#include "dagreal/potential.hpp"
#include "dagreal/reduction.hpp"
#include "dagreal/types.hpp"

struct dagreal_instance {
    std::vector<dagreal::DegreePair> raw;
};

struct dagreal_witness {
    dagreal::Realization real;
};

struct dagreal_result {
    dagreal_verdict verdict = DAGREAL_UNKNOWN;
    std::unique_ptr<dagreal_witness> witness;
    std::uint64_t states = 0;
    double millis = 0.0;
    std::string note;
};

struct dagreal_trace {
    dagreal::TraceResult tr;
    std::size_t n = 0;
    std::size_t delta = 0;
};

struct dagreal_tp {
    dagreal::ThreePartitionInstance tp;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

dagreal_status fail(dagreal_status st, const std::string& msg) {
    set_error(msg);
    return st;
}

// Maps core exceptions to status codes; the callable does the real work.
template <typename Fn>
dagreal_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const dagreal::ParseError& e) {
        return fail(DAGREAL_ERR_PARSE, e.what());
    } catch (const dagreal::TooLarge& e) {
        return fail(DAGREAL_ERR_TOO_LARGE, e.what());
    } catch (const dagreal::Error& e) {
        return fail(DAGREAL_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(DAGREAL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DAGREAL_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dagreal_verdict from_solve(dagreal::SolveVerdict v) {
    switch (v) {
        case dagreal::SolveVerdict::Realizable: return DAGREAL_REALIZABLE;
        case dagreal::SolveVerdict::Unrealizable: return DAGREAL_UNREALIZABLE;
        default: return DAGREAL_UNKNOWN;
    }
}

void store_witness(dagreal_result& res, std::optional<dagreal::Realization> wit) {
    if (wit) res.witness = std::make_unique<dagreal_witness>(dagreal_witness{std::move(*wit)});
}

void run_exact(const dagreal::DegreeSequence& seq, const dagreal_solve_options& opts,
               dagreal_result& res) {
    dagreal::SolveOptions so;
    so.budget = opts.budget;
    so.threads = opts.threads;
    so.pruning = opts.pruning != 0;
    dagreal::SolveResult sr = dagreal::solve_exact(seq, so);
    res.verdict = from_solve(sr.verdict);
    res.states += sr.stats.states_visited;
    res.millis += sr.stats.millis;
    res.note = sr.note;
    store_witness(res, std::move(sr.witness));
}

void run_fpt(const dagreal::DegreeSequence& seq, const dagreal_solve_options& opts,
             dagreal_result& res) {
    dagreal::FptConfig cfg = dagreal::FptConfig::with_user_caps(
        seq, opts.prefix_cap, opts.nonrep_cap, opts.supertype_cap);
    if (opts.budget > 0) cfg.budget = opts.budget;
    dagreal::FptResult fr = dagreal::solve_fpt(seq, cfg);
    res.states += fr.stats.states_visited;
    res.millis += fr.stats.millis;
    res.note = fr.note;
    switch (fr.verdict) {
        case dagreal::FptVerdict::Realizable: res.verdict = DAGREAL_REALIZABLE; break;
        case dagreal::FptVerdict::Unrealizable: res.verdict = DAGREAL_UNREALIZABLE; break;
        default: res.verdict = DAGREAL_UNKNOWN; break;
    }
    store_witness(res, std::move(fr.witness));
}

// Chain mode decides only opposed-order chains; anything else is UNKNOWN.
void run_chain(const dagreal::DegreeSequence& seq, dagreal_result& res) {
    dagreal::ChainResult cr = dagreal::solve_chain(seq);
    switch (cr.verdict) {
        case dagreal::ChainVerdict::Realizable: res.verdict = DAGREAL_REALIZABLE; break;
        case dagreal::ChainVerdict::Unrealizable: res.verdict = DAGREAL_UNREALIZABLE; break;
        default:
            res.verdict = DAGREAL_UNKNOWN;
            res.note = "types are not totally ordered by the opposed order";
            break;
    }
    store_witness(res, std::move(cr.witness));
}

}  // namespace

extern "C" {

const char* dagreal_version(void) { return "1.0.0"; }

const char* dagreal_last_error(void) { return g_last_error.c_str(); }

void dagreal_string_free(char* s) { delete[] s; }

dagreal_status dagreal_instance_parse(const char* text, dagreal_instance** out) {
    if (!text || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto inst = std::make_unique<dagreal_instance>();
        inst->raw = dagreal::parse_instance(text);
        *out = inst.release();
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_instance_from_pairs(const int32_t* in_degs, const int32_t* out_degs,
                                           size_t n, dagreal_instance** out) {
    if (!out || (n > 0 && (!in_degs || !out_degs)))
        return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto inst = std::make_unique<dagreal_instance>();
        for (size_t i = 0; i < n; ++i) {
            if (in_degs[i] < 0 || out_degs[i] < 0)
                return fail(DAGREAL_ERR_INVALID, "negative degree entry");
            inst->raw.push_back({in_degs[i], out_degs[i]});
        }
        *out = inst.release();
        return DAGREAL_OK;
    });
}

void dagreal_instance_free(dagreal_instance* inst) { delete inst; }

size_t dagreal_instance_size(const dagreal_instance* inst) {
    return inst ? inst->raw.size() : 0;
}

int32_t dagreal_instance_delta(const dagreal_instance* inst) {
    if (!inst) return 0;
    return dagreal::max_degree(inst->raw);
}

dagreal_status dagreal_instance_pair(const dagreal_instance* inst, size_t index,
                                     int32_t* in_deg, int32_t* out_deg) {
    if (!inst || !in_deg || !out_deg) return fail(DAGREAL_ERR_ARG, "null argument");
    if (index >= inst->raw.size()) return fail(DAGREAL_ERR_ARG, "index out of range");
    *in_deg = inst->raw[index].in_deg;
    *out_deg = inst->raw[index].out_deg;
    return DAGREAL_OK;
}

dagreal_status dagreal_instance_to_text(const dagreal_instance* inst, char** out) {
    if (!inst || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        *out = dup_string(dagreal::print_instance(inst->raw));
        return DAGREAL_OK;
    });
}

dagreal_solve_options dagreal_solve_options_default(void) {
    dagreal_solve_options opts;
    opts.mode = DAGREAL_MODE_AUTO;
    opts.budget = 0;
    opts.threads = 1;
    opts.pruning = 1;
    opts.prefix_cap = 0;
    opts.nonrep_cap = 0;
    opts.supertype_cap = 0;
    return opts;
}

dagreal_status dagreal_solve(const dagreal_instance* inst, const dagreal_solve_options* opts,
                             dagreal_result** out) {
    if (!inst || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    const dagreal_solve_options options = opts ? *opts : dagreal_solve_options_default();
    return guarded([&] {
        auto res = std::make_unique<dagreal_result>();
        dagreal::DegreeSequence seq;
        try {
            seq = dagreal::normalize(inst->raw);
        } catch (const dagreal::NormalizeError& e) {
            // oversize degrees can never fit a simple DAG
            res->verdict = DAGREAL_UNREALIZABLE;
            res->note = e.what();
            *out = res.release();
            return DAGREAL_OK;
        }
        switch (options.mode) {
            case DAGREAL_MODE_EXACT: run_exact(seq, options, *res); break;
            case DAGREAL_MODE_FPT: run_fpt(seq, options, *res); break;
            case DAGREAL_MODE_CHAIN: run_chain(seq, *res); break;
            case DAGREAL_MODE_AUTO: {
                run_chain(seq, *res);
                if (res->verdict != DAGREAL_UNKNOWN) break;
                res->note.clear();
                run_exact(seq, options, *res);
                if (res->verdict != DAGREAL_UNKNOWN) break;
                res->note.clear();
                run_fpt(seq, options, *res);
                break;
            }
            default: return fail(DAGREAL_ERR_ARG, "unknown solve mode");
        }
        *out = res.release();
        return DAGREAL_OK;
    });
}

void dagreal_result_free(dagreal_result* res) { delete res; }

dagreal_verdict dagreal_result_verdict(const dagreal_result* res) {
    return res ? res->verdict : DAGREAL_UNKNOWN;
}

const dagreal_witness* dagreal_result_witness(const dagreal_result* res) {
    return res ? res->witness.get() : nullptr;
}

uint64_t dagreal_result_states(const dagreal_result* res) { return res ? res->states : 0; }

double dagreal_result_millis(const dagreal_result* res) { return res ? res->millis : 0.0; }

const char* dagreal_result_note(const dagreal_result* res) {
    return res ? res->note.c_str() : "";
}

dagreal_status dagreal_oracle(const dagreal_instance* inst, dagreal_verdict* out) {
    if (!inst || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        *out = dagreal::brute_force_oracle(inst->raw) == dagreal::OracleVerdict::Realizable
                   ? DAGREAL_REALIZABLE
                   : DAGREAL_UNREALIZABLE;
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_trace_run(const dagreal_instance* inst, const int32_t* order,
                                 size_t len, dagreal_trace** out) {
    if (!inst || !out || (len > 0 && !order)) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        const std::size_t n = inst->raw.size();
        dagreal::Ordering ordering;
        if (len == 0) {
            ordering = inst->raw;
        } else {
            if (len != n) return fail(DAGREAL_ERR_INVALID, "order length does not match n");
            std::vector<bool> seen(n, false);
            for (size_t i = 0; i < len; ++i) {
                if (order[i] < 1 || static_cast<size_t>(order[i]) > n || seen[order[i] - 1])
                    return fail(DAGREAL_ERR_INVALID, "order is not a permutation of 1..n");
                seen[order[i] - 1] = true;
                ordering.push_back(inst->raw[order[i] - 1]);
            }
        }
        auto tr = std::make_unique<dagreal_trace>();
        tr->n = n;
        tr->delta = static_cast<std::size_t>(dagreal::max_degree(inst->raw));
        // the trace stores n+1 dense potentials of dimension delta
        if (tr->delta > 100'000 || tr->delta * (n + 1) > 10'000'000)
            return fail(DAGREAL_ERR_TOO_LARGE, "trace would be too large");
        tr->tr = dagreal::check_ordering(ordering, static_cast<int>(tr->delta));
        *out = tr.release();
        return DAGREAL_OK;
    });
}

void dagreal_trace_free(dagreal_trace* tr) { delete tr; }

int dagreal_trace_feasible(const dagreal_trace* tr) { return tr && tr->tr.feasible ? 1 : 0; }

size_t dagreal_trace_rows(const dagreal_trace* tr) {
    return tr ? tr->tr.trace.size() - 1 : 0;
}

size_t dagreal_trace_fail_position(const dagreal_trace* tr) {
    return tr ? static_cast<size_t>(tr->tr.fail_pos) : 0;
}

size_t dagreal_trace_delta(const dagreal_trace* tr) { return tr ? tr->delta : 0; }

int32_t dagreal_trace_value(const dagreal_trace* tr, size_t position) {
    if (!tr || position >= tr->tr.trace.size()) return -1;
    return tr->tr.trace[position].value();
}

dagreal_status dagreal_trace_counts(const dagreal_trace* tr, size_t position, int32_t* buf,
                                    size_t buflen) {
    if (!tr || !buf) return fail(DAGREAL_ERR_ARG, "null argument");
    if (position >= tr->tr.trace.size()) return fail(DAGREAL_ERR_ARG, "position out of range");
    const auto& counts = tr->tr.trace[position].counts;
    if (buflen < counts.size()) return fail(DAGREAL_ERR_ARG, "buffer too small");
    for (std::size_t i = 0; i < counts.size(); ++i) buf[i] = counts[i];
    return DAGREAL_OK;
}

dagreal_status dagreal_witness_parse(const char* text, dagreal_witness** out) {
    if (!text || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto wit = std::make_unique<dagreal_witness>();
        wit->real = dagreal::parse_witness(text);
        *out = wit.release();
        return DAGREAL_OK;
    });
}

void dagreal_witness_free(dagreal_witness* wit) { delete wit; }

size_t dagreal_witness_vertices(const dagreal_witness* wit) {
    return wit ? static_cast<size_t>(wit->real.n) : 0;
}

size_t dagreal_witness_arc_count(const dagreal_witness* wit) {
    return wit ? wit->real.arcs.size() : 0;
}

dagreal_status dagreal_witness_arc(const dagreal_witness* wit, size_t index, int32_t* from,
                                   int32_t* to) {
    if (!wit || !from || !to) return fail(DAGREAL_ERR_ARG, "null argument");
    if (index >= wit->real.arcs.size()) return fail(DAGREAL_ERR_ARG, "index out of range");
    *from = wit->real.arcs[index].first + 1;
    *to = wit->real.arcs[index].second + 1;
    return DAGREAL_OK;
}

dagreal_status dagreal_witness_to_text(const dagreal_witness* wit, char** out) {
    if (!wit || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        *out = dup_string(dagreal::print_witness(wit->real));
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_witness_to_dot(const dagreal_witness* wit, char** out) {
    if (!wit || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        *out = dup_string(dagreal::witness_to_dot(wit->real));
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_verify(const dagreal_instance* inst, const dagreal_witness* wit,
                              int* valid, char** reason) {
    if (!inst || !wit || !valid) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        dagreal::VerifyResult vr;
        try {
            vr = dagreal::verify(dagreal::normalize(inst->raw), wit->real);
        } catch (const dagreal::NormalizeError& e) {
            vr = {false, dagreal::VerifyReason::DegreeMismatch, e.what()};
        }
        *valid = vr.valid ? 1 : 0;
        if (reason) *reason = dup_string(vr.message);
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_tp_parse(const char* text, dagreal_tp** out) {
    if (!text || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto tp = std::make_unique<dagreal_tp>();
        tp->tp = dagreal::parse_three_partition(text);
        *out = tp.release();
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_tp_new(int64_t m, int64_t b, const int64_t* a, size_t len,
                              dagreal_tp** out) {
    if (!out || (len > 0 && !a)) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto tp = std::make_unique<dagreal_tp>();
        tp->tp.m = m;
        tp->tp.big_b = b;
        tp->tp.a.assign(a, a + len);
        dagreal::validate(tp->tp);
        *out = tp.release();
        return DAGREAL_OK;
    });
}

void dagreal_tp_free(dagreal_tp* tp) { delete tp; }

dagreal_status dagreal_tp_to_text(const dagreal_tp* tp, char** out) {
    if (!tp || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        *out = dup_string(dagreal::print_three_partition(tp->tp));
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_reduce(const dagreal_tp* tp, dagreal_instance** out) {
    if (!tp || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        auto inst = std::make_unique<dagreal_instance>();
        inst->raw = dagreal::reduce(tp->tp).sequence.pairs;
        *out = inst.release();
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_witness_from_partition(const dagreal_tp* tp, const int32_t* triples,
                                              size_t len, dagreal_witness** out) {
    if (!tp || !triples || !out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        if (len % 3 != 0) return fail(DAGREAL_ERR_ARG, "triples length must be 3m");
        std::vector<dagreal::Triple> ts;
        for (size_t i = 0; i < len; i += 3)
            ts.push_back({triples[i], triples[i + 1], triples[i + 2]});
        auto wit = std::make_unique<dagreal_witness>();
        wit->real = dagreal::witness_from_partition(tp->tp, ts);
        *out = wit.release();
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_extract_partition(const dagreal_instance* inst,
                                         const dagreal_witness* wit, int32_t* out,
                                         size_t buflen, size_t* m_out) {
    if (!inst || !wit || !out || !m_out) return fail(DAGREAL_ERR_ARG, "null argument");
    return guarded([&] {
        const std::vector<dagreal::Triple> triples =
            dagreal::extract_partition(dagreal::normalize(inst->raw), wit->real);
        if (buflen < triples.size() * 3) return fail(DAGREAL_ERR_ARG, "buffer too small");
        size_t k = 0;
        for (const dagreal::Triple& t : triples)
            for (int idx : t) out[k++] = idx;
        *m_out = triples.size();
        return DAGREAL_OK;
    });
}

dagreal_status dagreal_generate(int32_t n, int32_t delta, uint64_t seed,
                                int shuffle_degrees, dagreal_instance** out) {
    if (!out) return fail(DAGREAL_ERR_ARG, "null argument");
    if (n < 0 || delta < 0) return fail(DAGREAL_ERR_ARG, "n and delta must be nonnegative");
    return guarded([&] {
        auto inst = std::make_unique<dagreal_instance>();
        inst->raw = dagreal::generate_instance(n, delta, seed, shuffle_degrees != 0);
        *out = inst.release();
        return DAGREAL_OK;
    });
}

}  // extern "C"
