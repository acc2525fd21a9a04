#pragma once

// The command layer behind the groupcode tool, writing to caller-supplied
// streams. Exit codes: 0 success, 1 predicate violation, 2 user error,
// 3 I/O error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"

namespace groupcode {

enum ExitCode : int { kOk = 0, kViolation = 1, kUserError = 2, kIoError = 3 };

/// One symbol: digits run together ("01"), colon-separated coordinates
/// ("0:12"), or a plain integer for a cyclic group.
inline GroupElement parse_symbol(const FiniteAbelianGroup& g, const std::string& token) {
    auto bad = [&] { return ParseError("bad symbol \"" + token + "\" for " + g.describe()); };
    std::vector<int> c;
    if (g.rank() == 0) {
        if (token != "0" && !token.empty()) throw bad();
        return g.identity();
    }
    auto number = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9) throw bad();
        return std::stoi(t);
    };
    if (token.find(':') != std::string::npos) {
        std::stringstream ss(token);
        for (std::string part; std::getline(ss, part, ':');) c.push_back(number(part));
    } else if (g.rank() == 1) {
        c.push_back(number(token));
    } else {
        if (token.size() != g.rank()) throw bad();
        for (char ch : token) c.push_back(number(std::string(1, ch)));
    }
    GroupElement a(std::move(c));
    if (!g.contains(a)) throw bad();
    return a;
}

/// Comma-separated symbols; the empty string is the empty list.
inline std::vector<GroupElement> parse_symbols(const FiniteAbelianGroup& g, const std::string& text) {
    std::vector<GroupElement> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
        out.push_back(parse_symbol(g, b == std::string::npos ? "" : tok.substr(b, e - b + 1)));
    }
    return out;
}

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const PredicateViolation& e) {
        err << "error: " << e.what() << "\n";
        return kViolation;
    } catch (const SizeViolation& e) {
        err << "error: " << e.what() << "\n";
        return kViolation;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUserError;
    } catch (const json::exception& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return kUserError;
    }
}

}  // namespace detail

inline int run_analyze(const std::string& spec_path, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        auto enc = load_encoder(spec_path);
        auto verdict = decide_controllability(enc);
        auto past = past_kernel(enc);
        std::optional<PredicateReport> report;
        const auto uf = enc.U().invariant_factors();
        if (uf.size() == 1 && is_prime(uf[0])) report = check_structure_theorems(enc);
        out << analysis_to_json(enc, verdict, past, report ? &*report : nullptr).dump(2) << "\n";
        if (report && !report->all_pass()) {
            for (auto& v : report->violations) err << "violation: " << v.predicate << ": " << v.counterexample << "\n";
            return static_cast<int>(kViolation);
        }
        return static_cast<int>(kOk);
    });
}

struct EncodeOptions {
    std::optional<std::string> state;
    std::string inputs;
    bool zero_tail = false;
    std::optional<int> max_tail;
};

inline int run_encode(const std::string& spec_path, const EncodeOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        auto enc = load_encoder(spec_path);
        auto s0 = opt.state ? parse_symbol(enc.S(), *opt.state) : enc.S().identity();
        auto inputs = parse_symbols(enc.U(), opt.inputs);
        std::vector<std::string> phase(inputs.size(), "msg");
        std::optional<std::string> note;
        if (opt.zero_tail) {
            auto last = encode_forward(enc, s0, inputs).states;
            auto s = last.empty() ? s0 : last.back();
            const int max_len = opt.max_tail.value_or(static_cast<int>(enc.num_states()));
            if (max_len < 1) throw NotApplicable("--max-tail must be >= 1");
            if (auto pad = zero_tail(enc, s, max_len)) {
                inputs.insert(inputs.end(), pad->begin(), pad->end());
                phase.resize(inputs.size(), "pad");
            } else {
                note = "state " + compact(enc.S(), s) + " cannot return to the identity within " +
                       std::to_string(max_len) + " steps";
            }
        }
        auto run = encode_forward(enc, s0, inputs);
        out << "i\tu\ts\ty\tphase\n";
        for (std::size_t i = 0; i < inputs.size(); ++i)
            out << i + 1 << "\t" << compact(enc.U(), inputs[i]) << "\t" << compact(enc.S(), run.states[i]) << "\t"
                << compact(enc.Y(), run.outputs[i]) << "\t" << phase[i] << "\n";
        if (note) out << "# " << *note << "\n";
        return static_cast<int>(kOk);
    });
}

inline int run_trellis(const std::string& spec_path, int sections, const std::optional<std::string>& out_path,
                       std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (sections < 0) throw NotApplicable("--sections must be >= 0");
        auto enc = load_encoder(spec_path);
        auto dot = export_dot(enc, sections);
        if (!out_path) {
            out << dot;
            return static_cast<int>(kOk);
        }
        std::ofstream f(*out_path, std::ios::binary);
        if (!f || !(f << dot) || !f.flush()) throw std::ios_base::failure("cannot write " + *out_path);
        return static_cast<int>(kOk);
    });
}

struct SweepCommandOptions {
    std::vector<int> primes{2};
    int max_state_order = 4;
    std::optional<std::string> out_path;
    bool deduplicate = true;
    int jobs = 1;
};

inline void print_sweep_table(const SweepReport& r, std::ostream& out) {
    auto factors = [](const std::vector<int>& f) {
        std::string s = "[";
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
        return s + "]";
    };
    out << std::left << std::setw(4) << "p" << std::setw(10) << "S" << std::right << std::setw(10) << "encoders"
        << std::setw(14) << "controllable" << std::setw(11) << "min_index" << std::setw(12) << "violations" << "\n";
    for (auto& row : r.rows)
        out << std::left << std::setw(4) << row.p << std::setw(10) << factors(row.S) << std::right << std::setw(10)
            << row.encoders << std::setw(14) << row.controllable << std::setw(11)
            << (row.min_index ? std::to_string(*row.min_index) : "-") << std::setw(12) << row.violations << "\n";
    out << "\nencoders checked: " << r.encoders << "\n";
    out << "predicate violations: " << r.total_violations() << "\n";
    out << "controllable with S not elementary abelian: " << r.non_elementary_controllable << "\n";
    out << "controllable with S cyclic of order above p: " << r.cyclic_controllable << "\n";
    out << "S cyclic of order p: " << r.order_p_controllable << " of " << r.order_p_encoders << " controllable\n";
    out << "encoders with |S_1^-| != p: " << r.kernel_size_exceptions << "\n";
    for (auto& e : r.examples) out << "counterexample: " << e << "\n";
}

inline int run_sweep(const SweepCommandOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        SweepOptions so{opt.primes, opt.max_state_order, opt.deduplicate, opt.jobs};
        const auto t0 = std::chrono::steady_clock::now();
        auto report = sweep_theorems(so);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        if (opt.out_path) {
            std::ofstream f(*opt.out_path, std::ios::binary);
            if (!f || !(f << sweep_to_json(report).dump(2) << "\n") || !f.flush())
                throw std::ios_base::failure("cannot write " + *opt.out_path);
        }
        print_sweep_table(report, out);
        err << "sweep took " << std::fixed << std::setprecision(2) << dt.count() << " s\n";
        return static_cast<int>(report.total_violations() ? kViolation : kOk);
    });
}

}  // namespace groupcode
