#pragma once

// State diagram and trellis of an encoder: branches (s, omega(u,s), nu(u,s)),
// connectivity between states, splicing and membership of sequences, and DOT
// export.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "encoder.hpp"

namespace groupcode {

struct Branch {
    GroupElement from;
    GroupElement label;
    GroupElement to;
    GroupElement input;

    friend bool operator==(const Branch&, const Branch&) = default;
};

/// All |U||S| branches, s-major and u-minor.
inline std::vector<Branch> branches(const Encoder& enc) {
    std::vector<Branch> out;
    out.reserve(enc.num_inputs() * enc.num_states());
    for (std::size_t s = 0; s < enc.num_states(); ++s)
        for (std::size_t u = 0; u < enc.num_inputs(); ++u)
            out.push_back({enc.S().element_at(s),
                           enc.Y().element_at(static_cast<std::size_t>(enc.output_index(u, s))),
                           enc.S().element_at(static_cast<std::size_t>(enc.next_index(u, s))),
                           enc.U().element_at(u)});
    return out;
}

/// Shortest input word taking s to r; a state is connected to itself by the
/// empty word.
inline std::optional<std::vector<GroupElement>> connected(const Encoder& enc, const GroupElement& s,
                                                          const GroupElement& r, int max_len) {
    if (max_len < 1) throw NotApplicable("max_len must be >= 1");
    enc.S().check(r);
    return shortest_input_word(enc, s, r, max_len);
}

/// States reachable from s in exactly `steps` transitions (as a membership mask).
inline std::vector<char> reachable_in_exactly(const Encoder& enc, std::size_t s, int steps) {
    std::vector<char> cur(enc.num_states(), 0);
    cur[s] = 1;
    for (int k = 0; k < steps; ++k) {
        std::vector<char> next(enc.num_states(), 0);
        for (std::size_t x = 0; x < enc.num_states(); ++x)
            if (cur[x])
                for (std::size_t u = 0; u < enc.num_inputs(); ++u) next[static_cast<std::size_t>(enc.next_index(u, x))] = 1;
        cur = std::move(next);
    }
    return cur;
}

/// Lexicographically least input word of exactly `length` steps from s to r.
inline std::optional<std::vector<GroupElement>> connecting_word(const Encoder& enc, const GroupElement& s,
                                                                const GroupElement& r, int length) {
    const std::size_t ns = enc.num_states();
    // can_finish[k][x]: r is reachable from x in exactly k steps
    std::vector<std::vector<char>> can_finish(static_cast<std::size_t>(length) + 1, std::vector<char>(ns, 0));
    can_finish[0][enc.S().index_of(r)] = 1;
    for (int k = 1; k <= length; ++k)
        for (std::size_t x = 0; x < ns; ++x)
            for (std::size_t u = 0; u < enc.num_inputs() && !can_finish[k][x]; ++u)
                if (can_finish[k - 1][static_cast<std::size_t>(enc.next_index(u, x))]) can_finish[k][x] = 1;
    auto x = enc.S().index_of(s);
    if (!can_finish[static_cast<std::size_t>(length)][x]) return std::nullopt;
    std::vector<GroupElement> word;
    for (int k = length; k > 0; --k)
        for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
            auto t = static_cast<std::size_t>(enc.next_index(u, x));
            if (can_finish[k - 1][t]) {
                word.push_back(enc.U().element_at(u));
                x = t;
                break;
            }
        }
    return word;
}

/// (y1 ^_j y2): y1 before index j, y2 from j on.
inline Sequence concatenate(const Sequence& y1, const Sequence& y2, std::int64_t j) {
    if (!(y1.group == y2.group)) throw WrongGroup("cannot splice sequences over different groups");
    Sequence out{y1.group, std::min(y1.start, y2.start), {}};
    const auto hi = std::max(y1.end(), y2.end());
    for (auto i = out.start; i < hi; ++i) out.symbols.push_back(i < j ? y1.at(i) : y2.at(i));
    return out;
}

struct CodewordCheck {
    bool accepted = false;
    Sequence states;  // s_{start-1} .. s_{end-1} of one generating path
};

namespace detail {

/// States with an infinite past (forward == false) or future (forward == true)
/// along branches labelled e_Y; greatest fixpoint.
inline std::vector<char> silent_tail_states(const Encoder& enc, bool forward) {
    const std::size_t ns = enc.num_states();
    const int zero = 0;  // the identity has index 0
    std::vector<char> set(ns, 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<char> next(ns, 0);
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
                if (enc.output_index(u, s) != zero) continue;
                auto t = static_cast<std::size_t>(enc.next_index(u, s));
                if (forward && set[t]) next[s] = 1;
                if (!forward && set[s]) next[t] = 1;
            }
        if (next != set) {
            set = std::move(next);
            changed = true;
        }
    }
    return set;
}

}  // namespace detail

/// Whether a sequence with identity tails is generated by the encoder: some
/// state path reads its window and extends to both infinities along silent
/// (e_Y-labelled) branches. Returns one witness path over the window.
inline CodewordCheck is_codeword(const Encoder& enc, const Sequence& seq) {
    if (!(seq.group == enc.Y())) throw WrongGroup("sequence is not over " + enc.Y().describe());
    const std::size_t ns = enc.num_states();
    const auto past = detail::silent_tail_states(enc, false);
    const auto future = detail::silent_tail_states(enc, true);
    const std::size_t len = seq.symbols.size();

    // layer k holds the possible states after reading k window symbols
    std::vector<std::vector<int>> parent(len + 1, std::vector<int>(ns, -1));
    std::vector<char> cur = past;
    for (std::size_t s = 0; s < ns; ++s)
        if (cur[s]) parent[0][s] = static_cast<int>(s);
    for (std::size_t k = 0; k < len; ++k) {
        const auto y = static_cast<int>(enc.Y().index_of(seq.symbols[k]));
        std::vector<char> next(ns, 0);
        for (std::size_t s = 0; s < ns; ++s) {
            if (!cur[s]) continue;
            for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
                if (enc.output_index(u, s) != y) continue;
                auto t = static_cast<std::size_t>(enc.next_index(u, s));
                if (!next[t]) {
                    next[t] = 1;
                    parent[k + 1][t] = static_cast<int>(s);
                }
            }
        }
        cur = std::move(next);
    }
    CodewordCheck res{false, {enc.S(), seq.start - 1, {}}};
    int end_state = -1;
    for (std::size_t s = 0; s < ns && end_state < 0; ++s)
        if (cur[s] && future[s]) end_state = static_cast<int>(s);
    if (end_state < 0) return res;
    res.accepted = true;
    std::vector<GroupElement> path(len + 1);
    int x = end_state;
    for (std::size_t k = len + 1; k-- > 0;) {
        path[k] = enc.S().element_at(static_cast<std::size_t>(x));
        if (k > 0) x = parent[k][static_cast<std::size_t>(x)];
    }
    res.states.symbols = std::move(path);
    return res;
}

/// Compact label: digits run together when every modulus is at most 10,
/// otherwise comma separated.
inline std::string compact(const FiniteAbelianGroup& g, const GroupElement& a) {
    if (a.coords.empty()) return "0";
    bool small = true;
    for (int m : g.moduli()) small = small && m <= 10;
    if (!small) return to_string(a);
    std::string out;
    for (int c : a.coords) out += std::to_string(c);
    return out;
}

/// DOT digraph of the state diagram (sections == 0) or of a trellis with
/// `sections` time steps. Nodes are "t{time}_s{state index}", edges carry "u/y".
inline std::string export_dot(const Encoder& enc, int sections) {
    if (sections < 0) throw NotApplicable("sections must be >= 0");
    std::ostringstream os;
    os << "digraph trellis {\n  rankdir=LR;\n  node [shape=circle];\n";
    const int layers = sections == 0 ? 1 : sections + 1;
    for (int t = 0; t < layers; ++t)
        for (std::size_t s = 0; s < enc.num_states(); ++s)
            os << "  \"t" << t << "_s" << s << "\" [label=\"" << compact(enc.S(), enc.S().element_at(s)) << "\"];\n";
    const int steps = sections == 0 ? 1 : sections;
    for (int t = 0; t < steps; ++t) {
        const int to_layer = sections == 0 ? 0 : t + 1;
        for (std::size_t s = 0; s < enc.num_states(); ++s)
            for (std::size_t u = 0; u < enc.num_inputs(); ++u)
                os << "  \"t" << t << "_s" << s << "\" -> \"t" << to_layer << "_s" << enc.next_index(u, s)
                   << "\" [label=\"" << compact(enc.U(), enc.U().element_at(u)) << "/"
                   << compact(enc.Y(), enc.Y().element_at(static_cast<std::size_t>(enc.output_index(u, s))))
                   << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace groupcode
