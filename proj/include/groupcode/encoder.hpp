#pragma once

// Wide-sense homomorphic encoders M = (U, S, Y, nu, omega) over an extension
// G = U [x] S, and the recurrences they drive:
//
//   s_i = nu(u_i, s_{i-1}),   y_i = omega(u_i, s_{i-1})
//
// Bi-infinite sequences are finite windows whose tails are the identity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "extension.hpp"
#include "group.hpp"
#include "hom.hpp"

namespace groupcode {

class Encoder {
public:
    Encoder() = default;

    /// Unvalidated; make_encoder() is the checked entry point.
    Encoder(ExtensionDecomposition ext, FiniteAbelianGroup Y, GroupHom nu, GroupHom omega)
        : ext_(std::move(ext)), Y_(std::move(Y)), nu_(std::move(nu)), omega_(std::move(omega)) {
        if (!(nu_.source() == ext_.G) || !(nu_.target() == ext_.S))
            throw WrongGroup("nu must map " + ext_.G.describe() + " to " + ext_.S.describe());
        if (!(omega_.source() == ext_.G) || !(omega_.target() == Y_))
            throw WrongGroup("omega must map " + ext_.G.describe() + " to " + Y_.describe());
        const std::size_t nu_n = ext_.U.order(), ns = ext_.S.order();
        next_.resize(nu_n * ns);
        out_.resize(nu_n * ns);
        pair_.resize(nu_n * ns);
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t u = 0; u < nu_n; ++u) {
                auto g = ext_.compose(ext_.U.element_at(u), ext_.S.element_at(s));
                pair_[s * nu_n + u] = static_cast<int>(ext_.G.index_of(g));
                next_[s * nu_n + u] = static_cast<int>(ext_.S.index_of(nu_.apply(g)));
                out_[s * nu_n + u] = static_cast<int>(Y_.index_of(omega_.apply(g)));
            }
    }

    const ExtensionDecomposition& extension() const { return ext_; }
    const FiniteAbelianGroup& G() const { return ext_.G; }
    const FiniteAbelianGroup& U() const { return ext_.U; }
    const FiniteAbelianGroup& S() const { return ext_.S; }
    const FiniteAbelianGroup& Y() const { return Y_; }
    const GroupHom& nu() const { return nu_; }
    const GroupHom& omega() const { return omega_; }

    std::size_t num_inputs() const { return ext_.U.order(); }
    std::size_t num_states() const { return ext_.S.order(); }

    /// Index-level transition tables, s-major and u-minor.
    int next_index(std::size_t u, std::size_t s) const { return next_[s * num_inputs() + u]; }
    int output_index(std::size_t u, std::size_t s) const { return out_[s * num_inputs() + u]; }
    int pair_index(std::size_t u, std::size_t s) const { return pair_[s * num_inputs() + u]; }

    GroupElement next_state(const GroupElement& u, const GroupElement& s) const {
        return ext_.S.element_at(static_cast<std::size_t>(next_index(ext_.U.index_of(u), ext_.S.index_of(s))));
    }
    GroupElement output(const GroupElement& u, const GroupElement& s) const {
        return Y_.element_at(static_cast<std::size_t>(output_index(ext_.U.index_of(u), ext_.S.index_of(s))));
    }

private:
    ExtensionDecomposition ext_;
    FiniteAbelianGroup Y_;
    GroupHom nu_;
    GroupHom omega_;
    std::vector<int> next_, out_, pair_;
};

/// Psi(u, s) = (s, omega, nu) is injective iff no nonidentity element of
/// N = U x {e_S} lies in ker(omega) and ker(nu). Returns the offending u.
inline std::optional<GroupElement> psi_kernel_witness(const Encoder& enc) {
    const auto& ext = enc.extension();
    for (std::size_t i = 1; i < ext.U.order(); ++i) {
        auto u = ext.U.element_at(i);
        auto g = ext.embedding.apply(u);
        if (enc.nu().apply(g) == ext.S.identity() && enc.omega().apply(g) == enc.Y().identity()) return u;
    }
    return std::nullopt;
}

/// Brute-force injectivity of the (from, label, to) table.
inline bool psi_injective_by_table(const Encoder& enc) {
    std::vector<char> seen(enc.num_states() * enc.Y().order() * enc.num_states(), 0);
    for (std::size_t s = 0; s < enc.num_states(); ++s)
        for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
            auto key = (s * enc.Y().order() + static_cast<std::size_t>(enc.output_index(u, s))) * enc.num_states() +
                       static_cast<std::size_t>(enc.next_index(u, s));
            if (seen[key]) return false;
            seen[key] = 1;
        }
    return true;
}

/// Validates an encoder over an arbitrary decomposition.
inline Encoder make_encoder(const ExtensionDecomposition& ext, const FiniteAbelianGroup& Y, const GroupHom& nu,
                            const GroupHom& omega) {
    Encoder enc(ext, Y, nu, omega);
    auto img = nu.image();
    if (img.order() != ext.S.order()) {
        for (auto& s : ext.S.elements())
            if (!img.contains(s))
                throw NuNotSurjective("nu misses state (" + to_string(s) + "); image has " +
                                      std::to_string(img.order()) + " of " + std::to_string(ext.S.order()) +
                                      " states");
    }
    if (auto w = psi_kernel_witness(enc))
        throw PsiNotInjective("input (" + to_string(*w) + ") at state e_S gives the same branch as the identity input");
    return enc;
}

/// Validates an encoder over the direct product U + S in pair coordinates.
inline Encoder make_encoder(const FiniteAbelianGroup& U, const FiniteAbelianGroup& S, const FiniteAbelianGroup& Y,
                            const GroupHom& nu, const GroupHom& omega) {
    return make_encoder(direct_product(U, S), Y, nu, omega);
}

/// Builds nu and omega from raw generator images, reporting an ill-defined map
/// as NuNotHom / OmegaNotHom.
inline Encoder make_encoder(const ExtensionDecomposition& ext, const FiniteAbelianGroup& Y,
                            const std::vector<GroupElement>& nu_images,
                            const std::vector<GroupElement>& omega_images) {
    GroupHom nu, omega;
    try {
        nu = GroupHom(ext.G, ext.S, nu_images);
    } catch (const NotAHomomorphism& e) {
        throw NuNotHom(e.what());
    }
    try {
        omega = GroupHom(ext.G, Y, omega_images);
    } catch (const NotAHomomorphism& e) {
        throw OmegaNotHom(e.what());
    }
    return make_encoder(ext, Y, nu, omega);
}

/// A bi-infinite sequence: symbols[k] sits at index start + k, everything
/// outside the window is the identity of `group`.
struct Sequence {
    FiniteAbelianGroup group;
    std::int64_t start = 0;
    std::vector<GroupElement> symbols;

    std::int64_t end() const { return start + static_cast<std::int64_t>(symbols.size()); }

    GroupElement at(std::int64_t i) const {
        if (i < start || i >= end()) return group.identity();
        return symbols[static_cast<std::size_t>(i - start)];
    }

    /// Equality as bi-infinite sequences.
    friend bool operator==(const Sequence& a, const Sequence& b) {
        if (!(a.group == b.group)) return false;
        const auto lo = std::min(a.start, b.start), hi = std::max(a.end(), b.end());
        for (auto i = lo; i < hi; ++i)
            if (a.at(i) != b.at(i)) return false;
        return true;
    }
};

struct ForwardRun {
    std::vector<GroupElement> states;   // s_1 .. s_n
    std::vector<GroupElement> outputs;  // y_1 .. y_n
};

inline ForwardRun encode_forward(const Encoder& enc, const GroupElement& s0, const std::vector<GroupElement>& inputs) {
    enc.S().check(s0);
    ForwardRun run;
    auto s = enc.S().index_of(s0);
    for (auto& u : inputs) {
        auto ui = enc.U().index_of(u);
        run.outputs.push_back(enc.Y().element_at(static_cast<std::size_t>(enc.output_index(ui, s))));
        s = static_cast<std::size_t>(enc.next_index(ui, s));
        run.states.push_back(enc.S().element_at(s));
    }
    return run;
}

struct PastRun {
    std::vector<GroupElement> states;   // s_-1, s_-2, ..., s_-depth
    std::vector<GroupElement> inputs;   // u_0, u_-1, ..., u_-depth+1
    std::vector<GroupElement> outputs;  // y_0, y_-1, ..., y_-depth+1
};

/// Walks backwards from s0 choosing, at each step, the lexicographically
/// minimal pair (u, s) with nu(u, s) equal to the current state.
inline PastRun extend_past(const Encoder& enc, const GroupElement& s0, int depth) {
    if (depth < 1) throw NotApplicable("depth must be >= 1");
    enc.S().check(s0);
    PastRun run;
    auto cur = enc.S().index_of(s0);
    for (int k = 0; k < depth; ++k) {
        bool found = false;
        for (std::size_t u = 0; u < enc.num_inputs() && !found; ++u)
            for (std::size_t s = 0; s < enc.num_states() && !found; ++s)
                if (static_cast<std::size_t>(enc.next_index(u, s)) == cur) {
                    run.inputs.push_back(enc.U().element_at(u));
                    run.outputs.push_back(enc.Y().element_at(static_cast<std::size_t>(enc.output_index(u, s))));
                    run.states.push_back(enc.S().element_at(s));
                    cur = s;
                    found = true;
                }
        if (!found) throw NuNotSurjective("state (" + to_string(enc.S().element_at(cur)) + ") has no predecessor");
    }
    return run;
}

/// All (u, s) with nu(u, s) = target, lexicographic.
inline std::vector<Pair> preimages(const Encoder& enc, const GroupElement& target) {
    std::vector<Pair> out;
    const auto t = static_cast<int>(enc.S().index_of(target));
    for (std::size_t u = 0; u < enc.num_inputs(); ++u)
        for (std::size_t s = 0; s < enc.num_states(); ++s)
            if (enc.next_index(u, s) == t) out.emplace_back(enc.U().element_at(u), enc.S().element_at(s));
    return out;
}

/// Shortest input word driving `from` to `to` in at most max_len steps, the
/// lexicographically least among shortest ones. The empty word when from == to.
inline std::optional<std::vector<GroupElement>> shortest_input_word(const Encoder& enc, const GroupElement& from,
                                                                    const GroupElement& to, int max_len) {
    const auto src = enc.S().index_of(from), dst = enc.S().index_of(to);
    if (src == dst) return std::vector<GroupElement>{};
    const std::size_t ns = enc.num_states();
    std::vector<int> parent(ns, -1), via(ns, -1), depth(ns, -1);
    std::deque<std::size_t> queue{src};
    depth[src] = 0;
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        if (depth[s] >= max_len) continue;
        for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
            auto t = static_cast<std::size_t>(enc.next_index(u, s));
            if (depth[t] >= 0) continue;
            depth[t] = depth[s] + 1;
            parent[t] = static_cast<int>(s);
            via[t] = static_cast<int>(u);
            if (t == dst) {
                std::vector<GroupElement> word;
                for (auto x = t; x != src; x = static_cast<std::size_t>(parent[x]))
                    word.push_back(enc.U().element_at(static_cast<std::size_t>(via[x])));
                std::reverse(word.begin(), word.end());
                return word;
            }
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

/// Padding inputs returning s to e_S; nullopt means unreachable within max_len.
inline std::optional<std::vector<GroupElement>> zero_tail(const Encoder& enc, const GroupElement& s, int max_len) {
    if (max_len < 1) throw NotApplicable("max_len must be >= 1");
    return shortest_input_word(enc, s, enc.S().identity(), max_len);
}

/// A finite message encoded from e_S, padded back to e_S, as bi-infinite
/// input / state / output sequences. Input u_i and output y_i sit at index
/// i (from `start`), state s_i is the state after step i.
struct CodewordRun {
    Sequence inputs;
    Sequence states;
    Sequence outputs;
    std::size_t padding = 0;
};

inline std::optional<CodewordRun> encode_codeword(const Encoder& enc, const std::vector<GroupElement>& message,
                                                  std::int64_t start = 1) {
    auto run = encode_forward(enc, enc.S().identity(), message);
    auto last = run.states.empty() ? enc.S().identity() : run.states.back();
    auto pad = zero_tail(enc, last, static_cast<int>(std::max<std::size_t>(enc.num_states(), 1)));
    if (!pad) return std::nullopt;
    auto all = message;
    all.insert(all.end(), pad->begin(), pad->end());
    auto full = encode_forward(enc, enc.S().identity(), all);
    CodewordRun cw{{enc.U(), start, all}, {enc.S(), start, full.states}, {enc.Y(), start, full.outputs}, pad->size()};
    return cw;
}

}  // namespace groupcode
