#pragma once

// Reachability from the identity state and the controllability decision.
//
//   S_0 = {e},  S_i = nu(U x S_{i-1})      (states reachable in i steps)
//   S_1^- = { s : nu(u, s) = e for some u }  (one-step past of e)
//
// The code is controllable iff the chain reaches S, with index the least such i.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "encoder.hpp"
#include "structure.hpp"
#include "trellis.hpp"

namespace groupcode {

struct ReachabilityChain {
    std::vector<Subgroup> sets;  // S_0 .. S_k with S_k = S_{k+1}
    std::size_t stabilized_at = 0;
    bool reaches_all = false;
};

namespace detail {

using Mask = std::vector<char>;

inline Mask step_image(const Encoder& enc, const Mask& cur) {
    Mask next(enc.num_states(), 0);
    for (std::size_t s = 0; s < cur.size(); ++s)
        if (cur[s])
            for (std::size_t u = 0; u < enc.num_inputs(); ++u) next[static_cast<std::size_t>(enc.next_index(u, s))] = 1;
    return next;
}

inline Mask identity_mask(const Encoder& enc) {
    Mask m(enc.num_states(), 0);
    m[0] = 1;
    return m;
}

inline std::size_t mask_size(const Mask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), 1)); }

inline bool mask_subset(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

inline std::vector<GroupElement> mask_elements(const FiniteAbelianGroup& g, const Mask& m) {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) out.push_back(g.element_at(i));
    return out;
}

/// S_0 .. S_steps without stopping at the fixpoint.
inline std::vector<Mask> chain_masks(const Encoder& enc, std::size_t steps) {
    std::vector<Mask> out{identity_mask(enc)};
    for (std::size_t i = 0; i < steps; ++i) out.push_back(step_image(enc, out.back()));
    return out;
}

inline bool mask_is_closed(const FiniteAbelianGroup& g, const Mask& m) {
    if (!m[0]) return false;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (!m[a]) continue;
        const auto x = g.element_at(a);
        for (std::size_t b = a; b < m.size(); ++b)
            if (m[b] && !m[g.index_of(g.add(x, g.element_at(b)))]) return false;
    }
    return true;
}

}  // namespace detail

/// Iterates the chain until the first repetition (at most |S| steps).
inline ReachabilityChain forward_chain(const Encoder& enc) {
    ReachabilityChain c;
    auto cur = detail::identity_mask(enc);
    for (;;) {
        c.sets.push_back(Subgroup::from_elements(enc.S(), detail::mask_elements(enc.S(), cur)));
        auto next = detail::step_image(enc, cur);
        if (next == cur) break;
        cur = std::move(next);
    }
    c.stabilized_at = c.sets.size() - 1;
    c.reaches_all = c.sets.back().order() == enc.num_states();
    return c;
}

/// States with a one-step transition to e_S. Its size always equals |S_1|;
/// a mismatch means the tables are not those of a homomorphism.
inline Subgroup past_kernel(const Encoder& enc) {
    std::vector<GroupElement> els;
    for (std::size_t s = 0; s < enc.num_states(); ++s)
        for (std::size_t u = 0; u < enc.num_inputs(); ++u)
            if (enc.next_index(u, s) == 0) {
                els.push_back(enc.S().element_at(s));
                break;
            }
    auto k = Subgroup::from_elements(enc.S(), std::move(els));
    const auto s1 = detail::mask_size(detail::step_image(enc, detail::identity_mask(enc)));
    if (k.order() != s1)
        throw SizeViolation("|S_1^-| = " + std::to_string(k.order()) + " but |S_1| = " + std::to_string(s1));
    return k;
}

struct ControlVerdict {
    bool controllable = false;
    std::optional<std::size_t> index;
    ReachabilityChain chain;
    Subgroup witness;  // stabilized S_k: proper when non-controllable, S otherwise
    bool below_definition_domain = false;  // controllable with index < 2
};

/// Controllable iff the chain reaches S. The verdict is cross-checked
/// against L-step reachable sets from every state at L = index and index - 1.
inline ControlVerdict decide_controllability(const Encoder& enc) {
    ControlVerdict v;
    v.chain = forward_chain(enc);
    v.controllable = v.chain.reaches_all;
    v.witness = v.chain.sets.back();
    if (!v.controllable) return v;
    const auto L = v.chain.stabilized_at;
    v.index = L;
    v.below_definition_domain = L < 2;
    const std::size_t ns = enc.num_states();
    for (std::size_t s = 0; s < ns; ++s)
        if (detail::mask_size(reachable_in_exactly(enc, s, static_cast<int>(L))) != ns)
            throw PredicateViolation("state " + to_string(enc.S().element_at(s)) + " does not reach S in " +
                                     std::to_string(L) + " steps");
    if (L > 0) {
        bool some_short = false;
        for (std::size_t s = 0; s < ns && !some_short; ++s)
            some_short = detail::mask_size(reachable_in_exactly(enc, s, static_cast<int>(L - 1))) != ns;
        if (!some_short)
            throw PredicateViolation("every state already reaches S in " + std::to_string(L - 1) + " steps");
    }
    return v;
}

struct Violation {
    std::string predicate;
    std::string counterexample;
};

struct PredicateReport {
    std::map<std::string, bool> predicates;
    std::vector<Violation> violations;
    std::vector<std::size_t> chain_sizes;  // |S_0| .. |S_k|
    std::size_t past_kernel_size = 0;
    std::size_t first_step_size = 0;  // |S_1|
    bool past_kernel_size_is_p = false;
    bool cyclic_state_group_of_order_p = false;

    bool all_pass() const { return violations.empty(); }

    /// Throws PredicateViolation naming the first failed predicate.
    void require() const {
        if (!violations.empty())
            throw PredicateViolation(violations.front().predicate + ": " + violations.front().counterexample);
    }
};

namespace detail {

inline std::string describe_mask(const FiniteAbelianGroup& g, const Mask& m) {
    std::string out = "{";
    bool first = true;
    for (auto& e : mask_elements(g, m)) {
        if (!first) out += ' ';
        out += "(" + to_string(e) + ")";
        first = false;
    }
    return out + "}";
}

inline bool is_power_of(std::size_t n, std::size_t p) {
    while (n > 1 && n % p == 0) n /= p;
    return n == 1;
}

inline FiniteAbelianGroup mask_group(const FiniteAbelianGroup& g, const Mask& m) {
    return recognize(Subgroup::from_elements(g, mask_elements(g, m))).group;
}

}  // namespace detail

/// Evaluates the structural facts about the chain of an encoder with U of
/// prime order p. Implications whose hypothesis fails count as passing.
/// The size |S_1^-| = p is reported separately: it fails whenever nu kills
/// all of U x {e}.
inline PredicateReport check_structure_theorems(const Encoder& enc) {
    const auto& uf = enc.U().invariant_factors();
    if (uf.size() != 1 || !is_prime(uf[0]))
        throw NotApplicable("U = " + enc.U().describe() + " is not cyclic of prime order");
    const std::size_t p = static_cast<std::size_t>(uf[0]);
    const auto& S = enc.S();
    const std::size_t ns = enc.num_states();

    PredicateReport r;
    auto fail = [&](const std::string& name, const std::string& why) {
        r.predicates[name] = false;
        r.violations.push_back({name, why});
    };
    for (const char* name :
         {"chain_subgroups", "chain_nested", "chain_stabilizes", "chain_p_group", "fresh_layer_escapes",
          "controllable_chain_sizes", "past_kernel_absorbed", "past_kernel_image_contained",
          "past_kernel_meets_proper_chain", "cyclic_chain_persists", "cyclic_state_group_uncontrollable",
          "controllable_elementary_abelian"})
        r.predicates[name] = true;

    // run well past the fixpoint so permanence is observed, not assumed
    const auto chain = detail::chain_masks(enc, ns + 1);
    std::size_t k = 0;
    while (k + 1 < chain.size() && chain[k + 1] != chain[k]) ++k;
    for (std::size_t i = 0; i <= k; ++i) r.chain_sizes.push_back(detail::mask_size(chain[i]));
    const bool controllable = detail::mask_size(chain[k]) == ns;

    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!detail::mask_is_closed(S, chain[i]) && r.predicates["chain_subgroups"])
            fail("chain_subgroups", "S_" + std::to_string(i) + " = " + detail::describe_mask(S, chain[i]));
        if (!detail::is_power_of(detail::mask_size(chain[i]), p) && r.predicates["chain_p_group"])
            fail("chain_p_group", "|S_" + std::to_string(i) + "| = " + std::to_string(detail::mask_size(chain[i])));
        if (i == 0) continue;
        if (!detail::mask_subset(chain[i - 1], chain[i]) && r.predicates["chain_nested"])
            fail("chain_nested", "S_" + std::to_string(i - 1) + " not inside S_" + std::to_string(i));
        if (i >= 2 && chain[i - 2] == chain[i - 1] && chain[i] != chain[i - 1] && r.predicates["chain_stabilizes"])
            fail("chain_stabilizes", "S_" + std::to_string(i - 2) + " = S_" + std::to_string(i - 1) + " != S_" +
                                         std::to_string(i));
    }

    // a layer of index p sends every state of the previous fresh layer into the new one
    for (std::size_t j = 2; j <= k; ++j) {
        if (detail::mask_size(chain[j]) != p * detail::mask_size(chain[j - 1])) continue;
        for (std::size_t s = 0; s < ns && r.predicates["fresh_layer_escapes"]; ++s) {
            if (!chain[j - 1][s] || chain[j - 2][s]) continue;
            for (std::size_t u = 0; u < enc.num_inputs(); ++u) {
                auto t = static_cast<std::size_t>(enc.next_index(u, s));
                if (!chain[j][t] || chain[j - 1][t]) {
                    fail("fresh_layer_escapes", "j=" + std::to_string(j) + " u=(" + to_string(enc.U().element_at(u)) +
                                                    ") s=(" + to_string(S.element_at(s)) + ") -> (" +
                                                    to_string(S.element_at(t)) + ")");
                    break;
                }
            }
        }
    }

    if (controllable) {
        std::size_t pw = 1;
        for (std::size_t i = 0; i <= k; ++i, pw *= p)
            if (r.chain_sizes[i] != pw) {
                fail("controllable_chain_sizes",
                     "|S_" + std::to_string(i) + "| = " + std::to_string(r.chain_sizes[i]) + " != " + std::to_string(pw));
                break;
            }
    }

    detail::Mask past(ns, 0);
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t u = 0; u < enc.num_inputs(); ++u)
            if (enc.next_index(u, s) == 0) past[s] = 1;
    r.past_kernel_size = detail::mask_size(past);
    r.first_step_size = chain.size() > 1 ? detail::mask_size(chain[1]) : 1;
    r.past_kernel_size_is_p = r.past_kernel_size == p && r.first_step_size == p;
    detail::Mask past_image = detail::step_image(enc, past);

    for (std::size_t i = 1; i <= k; ++i) {
        bool meets = false;
        for (std::size_t s = 1; s < ns; ++s) meets = meets || (past[s] && chain[i][s]);
        const bool inside = detail::mask_subset(past, chain[i]);
        if (meets && !inside && r.predicates["past_kernel_absorbed"])
            fail("past_kernel_absorbed", "S_1^- = " + detail::describe_mask(S, past) + " meets but escapes S_" +
                                             std::to_string(i) + " = " + detail::describe_mask(S, chain[i]));
        if (inside && !detail::mask_subset(past_image, chain[i]) && r.predicates["past_kernel_image_contained"])
            fail("past_kernel_image_contained",
                 "nu(U, S_1^-) = " + detail::describe_mask(S, past_image) + " escapes S_" + std::to_string(i));
        if (meets && detail::mask_size(chain[i]) != ns && controllable && r.predicates["past_kernel_meets_proper_chain"])
            fail("past_kernel_meets_proper_chain", "S_1^- meets proper S_" + std::to_string(i) + " yet S is reached");
    }

    for (std::size_t i = 2; i + 1 < chain.size(); ++i) {
        if (!detail::mask_group(S, chain[i]).is_cyclic()) continue;
        if (!detail::mask_group(S, chain[i + 1]).is_cyclic()) {
            fail("cyclic_chain_persists", "S_" + std::to_string(i) + " cyclic, S_" + std::to_string(i + 1) + " = " +
                                              detail::mask_group(S, chain[i + 1]).describe());
            break;
        }
    }

    r.cyclic_state_group_of_order_p = ns == p;
    if (S.is_cyclic() && ns > p && controllable)
        fail("cyclic_state_group_uncontrollable", "S = " + S.describe() + " is cyclic and controllable");

    if (controllable)
        for (int d : S.invariant_factors())
            if (static_cast<std::size_t>(d) != p) {
                fail("controllable_elementary_abelian", "controllable with S = " + S.describe());
                break;
            }
    return r;
}

}  // namespace groupcode
