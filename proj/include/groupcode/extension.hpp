#pragma once

// Extensions G = U [x] S of U by S: a group G with subgroup N ~ U and
// quotient G/N ~ S, rebuilt from a lifting l, the action phi and the factor
// set xi. Everything is written additively:
//
//   phi(s)(u)   = v( l(s) + v^-1(u) - l(s) )
//   xi(s1, s2)  = v( l(s1) + l(s2) - l(s1 + s2) )
//   (u1, s1) * (u2, s2) = (u1 + phi(s1)(u2) + xi(s1, s2), s1 + s2)
//
// where v : N -> U. In an abelian G the action is always trivial.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "group.hpp"
#include "hom.hpp"
#include "structure.hpp"

namespace groupcode {

using Pair = std::pair<GroupElement, GroupElement>;  // (u, s)

struct ExtensionDecomposition {
    FiniteAbelianGroup G;
    Subgroup N;
    FiniteAbelianGroup U;
    FiniteAbelianGroup S;
    GroupHom embedding;   // v^-1 : U -> G, image N
    GroupHom psi;         // S -> G/N, bijective
    Quotient quotient;    // G/N with min-representative labels
    GroupHom projection;  // G -> S, psi^-1 o (G -> G/N)
    std::vector<GroupElement> lifting;            // indexed by S element index
    std::vector<std::vector<GroupElement>> phi;   // phi[s][u] in U
    std::vector<std::vector<GroupElement>> xi;    // xi[s1][s2] in U
    bool pair_coordinates = false;  // G = U + S with g = (u, s) literally

    /// v : N -> U.
    GroupElement upsilon(const GroupElement& n) const {
        for (std::size_t i = 0; i < U.order(); ++i) {
            auto u = U.element_at(i);
            if (embedding.apply(u) == n) return u;
        }
        throw WrongGroup("(" + to_string(n) + ") is not in the embedded subgroup");
    }

    /// (u, s) -> l(s) + v^-1(u).
    GroupElement compose(const GroupElement& u, const GroupElement& s) const {
        return G.add(lifting[S.index_of(s)], embedding.apply(u));
    }

    /// g -> (u, s), the inverse of compose.
    Pair factor(const GroupElement& g) const {
        auto s = projection.apply(g);
        auto n = G.sub(g, lifting[S.index_of(s)]);
        return {upsilon(n), s};
    }
};

namespace detail {

inline void tabulate_action_and_factor_set(ExtensionDecomposition& d) {
    const auto& G = d.G;
    const std::size_t ns = d.S.order(), nu = d.U.order();
    d.phi.assign(ns, std::vector<GroupElement>(nu));
    d.xi.assign(ns, std::vector<GroupElement>(ns));
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& l = d.lifting[s];
        for (std::size_t u = 0; u < nu; ++u) {
            auto conj = G.sub(G.add(l, d.embedding.apply(d.U.element_at(u))), l);
            d.phi[s][u] = d.upsilon(conj);
        }
    }
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t b = 0; b < ns; ++b) {
            auto sum = d.S.index_of(d.S.add(d.S.element_at(a), d.S.element_at(b)));
            auto defect = G.sub(G.add(d.lifting[a], d.lifting[b]), d.lifting[sum]);
            d.xi[a][b] = d.upsilon(defect);
        }
}

}  // namespace detail

/// Decomposes G along N: U and S are the recognized forms of N and G/N and
/// the lifting picks the minimal element of each coset.
inline ExtensionDecomposition decompose(const FiniteAbelianGroup& G, const Subgroup& N) {
    if (!(N.parent() == G)) throw NotASubgroup("subgroup belongs to " + N.parent().describe());
    ExtensionDecomposition d;
    d.G = G;
    d.N = N;
    auto rec = recognize(N);
    d.U = rec.group;
    d.embedding = GroupHom(d.U, G, rec.basis);
    d.quotient = quotient(G, N);
    d.S = d.quotient.group;
    d.psi = GroupHom::identity(d.S);
    d.projection = d.quotient.projection;
    d.lifting = d.quotient.representatives;
    detail::tabulate_action_and_factor_set(d);
    return d;
}

/// The direct product U + S in pair coordinates: g = (u, s), N = U + 0 and
/// l(s) = (0, s).
inline ExtensionDecomposition direct_product(const FiniteAbelianGroup& U, const FiniteAbelianGroup& S) {
    ExtensionDecomposition d;
    d.G = direct_sum(U, S);
    d.U = U;
    d.S = S;
    d.pair_coordinates = true;
    std::vector<GroupElement> emb;
    for (std::size_t i = 0; i < U.rank(); ++i) emb.push_back(concat(U.generator(i), S.identity()));
    d.embedding = GroupHom(U, d.G, emb);
    d.N = subgroup_generated(d.G, emb);
    std::vector<GroupElement> proj;
    for (std::size_t i = 0; i < U.rank(); ++i) proj.push_back(S.identity());
    for (std::size_t i = 0; i < S.rank(); ++i) proj.push_back(S.generator(i));
    d.projection = GroupHom(d.G, S, proj);
    d.quotient = quotient(d.G, d.N);
    std::vector<GroupElement> psi_imgs;
    for (std::size_t i = 0; i < S.rank(); ++i)
        psi_imgs.push_back(d.quotient.projection.apply(concat(U.identity(), S.generator(i))));
    d.psi = GroupHom(S, d.quotient.group, psi_imgs);
    for (auto& s : S.elements()) d.lifting.push_back(concat(U.identity(), s));
    detail::tabulate_action_and_factor_set(d);
    return d;
}

inline Pair extension_product(const ExtensionDecomposition& d, const Pair& a, const Pair& b) {
    const auto& [u1, s1] = a;
    const auto& [u2, s2] = b;
    const auto i1 = d.S.index_of(s1), i2 = d.S.index_of(s2);
    auto u = d.U.add(d.U.add(u1, d.phi[i1][d.U.index_of(u2)]), d.xi[i1][i2]);
    return {u, d.S.add(s1, s2)};
}

/// n-fold product of a with itself (n >= 0).
inline Pair extension_power(const ExtensionDecomposition& d, const Pair& a, int n) {
    Pair r{d.U.identity(), d.S.identity()};
    for (int i = 0; i < n; ++i) r = extension_product(d, r, a);
    return r;
}

/// True iff the pair map is a bijection U x S -> G carrying the tabulated
/// product onto the operation of G, checked over all |G|^2 pairs.
inline bool verify_decomposition(const ExtensionDecomposition& d) {
    const auto& G = d.G;
    if (d.U.order() * d.S.order() != G.order()) return false;
    std::vector<char> hit(G.order(), 0);
    std::vector<Pair> pairs(G.order());
    for (auto& u : d.U.elements())
        for (auto& s : d.S.elements()) {
            auto g = d.compose(u, s);
            auto k = G.index_of(g);
            if (hit[k]) return false;
            hit[k] = 1;
            pairs[k] = {u, s};
        }
    if (d.lifting[d.S.index_of(d.S.identity())] != G.identity()) return false;
    for (std::size_t a = 0; a < G.order(); ++a)
        for (std::size_t b = 0; b < G.order(); ++b) {
            auto sum = G.index_of(G.add(G.element_at(a), G.element_at(b)));
            if (extension_product(d, pairs[a], pairs[b]) != pairs[sum]) return false;
        }
    return true;
}

enum class ExtensionClass { DirectProduct, Cyclic };

inline const char* to_string(ExtensionClass c) {
    return c == ExtensionClass::DirectProduct ? "DirectProduct" : "Cyclic";
}

/// Z_p [x] Z_m is either Z_p + Z_m or Z_pm, decided by (0, 1)^m: the identity
/// gives the direct product, (u, 0) with u != 0 the cyclic group.
inline ExtensionClass classify_Zp_Zm(const ExtensionDecomposition& d) {
    if (d.U.invariant_factors().size() != 1 || !is_prime(d.U.invariant_factors()[0]))
        throw NotApplicable("U = " + d.U.describe() + " is not cyclic of prime order");
    if (!d.S.is_cyclic()) throw NotApplicable("S = " + d.S.describe() + " is not cyclic");
    const int m = static_cast<int>(d.S.order());
    // a generator of S: any element of order m
    GroupElement gen = d.S.identity();
    for (auto& s : d.S.elements())
        if (d.S.element_order(s) == m) {
            gen = s;
            break;
        }
    auto pw = extension_power(d, {d.U.identity(), gen}, m);
    return pw.first == d.U.identity() ? ExtensionClass::DirectProduct : ExtensionClass::Cyclic;
}

inline bool phi_is_trivial(const ExtensionDecomposition& d) {
    for (std::size_t s = 0; s < d.phi.size(); ++s)
        for (std::size_t u = 0; u < d.phi[s].size(); ++u)
            if (d.phi[s][u] != d.U.element_at(u)) return false;
    return true;
}

inline bool xi_is_symmetric(const ExtensionDecomposition& d) {
    for (std::size_t a = 0; a < d.xi.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (d.xi[a][b] != d.xi[b][a]) return false;
    return true;
}

inline bool xi_is_normalized(const ExtensionDecomposition& d) {
    const auto e = d.S.index_of(d.S.identity());
    for (std::size_t s = 0; s < d.xi.size(); ++s)
        if (d.xi[e][s] != d.U.identity() || d.xi[s][e] != d.U.identity()) return false;
    return true;
}

/// A pair of the tabulated product that does not commute, if any.
inline std::optional<std::pair<Pair, Pair>> noncommuting_pair(const ExtensionDecomposition& d) {
    for (auto& u1 : d.U.elements())
        for (auto& s1 : d.S.elements())
            for (auto& u2 : d.U.elements())
                for (auto& s2 : d.S.elements()) {
                    Pair a{u1, s1}, b{u2, s2};
                    if (extension_product(d, a, b) != extension_product(d, b, a)) return std::make_pair(a, b);
                }
    return std::nullopt;
}

/// A nontrivial action must show up as a non-commuting pair of the product,
/// and since G itself is abelian its action must be trivial.
inline bool check_phi_abelian_consistency(const ExtensionDecomposition& d) {
    const bool trivial = phi_is_trivial(d);
    if (!trivial && !noncommuting_pair(d)) return false;
    return trivial;
}

}  // namespace groupcode
