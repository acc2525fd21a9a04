#pragma once

// Structure recognition: invariant factors of subgroups, quotients and
// abstract Cayley tables, by basis extraction.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "group.hpp"
#include "hom.hpp"

namespace groupcode {

namespace detail {

/// A finite abelian group given by an addition table over 0..n-1.
struct TableGroup {
    std::size_t n = 1;
    std::vector<int> table{0};
    int zero = 0;

    int op(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }

    int times(long long k, int a) const {
        int r = zero;
        for (long long i = 0; i < k; ++i) r = op(r, a);
        return r;
    }

    int neg(int a) const {
        for (std::size_t b = 0; b < n; ++b)
            if (op(a, static_cast<int>(b)) == zero) return static_cast<int>(b);
        return zero;
    }
};

/// Least k >= 1 with k*a in the subgroup `in`.
inline int order_modulo(const TableGroup& t, int a, const std::vector<char>& in) {
    int k = 1;
    int x = a;
    while (!in[x]) {
        x = t.op(x, a);
        ++k;
    }
    return k;
}

struct TableBasis {
    std::vector<int> elements;  // basis elements, orders ascending
    std::vector<int> orders;    // d_1 | d_2 | ... | d_k
};

/// Splits off cyclic factors greedily: repeatedly take the first element of
/// maximal order modulo what has been generated so far, then correct the
/// later picks so that each has its quotient order in the whole group.
inline TableBasis extract_basis(const TableGroup& t) {
    std::vector<std::vector<char>> levels;  // levels[j] = <picks[0..j-1]>
    std::vector<char> in(t.n, 0);
    in[t.zero] = 1;
    std::size_t covered = 1;
    std::vector<int> picks, orders;
    while (covered < t.n) {
        levels.push_back(in);
        int best = -1, best_order = 0;
        for (std::size_t a = 0; a < t.n; ++a) {
            int o = order_modulo(t, static_cast<int>(a), in);
            if (o > best_order) {
                best = static_cast<int>(a);
                best_order = o;
            }
        }
        picks.push_back(best);
        orders.push_back(best_order);
        std::vector<char> next(t.n, 0);
        for (std::size_t m = 0; m < t.n; ++m) {
            if (!in[m]) continue;
            int x = static_cast<int>(m);
            for (int k = 0; k < best_order; ++k) {
                next[x] = 1;
                x = t.op(x, best);
            }
        }
        in = std::move(next);
        covered = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
    }
    const std::size_t k = picks.size();
    for (std::size_t j = k; j-- > 0;) {
        for (std::size_t s = j + 1; s < k; ++s) {
            // orders[s] * picks[s] lies in levels[j] + <picks[j]>; remove the <picks[j]> part
            const int w = t.times(orders[s], picks[s]);
            int a = 0;
            int shift = w;
            const int back = t.neg(picks[j]);
            while (!levels[j][shift]) {
                shift = t.op(shift, back);
                ++a;
            }
            // a is a multiple of orders[s] because picks[j] had maximal order
            const int c = a / orders[s];
            picks[s] = t.op(picks[s], t.times(c, back));
        }
    }
    std::reverse(picks.begin(), picks.end());
    std::reverse(orders.begin(), orders.end());
    return {picks, orders};
}

}  // namespace detail

/// An isomorphism from a canonical group onto a subgroup: the coordinate
/// vector c maps to sum_i c_i * basis[i].
struct Recognized {
    FiniteAbelianGroup group;
    std::vector<GroupElement> basis;
};

inline Recognized recognize(const Subgroup& h) {
    const auto& parent = h.parent();
    const auto& els = h.elements();
    detail::TableGroup t;
    t.n = els.size();
    t.table.assign(t.n * t.n, 0);
    auto pos = [&](const GroupElement& x) {
        return static_cast<int>(std::lower_bound(els.begin(), els.end(), x) - els.begin());
    };
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) t.table[i * t.n + j] = pos(parent.add(els[i], els[j]));
    t.zero = pos(parent.identity());
    auto b = detail::extract_basis(t);
    Recognized r{FiniteAbelianGroup::with_moduli(b.orders), {}};
    for (int e : b.elements) r.basis.push_back(els[static_cast<std::size_t>(e)]);
    return r;
}

/// Invariant factors of a group given by its operation table (any labels
/// 0..n-1). Throws NotAbelian when the table is not commutative.
inline FiniteAbelianGroup recognize(const std::vector<std::vector<int>>& table) {
    const std::size_t n = table.size();
    detail::TableGroup t;
    t.n = n;
    t.table.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw NotAbelian("operation table is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] != table[j][i])
                throw NotAbelian("elements " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
            t.table[i * n + j] = table[i][j];
        }
    }
    t.zero = -1;
    for (std::size_t e = 0; e < n && t.zero < 0; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == static_cast<int>(x);
        if (ok) t.zero = static_cast<int>(e);
    }
    if (t.zero < 0) throw NotAbelian("operation table has no identity");
    return FiniteAbelianGroup::with_moduli(detail::extract_basis(t).orders);
}

inline bool is_isomorphic(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.invariant_factors() == b.invariant_factors();
}

/// G/N in canonical form. Cosets are labelled by their lexicographically
/// minimal element; representatives[q] is the label of quotient element q.
struct Quotient {
    FiniteAbelianGroup group;
    GroupHom projection;
    std::vector<GroupElement> representatives;
};

inline Quotient quotient(const FiniteAbelianGroup& g, const Subgroup& n) {
    if (!(n.parent() == g)) throw NotASubgroup("subgroup belongs to " + n.parent().describe());
    // closure check; Subgroup construction normally guarantees it
    for (auto& a : n.elements())
        for (auto& b : n.elements())
            if (!n.contains(g.add(a, b))) throw NotASubgroup("set is not closed");

    const std::size_t order = g.order();
    std::vector<int> coset_of(order, -1);
    std::vector<GroupElement> reps;
    for (std::size_t i = 0; i < order; ++i) {
        if (coset_of[i] >= 0) continue;
        const auto rep = g.element_at(i);
        for (auto& x : n.elements()) coset_of[g.index_of(g.add(rep, x))] = static_cast<int>(reps.size());
        reps.push_back(rep);
    }
    detail::TableGroup t;
    t.n = reps.size();
    t.table.assign(t.n * t.n, 0);
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j)
            t.table[i * t.n + j] = coset_of[g.index_of(g.add(reps[i], reps[j]))];
    t.zero = 0;
    auto basis = detail::extract_basis(t);
    auto q = FiniteAbelianGroup::with_moduli(basis.orders);

    std::vector<int> label_of_coset(t.n, -1);
    std::vector<GroupElement> q_reps(t.n);
    for (std::size_t qi = 0; qi < q.order(); ++qi) {
        auto c = q.element_at(qi);
        int coset = t.zero;
        for (std::size_t k = 0; k < c.size(); ++k) coset = t.op(coset, t.times(c[k], basis.elements[k]));
        label_of_coset[static_cast<std::size_t>(coset)] = static_cast<int>(qi);
        q_reps[qi] = reps[static_cast<std::size_t>(coset)];
    }
    std::vector<GroupElement> imgs;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        int coset = coset_of[g.index_of(g.generator(i))];
        imgs.push_back(q.element_at(static_cast<std::size_t>(label_of_coset[static_cast<std::size_t>(coset)])));
    }
    return {q, GroupHom(g, q, std::move(imgs)), std::move(q_reps)};
}

}  // namespace groupcode
