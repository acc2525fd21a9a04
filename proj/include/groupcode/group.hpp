#pragma once

// Finite abelian groups in coordinates.
//
// A group is a list of coordinate moduli m_1, ..., m_k (each >= 2); its
// elements are residue vectors added componentwise. make_group() returns the
// canonical invariant-factor form d_1 | d_2 | ... | d_k, but groups built as
// direct sums keep the coordinates they were given (U coordinates first, then
// S, for encoder pair coordinates). Elements are indexed in mixed radix with
// the first coordinate most significant, so index order is lexicographic order.

#include <algorithm>
#include <compare>
#include <iterator>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace groupcode {

struct GroupElement {
    std::vector<int> coords;

    GroupElement() = default;
    explicit GroupElement(std::vector<int> c) : coords(std::move(c)) {}
    GroupElement(std::initializer_list<int> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    int operator[](std::size_t i) const { return coords[i]; }

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Renders an element as "0,1,3" (or "0" for the trivial group).
inline std::string to_string(const GroupElement& a) {
    if (a.coords.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a.coords[i]);
    }
    return out;
}

namespace detail {

inline std::vector<std::pair<int, int>> prime_powers(int n) {
    std::vector<std::pair<int, int>> out;
    for (int q = 2; q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e) out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace detail

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/// Canonical invariant factors of Z_{m_1} + ... + Z_{m_k}, via the primary
/// decomposition. Throws InvalidFactor on any entry <= 1.
inline std::vector<int> normalize_factors(const std::vector<int>& moduli) {
    std::map<int, std::vector<int>> exps;
    for (int m : moduli) {
        if (m <= 1) throw InvalidFactor("factor " + std::to_string(m) + " must be >= 2");
        for (auto [q, e] : detail::prime_powers(m)) exps[q].push_back(e);
    }
    std::size_t len = 0;
    for (auto& [q, es] : exps) {
        std::sort(es.begin(), es.end(), std::greater<>());
        len = std::max(len, es.size());
    }
    // largest factor first, then reversed into a divisibility chain
    std::vector<int> out(len, 1);
    for (auto& [q, es] : exps)
        for (std::size_t i = 0; i < es.size(); ++i) out[i] *= detail::ipow(q, es[i]);
    std::reverse(out.begin(), out.end());
    return out;
}

class FiniteAbelianGroup {
public:
    /// The trivial group.
    FiniteAbelianGroup() = default;

    /// Group with exactly these coordinate moduli (no normalization).
    static FiniteAbelianGroup with_moduli(std::vector<int> moduli) {
        for (int m : moduli)
            if (m <= 1) throw InvalidFactor("modulus " + std::to_string(m) + " must be >= 2");
        FiniteAbelianGroup g;
        g.moduli_ = std::move(moduli);
        g.order_ = 1;
        for (int m : g.moduli_) g.order_ *= static_cast<std::size_t>(m);
        return g;
    }

    const std::vector<int>& moduli() const { return moduli_; }
    std::size_t rank() const { return moduli_.size(); }
    std::size_t order() const { return order_; }

    std::vector<int> invariant_factors() const { return normalize_factors(moduli_); }
    bool is_canonical() const { return invariant_factors() == moduli_; }
    bool is_trivial() const { return order_ == 1; }
    bool is_cyclic() const { return invariant_factors().size() <= 1; }

    /// Exponent of the group (lcm of the moduli, 1 for the trivial group).
    int exponent() const {
        int e = 1;
        for (int m : moduli_) e = std::lcm(e, m);
        return e;
    }

    bool contains(const GroupElement& a) const {
        if (a.size() != moduli_.size()) return false;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            if (a[i] < 0 || a[i] >= moduli_[i]) return false;
        return true;
    }

    void check(const GroupElement& a) const {
        if (!contains(a))
            throw WrongGroup("element (" + to_string(a) + ") is not in " + describe());
    }

    GroupElement identity() const { return GroupElement(std::vector<int>(moduli_.size(), 0)); }

    GroupElement generator(std::size_t i) const {
        GroupElement e = identity();
        e.coords.at(i) = 1;
        return e;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        if (a.size() != rank() || b.size() != rank())
            throw WrongGroup("coordinate length mismatch in " + describe());
        GroupElement r = a;
        for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = (a[i] + b[i]) % moduli_[i];
        return r;
    }

    GroupElement neg(const GroupElement& a) const {
        if (a.size() != rank()) throw WrongGroup("coordinate length mismatch in " + describe());
        GroupElement r = a;
        for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = (moduli_[i] - a[i]) % moduli_[i];
        return r;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

    /// n * a; n may be negative.
    GroupElement scale(long long n, const GroupElement& a) const {
        if (a.size() != rank()) throw WrongGroup("coordinate length mismatch in " + describe());
        GroupElement r = a;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            long long v = (n % moduli_[i]) * a[i] % moduli_[i];
            if (v < 0) v += moduli_[i];
            r.coords[i] = static_cast<int>(v);
        }
        return r;
    }

    /// Least n >= 1 with n * a = identity.
    int element_order(const GroupElement& a) const {
        check(a);
        int o = 1;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            o = std::lcm(o, moduli_[i] / std::gcd(moduli_[i], a[i]));
        return o;
    }

    std::size_t index_of(const GroupElement& a) const {
        check(a);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + a[i];
        return idx;
    }

    GroupElement element_at(std::size_t idx) const {
        GroupElement r = identity();
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            r.coords[i] = static_cast<int>(idx % moduli_[i]);
            idx /= moduli_[i];
        }
        return r;
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(order_);
        for (std::size_t i = 0; i < order_; ++i) out.push_back(element_at(i));
        return out;
    }

    /// Addition table over element indices, row-major.
    std::vector<int> addition_table() const {
        std::vector<int> t(order_ * order_);
        auto els = elements();
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j)
                t[i * order_ + j] = static_cast<int>(index_of(add(els[i], els[j])));
        return t;
    }

    std::string describe() const {
        if (moduli_.empty()) return "Z_1";
        std::string s;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            if (i) s += "+";
            s += "Z_" + std::to_string(moduli_[i]);
        }
        return s;
    }

    /// Same coordinate system (not merely isomorphic).
    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.moduli_ == b.moduli_;
    }

private:
    std::vector<int> moduli_;
    std::size_t order_ = 1;
};

/// Canonical group Z_{d_1} + ... + Z_{d_k} with d_1 | d_2 | ... | d_k.
inline FiniteAbelianGroup make_group(const std::vector<int>& factors) {
    return FiniteAbelianGroup::with_moduli(normalize_factors(factors));
}

inline FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    std::vector<int> m = a.moduli();
    m.insert(m.end(), b.moduli().begin(), b.moduli().end());
    return FiniteAbelianGroup::with_moduli(std::move(m));
}

inline GroupElement concat(const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    r.coords.insert(r.coords.end(), b.coords.begin(), b.coords.end());
    return r;
}

/// Every abelian group of order n, one per isomorphism type, canonical form,
/// in lexicographic order of the factor lists.
inline std::vector<FiniteAbelianGroup> abelian_groups_of_order(int n) {
    if (n < 1) return {};
    std::vector<std::vector<std::vector<int>>> per_prime;  // partitions of each exponent
    for (auto [q, e] : detail::prime_powers(n)) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int rest, int maxp) -> void {
            if (rest == 0) {
                parts.push_back(cur);
                return;
            }
            for (int k = std::min(rest, maxp); k >= 1; --k) {
                cur.push_back(detail::ipow(q, k));
                self(self, rest - k, k);
                cur.pop_back();
            }
        };
        rec(rec, e, e);
        per_prime.push_back(std::move(parts));
    }
    std::vector<std::vector<int>> lists{{}};
    for (auto& parts : per_prime) {
        std::vector<std::vector<int>> next;
        for (auto& l : lists)
            for (auto& part : parts) {
                auto m = l;
                m.insert(m.end(), part.begin(), part.end());
                next.push_back(std::move(m));
            }
        lists = std::move(next);
    }
    std::vector<std::vector<int>> canon;
    for (auto& l : lists) canon.push_back(normalize_factors(l));
    std::sort(canon.begin(), canon.end());
    std::vector<FiniteAbelianGroup> out;
    for (auto& c : canon) out.push_back(FiniteAbelianGroup::with_moduli(c));
    return out;
}

/// Z_p^j in canonical form.
inline FiniteAbelianGroup elementary_abelian(int p, int j) {
    return FiniteAbelianGroup::with_moduli(std::vector<int>(static_cast<std::size_t>(j), p));
}

/// An explicit, sorted set of elements of a parent group closed under its
/// operation.
class Subgroup {
public:
    Subgroup() = default;

    /// Validates closure (which, for a finite nonempty set, implies identity
    /// and inverses).
    static Subgroup from_elements(const FiniteAbelianGroup& parent, std::vector<GroupElement> els) {
        for (auto& e : els) parent.check(e);
        std::sort(els.begin(), els.end());
        els.erase(std::unique(els.begin(), els.end()), els.end());
        Subgroup h;
        h.parent_ = parent;
        h.elements_ = std::move(els);
        if (h.elements_.empty() || !h.contains(parent.identity()))
            throw NotASubgroup("set does not contain the identity of " + parent.describe());
        for (auto& a : h.elements_)
            for (auto& b : h.elements_)
                if (!h.contains(parent.add(a, b)))
                    throw NotASubgroup("(" + to_string(a) + ") + (" + to_string(b) + ") leaves the set");
        return h;
    }

    static Subgroup trivial(const FiniteAbelianGroup& parent) {
        Subgroup h;
        h.parent_ = parent;
        h.elements_ = {parent.identity()};
        return h;
    }

    static Subgroup whole(const FiniteAbelianGroup& parent) {
        Subgroup h;
        h.parent_ = parent;
        h.elements_ = parent.elements();
        return h;
    }

    const FiniteAbelianGroup& parent() const { return parent_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }

    bool contains(const GroupElement& a) const {
        return std::binary_search(elements_.begin(), elements_.end(), a);
    }

    bool is_subset_of(const Subgroup& other) const {
        return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
    }

    Subgroup intersect(const Subgroup& other) const {
        Subgroup h;
        h.parent_ = parent_;
        std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                              std::back_inserter(h.elements_));
        return h;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }

private:
    FiniteAbelianGroup parent_;
    std::vector<GroupElement> elements_;
};

/// Smallest subgroup containing gens, by closure.
inline Subgroup subgroup_generated(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
    for (auto& x : gens) g.check(x);
    std::vector<char> in(g.order(), 0);
    std::vector<GroupElement> members{g.identity()};
    in[g.index_of(members[0])] = 1;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (auto& x : gens) {
            auto y = g.add(members[i], x);
            auto k = g.index_of(y);
            if (!in[k]) {
                in[k] = 1;
                members.push_back(std::move(y));
            }
        }
    return Subgroup::from_elements(g, std::move(members));
}

/// [g : h] = |g| / |h|.
inline std::size_t index(const FiniteAbelianGroup& g, const Subgroup& h) {
    if (!(h.parent() == g)) throw NotASubgroup("subgroup belongs to " + h.parent().describe());
    return g.order() / h.order();
}

/// Whether the order of the group is a power of p (the trivial group counts).
inline bool is_p_group_order(std::size_t order, int p) {
    while (order % static_cast<std::size_t>(p) == 0) order /= static_cast<std::size_t>(p);
    return order == 1;
}

}  // namespace groupcode
