#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace groupcode {

/// Homomorphism between finite abelian groups, given by the images of the
/// source's coordinate generators.
class GroupHom {
public:
    GroupHom() = default;

    /// Throws NotAHomomorphism when an image's order does not divide the
    /// modulus of its generator.
    GroupHom(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<GroupElement> gen_images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(gen_images)) {
        if (images_.size() != source_.rank())
            throw NotAHomomorphism("expected " + std::to_string(source_.rank()) + " generator images, got " +
                                   std::to_string(images_.size()));
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (!target_.contains(images_[i]))
                throw NotAHomomorphism("image of generator " + std::to_string(i) + " (" + to_string(images_[i]) +
                                       ") is not in " + target_.describe());
            if (source_.moduli()[i] % target_.element_order(images_[i]) != 0)
                throw NotAHomomorphism("image of generator " + std::to_string(i) + " has order " +
                                       std::to_string(target_.element_order(images_[i])) + " not dividing " +
                                       std::to_string(source_.moduli()[i]));
        }
    }

    static GroupHom identity(const FiniteAbelianGroup& g) {
        std::vector<GroupElement> imgs;
        for (std::size_t i = 0; i < g.rank(); ++i) imgs.push_back(g.generator(i));
        return GroupHom(g, g, std::move(imgs));
    }

    static GroupHom zero(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target) {
        return GroupHom(source, target, std::vector<GroupElement>(source.rank(), target.identity()));
    }

    /// The map defined by f on generators. f must be a homomorphism for the
    /// result to agree with it elsewhere.
    static GroupHom from_generators(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target,
                                    const std::function<GroupElement(const GroupElement&)>& f) {
        std::vector<GroupElement> imgs;
        for (std::size_t i = 0; i < source.rank(); ++i) imgs.push_back(f(source.generator(i)));
        return GroupHom(source, target, std::move(imgs));
    }

    const FiniteAbelianGroup& source() const { return source_; }
    const FiniteAbelianGroup& target() const { return target_; }
    const std::vector<GroupElement>& gen_images() const { return images_; }

    GroupElement apply(const GroupElement& x) const {
        source_.check(x);
        GroupElement r = target_.identity();
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (x[i]) r = target_.add(r, target_.scale(x[i], images_[i]));
        return r;
    }
    GroupElement operator()(const GroupElement& x) const { return apply(x); }

    /// Source element index -> target element index.
    std::vector<int> table() const {
        std::vector<int> t(source_.order());
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = static_cast<int>(target_.index_of(apply(source_.element_at(i))));
        return t;
    }

    Subgroup kernel() const {
        std::vector<GroupElement> k;
        for (auto& x : source_.elements())
            if (apply(x) == target_.identity()) k.push_back(x);
        return Subgroup::from_elements(source_, std::move(k));
    }

    Subgroup image() const { return subgroup_generated(target_, images_); }

    bool is_surjective() const { return image().order() == target_.order(); }
    bool is_injective() const { return kernel().order() == 1; }
    bool is_bijective() const { return source_.order() == target_.order() && is_injective(); }

    /// next o this.
    GroupHom then(const GroupHom& next) const {
        if (!(next.source_ == target_)) throw WrongGroup("composition across different groups");
        std::vector<GroupElement> imgs;
        for (auto& y : images_) imgs.push_back(next.apply(y));
        return GroupHom(source_, next.target_, std::move(imgs));
    }

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
    }

private:
    FiniteAbelianGroup source_;
    FiniteAbelianGroup target_;
    std::vector<GroupElement> images_;
};

namespace detail {

/// Size of the subgroup of `target` spanned by gens, using an index addition table.
inline std::size_t span_size(const FiniteAbelianGroup& target, const std::vector<int>& add_table,
                             const std::vector<int>& gens, std::vector<char>& scratch,
                             std::vector<int>& members) {
    const std::size_t n = target.order();
    scratch.assign(n, 0);
    members.clear();
    members.push_back(0);
    scratch[0] = 1;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (int g : gens) {
            int y = add_table[static_cast<std::size_t>(members[i]) * n + g];
            if (!scratch[y]) {
                scratch[y] = 1;
                members.push_back(y);
            }
        }
    return members.size();
}

/// Target element indices whose order divides m.
inline std::vector<int> killed_by(const FiniteAbelianGroup& target, int m) {
    std::vector<int> out;
    for (std::size_t i = 0; i < target.order(); ++i)
        if (m % target.element_order(target.element_at(i)) == 0) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace detail

/// All homomorphisms a -> b in lexicographic order of generator-image indices
/// (first generator most significant), optionally only the surjective ones.
inline std::vector<GroupHom> enumerate_homs(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b,
                                            bool surjective_only) {
    std::vector<std::vector<int>> cands;
    for (int m : a.moduli()) cands.push_back(detail::killed_by(b, m));
    const auto add = b.addition_table();
    std::vector<GroupHom> out;
    std::vector<int> pick(a.rank());
    std::vector<char> scratch;
    std::vector<int> members;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == a.rank()) {
            if (surjective_only && detail::span_size(b, add, pick, scratch, members) != b.order()) return;
            std::vector<GroupElement> imgs;
            for (int k : pick) imgs.push_back(b.element_at(static_cast<std::size_t>(k)));
            out.emplace_back(a, b, std::move(imgs));
            return;
        }
        for (int c : cands[i]) {
            pick[i] = c;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Aut(g) by backtracking over generator images, pruned by independence.
/// Returns nullopt when more than max_count automorphisms exist.
inline std::optional<std::vector<GroupHom>> automorphisms(const FiniteAbelianGroup& g,
                                                          std::size_t max_count = 200000) {
    const auto add = g.addition_table();
    std::vector<std::vector<int>> cands;
    for (int m : g.moduli()) cands.push_back(detail::killed_by(g, m));
    std::vector<GroupHom> out;
    std::vector<int> pick;
    std::vector<char> scratch;
    std::vector<int> members;
    bool overflow = false;
    auto rec = [&](auto&& self, std::size_t i, std::size_t span) -> void {
        if (overflow) return;
        if (i == g.rank()) {
            if (out.size() >= max_count) {
                overflow = true;
                return;
            }
            std::vector<GroupElement> imgs;
            for (int k : pick) imgs.push_back(g.element_at(static_cast<std::size_t>(k)));
            out.emplace_back(g, g, std::move(imgs));
            return;
        }
        const std::size_t want = span * static_cast<std::size_t>(g.moduli()[i]);
        for (int c : cands[i]) {
            pick.push_back(c);
            if (detail::span_size(g, add, pick, scratch, members) == want) self(self, i + 1, want);
            pick.pop_back();
        }
    };
    rec(rec, 0, 1);
    if (overflow) return std::nullopt;
    return out;
}

}  // namespace groupcode
