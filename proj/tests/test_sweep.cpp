#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"

using namespace groupcode;

namespace {

struct Census {
    std::size_t encoders;
    std::size_t controllable;
    int index;  // -1 when none is controllable
    std::size_t kernel_exceptions;
};

// Independent brute force over every order-p subgroup N of every abelian G
// and every surjective nu : G -> S (no deduplication).
const std::map<std::pair<int, std::vector<int>>, Census> kFrozen = {
    {{2, {}}, {1, 1, 0, 1}},          {{2, {2}}, {10, 6, 1, 4}},       {{2, {3}}, {2, 0, -1, 2}},
    {{2, {2, 2}}, {300, 168, 2, 48}}, {{2, {4}}, {10, 0, -1, 6}},      {{2, {5}}, {4, 0, -1, 4}},
    {{2, {6}}, {20, 0, -1, 8}},       {{2, {7}}, {6, 0, -1, 6}},       {{2, {2, 2, 2}}, {37968, 20160, 3, 2688}},
    {{2, {2, 4}}, {368, 0, -1, 80}},  {{2, {8}}, {20, 0, -1, 12}},     {{3, {}}, {1, 1, 0, 1}},
    {{3, {2}}, {1, 0, -1, 1}},        {{3, {2, 2}}, {6, 0, -1, 6}},    {{3, {3}}, {34, 24, 1, 10}},
    {{3, {4}}, {2, 0, -1, 2}},        {{3, {5}}, {4, 0, -1, 4}},       {{3, {6}}, {34, 0, -1, 10}},
    {{3, {7}}, {6, 0, -1, 6}},        {{3, {2, 2, 2}}, {168, 0, -1, 168}}, {{3, {2, 4}}, {8, 0, -1, 8}},
    {{3, {8}}, {4, 0, -1, 4}},        {{3, {3, 3}}, {8160, 5616, 2, 672}}, {{3, {9}}, {60, 0, -1, 24}},
};

void expect_frozen(const SweepReport& rep) {
    for (auto& row : rep.rows) {
        auto it = kFrozen.find({row.p, row.S});
        ASSERT_NE(it, kFrozen.end());
        const auto& c = it->second;
        EXPECT_EQ(row.encoders, c.encoders) << row.p;
        EXPECT_EQ(row.controllable, c.controllable);
        EXPECT_EQ(row.kernel_size_exceptions, c.kernel_exceptions);
        if (c.index < 0) {
            EXPECT_FALSE(row.min_index.has_value());
        } else {
            EXPECT_EQ(row.min_index, static_cast<std::size_t>(c.index));
            EXPECT_EQ(row.max_index, static_cast<std::size_t>(c.index));
        }
        EXPECT_EQ(row.violations, 0u);
    }
}

}  // namespace

TEST(Sweep, Extensions) {
    auto a = enumerate_extensions(2, make_group({2}));
    std::set<std::vector<int>> gs;
    for (auto& i : a) gs.insert(i.G.moduli());
    EXPECT_EQ(gs, (std::set<std::vector<int>>{{2, 2}, {4}}));
    auto b = enumerate_extensions(2, make_group({2, 2}));
    gs.clear();
    for (auto& i : b) gs.insert(i.G.moduli());
    EXPECT_EQ(gs, (std::set<std::vector<int>>{{2, 2, 2}, {2, 4}}));
    auto c = enumerate_extensions(3, make_group({}));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].G.moduli(), (std::vector<int>{3}));
    EXPECT_THROW(enumerate_extensions(4, make_group({2})), NotPrime);
    for (auto& i : b) {
        EXPECT_EQ(i.G.order(), 8u);
        EXPECT_EQ(i.embedding.order(), 2u);
        EXPECT_TRUE(is_isomorphic(quotient(i.G, i.embedding).group, make_group({2, 2})));
        EXPECT_TRUE(verify_decomposition(i.decomposition));
    }
}

TEST(Sweep, DedupCoversEverySubgroup) {
    for (int p : {2, 3})
        for (auto& S : {make_group({p}), make_group({p, p}), make_group({p * p}), make_group({2, 4})}) {
            auto full = enumerate_extensions(p, S, false);
            auto reps = enumerate_extensions(p, S, true);
            std::map<std::vector<int>, std::size_t> total, covered;
            for (auto& i : full) ++total[i.G.moduli()];
            for (auto& i : reps) covered[i.G.moduli()] += i.orbit_size;
            EXPECT_EQ(total, covered);
            // every N lies in the automorphism orbit of some representative
            for (auto& i : full) {
                auto auts = *automorphisms(i.G);
                bool found = false;
                for (auto& r : reps) {
                    if (!(r.G == i.G)) continue;
                    for (auto& a : auts) {
                        std::vector<GroupElement> img;
                        for (auto& x : r.embedding.elements()) img.push_back(a.apply(x));
                        std::sort(img.begin(), img.end());
                        if (img == i.embedding.elements()) {
                            found = true;
                            break;
                        }
                    }
                }
                EXPECT_TRUE(found);
            }
        }
}

TEST(Sweep, Encoders) {
    auto z8 = enumerate_extensions(2, make_group({4}));
    for (auto& inst : z8)
        if (inst.G.moduli() == std::vector<int>{8}) { EXPECT_EQ(enumerate_encoders(inst).size(), 2u); }
    auto e = enumerate_extensions(2, make_group({2, 2}), false);
    for (auto& inst : e)
        if (inst.G.moduli() == std::vector<int>{2, 2, 2}) { EXPECT_EQ(enumerate_encoders(inst).size(), 42u); }
    auto t = enumerate_extensions(3, make_group({}));
    ASSERT_EQ(enumerate_encoders(t[0]).size(), 1u);
    EXPECT_TRUE(enumerate_encoders(t[0])[0].nu().image().order() == 1);
}

TEST(Sweep, FrozenCensusBinary) {
    SweepOptions o;
    o.primes = {2};
    o.max_state_order = 8;
    auto rep = sweep_theorems(o);
    expect_frozen(rep);
    EXPECT_EQ(rep.total_violations(), 0u);
    EXPECT_EQ(rep.non_elementary_controllable, 0u);
    EXPECT_EQ(rep.cyclic_controllable, 0u);
    EXPECT_EQ(rep.order_p_encoders, 10u);
    EXPECT_EQ(rep.order_p_controllable, 6u);
}

TEST(Sweep, FrozenCensusTernary) {
    SweepOptions o;
    o.primes = {3};
    o.max_state_order = 9;
    auto rep = sweep_theorems(o);
    expect_frozen(rep);
    EXPECT_EQ(rep.total_violations(), 0u);
    std::set<std::vector<int>> ctrl;
    for (auto& row : rep.rows)
        if (row.controllable) ctrl.insert(row.S);
    EXPECT_EQ(ctrl, (std::set<std::vector<int>>{{}, {3}, {3, 3}}));
}

TEST(Sweep, NoDedupMatches) {
    SweepOptions o;
    o.primes = {2, 3};
    o.max_state_order = 4;
    o.deduplicate = false;
    auto full = sweep_theorems(o);
    expect_frozen(full);
    o.deduplicate = true;
    auto dedup = sweep_theorems(o);
    ASSERT_EQ(full.rows.size(), dedup.rows.size());
    for (std::size_t i = 0; i < full.rows.size(); ++i) EXPECT_EQ(full.rows[i].controllable, dedup.rows[i].controllable);
}

TEST(Sweep, ParallelIsDeterministic) {
    SweepOptions o;
    o.primes = {2};
    o.max_state_order = 4;
    auto one = sweep_theorems(o);
    o.jobs = 3;
    auto three = sweep_theorems(o);
    ASSERT_EQ(one.controllable.size(), three.controllable.size());
    for (std::size_t i = 0; i < one.controllable.size(); ++i)
        EXPECT_EQ(one.controllable[i].nu_images, three.controllable[i].nu_images);
    EXPECT_EQ(one.rows.size(), three.rows.size());
}

TEST(Sweep, Guards) {
    SweepOptions o;
    o.primes = {4};
    EXPECT_THROW(sweep_theorems(o), NotPrime);
    o.primes = {2};
    o.max_state_order = 129;
    EXPECT_THROW(sweep_theorems(o), TooLarge);
}
