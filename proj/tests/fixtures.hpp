#pragma once

#include "groupcode/groupcode.hpp"

namespace fixtures {

using namespace groupcode;

/// U = Z_2, S = Z_2^2, nu(u, s1, s2) = (s2, u + s1), omega(u, s1, s2) = (u, s2).
inline Encoder shift2() {
    auto U = make_group({2});
    auto S = FiniteAbelianGroup::with_moduli({2, 2});
    return make_encoder(direct_product(U, S), S, std::vector<GroupElement>{{0, 1}, {0, 1}, {1, 0}},
                        std::vector<GroupElement>{{1, 0}, {0, 0}, {0, 1}});
}

/// The same shift register over Z_p: nu(u, s1, s2) = (s2, u + s1), omega = identity.
inline Encoder shift_register(int p, int stages) {
    auto U = make_group({p});
    auto S = elementary_abelian(p, stages);
    auto d = direct_product(U, S);
    // state (s1..sn) -> (s2..sn, u + s1)
    std::vector<GroupElement> nu;
    for (int g = 0; g <= stages; ++g) {
        std::vector<int> img(static_cast<std::size_t>(stages), 0);
        if (g == 0 || g == 1) img[static_cast<std::size_t>(stages - 1)] = 1;
        else img[static_cast<std::size_t>(g - 2)] = 1;
        nu.emplace_back(img);
    }
    return make_encoder(d, d.G, GroupHom(d.G, S, nu), GroupHom::identity(d.G));
}

/// G = Z_8 over N = {0, 4}: S = Z_4, nu the quotient map, omega the identity.
inline Encoder z8() {
    auto G = make_group({8});
    auto d = decompose(G, subgroup_generated(G, {{4}}));
    return make_encoder(d, G, d.projection, GroupHom::identity(G));
}

inline std::vector<GroupElement> bits(std::initializer_list<int> xs) {
    std::vector<GroupElement> out;
    for (int x : xs) out.push_back(GroupElement{x});
    return out;
}

}  // namespace fixtures
