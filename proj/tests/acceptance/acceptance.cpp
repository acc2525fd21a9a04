// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria, exit 1 if any fails
//   acceptance --only N   run criterion N alone

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "../oracle.hpp"
#include "groupcode/commands.hpp"

using namespace groupcode;
namespace fs = std::filesystem;

namespace {

// time budgets in seconds
constexpr double kBudgetExact = 1.0;
constexpr double kBudgetClassification = 5.0;
constexpr double kBudgetOracleBinary = 60.0;
constexpr double kBudgetSweep = 300.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.pass) {
        o.pass = false;
        o.detail = what;
    }
}

/// Every encoder of the sweep family, one per (Aut(G)-orbit of N, nu).
void for_each_encoder(const std::vector<int>& primes, int max_order,
                      const std::function<void(int, const FiniteAbelianGroup&, const Encoder&)>& f, int min_order = 1) {
    for (int p : primes)
        for (int n = min_order; n <= max_order; ++n)
            for (auto& S : abelian_groups_of_order(n))
                for (auto& inst : enumerate_extensions(p, S))
                    for (auto& enc : enumerate_encoders(inst)) f(p, inst.S, enc);
}

Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    auto g = FiniteAbelianGroup::with_moduli({2, 2, 2});
    auto d = decompose(g, Subgroup::from_elements(g, {{0, 0, 0}, {1, 0, 0}}));
    require(o, is_isomorphic(d.U, make_group({2})), "U is " + d.U.describe());
    require(o, is_isomorphic(d.S, make_group({2, 2})), "S is " + d.S.describe());
    require(o, verify_decomposition(d), "decomposition does not transport the operation");
    require(o, phi_is_trivial(d), "action is not trivial");
    require(o, seconds_since(t0) < kBudgetExact, "slower than 1 s");
    if (o.pass) o.detail = "U = Z_2, S = Z_2+Z_2, product verified on 64 pairs, action trivial";
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto t0 = Clock::now();
    std::size_t n = 0, direct = 0, cyclic = 0;
    for (int p : {2, 3, 5})
        for (int m = 1; m <= 9; ++m)
            for (auto& inst : enumerate_extensions(p, m == 1 ? FiniteAbelianGroup() : make_group({m}), false)) {
                ++n;
                auto c = classify_Zp_Zm(inst.decomposition);
                const bool is_direct =
                    is_isomorphic(inst.G, make_group(m == 1 ? std::vector<int>{p} : std::vector<int>{p, m}));
                const bool is_cyclic = is_isomorphic(inst.G, make_group({p * m}));
                const bool agrees = c == ExtensionClass::DirectProduct ? is_direct : is_cyclic;
                require(o, agrees,
                        "p=" + std::to_string(p) + " m=" + std::to_string(m) + " G=" + inst.G.describe() + " classified " +
                            to_string(c));
                (c == ExtensionClass::DirectProduct ? direct : cyclic) += 1;
            }
    require(o, seconds_since(t0) < kBudgetClassification, "slower than 5 s");
    if (o.pass)
        o.detail = std::to_string(n) + " instances: " + std::to_string(direct) + " direct, " + std::to_string(cyclic) +
                   " cyclic, all agree with invariant factors";
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto t0 = Clock::now();
    auto enc = fixtures::shift2();
    std::vector<int> in{0, 1, 1, 1, 0, 1, 0};
    auto run = encode_forward(enc, {0, 0}, fixtures::bits({0, 1, 1, 1, 0, 1, 0}));
    const std::vector<GroupElement> states{{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 1}, {1, 1}, {1, 1}};
    require(o, run.states == states, "state sequence differs");
    int s = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const int y = run.outputs[i][0] * 2 + run.outputs[i][1];
        require(o, y == oracle::shift2_out(in[i], s), "output " + std::to_string(i + 1) + " differs from omega");
        s = oracle::shift2_next(in[i], s);
    }
    auto pad = zero_tail(enc, {1, 1}, 4);
    require(o, pad && *pad == fixtures::bits({1, 1}), "padding from 11 is not [1,1]");
    auto v = decide_controllability(enc);
    require(o, v.controllable && v.index == 2u, "not controllable with index 2");
    std::vector<std::size_t> sizes;
    for (auto& x : v.chain.sets) sizes.push_back(x.order());
    require(o, sizes == std::vector<std::size_t>{1, 2, 4}, "chain sizes differ");
    require(o, seconds_since(t0) < kBudgetExact, "slower than 1 s");
    if (o.pass) o.detail = "states 00,01,11,10,01,11,11; padding [1,1]; index 2; chain 1,2,4";
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t total = 0, unequal = 0, not_p = 0;
    std::string first;
    for_each_encoder({2, 3}, 9, [&](int p, const FiniteAbelianGroup& S, const Encoder& enc) {
        ++total;
        auto r = check_structure_theorems(enc);
        if (r.past_kernel_size != r.first_step_size) ++unequal;
        if (r.past_kernel_size != static_cast<std::size_t>(p) || r.first_step_size != static_cast<std::size_t>(p)) {
            if (first.empty())
                first = "p=" + std::to_string(p) + " S=" + S.describe() + " G=" + enc.G().describe() +
                        " |S_1^-|=" + std::to_string(r.past_kernel_size);
            ++not_p;
        }
    });
    require(o, unequal == 0, std::to_string(unequal) + " encoders with |S_1^-| != |S_1^+|");
    require(o, not_p == 0,
            std::to_string(not_p) + " of " + std::to_string(total) +
                " encoders have |S_1^-| = |S_1^+| = 1 != p (nu kills U x {e}); first: " + first);
    if (o.pass) o.detail = std::to_string(total) + " encoders, all kernel sizes equal p";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t total = 0;
    for_each_encoder({2, 3}, 9, [&](int p, const FiniteAbelianGroup&, const Encoder& enc) {
        ++total;
        const auto& S = enc.S();
        const int ns = static_cast<int>(enc.num_states());
        auto next = [&](int u, int s) { return enc.next_index(static_cast<std::size_t>(u), static_cast<std::size_t>(s)); };
        // S_i recomputed by brute force from e, well past stabilization
        std::vector<std::set<int>> sets;
        for (int L = 0; L <= ns + 1; ++L) sets.push_back(oracle::reach_exactly(ns, static_cast<int>(enc.num_inputs()), next, 0, L));
        const bool controllable = static_cast<int>(sets.back().size()) == ns;
        auto chain = forward_chain(enc);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (int a : sets[i])
                for (int b : sets[i])
                    require(o, sets[i].count(static_cast<int>(S.index_of(S.add(S.element_at(a), S.element_at(b))))),
                            "S_" + std::to_string(i) + " not closed");
            require(o, is_p_group_order(sets[i].size(), p), "S_" + std::to_string(i) + " not a p-group");
            if (i > 0) {
                for (int a : sets[i - 1]) require(o, sets[i].count(a) == 1, "chain not nested");
                if (i > 1 && sets[i - 1] == sets[i - 2]) require(o, sets[i] == sets[i - 1], "chain leaves its fixpoint");
            }
            if (i < chain.sets.size()) require(o, chain.sets[i].order() == sets[i].size(), "forward_chain differs");
        }
        if (controllable) {
            std::size_t pw = 1;
            for (std::size_t i = 0; i <= chain.stabilized_at; ++i, pw *= static_cast<std::size_t>(p))
                require(o, sets[i].size() == pw, "controllable chain with |S_i| != p^i");
        }
        auto r = check_structure_theorems(enc);
        for (const char* name :
             {"chain_subgroups", "chain_nested", "chain_stabilizes", "chain_p_group", "controllable_chain_sizes"})
            require(o, r.predicates.at(name), std::string("predicate ") + name + " failed");
    });
    if (o.pass) o.detail = std::to_string(total) + " encoders: subgroups, nested, permanent fixpoint, p-groups, |S_i| = p^i";
    return o;
}

Outcome criterion6() {
    Outcome o;
    double binary_time = 0;
    std::size_t total = 0;
    auto check = [&](int, const FiniteAbelianGroup&, const Encoder& enc) {
        ++total;
        const auto& S = enc.S();
        const int ns = static_cast<int>(enc.num_states());
        const int ni = static_cast<int>(enc.num_inputs());
        auto next = [&](int u, int s) { return enc.next_index(static_cast<std::size_t>(u), static_cast<std::size_t>(s)); };
        auto chain = detail::chain_masks(enc, static_cast<std::size_t>(ns));
        for (int L = 0; L <= ns; ++L)
            for (int s = 0; s < ns; ++s) {
                auto r = oracle::reach_exactly(ns, ni, next, s, L);
                require(o, r.size() == detail::mask_size(chain[static_cast<std::size_t>(L)]), "reachable set size");
                const auto t = S.element_at(static_cast<std::size_t>(*r.begin()));
                for (int x : r)
                    require(o, chain[static_cast<std::size_t>(L)][S.index_of(S.sub(S.element_at(x), t))] != 0,
                            "reachable set is not a coset of S_L");
            }
        const int brute = oracle::all_pairs_index(ns, ni, next, ns);
        auto v = decide_controllability(enc);
        require(o, v.controllable == (brute >= 0), "verdict differs from all-pairs test");
        if (brute >= 0) require(o, v.index == static_cast<std::size_t>(brute), "index differs from all-pairs test");
    };
    auto t0 = Clock::now();
    for_each_encoder({2}, 8, check);
    binary_time = seconds_since(t0);
    for_each_encoder({2}, 9, check, 9);
    for_each_encoder({3}, 9, check);
    require(o, binary_time < kBudgetOracleBinary, "p=2 family slower than 60 s");
    if (o.pass) {
        std::ostringstream ss;
        ss << total << " encoders, every L <= |S|; p=2 family in " << std::fixed;
        ss.precision(2);
        ss << binary_time << " s";
        o.detail = ss.str();
    }
    return o;
}

SweepReport full_sweep(double& secs) {
    auto t0 = Clock::now();
    SweepOptions opt;
    opt.primes = {2, 3};
    opt.max_state_order = 9;
    auto r = sweep_theorems(opt);
    secs = seconds_since(t0);
    return r;
}

Outcome criterion7() {
    Outcome o;
    double secs = 0;
    auto r = full_sweep(secs);
    require(o, r.cyclic_controllable == 0, std::to_string(r.cyclic_controllable) + " controllable with S cyclic, |S| > p");
    require(o, r.predicate_violations.count("cyclic_state_group_uncontrollable") == 0, "per-encoder predicate failed");
    if (o.pass)
        o.detail = "0 violations; boundary S ~ Z_p: " + std::to_string(r.order_p_controllable) + " of " +
                   std::to_string(r.order_p_encoders) + " encoders controllable";
    return o;
}

Outcome criterion8() {
    Outcome o;
    double secs = 0;
    auto r = full_sweep(secs);
    require(o, r.non_elementary_controllable == 0,
            std::to_string(r.non_elementary_controllable) + " controllable encoders with S not elementary abelian");
    require(o, r.total_violations() == 0, std::to_string(r.total_violations()) + " predicate violations");
    for (int p : {2, 3}) {
        for (int j : {1, 2}) {
            auto enc = fixtures::shift_register(p, j);
            auto v = decide_controllability(enc);
            require(o, v.controllable && v.index == static_cast<std::size_t>(j),
                    "shift register over Z_" + std::to_string(p) + "^" + std::to_string(j) + " not controllable");
        }
        for (auto& row : r.rows) {
            const bool elementary_small = row.p == p && (row.S == std::vector<int>{p} || row.S == std::vector<int>{p, p});
            if (elementary_small) require(o, row.controllable > 0, "no controllable witness at Z_p or Z_p^2");
        }
    }
    require(o, secs < kBudgetSweep, "sweep slower than 5 min");
    if (o.pass) {
        std::ostringstream ss;
        ss << r.encoders << " encoders, 0 violations, witnesses at Z_p and Z_p^2 for p = 2, 3; sweep ";
        ss << std::fixed;
        ss.precision(2);
        ss << secs << " s";
        o.detail = ss.str();
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    auto enc = fixtures::shift2();
    std::mt19937 rng(20240601);
    auto word = [&](int n) {
        std::vector<GroupElement> w;
        for (int i = 0; i < n; ++i) w.push_back(GroupElement{static_cast<int>(rng() % 2)});
        return w;
    };
    const int L = 2;
    for (int t = 0; t < 100; ++t) {
        auto a = *encode_codeword(enc, word(1 + static_cast<int>(rng() % 8)), static_cast<std::int64_t>(rng() % 6));
        auto b = *encode_codeword(enc, word(1 + static_cast<int>(rng() % 8)), static_cast<std::int64_t>(rng() % 6));
        const auto k = static_cast<std::int64_t>(rng() % 12) - 1;
        auto w = connecting_word(enc, a.states.at(k - 1), b.states.at(k + L - 1), L);
        if (!w) {
            require(o, false, "no connecting word at trial " + std::to_string(t));
            break;
        }
        // y3: inputs of y1 before k, the connecting word, inputs of y2 from k + L on
        const auto lo = std::min(a.inputs.start, k), hi = std::max(b.inputs.end(), k + L);
        std::vector<GroupElement> in;
        for (auto i = lo; i < hi; ++i)
            in.push_back(i < k ? a.inputs.at(i) : i < k + L ? (*w)[static_cast<std::size_t>(i - k)] : b.inputs.at(i));
        auto run = encode_forward(enc, enc.S().identity(), in);
        Sequence y3{enc.Y(), lo, run.outputs};
        require(o, is_codeword(enc, y3).accepted, "y3 rejected at trial " + std::to_string(t));
        auto splice = concatenate(concatenate(a.outputs, y3, k), b.outputs, k + L);
        require(o, splice == y3, "splice differs from y3 at trial " + std::to_string(t));
        require(o, is_codeword(enc, splice).accepted, "splice rejected at trial " + std::to_string(t));
    }
    if (o.pass) o.detail = "100 random splices with L = 2 accepted";
    return o;
}

std::string capture(const std::function<int(std::ostream&, std::ostream&)>& f, int& rc) {
    std::ostringstream out, err;
    rc = f(out, err);
    return out.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / "groupcode_acceptance";
    fs::create_directories(dir);
    const auto spec = dir / "shift2.json";
    std::ofstream(spec) << encoder_to_json(fixtures::shift2()).dump(2);
    const auto z8 = dir / "z8.json";
    std::ofstream(z8) << encoder_to_json(fixtures::z8()).dump(2);
    for (auto& path : {spec, z8}) {
        int rc1 = 0, rc2 = 0;
        auto a = capture([&](std::ostream& out, std::ostream& err) { return run_analyze(path.string(), out, err); }, rc1);
        auto b = capture([&](std::ostream& out, std::ostream& err) { return run_analyze(path.string(), out, err); }, rc2);
        require(o, rc1 == 0 && rc2 == 0, "analyze failed on " + path.filename().string());
        require(o, !a.empty() && a == b, "analyze output differs between runs");
    }
    std::string json1, json2, table1, table2;
    for (int run = 0; run < 2; ++run) {
        SweepCommandOptions opt;
        opt.primes = {2, 3};
        opt.max_state_order = 9;
        opt.out_path = (dir / ("sweep" + std::to_string(run) + ".json")).string();
        opt.jobs = run + 1;
        int rc = 0;
        auto table = capture([&](std::ostream& out, std::ostream& err) { return run_sweep(opt, out, err); }, rc);
        require(o, rc == 0, "sweep exited with " + std::to_string(rc));
        (run ? table2 : table1) = table;
        (run ? json2 : json1) = slurp(*opt.out_path);
    }
    require(o, table1 == table2, "sweep table differs between runs");
    require(o, !json1.empty() && json1 == json2, "sweep JSON differs between runs");
    if (o.pass) o.detail = "analyze x2 on two specs, sweep x2 (1 and 2 workers): byte-identical";
    return o;
}

const char* kNames[] = {"",
                        "extension decomposition of Z_2^3 over {000,100}",
                        "Z_p [x] Z_m classification, p in {2,3,5}, m <= 9",
                        "shift-register example: states, padding, index",
                        "past kernel size |S_1^-| = |S_1^+| = p on every encoder",
                        "reachability chain: subgroups, nested, permanent, p-groups",
                        "brute-force reachability equals chain cosets and verdict",
                        "cyclic S of order above p is never controllable",
                        "controllable implies S elementary abelian, witnesses exist",
                        "random splices through a window of length 2",
                        "byte-identical analyze and sweep output"};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::function<Outcome()>> criteria{nullptr,    criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9, criterion10};
    int only = 0;
    if (argc == 3 && std::string(argv[1]) == "--only") only = std::atoi(argv[2]);
    if (only < 0 || only > 10) {
        std::cerr << "criterion must be 1..10\n";
        return 2;
    }
    int failed = 0;
    for (int i = 1; i <= 10; ++i) {
        if (only && i != only) continue;
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(i)]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i << ". " << kNames[i] << ": " << o.detail << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
