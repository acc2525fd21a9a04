#pragma once

// Exhaustive census of encoders with U = Z_p over every abelian extension
// Z_p [x] S: ambient groups G of order p|S|, order-p subgroups N with
// G/N ~ S (one per Aut(G)-orbit), and every surjective nu : G -> S.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "control.hpp"
#include "encoder.hpp"
#include "extension.hpp"

namespace groupcode {

struct ExtensionInstance {
    int p = 0;
    FiniteAbelianGroup S;  // canonical
    FiniteAbelianGroup G;  // canonical
    Subgroup embedding;    // N, order p
    std::size_t orbit_size = 1;  // subgroups of G represented by N
    ExtensionDecomposition decomposition;
};

namespace detail {

inline std::vector<Subgroup> subgroups_of_prime_order(const FiniteAbelianGroup& g, int p) {
    std::set<std::vector<GroupElement>> seen;
    std::vector<Subgroup> out;
    for (auto& a : g.elements())
        if (g.element_order(a) == p) {
            auto h = subgroup_generated(g, {a});
            if (seen.insert(h.elements()).second) out.push_back(std::move(h));
        }
    return out;
}

inline Subgroup image_of(const GroupHom& h, const Subgroup& n) {
    std::vector<GroupElement> els;
    for (auto& x : n.elements()) els.push_back(h.apply(x));
    return Subgroup::from_elements(h.target(), std::move(els));
}

}  // namespace detail

/// All (G, N) with |G| = p|S|, |N| = p and G/N ~ S. With dedup, one N per
/// Aut(G)-orbit (falling back to every N when Aut(G) exceeds the cap).
inline std::vector<ExtensionInstance> enumerate_extensions(int p, const FiniteAbelianGroup& S, bool dedup = true) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    const auto target = S.invariant_factors();
    const auto Sc = make_group(target);
    std::vector<ExtensionInstance> out;
    for (auto& G : abelian_groups_of_order(p * static_cast<int>(S.order()))) {
        std::vector<Subgroup> admissible;
        for (auto& N : detail::subgroups_of_prime_order(G, p))
            if (quotient(G, N).group.invariant_factors() == target) admissible.push_back(std::move(N));
        if (admissible.empty()) continue;

        std::vector<std::size_t> weight(admissible.size(), 1);
        std::vector<char> keep(admissible.size(), 1);
        std::optional<std::vector<GroupHom>> auts;
        if (dedup) auts = automorphisms(G);
        if (auts) {
            std::map<std::vector<GroupElement>, std::size_t> where;
            for (std::size_t i = 0; i < admissible.size(); ++i) where[admissible[i].elements()] = i;
            std::vector<char> done(admissible.size(), 0);
            for (std::size_t i = 0; i < admissible.size(); ++i) {
                if (done[i]) continue;
                std::set<std::size_t> orbit;
                for (auto& a : *auts) orbit.insert(where.at(detail::image_of(a, admissible[i]).elements()));
                for (auto j : orbit) {
                    done[j] = 1;
                    keep[j] = j == i;
                }
                weight[i] = orbit.size();
            }
        }
        for (std::size_t i = 0; i < admissible.size(); ++i) {
            if (!keep[i]) continue;
            ExtensionInstance inst{p, Sc, G, admissible[i], weight[i], decompose(G, admissible[i])};
            out.push_back(std::move(inst));
        }
    }
    return out;
}

/// One encoder per surjective nu : G -> S, with Y = G and omega the identity.
inline std::vector<Encoder> enumerate_encoders(const ExtensionInstance& inst) {
    const auto& d = inst.decomposition;
    std::vector<Encoder> out;
    for (auto& nu : enumerate_homs(d.G, d.S, true)) out.push_back(make_encoder(d, d.G, nu, GroupHom::identity(d.G)));
    return out;
}

struct SweepOptions {
    std::vector<int> primes{2};
    int max_state_order = 4;
    bool deduplicate = true;
    int jobs = 1;
};

/// A controllable encoder found by the sweep (orbit representative).
struct ControllableEncoder {
    int p = 0;
    std::vector<int> S;
    std::vector<int> G;
    std::vector<GroupElement> N;
    std::vector<GroupElement> nu_images;
    std::size_t index = 0;
    std::size_t weight = 1;
};

struct SweepRow {
    int p = 0;
    std::vector<int> S;
    std::size_t instances = 0;  // (G, N) representatives
    std::size_t evaluated = 0;  // encoders actually analysed
    std::size_t encoders = 0;   // all (N, nu), orbit weights applied
    std::size_t controllable = 0;
    std::optional<std::size_t> min_index;
    std::optional<std::size_t> max_index;
    std::size_t violations = 0;
    std::size_t kernel_size_exceptions = 0;  // encoders with |S_1^-| != p
};

struct SweepReport {
    SweepOptions options;
    std::vector<SweepRow> rows;
    std::vector<ControllableEncoder> controllable;
    std::map<std::string, std::size_t> predicate_violations;  // weighted
    std::vector<std::string> examples;                        // first counterexamples, sorted
    std::size_t encoders = 0;
    std::size_t kernel_size_exceptions = 0;
    std::size_t non_elementary_controllable = 0;
    std::size_t cyclic_controllable = 0;  // S cyclic, |S| > p
    std::size_t order_p_encoders = 0;     // S ~ Z_p: boundary case
    std::size_t order_p_controllable = 0;

    std::size_t total_violations() const {
        std::size_t n = 0;
        for (auto& [k, v] : predicate_violations) n += v;
        return n;
    }
};

/// GROUPCODE_JOBS if set to a positive integer, else 1.
inline int jobs_from_environment() {
    if (const char* v = std::getenv("GROUPCODE_JOBS")) {
        int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 1;
}

namespace detail {

struct InstanceResult {
    SweepRow row;
    std::vector<ControllableEncoder> controllable;
    std::map<std::string, std::size_t> violations;
    std::vector<std::string> examples;
    std::size_t order_p_controllable = 0;
};

inline InstanceResult evaluate_instance(const ExtensionInstance& inst) {
    InstanceResult r;
    r.row.p = inst.p;
    r.row.S = inst.S.invariant_factors();
    r.row.instances = 1;
    const std::size_t w = inst.orbit_size;
    const auto p = static_cast<std::size_t>(inst.p);
    for (auto& enc : enumerate_encoders(inst)) {
        ++r.row.evaluated;
        r.row.encoders += w;
        auto report = check_structure_theorems(enc);
        std::optional<ControlVerdict> v;
        try {
            v = decide_controllability(enc);
        } catch (const PredicateViolation& e) {
            report.violations.push_back({"controllability_cross_check", e.what()});
        }
        if (!report.past_kernel_size_is_p) r.row.kernel_size_exceptions += w;
        if (!report.violations.empty()) r.row.violations += w;
        for (auto& viol : report.violations) {
            r.violations[viol.predicate] += w;
            if (r.examples.size() < 3)
                r.examples.push_back(viol.predicate + " at p=" + std::to_string(inst.p) + " G=" + inst.G.describe() +
                                     " S=" + inst.S.describe() + ": " + viol.counterexample);
        }
        if (v && v->controllable) {
            r.row.controllable += w;
            const auto idx = *v->index;
            r.row.min_index = std::min(r.row.min_index.value_or(idx), idx);
            r.row.max_index = std::max(r.row.max_index.value_or(idx), idx);
            if (enc.num_states() == p) r.order_p_controllable += w;
            r.controllable.push_back({inst.p, r.row.S, inst.G.moduli(), inst.embedding.elements(),
                                      enc.nu().gen_images(), idx, w});
        }
    }
    return r;
}

}  // namespace detail

/// Runs the structural checks and the controllability decision on every
/// encoder. Result order does not depend on the number of workers.
inline SweepReport sweep_theorems(const SweepOptions& opt) {
    for (int p : opt.primes) {
        if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
        if (static_cast<long long>(p) * opt.max_state_order > 256)
            throw TooLarge("p * max_state_order = " + std::to_string(static_cast<long long>(p) * opt.max_state_order) +
                           " exceeds 256");
    }
    if (opt.max_state_order < 1) throw NotApplicable("max_state_order must be >= 1");

    std::vector<ExtensionInstance> work;
    std::vector<std::pair<int, std::vector<int>>> row_keys;
    auto primes = opt.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (int p : primes)
        for (int n = 1; n <= opt.max_state_order; ++n)
            for (auto& S : abelian_groups_of_order(n)) {
                row_keys.emplace_back(p, S.invariant_factors());
                for (auto& inst : enumerate_extensions(p, S, opt.deduplicate)) work.push_back(std::move(inst));
            }

    std::vector<detail::InstanceResult> results(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();) results[i] = detail::evaluate_instance(work[i]);
    };
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepReport rep;
    rep.options = opt;
    std::map<std::pair<int, std::vector<int>>, SweepRow> rows;
    for (auto& key : row_keys) rows[key] = SweepRow{key.first, key.second, 0, 0, 0, 0, {}, {}, 0, 0};
    for (auto& r : results) {
        auto& row = rows[{r.row.p, r.row.S}];
        row.instances += r.row.instances;
        row.evaluated += r.row.evaluated;
        row.encoders += r.row.encoders;
        row.controllable += r.row.controllable;
        row.violations += r.row.violations;
        row.kernel_size_exceptions += r.row.kernel_size_exceptions;
        if (r.row.min_index) row.min_index = std::min(row.min_index.value_or(*r.row.min_index), *r.row.min_index);
        if (r.row.max_index) row.max_index = std::max(row.max_index.value_or(*r.row.max_index), *r.row.max_index);
        for (auto& [k, v] : r.violations) rep.predicate_violations[k] += v;
        for (auto& e : r.examples) rep.examples.push_back(e);
        for (auto& c : r.controllable) rep.controllable.push_back(c);
        rep.order_p_controllable += r.order_p_controllable;
    }
    for (auto& [key, row] : rows) {
        const auto& [p, S] = key;
        rep.encoders += row.encoders;
        rep.kernel_size_exceptions += row.kernel_size_exceptions;
        const bool elementary = std::all_of(S.begin(), S.end(), [p = p](int d) { return d == p; });
        if (!elementary) rep.non_elementary_controllable += row.controllable;
        const bool cyclic = S.size() <= 1;
        const int order = S.empty() ? 1 : S[0];
        if (cyclic && order > p) rep.cyclic_controllable += row.controllable;
        if (S.size() == 1 && S[0] == p) rep.order_p_encoders += row.encoders;
        rep.rows.push_back(row);
    }
    std::sort(rep.examples.begin(), rep.examples.end());
    if (rep.examples.size() > 20) rep.examples.resize(20);
    auto key = [](const ControllableEncoder& c) { return std::tie(c.p, c.S, c.G, c.N, c.nu_images); };
    std::sort(rep.controllable.begin(), rep.controllable.end(),
              [&](const ControllableEncoder& a, const ControllableEncoder& b) { return key(a) < key(b); });
    return rep;
}

}  // namespace groupcode
