#pragma once

// JSON encoder specs and reports.
//
// Encoder spec, direct product G = U + S (U coordinates first):
//   {"U":{"factors":[2]}, "S":{"factors":[2,2]}, "Y":{"factors":[2,2]},
//    "nu":{"gen_images":[[0,1],[0,1],[1,0]]}, "omega":{"gen_images":[...]}}
// Any other extension names G and generators of N instead of U and S:
//   {"G":{"factors":[8]}, "N":[[4]], "Y":..., "nu":..., "omega":...}
// and nu, omega then give the images of G's generators.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "control.hpp"
#include "encoder.hpp"
#include "sweep.hpp"

namespace groupcode {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
    return j.get<int>();
}

}  // namespace detail

/// {"factors":[...]} taken as exact coordinate moduli.
inline FiniteAbelianGroup group_from_json(const json& j) {
    const auto& f = detail::field(j, "factors");
    if (!f.is_array()) throw ParseError("\"factors\" must be an array");
    std::vector<int> moduli;
    for (auto& x : f) {
        int d = detail::as_int(x, "factor");
        if (d < 2) throw InvalidFactor("factor " + std::to_string(d) + " is below 2");
        moduli.push_back(d);
    }
    return FiniteAbelianGroup::with_moduli(std::move(moduli));
}

inline json group_to_json(const FiniteAbelianGroup& g) { return json{{"factors", g.moduli()}}; }

inline GroupElement element_from_json(const FiniteAbelianGroup& g, const json& j) {
    if (!j.is_array()) throw ParseError("element must be an array of integers");
    std::vector<int> c;
    for (auto& x : j) c.push_back(detail::as_int(x, "coordinate"));
    GroupElement a(std::move(c));
    if (!g.contains(a)) throw WrongGroup("(" + to_string(a) + ") is not an element of " + g.describe());
    return a;
}

inline json element_to_json(const GroupElement& a) { return json(a.coords); }

inline std::vector<GroupElement> images_from_json(const FiniteAbelianGroup& target, const json& j) {
    const auto& imgs = detail::field(j, "gen_images");
    if (!imgs.is_array()) throw ParseError("\"gen_images\" must be an array");
    std::vector<GroupElement> out;
    for (auto& x : imgs) out.push_back(element_from_json(target, x));
    return out;
}

inline Encoder encoder_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("encoder spec must be a JSON object");
    ExtensionDecomposition ext;
    if (j.contains("G")) {
        auto G = group_from_json(j.at("G"));
        std::vector<GroupElement> gens;
        for (auto& x : detail::field(j, "N")) gens.push_back(element_from_json(G, x));
        ext = decompose(G, subgroup_generated(G, gens));
        for (const char* key : {"U", "S"})
            if (j.contains(key)) {
                auto given = group_from_json(j.at(key));
                const auto& have = std::string(key) == "U" ? ext.U : ext.S;
                if (!is_isomorphic(given, have))
                    throw WrongGroup(std::string(key) + " = " + given.describe() + " but the extension gives " +
                                     have.describe());
            }
    } else {
        ext = direct_product(group_from_json(detail::field(j, "U")), group_from_json(detail::field(j, "S")));
    }
    auto Y = group_from_json(detail::field(j, "Y"));
    return make_encoder(ext, Y, images_from_json(ext.S, detail::field(j, "nu")),
                        images_from_json(Y, detail::field(j, "omega")));
}

inline json encoder_to_json(const Encoder& enc) {
    json j;
    const auto& ext = enc.extension();
    if (ext.pair_coordinates) {
        j["U"] = group_to_json(enc.U());
        j["S"] = group_to_json(enc.S());
    } else {
        j["G"] = group_to_json(enc.G());
        json n = json::array();
        for (auto& g : recognize(ext.N).basis) n.push_back(element_to_json(g));
        j["N"] = n;
    }
    j["Y"] = group_to_json(enc.Y());
    auto images = [](const GroupHom& h) {
        json a = json::array();
        for (auto& x : h.gen_images()) a.push_back(element_to_json(x));
        return json{{"gen_images", a}};
    };
    j["nu"] = images(enc.nu());
    j["omega"] = images(enc.omega());
    return j;
}

inline Encoder load_encoder(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return encoder_from_json(j);
}

namespace detail {

inline json string_set(const std::vector<GroupElement>& els) {
    json a = json::array();
    for (auto& e : els) a.push_back(to_string(e));
    return a;
}

}  // namespace detail

/// U, S, the lifting and the factor set, xi[i][j] indexed by S element order.
inline json extension_to_json(const ExtensionDecomposition& d) {
    json lift = json::array(), xi = json::array();
    for (auto& g : d.lifting) lift.push_back(element_to_json(g));
    for (auto& row : d.xi) {
        json r = json::array();
        for (auto& u : row) r.push_back(element_to_json(u));
        xi.push_back(r);
    }
    return {{"G", group_to_json(d.G)},
            {"U", group_to_json(d.U)},
            {"S", group_to_json(d.S)},
            {"lifting", lift},
            {"xi", xi},
            {"action_trivial", phi_is_trivial(d)}};
}

/// Verdict, chain, past kernel and (when U has prime order) the predicate report.
inline json analysis_to_json(const Encoder& enc, const ControlVerdict& v, const Subgroup& past,
                             const PredicateReport* report) {
    json j;
    j["groups"] = {{"G", group_to_json(enc.G())},
                   {"U", group_to_json(enc.U())},
                   {"S", group_to_json(enc.S())},
                   {"Y", group_to_json(enc.Y())}};
    j["controllable"] = v.controllable;
    j["index"] = v.index ? json(*v.index) : json(nullptr);
    j["below_definition_domain"] = v.below_definition_domain;
    j["stabilized_at"] = v.chain.stabilized_at;
    json chain = json::array();
    for (auto& s : v.chain.sets) chain.push_back(detail::string_set(s.elements()));
    j["chain"] = chain;
    j["witness"] = detail::string_set(v.witness.elements());
    j["past_kernel"] = detail::string_set(past.elements());
    if (report) {
        j["predicates"] = report->predicates;
        json viol = json::array();
        for (auto& x : report->violations) viol.push_back({{"predicate", x.predicate}, {"counterexample", x.counterexample}});
        j["violations"] = viol;
        j["kernel_sizes"] = {{"past_kernel", report->past_kernel_size},
                             {"first_step", report->first_step_size},
                             {"equal_to_p", report->past_kernel_size_is_p}};
    } else {
        j["predicates"] = nullptr;
        j["violations"] = json::array();
    }
    return j;
}

inline json sweep_to_json(const SweepReport& r) {
    json j;
    j["parameters"] = {{"primes", r.options.primes},
                       {"max_state_order", r.options.max_state_order},
                       {"deduplicate", r.options.deduplicate}};
    json rows = json::array();
    for (auto& row : r.rows)
        rows.push_back({{"p", row.p},
                        {"S", json{{"factors", row.S}}},
                        {"instances", row.instances},
                        {"evaluated", row.evaluated},
                        {"encoders", row.encoders},
                        {"controllable", row.controllable},
                        {"min_index", row.min_index ? json(*row.min_index) : json(nullptr)},
                        {"max_index", row.max_index ? json(*row.max_index) : json(nullptr)},
                        {"violations", row.violations},
                        {"kernel_size_exceptions", row.kernel_size_exceptions}});
    j["rows"] = rows;
    json ctrl = json::array();
    for (auto& c : r.controllable) {
        json n = json::array(), nu = json::array();
        for (auto& x : c.N) n.push_back(element_to_json(x));
        for (auto& x : c.nu_images) nu.push_back(element_to_json(x));
        ctrl.push_back({{"p", c.p},
                        {"S", json{{"factors", c.S}}},
                        {"G", json{{"factors", c.G}}},
                        {"N", n},
                        {"nu", json{{"gen_images", nu}}},
                        {"index", c.index},
                        {"orbit_size", c.weight}});
    }
    j["controllable"] = ctrl;
    j["checks"] = {{"encoders", r.encoders},
                   {"predicate_violations", r.predicate_violations},
                   {"total_violations", r.total_violations()},
                   {"controllable_with_non_elementary_S", r.non_elementary_controllable},
                   {"controllable_with_cyclic_S_above_p", r.cyclic_controllable},
                   {"cyclic_S_of_order_p", {{"encoders", r.order_p_encoders}, {"controllable", r.order_p_controllable}}},
                   {"kernel_size_exceptions", r.kernel_size_exceptions}};
    j["examples"] = r.examples;
    return j;
}

}  // namespace groupcode
