#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "brmonoid/brauer_monoid.hpp"
#include "brmonoid/exact_sequence.hpp"

namespace brm {

// Insertion order is preserved so every export is byte-stable.
using json = nlohmann::ordered_json;

inline json group_to_json(const FiniteGroup& g) {
    json j;
    j["order"] = g.order;
    j["names"] = g.names;
    json table = json::array();
    for (int i = 0; i < g.order; ++i) {
        json row = json::array();
        for (int k = 0; k < g.order; ++k) row.push_back(g.mul(i, k));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    return j;
}

inline GroupPtr group_from_json(const json& j) {
    if (!j.contains("table")) throw ParseError("group JSON must contain a table");
    std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
        throw ParseError("group JSON order field disagrees with the table");
    return group_from_table(table, std::move(names));
}

inline json zero_pairs_to_json(const Modification& m) {
    json pairs = json::array();
    for (auto [a, b] : m.zero_pairs) pairs.push_back(json::array({a, b}));
    return pairs;
}

inline json modification_to_json(const Modification& m, bool inline_group = true) {
    json j;
    if (inline_group) j["group"] = group_to_json(*m.group);
    j["zero_pairs"] = zero_pairs_to_json(m);
    return j;
}

inline Modification modification_from_json(const json& j, GroupPtr group = nullptr) {
    if (!group) {
        if (!j.contains("group")) throw ParseError("modification JSON needs a group");
        const json& gj = j.at("group");
        if (gj.is_string()) {
            std::string s = gj.get<std::string>();
            if ((s[0] == 'C' || s[0] == 'c') && s.size() > 1)
                group = cyclic_group(std::stoi(s.substr(1)));
            else
                throw ParseError("unknown group reference '" + s + "'");
        } else {
            group = group_from_json(gj);
        }
    }
    std::vector<std::pair<int, int>> pairs;
    for (const json& p : j.at("zero_pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return modification_from_zero_set(std::move(group), std::move(pairs));
}

inline json matrix_to_json(const IntMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    json entries = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols; ++k) row.push_back(m.at(i, k).str());
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline IntMatrix matrix_from_json(const json& j) {
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    IntMatrix m(rows, cols);
    const json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows) throw ParseError("matrix JSON row count mismatch");
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(entries[i].size()) != cols)
            throw ParseError("matrix JSON column count mismatch");
        for (int k = 0; k < cols; ++k) m.at(i, k) = Int(entries[i][k].get<std::string>());
    }
    return m;
}

inline json factors_to_json(const std::vector<Int>& factors) {
    json j = json::array();
    for (const Int& f : factors) j.push_back(f.str());
    return j;
}

inline json cochain_to_json(const Cochain& c) {
    json j;
    j["n"] = c.dom->n;
    json tuples = json::array();
    for (const auto& t : c.dom->tuples) tuples.push_back(t);
    j["tuples"] = std::move(tuples);
    json values = json::array();
    for (int ti = 0; ti < c.dom->size(); ++ti) {
        json row = json::array();
        for (int k = 0; k < c.r; ++k) row.push_back(c.values[static_cast<size_t>(ti) * c.r + k].str());
        values.push_back(std::move(row));
    }
    j["values"] = std::move(values);
    return j;
}

inline Cochain cochain_from_json(const json& j, DomainPtr dom, int r) {
    if (j.at("n").get<int>() != dom->n) throw ParseError("cochain dimension mismatch");
    auto tuples = j.at("tuples").get<std::vector<std::vector<int>>>();
    if (tuples != dom->tuples) throw ParseError("cochain tuples do not match the domain");
    Cochain c = zero_cochain(std::move(dom), r);
    const json& values = j.at("values");
    for (size_t ti = 0; ti < values.size(); ++ti)
        for (int k = 0; k < r; ++k) c.values[ti * r + k] = Int(values[ti][k].get<std::string>());
    return c;
}

inline json slice_to_json(const CohomologySlice& s) {
    json j;
    j["n"] = s.n;
    j["invariant_factors"] = factors_to_json(s.group.invariant_factors);
    json reps = json::array();
    for (const Cochain& rep : s.representatives) reps.push_back(cochain_to_json(rep));
    j["representatives"] = std::move(reps);
    return j;
}

inline json monoid_to_json(const BrauerMonoid& m, const std::string& tool_version) {
    json j;
    j["meta"] = {{"tool", "brmonoid"}, {"version", tool_version}, {"module", m.module_desc}};
    j["group"] = group_to_json(*m.group);
    json mods = json::array();
    for (const Modification& s : m.modifications) mods.push_back(zero_pairs_to_json(s));
    j["modifications"] = std::move(mods);
    json comps = json::array();
    for (const ComponentRecord& c : m.components) {
        json cj;
        cj["modification_id"] = c.modification_id;
        cj["invariant_factors"] = factors_to_json(c.slice.group.invariant_factors);
        json reps = json::array();
        for (const Cochain& rep : c.slice.representatives) reps.push_back(cochain_to_json(rep));
        cj["representatives"] = std::move(reps);
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    json eps = json::array();
    int k = static_cast<int>(m.modifications.size());
    for (int t = 0; t < k; ++t)
        for (int s = 0; s < k; ++s) {
            if (!is_preceq(m.modifications[s], m.modifications[t])) continue;
            json ej;
            ej["from"] = t;
            ej["to"] = s;
            ej["matrix"] = matrix_to_json(m.eps(t, s).matrix);
            eps.push_back(std::move(ej));
        }
    j["eps"] = std::move(eps);
    return j;
}

inline json exactness_report_to_json(const ExactnessReport& r) {
    json j;
    j["modification_id"] = r.modification_id;
    j["hypothesis_h1"] = r.hypothesis_h1;
    j["psi_injective"] = r.psi_injective;
    j["image_psi_equals_kernel_phi"] = r.image_psi_equals_kernel_phi;
    j["h2_of_U"] = factors_to_json(r.h2_of_U);
    j["component_invariants"] = factors_to_json(r.component_invariants);
    j["quotient_component_invariants"] = factors_to_json(r.quotient_component_invariants);
    j["verdict"] = r.verdict_str();
    return j;
}

}  // namespace brm
