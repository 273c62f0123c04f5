#pragma once

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "brmonoid/cohomology.hpp"
#include "brmonoid/galois.hpp"

namespace brm {

struct ComponentRecord {
    int modification_id = -1;
    CohomologySlice slice;  // n = 2 over the modification's module
};

struct MonoidElement {
    int modification_id = -1;
    std::vector<Int> coords;  // in the component's invariant-factor basis

    friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
};

enum class EpsMode { eager, lazy };

// The semilattice of groups H²₀(S, A) over all modifications S of one group,
// glued along the restriction maps ε. Immutable after build (lazy ε caching
// aside, which is not thread safe).
class BrauerMonoid {
public:
    GroupPtr group;
    std::string module_desc;
    std::vector<Modification> modifications;  // canonical order
    std::vector<ComponentRecord> components;

    int full_modification_id() const { return 0; }  // canonical order puts ∅ first

    int modification_id(const Modification& m) const {
        for (size_t i = 0; i < modifications.size(); ++i)
            if (modifications[i].zero_pairs == m.zero_pairs) return static_cast<int>(i);
        throw ForeignElement("modification is not in this monoid");
    }

    int meet_id(int a, int b) const { return meet_table_[a][b]; }

    const AbelianHom& eps(int from_id, int to_id) const {
        internal_check(is_preceq(modifications[to_id], modifications[from_id]),
                       "eps requires comparable modifications");
        auto key = std::make_pair(from_id, to_id);
        auto it = eps_.find(key);
        if (it != eps_.end()) return it->second;
        internal_check(mode_ == EpsMode::lazy, "missing eps map in eager mode");
        AbelianHom h = restriction_map(components[from_id].slice, components[to_id].slice);
        return eps_.emplace(key, std::move(h)).first->second;
    }

    MonoidElement identity_element() const {
        return MonoidElement{full_modification_id(),
                             std::vector<Int>(components[0].slice.group.rank, 0)};
    }

    MonoidElement idempotent_at(int id) const {
        return MonoidElement{id, std::vector<Int>(components[id].slice.group.rank, 0)};
    }

    void check_element(const MonoidElement& x) const {
        if (x.modification_id < 0 || x.modification_id >= static_cast<int>(modifications.size()))
            throw ForeignElement("modification id out of range");
        if (static_cast<int>(x.coords.size()) != components[x.modification_id].slice.group.rank)
            throw ForeignElement("coordinate count does not match the component");
    }

    friend BrauerMonoid build_monoid(GroupPtr g,
                                     const std::function<ZeroModule(const Modification&)>& family,
                                     const std::string& desc, int max_order, EpsMode mode);

private:
    std::vector<std::vector<int>> meet_table_;
    mutable std::map<std::pair<int, int>, AbelianHom> eps_;
    EpsMode mode_ = EpsMode::eager;
};

inline BrauerMonoid build_monoid(GroupPtr g,
                                 const std::function<ZeroModule(const Modification&)>& family,
                                 const std::string& desc = "", int max_order = 8,
                                 EpsMode mode = EpsMode::eager) {
    BrauerMonoid m;
    m.group = g;
    m.module_desc = desc;
    m.mode_ = mode;
    m.modifications = enumerate_modifications(g, max_order);
    int k = static_cast<int>(m.modifications.size());
    for (int i = 0; i < k; ++i)
        m.components.push_back(ComponentRecord{i, cohomology(family(m.modifications[i]), 2)});

    m.meet_table_.assign(k, std::vector<int>(k, -1));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m.meet_table_[i][j] = m.modification_id(meet(m.modifications[i], m.modifications[j]));

    if (mode == EpsMode::eager)
        for (int t = 0; t < k; ++t)
            for (int s = 0; s < k; ++s)
                if (is_preceq(m.modifications[s], m.modifications[t]))
                    m.eps_.emplace(std::make_pair(t, s),
                                   restriction_map(m.components[t].slice, m.components[s].slice));
    return m;
}

inline BrauerMonoid build_monoid(const GaloisModuleSpec& spec, int max_order = 8,
                                 EpsMode mode = EpsMode::eager) {
    return build_monoid(
        spec.group, [&spec](const Modification& s) { return galois_zero_module(spec, s); },
        spec.ext.str(), max_order, mode);
}

inline MonoidElement multiply(const BrauerMonoid& m, const MonoidElement& x, const MonoidElement& y) {
    m.check_element(x);
    m.check_element(y);
    int w = m.meet_id(x.modification_id, y.modification_id);
    const PresentedAbelianGroup& target = m.components[w].slice.group;
    std::vector<Int> cx = m.eps(x.modification_id, w).apply_reported(x.coords);
    std::vector<Int> cy = m.eps(y.modification_id, w).apply_reported(y.coords);
    for (size_t i = 0; i < cx.size(); ++i) cx[i] = mod_floor(cx[i] + cy[i], target.invariant_factors[i]);
    return MonoidElement{w, std::move(cx)};
}

inline std::vector<MonoidElement> idempotents(const BrauerMonoid& m) {
    std::vector<MonoidElement> out;
    for (size_t i = 0; i < m.modifications.size(); ++i)
        out.push_back(m.idempotent_at(static_cast<int>(i)));
    return out;
}

inline std::vector<MonoidElement> all_elements(const BrauerMonoid& m, long long limit = 2000000) {
    std::vector<MonoidElement> out;
    for (size_t i = 0; i < m.components.size(); ++i) {
        const PresentedAbelianGroup& g = m.components[i].slice.group;
        internal_check(g.order() <= limit, "monoid too large to enumerate");
        std::vector<Int> c(g.rank, 0);
        for (;;) {
            out.push_back(MonoidElement{static_cast<int>(i), c});
            size_t j = 0;
            while (j < c.size() && ++c[j] == g.invariant_factors[j]) c[j++] = 0;
            if (j == c.size()) break;
        }
    }
    return out;
}

struct CliffordReport {
    bool exhaustive = false;
    long long functoriality_checked = 0, triples_checked = 0, pairs_checked = 0, identity_checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// ε functoriality on every comparable chain, associativity/commutativity of
// the product (exhaustive under the bound, seeded random sampling above it),
// and the two-sided identity at the full modification.
inline CliffordReport verify_clifford(const BrauerMonoid& m, long long exhaustive_bound = 4096,
                                      long long samples = 10000, uint64_t seed = 20240801) {
    CliffordReport rep;
    int k = static_cast<int>(m.modifications.size());
    for (int s = 0; s < k; ++s) {
        if (!hom_equal(m.eps(s, s), identity_hom(m.components[s].slice.group)))
            rep.violations.push_back("eps(S,S) != id at S=" + std::to_string(s));
        for (int t = 0; t < k; ++t) {
            if (!is_preceq(m.modifications[s], m.modifications[t])) continue;
            for (int u = 0; u < k; ++u) {
                if (!is_preceq(m.modifications[t], m.modifications[u])) continue;
                // S ≺ T ≺ U: ε_{U,T} then ε_{T,S} must equal ε_{U,S}
                if (!hom_equal(compose(m.eps(u, t), m.eps(t, s)), m.eps(u, s)))
                    rep.violations.push_back("functoriality fails on chain (" + std::to_string(u) +
                                             "," + std::to_string(t) + "," + std::to_string(s) + ")");
                ++rep.functoriality_checked;
            }
        }
    }

    Int total = 0;
    for (const auto& c : m.components) total += c.slice.group.order();
    rep.exhaustive = total <= exhaustive_bound;
    MonoidElement e = m.identity_element();
    auto check_triple = [&](const MonoidElement& x, const MonoidElement& y, const MonoidElement& z) {
        if (multiply(m, multiply(m, x, y), z) != multiply(m, x, multiply(m, y, z)))
            rep.violations.push_back("associativity fails");
        ++rep.triples_checked;
    };
    auto check_pair = [&](const MonoidElement& x, const MonoidElement& y) {
        if (multiply(m, x, y) != multiply(m, y, x)) rep.violations.push_back("commutativity fails");
        ++rep.pairs_checked;
    };
    auto check_identity = [&](const MonoidElement& x) {
        if (multiply(m, e, x) != x || multiply(m, x, e) != x)
            rep.violations.push_back("identity fails at component " + std::to_string(x.modification_id));
        ++rep.identity_checked;
    };

    if (rep.exhaustive) {
        std::vector<MonoidElement> els = all_elements(m);
        for (const auto& x : els) check_identity(x);
        for (const auto& x : els)
            for (const auto& y : els) {
                check_pair(x, y);
                for (const auto& z : els) check_triple(x, y, z);
            }
    } else {
        std::mt19937_64 rng(seed);
        auto random_element = [&]() {
            int id = static_cast<int>(rng() % m.components.size());
            const PresentedAbelianGroup& g = m.components[id].slice.group;
            std::vector<Int> c(g.rank);
            for (int i = 0; i < g.rank; ++i)
                c[i] = Int(rng() % static_cast<uint64_t>(g.invariant_factors[i]));
            return MonoidElement{id, std::move(c)};
        };
        for (long long i = 0; i < samples; ++i) {
            MonoidElement x = random_element(), y = random_element(), z = random_element();
            check_triple(x, y, z);
            check_pair(x, y);
            check_identity(x);
        }
    }
    return rep;
}

}  // namespace brm
