#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "brmonoid/group.hpp"

namespace brm {

// Semigroup on G ∪ {0} obtained from a finite group by zeroing some products
// of non-identity elements. The zero element is out of band: element index -1.
struct Modification {
    static constexpr int zero = -1;

    GroupPtr group;
    std::vector<std::pair<int, int>> zero_pairs;  // sorted lexicographically
    std::vector<char> zmask;                      // order×order product-erased lookup

    int order() const { return group->order; }

    bool pair_zeroed(int x, int y) const { return zmask[static_cast<size_t>(x) * order() + y] != 0; }

    int star(int x, int y) const {
        if (x == zero || y == zero) return zero;
        return pair_zeroed(x, y) ? zero : group->mul(x, y);
    }

    int star_tuple(const std::vector<int>& t) const {
        int acc = 0;
        for (int s : t) {
            acc = star(acc, s);
            if (acc == zero) return zero;
        }
        return acc;
    }

    bool same_group(const Modification& other) const { return *group == *other.group; }

    friend bool operator==(const Modification& a, const Modification& b) {
        return *a.group == *b.group && a.zero_pairs == b.zero_pairs;
    }
};

// canonical order: by number of erased pairs, then lexicographically
inline bool modification_less(const Modification& a, const Modification& b) {
    if (a.zero_pairs.size() != b.zero_pairs.size()) return a.zero_pairs.size() < b.zero_pairs.size();
    return a.zero_pairs < b.zero_pairs;
}

inline Modification modification_from_zero_set(GroupPtr g, std::vector<std::pair<int, int>> pairs) {
    int n = g->order;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [i, j] : pairs) {
        if (i <= 0 || j <= 0 || i >= n || j >= n) {
            if (i == 0 || j == 0)
                throw IdentityPairErased("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") involves the identity");
            throw Error("zero pair out of range");
        }
    }
    Modification m;
    m.group = std::move(g);
    m.zero_pairs = std::move(pairs);
    m.zmask.assign(static_cast<size_t>(n) * n, 0);
    for (auto [i, j] : m.zero_pairs) m.zmask[static_cast<size_t>(i) * n + j] = 1;

    // associativity over every triple of G ∪ {0} (zero triples are trivial
    // by absorption but cost nothing to include)
    for (int x = -1; x < n; ++x)
        for (int y = -1; y < n; ++y)
            for (int z = -1; z < n; ++z)
                if (m.star(m.star(x, y), z) != m.star(x, m.star(y, z)))
                    throw NotAssociative("zero set breaks associativity at (" + std::to_string(x) + "," +
                                             std::to_string(y) + "," + std::to_string(z) + ")",
                                         x, y, z);
    return m;
}

enum class ModKind { full, annihilator };

inline Modification canonical_modification(GroupPtr g, ModKind kind) {
    std::vector<std::pair<int, int>> pairs;
    if (kind == ModKind::annihilator)
        for (int i = 1; i < g->order; ++i)
            for (int j = 1; j < g->order; ++j) pairs.emplace_back(i, j);
    return modification_from_zero_set(std::move(g), std::move(pairs));
}

// x⋆z = y⋆z ≠ 0 ⇒ x = y, and the left-sided analogue; returns a witness
// triple if violated (never expected: modifications satisfy this).
inline std::optional<std::array<int, 3>> weak_cancellation_witness(const Modification& m) {
    int n = m.order();
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                if (m.star(x, z) == m.star(y, z) && m.star(x, z) != Modification::zero)
                    return std::array<int, 3>{x, y, z};
                if (m.star(z, x) == m.star(z, y) && m.star(z, x) != Modification::zero)
                    return std::array<int, 3>{x, y, z};
            }
    return std::nullopt;
}

namespace detail {

// Pair (i,j) of non-identity elements <-> bit index in enumeration masks.
inline int pair_bit(int i, int j, int n) { return (i - 1) * (n - 1) + (j - 1); }

struct TripleCheck {
    int pxy, pyz;    // bit of (x,y) and (y,z); always valid
    int pl, pr;      // bit of (xy,z) / (x,yz); -1 when xy / yz is the identity
    int lres, rres;  // group value of xyz seen from each side
    int last;        // largest bit index involved
};

inline std::vector<TripleCheck> build_triple_checks(const FiniteGroup& g) {
    int n = g.order;
    std::vector<TripleCheck> out;
    out.reserve(static_cast<size_t>(n - 1) * (n - 1) * (n - 1));
    for (int x = 1; x < n; ++x)
        for (int y = 1; y < n; ++y)
            for (int z = 1; z < n; ++z) {
                TripleCheck t;
                t.pxy = pair_bit(x, y, n);
                t.pyz = pair_bit(y, z, n);
                int xy = g.mul(x, y), yz = g.mul(y, z);
                t.pl = xy == 0 ? -1 : pair_bit(xy, z, n);
                t.pr = yz == 0 ? -1 : pair_bit(x, yz, n);
                t.lres = g.mul(xy, z);
                t.rres = g.mul(x, yz);
                t.last = std::max({t.pxy, t.pyz, t.pl, t.pr});
                out.push_back(t);
            }
    std::sort(out.begin(), out.end(),
              [](const TripleCheck& a, const TripleCheck& b) { return a.last < b.last; });
    return out;
}

inline bool triple_ok(const TripleCheck& t, uint64_t mask) {
    constexpr int zero = -2;  // distinct from any element index
    int l = (mask >> t.pxy) & 1 ? zero : (t.pl < 0 ? t.lres : ((mask >> t.pl) & 1 ? zero : t.lres));
    int r = (mask >> t.pyz) & 1 ? zero : (t.pr < 0 ? t.rres : ((mask >> t.pr) & 1 ? zero : t.rres));
    return l == r;
}

inline bool mask_associative(const std::vector<TripleCheck>& checks, uint64_t mask) {
    for (const TripleCheck& t : checks)
        if (!triple_ok(t, mask)) return false;
    return true;
}

inline std::vector<std::pair<int, int>> mask_to_pairs(uint64_t mask, int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if ((mask >> pair_bit(i, j, n)) & 1) pairs.emplace_back(i, j);
    return pairs;
}

// depth-first search over erasable pairs in lexicographic order, pruning with
// every triple whose participating pairs are all decided
inline void enumerate_masks_dfs(const std::vector<TripleCheck>& checks, int nbits, int depth,
                                uint64_t mask, const std::vector<std::pair<size_t, size_t>>& at_depth,
                                std::vector<uint64_t>& out) {
    if (depth == nbits) {
        if (mask_associative(checks, mask)) out.push_back(mask);  // leaf re-validation
        return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
        uint64_t next = mask | (static_cast<uint64_t>(bit) << depth);
        bool ok = true;
        for (size_t i = at_depth[depth].first; ok && i < at_depth[depth].second; ++i)
            ok = triple_ok(checks[i], next);
        if (ok) enumerate_masks_dfs(checks, nbits, depth + 1, next, at_depth, out);
    }
}

inline std::vector<uint64_t> valid_masks_pruned(const FiniteGroup& g) {
    int n = g.order;
    int nbits = (n - 1) * (n - 1);
    auto checks = build_triple_checks(g);
    std::vector<std::pair<size_t, size_t>> at_depth(nbits, {0, 0});
    size_t pos = 0;
    for (int d = 0; d < nbits; ++d) {
        size_t from = pos;
        while (pos < checks.size() && checks[pos].last == d) ++pos;
        at_depth[d] = {from, pos};
    }
    std::vector<uint64_t> out;
    if (nbits == 0) {
        out.push_back(0);
        return out;
    }
    enumerate_masks_dfs(checks, nbits, 0, 0, at_depth, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<uint64_t> valid_masks_naive(const FiniteGroup& g) {
    int n = g.order;
    int nbits = (n - 1) * (n - 1);
    internal_check(nbits < 63, "naive enumeration mask too wide");
    auto checks = build_triple_checks(g);
    std::vector<uint64_t> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << nbits); ++mask)
        if (mask_associative(checks, mask)) out.push_back(mask);
    return out;
}

}  // namespace detail

enum class EnumerationStrategy { pruned, naive_oracle };

inline std::vector<Modification> enumerate_modifications(
    GroupPtr g, int max_order = 8, EnumerationStrategy strategy = EnumerationStrategy::pruned) {
    if (g->order > max_order)
        throw GroupTooLarge("group order " + std::to_string(g->order) + " exceeds bound " +
                            std::to_string(max_order));
    std::vector<uint64_t> masks = strategy == EnumerationStrategy::pruned
                                      ? detail::valid_masks_pruned(*g)
                                      : detail::valid_masks_naive(*g);
    std::vector<Modification> out;
    out.reserve(masks.size());
    for (uint64_t mask : masks)
        out.push_back(modification_from_zero_set(g, detail::mask_to_pairs(mask, g->order)));
    std::sort(out.begin(), out.end(), modification_less);
    return out;
}

// ---- order, meet ----

inline bool is_preceq(const Modification& s, const Modification& t) {
    if (!s.same_group(t)) throw GroupMismatch("is_preceq: different underlying groups");
    return std::includes(s.zero_pairs.begin(), s.zero_pairs.end(), t.zero_pairs.begin(),
                         t.zero_pairs.end());
}

inline Modification meet(const Modification& s, const Modification& t) {
    if (!s.same_group(t)) throw GroupMismatch("meet: different underlying groups");
    std::vector<std::pair<int, int>> pairs = s.zero_pairs;
    pairs.insert(pairs.end(), t.zero_pairs.begin(), t.zero_pairs.end());
    try {
        return modification_from_zero_set(s.group, std::move(pairs));
    } catch (const NotAssociative& e) {
        throw InvariantViolation(std::string("meet produced a non-associative zero set: ") + e.what());
    }
}

// ---- units, ideal, quotient ----

struct UnitIdealSplit {
    std::vector<int> units;          // sorted, a subgroup containing 0
    std::vector<int> ideal_nonzero;  // the ideal is this set plus the zero element
    int nilpotency_index = 1;
};

inline UnitIdealSplit unit_group(const Modification& m) {
    int n = m.order();
    UnitIdealSplit split;
    for (int x = 0; x < n; ++x) {
        bool inv = false;
        for (int y = 0; y < n && !inv; ++y) inv = m.star(x, y) == 0 && m.star(y, x) == 0;
        (inv ? split.units : split.ideal_nonzero).push_back(x);
    }
    // units form a subgroup
    for (int a : split.units)
        for (int b : split.units) {
            int p = m.star(a, b);
            internal_check(p != Modification::zero &&
                               std::binary_search(split.units.begin(), split.units.end(), p),
                           "units not closed under the product");
        }
    // the complement is a two-sided ideal
    for (int x = 0; x < n; ++x)
        for (int y : split.ideal_nonzero) {
            int p = m.star(x, y), q = m.star(y, x);
            internal_check(p == Modification::zero ||
                               std::binary_search(split.ideal_nonzero.begin(), split.ideal_nonzero.end(), p),
                           "S*I escapes the ideal");
            internal_check(q == Modification::zero ||
                               std::binary_search(split.ideal_nonzero.begin(), split.ideal_nonzero.end(), q),
                           "I*S escapes the ideal");
        }
    // nilpotency index by iterated set products
    std::vector<int> cur = split.ideal_nonzero;
    int k = 1;
    while (!cur.empty()) {
        std::set<int> next;
        for (int a : split.ideal_nonzero)
            for (int b : cur) {
                int p = m.star(a, b);
                if (p != Modification::zero) next.insert(p);
            }
        cur.assign(next.begin(), next.end());
        ++k;
        internal_check(k <= n + 1, "ideal not nilpotent within |G|+1 steps");
    }
    split.nilpotency_index = k;
    return split;
}

inline bool units_normal(const Modification& m, const UnitIdealSplit& split) {
    // xU = Ux inside S; products with units are never zero, so this is the
    // group-level coset equality
    const FiniteGroup& g = *m.group;
    for (int x = 0; x < g.order; ++x) {
        std::set<int> left, right;
        for (int u : split.units) {
            left.insert(g.mul(x, u));
            right.insert(g.mul(u, x));
        }
        if (left != right) return false;
    }
    return true;
}

// a_x with a⋆x = x⋆a_x ≠ 0, computed as x⁻¹ a x in the underlying group.
inline int conjugation_witness(const Modification& m, const UnitIdealSplit& split, int a, int x) {
    if (!std::binary_search(split.units.begin(), split.units.end(), a))
        throw Error("conjugation_witness: a is not a unit");
    if (x == Modification::zero) throw Error("conjugation_witness: x must be nonzero");
    if (!units_normal(m, split)) throw NotNormal("unit group is not normal");
    const FiniteGroup& g = *m.group;
    int ax = g.mul(g.mul(g.inv(x), a), x);
    internal_check(std::binary_search(split.units.begin(), split.units.end(), ax),
                   "conjugate left the unit group");
    internal_check(m.star(a, x) == m.star(x, ax) && m.star(a, x) != Modification::zero,
                   "conjugation witness identity failed");
    return ax;
}

inline int conjugation_witness(const Modification& m, int a, int x) {
    return conjugation_witness(m, unit_group(m), a, x);
}

struct QuotientModification {
    Modification quotient;       // a modification of G/U
    std::vector<int> projection; // parent element index -> coset index (zero stays zero)
};

inline QuotientModification quotient_by_units(const Modification& m, const UnitIdealSplit& split) {
    if (!units_normal(m, split)) throw NotNormal("quotient_by_units: unit group is not normal");
    const FiniteGroup& g = *m.group;
    int n = g.order;

    // cosets Ux, indexed in order of their least element (identity coset first)
    std::vector<int> coset_of(n, -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < n; ++x) {
        if (coset_of[x] >= 0) continue;
        std::set<int> cs;
        for (int u : split.units) cs.insert(g.mul(u, x));
        int id = static_cast<int>(cosets.size());
        for (int y : cs) coset_of[y] = id;
        cosets.emplace_back(cs.begin(), cs.end());
    }
    internal_check(coset_of[0] == 0, "identity coset must come first");

    // the coset partition plus {0} must be a congruence: every block product is
    // uniformly one coset or uniformly zero
    int k = static_cast<int>(cosets.size());
    std::vector<std::vector<int>> ctab(k, std::vector<int>(k, -2));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int expect = -2;
            for (int x : cosets[a])
                for (int y : cosets[b]) {
                    int p = m.star(x, y);
                    int c = p == Modification::zero ? -1 : coset_of[p];
                    if (expect == -2) expect = c;
                    if (c != expect)
                        throw NotCongruence("invariant violation: mixed products for cosets (" +
                                            std::to_string(a) + "," + std::to_string(b) +
                                            ") witnessed at (" + std::to_string(x) + "," +
                                            std::to_string(y) + ")");
                }
            ctab[a][b] = expect;
        }

    // quotient group table from representatives
    std::vector<std::vector<int>> qtable(k, std::vector<int>(k));
    std::vector<std::string> qnames(k);
    for (int a = 0; a < k; ++a) {
        qnames[a] = g.names[cosets[a][0]] + "U";
        for (int b = 0; b < k; ++b) qtable[a][b] = coset_of[g.mul(cosets[a][0], cosets[b][0])];
    }
    GroupPtr qg = group_from_table(qtable, qnames);

    std::vector<std::pair<int, int>> qpairs;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (ctab[a][b] == -1) qpairs.emplace_back(a, b);
    QuotientModification out;
    out.quotient = modification_from_zero_set(std::move(qg), std::move(qpairs));
    out.projection = std::move(coset_of);
    return out;
}

inline QuotientModification quotient_by_units(const Modification& m) {
    return quotient_by_units(m, unit_group(m));
}

}  // namespace brm
