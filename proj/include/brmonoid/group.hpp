#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "brmonoid/errors.hpp"

namespace brm {

// Finite group given by its Cayley table. Element 0 is always the identity;
// construction relocates it there if the input has it elsewhere.
struct FiniteGroup {
    int order = 0;
    std::vector<int> table;  // order × order, row-major
    std::vector<std::string> names;

    int mul(int i, int j) const { return table[static_cast<size_t>(i) * order + j]; }

    int inv(int i) const {
        for (int j = 0; j < order; ++j)
            if (mul(i, j) == 0) return j;
        throw NoInverse("no inverse for element " + std::to_string(i));
    }

    bool is_abelian() const {
        for (int i = 0; i < order; ++i)
            for (int j = i + 1; j < order; ++j)
                if (mul(i, j) != mul(j, i)) return false;
        return true;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order == b.order && a.table == b.table;
    }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {

inline std::vector<std::string> default_names(int n) {
    std::vector<std::string> names(n);
    names[0] = "e";
    for (int i = 1; i < n; ++i) names[i] = "x" + std::to_string(i);
    return names;
}

inline void validate_group(const FiniteGroup& g) {
    int n = g.order;
    for (int j = 0; j < n; ++j)
        if (g.mul(0, j) != j || g.mul(j, 0) != j)
            throw NoIdentity("element 0 is not a two-sided identity at " + std::to_string(j));
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            if (seen_row[g.mul(i, j)])
                throw NotLatin("row " + std::to_string(i) + " repeats element " + std::to_string(g.mul(i, j)));
            seen_row[g.mul(i, j)] = true;
            if (seen_col[g.mul(j, i)])
                throw NotLatin("column " + std::to_string(i) + " repeats element " + std::to_string(g.mul(j, i)));
            seen_col[g.mul(j, i)] = true;
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
                    throw NotAssociative("group table not associative at (" + std::to_string(x) + "," +
                                             std::to_string(y) + "," + std::to_string(z) + ")",
                                         x, y, z);
    for (int x = 0; x < n; ++x) g.inv(x);  // throws NoInverse
}

}  // namespace detail

inline GroupPtr cyclic_group(int n) {
    if (n < 1) throw Error("cyclic_group: order must be >= 1");
    FiniteGroup g;
    g.order = n;
    g.table.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table[static_cast<size_t>(i) * n + j] = (i + j) % n;
    g.names.resize(n);
    g.names[0] = "e";
    for (int i = 1; i < n; ++i) g.names[i] = i == 1 ? "g" : "g" + std::to_string(i);
    return std::make_shared<FiniteGroup>(std::move(g));
}

inline GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                                 std::vector<std::string> names = {}) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw Error("group_from_table: empty table");
    FiniteGroup g;
    g.order = n;
    g.table.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n) throw Error("group_from_table: table not square");
        for (int j = 0; j < n; ++j) {
            if (table[i][j] < 0 || table[i][j] >= n)
                throw NotLatin("entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            g.table[static_cast<size_t>(i) * n + j] = table[i][j];
        }
    }
    g.names = names.empty() ? detail::default_names(n) : std::move(names);
    if (static_cast<int>(g.names.size()) != n) throw Error("group_from_table: name count mismatch");

    // locate the identity and relocate it to index 0
    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = g.mul(c, j) == j && g.mul(j, c) == j;
        if (ok) e = c;
    }
    if (e < 0) throw NoIdentity("table has no two-sided identity");
    if (e != 0) {
        std::vector<int> perm(n);  // old index -> new index, swapping 0 and e
        for (int i = 0; i < n; ++i) perm[i] = i == 0 ? e : (i == e ? 0 : i);
        FiniteGroup h;
        h.order = n;
        h.table.resize(static_cast<size_t>(n) * n);
        h.names.resize(n);
        for (int i = 0; i < n; ++i) {
            h.names[perm[i]] = g.names[i];
            for (int j = 0; j < n; ++j)
                h.table[static_cast<size_t>(perm[i]) * n + perm[j]] = perm[g.mul(i, j)];
        }
        g = std::move(h);
    }
    detail::validate_group(g);
    return std::make_shared<FiniteGroup>(std::move(g));
}

// Subgroup as its own FiniteGroup, re-indexed; `elements` must contain 0 and
// be closed under the parent product. Returns the group plus the index maps.
struct SubgroupView {
    GroupPtr group;
    std::vector<int> to_parent;    // subgroup index -> parent index
    std::vector<int> from_parent;  // parent index -> subgroup index or -1
};

inline SubgroupView subgroup_view(const FiniteGroup& parent, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    internal_check(!elements.empty() && elements[0] == 0, "subgroup must contain the identity");
    int k = static_cast<int>(elements.size());
    std::vector<int> from_parent(parent.order, -1);
    for (int i = 0; i < k; ++i) from_parent[elements[i]] = i;
    FiniteGroup g;
    g.order = k;
    g.table.resize(static_cast<size_t>(k) * k);
    g.names.resize(k);
    for (int i = 0; i < k; ++i) {
        g.names[i] = parent.names[elements[i]];
        for (int j = 0; j < k; ++j) {
            int p = parent.mul(elements[i], elements[j]);
            internal_check(from_parent[p] >= 0, "subgroup not closed under product");
            g.table[static_cast<size_t>(i) * k + j] = from_parent[p];
        }
    }
    return SubgroupView{std::make_shared<FiniteGroup>(std::move(g)), std::move(elements),
                        std::move(from_parent)};
}

}  // namespace brm
