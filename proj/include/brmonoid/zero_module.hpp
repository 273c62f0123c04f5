#pragma once

#include <utility>
#include <vector>

#include "brmonoid/abelian.hpp"
#include "brmonoid/modification.hpp"

namespace brm {

// Finite abelian coefficient group A = ⊕ Z/m_i acted on by the nonzero part
// of a modification. Action matrices are column-convention (M_s · M_t =
// M_{s⋆t} whenever s⋆t ≠ 0); coefficient vectors in the rest of the library
// are rows, applied through the cached transposes.
struct ZeroModule {
    Modification sg;
    std::vector<Int> orders;            // r entries >= 1
    std::vector<IntMatrix> action;      // per nonzero element, r×r
    std::vector<IntMatrix> action_row;  // transposes, for row vectors

    int r() const { return static_cast<int>(orders.size()); }

    std::vector<Int> reduce(std::vector<Int> v) const {
        for (size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], orders[i % orders.size()]);
        return v;
    }

    // a ↦ s·a for a row coefficient vector
    std::vector<Int> act_row(int s, const std::vector<Int>& a) const {
        return reduce(mul_row(a, action_row[s]));
    }
};

namespace detail {

inline bool entries_congruent(const IntMatrix& a, const IntMatrix& b, const std::vector<Int>& row_mods) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (mod_floor(a.at(i, j) - b.at(i, j), row_mods[i]) != 0) return false;
    return true;
}

}  // namespace detail

inline ZeroModule zero_module(Modification s, std::vector<Int> orders, std::vector<IntMatrix> action) {
    int n = s.order();
    int r = static_cast<int>(orders.size());
    for (const Int& m : orders)
        if (m < 1) throw Error("zero_module: coefficient orders must be positive");
    if (static_cast<int>(action.size()) != n)
        throw Error("zero_module: action must be defined on every nonzero element");

    IntMatrix lattice_rows = hnf(IntMatrix::diagonal(orders));
    for (int e = 0; e < n; ++e) {
        IntMatrix& m = action[e];
        if (m.rows != r || m.cols != r) throw Error("zero_module: action matrix has wrong shape");
        // well-defined on ⊕ Z/m_i: column j of m_j·M must vanish mod row orders
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (mod_floor(orders[j] * m.at(i, j), orders[i]) != 0)
                    throw NotAutomorphism("action of element " + std::to_string(e) +
                                          " is not an endomorphism of the coefficients");
                m.at(i, j) = mod_floor(m.at(i, j), orders[i]);
            }
        // invertible mod the orders: x·Mᵀ ≡ 0 forces x ≡ 0
        if (r > 0 && !(kernel_mod(m.transposed(), orders) == lattice_rows))
            throw NotAutomorphism("action of element " + std::to_string(e) +
                                  " is not invertible modulo the orders");
    }
    if (!detail::entries_congruent(action[0], IntMatrix::identity(r), orders))
        throw NotAutomorphism("identity element must act as the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int p = s.star(a, b);
            if (p == Modification::zero) continue;
            if (!detail::entries_congruent(action[a] * action[b], action[p], orders))
                throw ActionIncompatible("action incompatible at s=" + std::to_string(a) +
                                         ", t=" + std::to_string(b) + " (s⋆t ≠ 0)");
        }

    ZeroModule out;
    out.sg = std::move(s);
    out.orders = std::move(orders);
    out.action_row.reserve(action.size());
    for (const IntMatrix& m : action) out.action_row.push_back(m.transposed());
    out.action = std::move(action);
    return out;
}

inline ZeroModule trivial_zero_module(Modification s, std::vector<Int> orders) {
    std::vector<IntMatrix> action(s.order(), IntMatrix::identity(static_cast<int>(orders.size())));
    return zero_module(std::move(s), std::move(orders), std::move(action));
}

// Same coefficients and action over a different modification of the same
// group (the compatibility condition only loosens when products are erased).
inline ZeroModule module_over(const ZeroModule& m, Modification s) {
    internal_check(*s.group == *m.sg.group, "module_over: modifications of different groups");
    return zero_module(std::move(s), m.orders, m.action);
}

// Restriction to a subgroup of the units, as a module over the full
// modification of that subgroup.
inline ZeroModule restrict_to_subgroup(const ZeroModule& m, const SubgroupView& sub) {
    std::vector<IntMatrix> action;
    action.reserve(sub.to_parent.size());
    for (int p : sub.to_parent) action.push_back(m.action[p]);
    return zero_module(canonical_modification(sub.group, ModKind::full), m.orders, std::move(action));
}

}  // namespace brm
