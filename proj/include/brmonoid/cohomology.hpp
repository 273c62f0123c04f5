#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "brmonoid/zero_module.hpp"

namespace brm {

// Tuples of nonzero elements whose ⋆-product is nonzero, in lexicographic
// order; the common domain of all n-dimensional 0-cochains.
struct CochainDomain {
    int n = 0;
    std::vector<std::vector<int>> tuples;

    int size() const { return static_cast<int>(tuples.size()); }

    int index_of(const std::vector<int>& t) const {
        auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
        internal_check(it != tuples.end() && *it == t, "tuple not in cochain domain");
        return static_cast<int>(it - tuples.begin());
    }
};

using DomainPtr = std::shared_ptr<const CochainDomain>;

inline DomainPtr domain(const Modification& s, int n) {
    if (n < 0) throw DimensionUnsupported("cochain dimension must be >= 0");
    auto d = std::make_shared<CochainDomain>();
    d->n = n;
    std::vector<int> cur(n);
    // lexicographic depth-first walk with the running product; zero absorbs,
    // so a zero prefix can be pruned
    auto rec = [&](auto&& self, int depth, int prefix) -> void {
        if (depth == n) {
            d->tuples.push_back(cur);
            return;
        }
        for (int e = 0; e < s.order(); ++e) {
            int p = depth == 0 ? e : s.star(prefix, e);
            if (p == Modification::zero) continue;
            cur[depth] = e;
            self(self, depth + 1, p);
        }
    };
    rec(rec, 0, 0);
    return d;
}

// Values of one 0-cochain: a coefficient row per domain tuple, flattened.
struct Cochain {
    DomainPtr dom;
    int r = 0;
    std::vector<Int> values;  // dom->size() * r entries, canonical residues

    std::vector<Int> value(int tuple_index) const {
        return std::vector<Int>(values.begin() + static_cast<size_t>(tuple_index) * r,
                                values.begin() + static_cast<size_t>(tuple_index + 1) * r);
    }
};

inline Cochain zero_cochain(DomainPtr dom, int r) {
    Cochain c;
    c.r = r;
    c.values.assign(static_cast<size_t>(dom->size()) * r, Int(0));
    c.dom = std::move(dom);
    return c;
}

inline std::vector<Int> flat_orders(const std::vector<Int>& orders, int tuples) {
    std::vector<Int> out(static_cast<size_t>(tuples) * orders.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = orders[i % orders.size()];
    return out;
}

// Matrix of ∂ⁿ from Cⁿ to Cⁿ⁺¹ coordinates (cochains are row vectors).
// ∂ⁿf(s₁,…,s_{n+1}) = s₁f(s₂,…) + Σᵢ(−1)ⁱ f(…,sᵢs_{i+1},…) + (−1)ⁿ⁺¹f(s₁,…,sₙ)
inline IntMatrix coboundary_matrix(const ZeroModule& mod, int n, const CochainDomain& dn,
                                   const CochainDomain& dn1) {
    int r = mod.r();
    IntMatrix d(dn.size() * r, dn1.size() * r);
    std::vector<int> sub;
    for (int ti = 0; ti < dn1.size(); ++ti) {
        const std::vector<int>& t = dn1.tuples[ti];
        // action term: s₁ · f(s₂,…,s_{n+1})
        sub.assign(t.begin() + 1, t.end());
        int src = dn.index_of(sub);
        const IntMatrix& act = mod.action[t[0]];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) d.at(src * r + j, ti * r + i) += act.at(i, j);
        // merged terms, sign (−1)^(p+1) for merging positions p, p+1
        for (int p = 0; p < n; ++p) {
            sub.assign(t.begin(), t.end());
            sub[p] = mod.sg.star(t[p], t[p + 1]);
            internal_check(sub[p] != Modification::zero, "sub-product vanished inside a live tuple");
            sub.erase(sub.begin() + p + 1);
            src = dn.index_of(sub);
            int sign = (p % 2 == 0) ? -1 : 1;
            for (int j = 0; j < r; ++j) d.at(src * r + j, ti * r + j) += sign;
        }
        // truncation term, sign (−1)^(n+1)
        sub.assign(t.begin(), t.end() - 1);
        src = dn.index_of(sub);
        int sign = (n % 2 == 0) ? -1 : 1;
        for (int j = 0; j < r; ++j) d.at(src * r + j, ti * r + j) += sign;
    }
    return d;
}

inline IntMatrix coboundary_matrix(const ZeroModule& mod, int n) {
    auto dn = domain(mod.sg, n);
    auto dn1 = domain(mod.sg, n + 1);
    return coboundary_matrix(mod, n, *dn, *dn1);
}

// One cohomology dimension with everything needed to locate classes: the
// coboundary matrices, the group in invariant factors, representative
// cocycles, and the cocycle-lattice basis used to express arbitrary cocycles.
struct CohomologySlice {
    int n = 0;
    ZeroModule module;
    DomainPtr domain_n, domain_n1;
    IntMatrix d_prev, d_n;  // ∂ⁿ⁻¹ (0×N for n = 0) and ∂ⁿ
    PresentedAbelianGroup group;
    std::vector<Cochain> representatives;

    // internals
    IntMatrix zbasis;            // HNF basis of {f : f·d_n ≡ 0 mod orders}
    PresentedAbelianGroup raw;   // cocycles mod coboundaries on zbasis coordinates
    std::vector<Int> orders_n, orders_n1;

    bool is_cocycle(const Cochain& z) const {
        if (z.r != module.r() || z.dom->size() != domain_n->size() || z.dom->n != n) return false;
        std::vector<Int> img = mul_row(z.values, d_n);
        for (size_t i = 0; i < img.size(); ++i)
            if (mod_floor(img[i], orders_n1[i]) != 0) return false;
        return true;
    }
};

namespace detail {

// shift a 2-cocycle by a coboundary so every value on a tuple containing the
// identity vanishes (γ is supported on the identity alone)
inline Cochain normalize_square_cocycle(const ZeroModule& mod, const CochainDomain& d1,
                                        const CochainDomain& d2, const IntMatrix& d1mat, Cochain z) {
    int r = mod.r();
    std::vector<int> ee{0, 0};
    std::vector<Int> at_ee = z.value(d2.index_of(ee));
    bool zero = true;
    for (const Int& v : at_ee) zero = zero && v == 0;
    if (!zero) {
        std::vector<Int> gamma(static_cast<size_t>(d1.size()) * r);
        int e1 = d1.index_of(std::vector<int>{0});
        for (int j = 0; j < r; ++j) gamma[e1 * r + j] = at_ee[j];
        std::vector<Int> shift = mul_row(gamma, d1mat);
        for (size_t i = 0; i < z.values.size(); ++i)
            z.values[i] = mod_floor(z.values[i] - shift[i], mod.orders[i % r]);
    }
    for (int ti = 0; ti < d2.size(); ++ti) {
        const auto& t = d2.tuples[ti];
        if (t[0] != 0 && t[1] != 0) continue;
        for (int j = 0; j < r; ++j)
            internal_check(z.values[static_cast<size_t>(ti) * r + j] == 0,
                           "representative normalization failed on an identity tuple");
    }
    return z;
}

}  // namespace detail

inline CohomologySlice cohomology(const ZeroModule& mod, int n) {
    if (n < 0) throw DimensionUnsupported("cohomology dimension must be >= 0");
    CohomologySlice slice;
    slice.n = n;
    slice.module = mod;
    slice.domain_n = domain(mod.sg, n);
    slice.domain_n1 = domain(mod.sg, n + 1);
    int r = mod.r();
    if (static_cast<long long>(slice.domain_n1->size()) * r > 500000)
        throw DimensionUnsupported("cochain space too large in dimension " + std::to_string(n + 1));
    slice.orders_n = flat_orders(mod.orders, slice.domain_n->size());
    slice.orders_n1 = flat_orders(mod.orders, slice.domain_n1->size());
    slice.d_n = coboundary_matrix(mod, n, *slice.domain_n, *slice.domain_n1);
    int nn = slice.domain_n->size() * r;
    DomainPtr dnm1;
    if (n >= 1) {
        dnm1 = domain(mod.sg, n - 1);
        slice.d_prev = coboundary_matrix(mod, n - 1, *dnm1, *slice.domain_n);
    } else {
        slice.d_prev = IntMatrix(0, nn);
    }

    slice.zbasis = ModSolver(slice.d_n, slice.orders_n1).kernel();

    // coboundary + coefficient-order relations, in zbasis coordinates
    std::vector<std::vector<Int>> rel;
    for (int i = 0; i < slice.d_prev.rows; ++i) {
        auto c = back_substitute(slice.zbasis, slice.d_prev.row(i));
        internal_check(c.has_value(), "coboundary outside the cocycle lattice (∂² ≠ 0?)");
        rel.push_back(std::move(*c));
    }
    for (int i = 0; i < nn; ++i) {
        std::vector<Int> row(nn);
        row[i] = slice.orders_n[i];
        auto c = back_substitute(slice.zbasis, row);
        internal_check(c.has_value(), "order relation outside the cocycle lattice");
        rel.push_back(std::move(*c));
    }
    slice.raw = group_from_presentation(slice.zbasis.rows, IntMatrix::from_rows(rel, slice.zbasis.rows));
    internal_check(slice.raw.is_finite(), "cohomology of a finite module must be finite");
    slice.group = cyclic_sum_group(slice.raw.invariant_factors);

    int k = slice.raw.reported_rank();
    for (int i = 0; i < k; ++i) {
        std::vector<Int> unit(k);
        unit[i] = 1;
        Cochain rep;
        rep.dom = slice.domain_n;
        rep.r = r;
        rep.values = mod.reduce(mul_row(slice.raw.from_reported(unit), slice.zbasis));
        if (n == 2 && dnm1)
            rep = detail::normalize_square_cocycle(mod, *dnm1, *slice.domain_n, slice.d_prev, std::move(rep));
        slice.representatives.push_back(std::move(rep));
    }
    return slice;
}

// Coordinates of a cocycle's class in the slice's invariant-factor generators.
inline std::vector<Int> class_coordinates(const CohomologySlice& slice, const Cochain& z) {
    if (!slice.is_cocycle(z)) throw NotACocycle("class_coordinates: not a cocycle of this slice");
    auto x = back_substitute(slice.zbasis, z.values);
    internal_check(x.has_value(), "cocycle not in the cocycle lattice");
    return slice.raw.canonical_coords(*x);
}

inline Cochain cochain_from_class(const CohomologySlice& slice, const std::vector<Int>& coords) {
    internal_check(coords.size() == slice.group.invariant_factors.size(),
                   "cochain_from_class: wrong coordinate count");
    Cochain out = zero_cochain(slice.domain_n, slice.module.r());
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = 0; j < out.values.size(); ++j)
            out.values[j] += coords[i] * slice.representatives[i].values[j];
    out.values = slice.module.reduce(std::move(out.values));
    return out;
}

// Classical group cohomology Hⁿ(G, A) through the adjoined-zero modification:
// the 0-complex of G⁰ is literally the bar complex of G.
inline CohomologySlice group_cohomology(GroupPtr g, std::vector<Int> orders,
                                        std::vector<IntMatrix> action, int n) {
    ZeroModule m = zero_module(canonical_modification(std::move(g), ModKind::full), std::move(orders),
                               std::move(action));
    return cohomology(m, n);
}

// ---- independent oracle ----

struct BruteForceCohomology {
    Int order;
    std::vector<Int> element_orders;  // one per class, sorted
};

// Exhaustive 0-cohomology by direct enumeration; evaluates the coboundary
// formula tuple by tuple and never touches the lattice machinery.
inline BruteForceCohomology brute_force_cohomology(const ZeroModule& mod, int n, long long budget) {
    if (n < 0 || n > 2) throw DimensionUnsupported("brute_force_cohomology supports n <= 2");
    int r = mod.r();
    auto dn = domain(mod.sg, n);
    auto dn1 = domain(mod.sg, n + 1);
    DomainPtr dnm1 = n >= 1 ? domain(mod.sg, n - 1) : nullptr;

    std::vector<long long> mods(static_cast<size_t>(dn->size()) * r);
    for (size_t i = 0; i < mods.size(); ++i) {
        internal_check(mod.orders[i % r] <= Int(1) << 31, "coefficient order too large for the oracle");
        mods[i] = static_cast<long long>(mod.orders[i % r]);
    }
    Int total = 1;
    for (long long m : mods) {
        total *= m;
        if (total > budget)
            throw BudgetExceeded("cochain count exceeds budget " + std::to_string(budget));
    }

    auto act = [&](int s, std::vector<long long> v) {
        std::vector<long long> out(r, 0);
        const IntMatrix& m = mod.action[s];
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j)
                out[i] += static_cast<long long>(mod_floor(m.at(i, j), mod.orders[i])) * v[j];
            out[i] %= static_cast<long long>(mod.orders[i]);
        }
        return out;
    };
    // ∂ of an f over `from`, evaluated over `to` straight from the formula
    auto coboundary = [&](const std::vector<long long>& f, const CochainDomain& from,
                          const CochainDomain& to, int dim) {
        std::vector<long long> out(static_cast<size_t>(to.size()) * r, 0);
        std::vector<int> sub;
        for (int ti = 0; ti < to.size(); ++ti) {
            const auto& t = to.tuples[ti];
            std::vector<long long> acc(r, 0);
            sub.assign(t.begin() + 1, t.end());
            {
                int src = from.index_of(sub);
                std::vector<long long> v(f.begin() + static_cast<size_t>(src) * r,
                                         f.begin() + static_cast<size_t>(src + 1) * r);
                v = act(t[0], std::move(v));
                for (int j = 0; j < r; ++j) acc[j] += v[j];
            }
            for (int p = 0; p < dim; ++p) {
                sub.assign(t.begin(), t.end());
                sub[p] = mod.sg.star(t[p], t[p + 1]);
                sub.erase(sub.begin() + p + 1);
                int src = from.index_of(sub);
                int sign = (p % 2 == 0) ? -1 : 1;
                for (int j = 0; j < r; ++j) acc[j] += sign * f[static_cast<size_t>(src) * r + j];
            }
            {
                sub.assign(t.begin(), t.end() - 1);
                int src = from.index_of(sub);
                int sign = (dim % 2 == 0) ? -1 : 1;
                for (int j = 0; j < r; ++j) acc[j] += sign * f[static_cast<size_t>(src) * r + j];
            }
            for (int j = 0; j < r; ++j) {
                long long m = static_cast<long long>(mod.orders[j]);
                out[static_cast<size_t>(ti) * r + j] = ((acc[j] % m) + m) % m;
            }
        }
        return out;
    };

    auto enumerate = [&](const CochainDomain& dom_, auto&& fn) {
        std::vector<long long> f(static_cast<size_t>(dom_.size()) * r, 0);
        std::vector<long long> lim(f.size());
        for (size_t i = 0; i < f.size(); ++i) lim[i] = static_cast<long long>(mod.orders[i % r]);
        for (;;) {
            fn(f);
            size_t i = 0;
            while (i < f.size() && ++f[i] == lim[i]) f[i++] = 0;
            if (i == f.size()) break;
        }
    };

    std::set<std::vector<long long>> coboundaries;
    if (n == 0) {
        coboundaries.insert(std::vector<long long>(static_cast<size_t>(dn->size()) * r, 0));
    } else {
        enumerate(*dnm1, [&](const std::vector<long long>& g) {
            coboundaries.insert(coboundary(g, *dnm1, *dn, n - 1));
        });
    }
    std::vector<std::vector<long long>> cocycles;
    enumerate(*dn, [&](const std::vector<long long>& f) {
        auto img = coboundary(f, *dn, *dn1, n);
        for (long long v : img)
            if (v != 0) return;
        cocycles.push_back(f);
    });

    internal_check(cocycles.size() % coboundaries.size() == 0, "coboundaries do not divide cocycles");
    BruteForceCohomology out;
    out.order = Int(cocycles.size() / coboundaries.size());

    std::set<std::vector<long long>> visited;
    for (const auto& z : cocycles) {
        if (visited.count(z)) continue;
        for (const auto& b : coboundaries) {
            std::vector<long long> zb(z.size());
            for (size_t i = 0; i < z.size(); ++i) zb[i] = (z[i] + b[i]) % mods[i];
            visited.insert(std::move(zb));
        }
        long long k = 1;
        for (;;) {
            std::vector<long long> kz(z.size());
            for (size_t i = 0; i < z.size(); ++i) kz[i] = (z[i] * k) % mods[i];
            if (coboundaries.count(kz)) break;
            ++k;
            internal_check(k <= (long long)1 << 40, "element order runaway");
        }
        out.element_orders.push_back(Int(k));
    }
    std::sort(out.element_orders.begin(), out.element_orders.end());
    return out;
}

// Element-order multiset of a finite presented group (for oracle comparison).
inline std::vector<Int> element_orders(const PresentedAbelianGroup& g, long long limit = 2000000) {
    internal_check(g.is_finite() && g.order() <= limit, "element_orders: group too large");
    std::vector<Int> out;
    std::vector<Int> c(g.invariant_factors.size(), 0);
    for (;;) {
        Int ord = 1;
        for (size_t i = 0; i < c.size(); ++i) {
            Int d = g.invariant_factors[i];
            ord = lcm_int(ord, d / gcd_int(d, c[i]));
        }
        out.push_back(ord);
        size_t i = 0;
        while (i < c.size() && ++c[i] == g.invariant_factors[i]) c[i++] = 0;
        if (i == c.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- induced maps on cohomology ----

// ε_{T,S} for S ≺ T: restriction of cochains along D(S) ⊆ D(T).
inline AbelianHom restriction_map(const CohomologySlice& slice_t, const CohomologySlice& slice_s) {
    const Modification& s = slice_s.module.sg;
    const Modification& t = slice_t.module.sg;
    if (!s.same_group(t) || !is_preceq(s, t))
        throw NotComparable("restriction_map requires S ≺ T over one group");
    internal_check(slice_s.n == slice_t.n, "restriction_map: dimension mismatch");
    int r = slice_t.module.r();
    std::vector<std::vector<Int>> rows;
    for (const Cochain& rep : slice_t.representatives) {
        Cochain restricted = zero_cochain(slice_s.domain_n, r);
        for (int ti = 0; ti < slice_s.domain_n->size(); ++ti) {
            int src = slice_t.domain_n->index_of(slice_s.domain_n->tuples[ti]);
            for (int j = 0; j < r; ++j)
                restricted.values[static_cast<size_t>(ti) * r + j] =
                    rep.values[static_cast<size_t>(src) * r + j];
        }
        rows.push_back(class_coordinates(slice_s, restricted));
    }
    return make_hom(slice_t.group, slice_s.group,
                    IntMatrix::from_rows(rows, slice_s.group.rank));
}

// φ: restriction of H²₀(S, A) to the unit subgroup (slice_u is the classical
// cohomology of U with the restricted action).
inline AbelianHom unit_restriction_map(const CohomologySlice& slice_s, const CohomologySlice& slice_u,
                                       const SubgroupView& units) {
    int r = slice_s.module.r();
    internal_check(slice_u.module.r() == r, "unit_restriction_map: coefficient mismatch");
    std::vector<std::vector<Int>> rows;
    for (const Cochain& rep : slice_s.representatives) {
        Cochain restricted = zero_cochain(slice_u.domain_n, r);
        std::vector<int> parent_tuple(slice_s.n);
        for (int ti = 0; ti < slice_u.domain_n->size(); ++ti) {
            const auto& t = slice_u.domain_n->tuples[ti];
            for (int p = 0; p < slice_u.domain_n->n; ++p) parent_tuple[p] = units.to_parent[t[p]];
            int src = slice_s.domain_n->index_of(parent_tuple);
            for (int j = 0; j < r; ++j)
                restricted.values[static_cast<size_t>(ti) * r + j] =
                    rep.values[static_cast<size_t>(src) * r + j];
        }
        rows.push_back(class_coordinates(slice_u, restricted));
    }
    return make_hom(slice_s.group, slice_u.group,
                    IntMatrix::from_rows(rows, slice_u.group.rank));
}

// ψ: inflation along S → S/U combined with a coefficient embedding. Each
// representative over the quotient is pulled back on all nonzero tuples.
inline AbelianHom inflation_map(const CohomologySlice& slice_q, const CohomologySlice& slice_s,
                                const IntMatrix& embedding, const std::vector<int>& projection) {
    int rq = slice_q.module.r(), rs = slice_s.module.r();
    if (embedding.rows != rq || embedding.cols != rs)
        throw DimensionMismatch("inflation_map: embedding must be r_quot × r_full");
    std::vector<std::vector<Int>> rows;
    for (const Cochain& rep : slice_q.representatives) {
        Cochain lifted = zero_cochain(slice_s.domain_n, rs);
        std::vector<int> qt(slice_s.n);
        for (int ti = 0; ti < slice_s.domain_n->size(); ++ti) {
            const auto& t = slice_s.domain_n->tuples[ti];
            for (int p = 0; p < slice_s.n; ++p) qt[p] = projection[t[p]];
            std::vector<Int> v = mul_row(rep.value(slice_q.domain_n->index_of(qt)), embedding);
            for (int j = 0; j < rs; ++j)
                lifted.values[static_cast<size_t>(ti) * rs + j] = mod_floor(v[j], slice_s.module.orders[j]);
        }
        if (!slice_s.is_cocycle(lifted))
            throw LiftNotCocycle("inflated representative is not a cocycle");
        rows.push_back(class_coordinates(slice_s, lifted));
    }
    return make_hom(slice_q.group, slice_s.group,
                    IntMatrix::from_rows(rows, slice_s.group.rank));
}

}  // namespace brm
