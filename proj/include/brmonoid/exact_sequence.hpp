#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brmonoid/cohomology.hpp"
#include "brmonoid/galois.hpp"

namespace brm {

enum class TransversalChoice { least, greatest };

// Coset representatives of U in S. The identity always represents U itself;
// every nonzero x factors uniquely as x = a ⋆ t with a a unit, t the rep.
struct Transversal {
    std::vector<int> rep_of_coset;                 // per quotient element
    std::vector<std::pair<int, int>> factorization;  // per parent element: (unit, rep)
};

inline Transversal make_transversal(const Modification& s, const UnitIdealSplit& split,
                                    const QuotientModification& quot,
                                    TransversalChoice choice = TransversalChoice::least) {
    const FiniteGroup& g = *s.group;
    int k = quot.quotient.order();
    Transversal t;
    t.rep_of_coset.assign(k, -1);
    for (int x = 0; x < g.order; ++x) {
        int c = quot.projection[x];
        int& rep = t.rep_of_coset[c];
        if (c == 0) { rep = 0; continue; }
        if (rep < 0 || (choice == TransversalChoice::least ? x < rep : x > rep)) rep = x;
    }
    t.factorization.resize(g.order);
    for (int x = 0; x < g.order; ++x) {
        int rep = t.rep_of_coset[quot.projection[x]];
        int a = g.mul(x, g.inv(rep));
        internal_check(std::binary_search(split.units.begin(), split.units.end(), a),
                       "transversal factorization left the unit group");
        internal_check(s.star(a, rep) == x, "transversal factorization does not recompose");
        t.factorization[x] = {a, rep};
    }
    return t;
}

// Everything verify/descend/lift need about one modification with a module:
// the unit split, quotient, transversal, the fixed-submodule coefficients of
// the quotient, and the three cohomology slices with φ and ψ between them.
struct ExactSequenceContext {
    ZeroModule module;  // over S
    UnitIdealSplit split;
    QuotientModification quot;
    Transversal trans;
    SubgroupView units_view;

    std::vector<Int> sub_orders;  // invariant factors of A^U
    IntMatrix embedding;          // sub_orders-coords -> A-coords (rows are generators)
    ZeroModule qmodule;           // A^U over S/U
    std::vector<std::vector<int>> conj;  // conj[unit subgroup index][x] = x⁻¹ a x

    CohomologySlice slice_s;   // H²₀(S, A)
    CohomologySlice slice_u2;  // H²(U, A)
    CohomologySlice slice_u1;  // H¹(U, A)
    CohomologySlice slice_q;   // H²₀(S/U, A^U)
    AbelianHom phi, psi;

    const Modification& s() const { return module.sg; }
};

namespace detail {

// A^U as invariant factors plus the embedding into A, computed from the
// lattice of vectors fixed by every unit.
inline void fixed_submodule(const ZeroModule& module, const UnitIdealSplit& split,
                            std::vector<Int>& sub_orders, IntMatrix& embedding) {
    int r = module.r();
    sub_orders.clear();
    if (r == 0) {
        embedding = IntMatrix(0, 0);
        return;
    }
    IntMatrix stacked(r, 0);
    std::vector<Int> mods;
    for (int u : split.units) {
        IntMatrix diff = module.action_row[u] - IntMatrix::identity(r);
        stacked = hstack(stacked, diff);
        for (const Int& m : module.orders) mods.push_back(m);
    }
    IntMatrix fixed = kernel_mod(stacked, mods);  // r×r, contains the order lattice
    std::vector<std::vector<Int>> rel;
    for (int j = 0; j < r; ++j) {
        std::vector<Int> row(r);
        row[j] = module.orders[j];
        auto c = back_substitute(fixed, row);
        internal_check(c.has_value(), "order lattice escaped the fixed lattice");
        rel.push_back(std::move(*c));
    }
    PresentedAbelianGroup pres = group_from_presentation(r, IntMatrix::from_rows(rel, r));
    internal_check(pres.is_finite(), "fixed submodule of a finite module must be finite");
    sub_orders = pres.invariant_factors;
    int rq = static_cast<int>(sub_orders.size());
    embedding = IntMatrix(rq, r);
    for (int i = 0; i < rq; ++i) {
        std::vector<Int> unit(rq);
        unit[i] = 1;
        std::vector<Int> gen = module.reduce(mul_row(pres.from_reported(unit), fixed));
        for (int j = 0; j < r; ++j) embedding.at(i, j) = gen[j];
    }
}

}  // namespace detail

inline ExactSequenceContext make_context(const ZeroModule& module,
                                         TransversalChoice choice = TransversalChoice::least) {
    ExactSequenceContext ctx;
    ctx.module = module;
    ctx.split = unit_group(module.sg);
    if (!units_normal(module.sg, ctx.split))
        throw NotNormal("exact-sequence verification requires normal units");
    ctx.quot = quotient_by_units(module.sg, ctx.split);
    ctx.trans = make_transversal(module.sg, ctx.split, ctx.quot, choice);
    ctx.units_view = subgroup_view(*module.sg.group, ctx.split.units);
    ctx.conj.resize(ctx.split.units.size());
    for (size_t i = 0; i < ctx.split.units.size(); ++i) {
        ctx.conj[i].resize(module.sg.order());
        for (int x = 0; x < module.sg.order(); ++x)
            ctx.conj[i][x] = conjugation_witness(module.sg, ctx.split, ctx.split.units[i], x);
    }

    detail::fixed_submodule(module, ctx.split, ctx.sub_orders, ctx.embedding);
    int rq = static_cast<int>(ctx.sub_orders.size());
    std::vector<IntMatrix> qaction;
    ModSolver sub_coords(ctx.embedding, module.orders);
    for (int c = 0; c < ctx.quot.quotient.order(); ++c) {
        int rep = ctx.trans.rep_of_coset[c];
        IntMatrix row_mat(rq, rq);
        for (int i = 0; i < rq; ++i) {
            std::vector<Int> img = module.act_row(rep, ctx.embedding.row(i));
            auto x = sub_coords.solve(img);
            internal_check(x.has_value(), "unit-fixed vector left the fixed submodule under the action");
            for (int j = 0; j < rq; ++j) row_mat.at(i, j) = mod_floor((*x)[j], ctx.sub_orders[j]);
        }
        qaction.push_back(row_mat.transposed());
    }
    ctx.qmodule = zero_module(ctx.quot.quotient, ctx.sub_orders, std::move(qaction));

    ZeroModule umod = restrict_to_subgroup(module, ctx.units_view);
    ctx.slice_s = cohomology(module, 2);
    ctx.slice_u2 = cohomology(umod, 2);
    ctx.slice_u1 = cohomology(umod, 1);
    ctx.slice_q = cohomology(ctx.qmodule, 2);
    ctx.phi = unit_restriction_map(ctx.slice_s, ctx.slice_u2, ctx.units_view);
    ctx.psi = inflation_map(ctx.slice_q, ctx.slice_s, ctx.embedding, ctx.quot.projection);
    return ctx;
}

inline ExactSequenceContext make_context(const GaloisModuleSpec& spec, const Modification& s,
                                         TransversalChoice choice = TransversalChoice::least) {
    return make_context(galois_zero_module(spec, s), choice);
}

// ---- the constructive descent f → g → h → h̄ from the proof ----

namespace detail {

struct DescendState {
    const ExactSequenceContext* ctx;
    int r;
    std::vector<Int> vals;  // current cochain over D₂(S), canonical residues

    std::vector<Int> at(int x, int y) const {
        int ti = ctx->slice_s.domain_n->index_of(std::vector<int>{x, y});
        std::vector<Int> out(r);
        for (int j = 0; j < r; ++j) out[j] = vals[static_cast<size_t>(ti) * r + j];
        return out;
    }
    bool zero_at(int x, int y) const {
        for (const Int& v : at(x, y))
            if (v != 0) return false;
        return true;
    }
    void subtract_coboundary(const std::vector<Int>& one_cochain) {
        std::vector<Int> shift = mul_row(one_cochain, ctx->slice_s.d_prev);
        for (size_t i = 0; i < vals.size(); ++i)
            vals[i] = mod_floor(vals[i] - shift[i], ctx->module.orders[i % r]);
    }
};

}  // namespace detail

// Push a 2-cocycle with [f] ∈ ker φ down to S/U following the proof steps:
// kill f on U×U, solve π_x(a) = (a−1)λ(x) with λ vanishing on U, absorb the
// transversal values through ρ(at) = g(a,t), then read h̄(Us,Ut) = h(s,t) in
// fixed-submodule coordinates.
inline Cochain descend_cocycle(const ExactSequenceContext& ctx, const Cochain& f) {
    const CohomologySlice& ss = ctx.slice_s;
    int r = ctx.module.r();
    if (!ss.is_cocycle(f)) throw NotACocycle("descend_cocycle: input is not a 2-cocycle over S");

    detail::DescendState st{&ctx, r, ctx.module.reduce(f.values)};
    const auto& units = ctx.split.units;
    const SubgroupView& uv = ctx.units_view;

    if (r > 0) {
        // (1) make f vanish on U×U; solvability is exactly [f] ∈ ker φ
        std::vector<Int> fu(static_cast<size_t>(ctx.slice_u2.domain_n->size()) * r);
        for (int ti = 0; ti < ctx.slice_u2.domain_n->size(); ++ti) {
            const auto& t = ctx.slice_u2.domain_n->tuples[ti];
            std::vector<Int> v = st.at(uv.to_parent[t[0]], uv.to_parent[t[1]]);
            for (int j = 0; j < r; ++j) fu[static_cast<size_t>(ti) * r + j] = v[j];
        }
        auto sigma_u = solve_mod(ctx.slice_u2.d_prev, ctx.slice_u2.orders_n, fu);
        if (!sigma_u) throw NotInKernelOfPhi("restriction of f to U×U is not a coboundary");
        // extend by zero off U; D₁(S) lists the tuple (x) at index x
        std::vector<Int> sigma(static_cast<size_t>(ss.d_prev.rows), 0);
        for (int a = 0; a < uv.group->order; ++a)
            for (int j = 0; j < r; ++j)
                sigma[static_cast<size_t>(uv.to_parent[a]) * r + j] =
                    (*sigma_u)[static_cast<size_t>(a) * r + j];
        st.subtract_coboundary(sigma);
        for (int a : units)
            for (int b : units)
                internal_check(st.zero_at(a, b), "descent step 1 failed to clear U×U");

        // (2) solve (a−1)·λ(x) = π_x(a) for every x in the nonzero ideal
        IntMatrix lam_system(r, 0);
        std::vector<Int> lam_mods;
        for (int a : units) {
            lam_system = hstack(lam_system, ctx.module.action_row[a] - IntMatrix::identity(r));
            for (const Int& m : ctx.module.orders) lam_mods.push_back(m);
        }
        ModSolver lam_solver(lam_system, lam_mods);
        std::vector<Int> lambda(static_cast<size_t>(ss.d_prev.rows), 0);
        for (int x : ctx.split.ideal_nonzero) {
            Cochain pix = zero_cochain(ctx.slice_u1.domain_n, r);
            std::vector<Int> rhs;
            for (int a : units) {
                int ax = ctx.conj[uv.from_parent[a]][x];
                std::vector<Int> fax = st.at(a, x), fxax = st.at(x, ax);
                int ui = ctx.slice_u1.domain_n->index_of(std::vector<int>{uv.from_parent[a]});
                for (int j = 0; j < r; ++j) {
                    Int v = mod_floor(fax[j] - fxax[j], ctx.module.orders[j]);
                    pix.values[static_cast<size_t>(ui) * r + j] = v;
                }
            }
            if (!ctx.slice_u1.is_cocycle(pix))
                throw DescentAssertionFailed("π_x is not a 1-cocycle of U at x = " + std::to_string(x));
            for (int a : units) {
                int ui = ctx.slice_u1.domain_n->index_of(std::vector<int>{uv.from_parent[a]});
                for (int j = 0; j < r; ++j) rhs.push_back(pix.values[static_cast<size_t>(ui) * r + j]);
            }
            auto lx = lam_solver.solve(rhs);
            if (!lx)
                throw HypothesisFailed("π_x is not a principal cocycle; H¹(U, A) must be nonzero");
            for (int j = 0; j < r; ++j) lambda[static_cast<size_t>(x) * r + j] = (*lx)[j];
        }
        st.subtract_coboundary(lambda);
        for (int a : units)
            for (int b : units)
                internal_check(st.zero_at(a, b), "descent step 2 disturbed U×U");
        for (int a : units)
            for (int x : ctx.split.ideal_nonzero) {
                int ax = ctx.conj[uv.from_parent[a]][x];
                if (st.at(a, x) != st.at(x, ax))
                    throw DescentAssertionFailed("g(a,x) = g(x,a_x) fails at a=" + std::to_string(a) +
                                                 ", x=" + std::to_string(x));
            }

        // (3) ρ(a·t) = g(a,t)
        std::vector<Int> rho(static_cast<size_t>(ss.d_prev.rows), 0);
        for (int y = 0; y < ctx.s().order(); ++y) {
            auto [a, t] = ctx.trans.factorization[y];
            std::vector<Int> v = st.at(a, t);
            for (int j = 0; j < r; ++j) rho[static_cast<size_t>(y) * r + j] = mod_floor(-v[j], ctx.module.orders[j]);
        }
        // h = g + ∂ρ (subtract_coboundary subtracts, so ρ was negated above)
        st.subtract_coboundary(rho);

        // (4) the proof's vanishing and invariance pattern
        for (int ti = 0; ti < ss.domain_n->size(); ++ti) {
            const auto& t = ss.domain_n->tuples[ti];
            bool unit_arg = uv.from_parent[t[0]] >= 0 || uv.from_parent[t[1]] >= 0;
            if (unit_arg && !st.zero_at(t[0], t[1]))
                throw DescentAssertionFailed("h does not vanish on unit arguments at tuple (" +
                                             std::to_string(t[0]) + "," + std::to_string(t[1]) + ")");
        }
        for (int ti = 0; ti < ss.domain_n->size(); ++ti) {
            const auto& t = ss.domain_n->tuples[ti];
            std::vector<Int> v = st.at(t[0], t[1]);
            for (int a : units) {
                if (ctx.module.act_row(a, v) != v)
                    throw DescentAssertionFailed("h value not U-fixed at tuple (" + std::to_string(t[0]) +
                                                 "," + std::to_string(t[1]) + ")");
                int ax = ctx.conj[uv.from_parent[a]][t[0]];
                int a_x_y = ctx.module.sg.star(ax, t[1]);
                internal_check(a_x_y != Modification::zero, "a_x·y vanished unexpectedly");
                if (st.at(ctx.s().group->mul(a, t[0]), t[1]) != v ||
                    st.at(t[0], a_x_y) != v)
                    throw DescentAssertionFailed("h is not constant on unit cosets at tuple (" +
                                                 std::to_string(t[0]) + "," + std::to_string(t[1]) + ")");
            }
        }
    }

    // (5) h̄(Us, Ut) = h(s, t) in fixed-submodule coordinates
    int rq = static_cast<int>(ctx.sub_orders.size());
    Cochain hbar = zero_cochain(ctx.slice_q.domain_n, rq);
    ModSolver sub_coords(ctx.embedding, ctx.module.orders);
    for (int ti = 0; ti < ctx.slice_q.domain_n->size(); ++ti) {
        const auto& t = ctx.slice_q.domain_n->tuples[ti];
        std::vector<Int> v = st.at(ctx.trans.rep_of_coset[t[0]], ctx.trans.rep_of_coset[t[1]]);
        auto x = sub_coords.solve(v);
        if (!x) throw DescentAssertionFailed("h value is not in the fixed submodule");
        for (int j = 0; j < rq; ++j)
            hbar.values[static_cast<size_t>(ti) * rq + j] = mod_floor((*x)[j], ctx.sub_orders[j]);
    }
    if (!ctx.slice_q.is_cocycle(hbar))
        throw DescentAssertionFailed("descended cochain is not a cocycle over S/U");
    return hbar;
}

// The proof's inverse map: normalize h̄ so coset-identity arguments vanish,
// then pull back through the projection and the coefficient embedding.
inline Cochain lift_cocycle(const ExactSequenceContext& ctx, const Cochain& hbar_in) {
    const CohomologySlice& sq = ctx.slice_q;
    int rq = static_cast<int>(ctx.sub_orders.size());
    int r = ctx.module.r();
    if (!sq.is_cocycle(hbar_in)) throw NotACocycle("lift_cocycle: input is not a 2-cocycle over S/U");

    Cochain hbar = hbar_in;
    if (rq > 0) {
        std::vector<Int> at_ee = hbar.value(sq.domain_n->index_of(std::vector<int>{0, 0}));
        bool zero = true;
        for (const Int& v : at_ee) zero = zero && v == 0;
        if (!zero) {
            std::vector<Int> gamma(static_cast<size_t>(sq.d_prev.rows), 0);
            for (int j = 0; j < rq; ++j) gamma[j] = at_ee[j];  // supported on coset U (index 0)
            std::vector<Int> shift = mul_row(gamma, sq.d_prev);
            for (size_t i = 0; i < hbar.values.size(); ++i)
                hbar.values[i] = mod_floor(hbar.values[i] - shift[i], ctx.sub_orders[i % rq]);
        }
        for (int ti = 0; ti < sq.domain_n->size(); ++ti) {
            const auto& t = sq.domain_n->tuples[ti];
            if (t[0] != 0 && t[1] != 0) continue;
            for (int j = 0; j < rq; ++j)
                internal_check(hbar.values[static_cast<size_t>(ti) * rq + j] == 0,
                               "normalization failed on a coset-identity tuple");
        }
    }

    Cochain h = zero_cochain(ctx.slice_s.domain_n, r);
    for (int ti = 0; ti < ctx.slice_s.domain_n->size(); ++ti) {
        const auto& t = ctx.slice_s.domain_n->tuples[ti];
        std::vector<int> qt{ctx.quot.projection[t[0]], ctx.quot.projection[t[1]]};
        std::vector<Int> v = mul_row(hbar.value(sq.domain_n->index_of(qt)), ctx.embedding);
        for (int j = 0; j < r; ++j)
            h.values[static_cast<size_t>(ti) * r + j] = mod_floor(v[j], ctx.module.orders[j]);
    }
    if (!ctx.slice_s.is_cocycle(h)) throw LiftNotCocycle("lifted cochain is not a cocycle over S");
    for (int a : ctx.split.units)
        for (int b : ctx.split.units) {
            int ti = ctx.slice_s.domain_n->index_of(std::vector<int>{a, b});
            for (int j = 0; j < r; ++j)
                internal_check(h.values[static_cast<size_t>(ti) * r + j] == 0,
                               "lift is nonzero on U×U");
        }
    return h;
}

// ---- verdicts ----

struct ExactnessReport {
    int modification_id = -1;
    bool hypothesis_h1 = false;  // H¹(U, A) = 0
    bool psi_injective = false;
    bool image_psi_equals_kernel_phi = false;
    std::vector<Int> h2_of_U;
    std::vector<Int> component_invariants;
    std::vector<Int> quotient_component_invariants;
    enum class Verdict { pass, fail, hypothesis_not_met } verdict = Verdict::fail;

    std::string verdict_str() const {
        switch (verdict) {
            case Verdict::pass: return "pass";
            case Verdict::fail: return "fail";
            default: return "hypothesis-not-met";
        }
    }
};

inline ExactnessReport verify_exact_sequence(const ExactSequenceContext& ctx) {
    ExactnessReport rep;
    rep.hypothesis_h1 = ctx.slice_u1.group.is_trivial();
    rep.h2_of_U = ctx.slice_u2.group.invariant_factors;
    rep.component_invariants = ctx.slice_s.group.invariant_factors;
    rep.quotient_component_invariants = ctx.slice_q.group.invariant_factors;

    HomAnalysis an_psi = hom_analysis(ctx.psi);
    HomAnalysis an_phi = hom_analysis(ctx.phi);
    rep.psi_injective = an_psi.injective;
    rep.image_psi_equals_kernel_phi =
        subgroups_equal(ctx.psi.matrix, an_phi.kernel_generators, ctx.slice_s.group);

    if (!rep.hypothesis_h1)
        rep.verdict = ExactnessReport::Verdict::hypothesis_not_met;
    else
        rep.verdict = rep.psi_injective && rep.image_psi_equals_kernel_phi
                          ? ExactnessReport::Verdict::pass
                          : ExactnessReport::Verdict::fail;
    return rep;
}

struct HypothesisChecks {
    bool h1_trivial = false;
    bool h2_of_units_trivial = false;
};

inline HypothesisChecks hypothesis_checks(const ExactSequenceContext& ctx) {
    return HypothesisChecks{ctx.slice_u1.group.is_trivial(), ctx.slice_u2.group.is_trivial()};
}

struct CorollaryReport {
    std::vector<Int> lhs_factors;  // H²₀(S, L^×)
    std::vector<Int> rhs_factors;  // H²₀(S/U, P^×)
    bool factors_equal = false;
    bool psi_injective = false;
    bool psi_surjective = false;

    bool holds() const { return factors_equal && psi_injective && psi_surjective; }
};

inline CorollaryReport verify_corollary(const ExactSequenceContext& ctx) {
    CorollaryReport rep;
    rep.lhs_factors = ctx.slice_s.group.invariant_factors;
    rep.rhs_factors = ctx.slice_q.group.invariant_factors;
    rep.factors_equal = rep.lhs_factors == rep.rhs_factors;
    HomAnalysis an = hom_analysis(ctx.psi);
    rep.psi_injective = an.injective;
    rep.psi_surjective = an.image.is_finite() && an.image.order() == ctx.slice_s.group.order();
    return rep;
}

inline CorollaryReport verify_corollary(const GaloisModuleSpec& spec, const Modification& s) {
    return verify_corollary(make_context(spec, s));
}

// Round-trip checks: descend∘lift and lift∘descend act as the identity on
// classes (ker φ on one side, H²₀(S/U, A^U) on the other), and the ψ matrix
// equals the map induced by lift_cocycle representative by representative.
struct RoundTripReport {
    int kernel_generators_checked = 0;
    int quotient_generators_checked = 0;
    bool ok = true;
};

inline RoundTripReport verify_descent_lift_roundtrip(const ExactSequenceContext& ctx) {
    RoundTripReport rep;
    HomAnalysis an_phi = hom_analysis(ctx.phi);
    for (int i = 0; i < an_phi.kernel_generators.rows; ++i) {
        std::vector<Int> coords = ctx.slice_s.group.canonical_coords(an_phi.kernel_generators.row(i));
        Cochain z = cochain_from_class(ctx.slice_s, coords);
        Cochain down = descend_cocycle(ctx, z);
        Cochain back = lift_cocycle(ctx, down);
        if (class_coordinates(ctx.slice_s, back) != coords) rep.ok = false;
        ++rep.kernel_generators_checked;
    }
    for (size_t i = 0; i < ctx.slice_q.representatives.size(); ++i) {
        const Cochain& hbar = ctx.slice_q.representatives[i];
        Cochain h = lift_cocycle(ctx, hbar);
        std::vector<Int> unit(ctx.slice_q.representatives.size(), 0);
        unit[i] = 1;
        if (class_coordinates(ctx.slice_q, descend_cocycle(ctx, h)) != unit) rep.ok = false;
        // lift-induced coordinates must reproduce the ψ matrix row
        std::vector<Int> via_lift = class_coordinates(ctx.slice_s, h);
        std::vector<Int> via_psi = ctx.slice_s.group.canonical_coords(ctx.psi.matrix.row(static_cast<int>(i)));
        if (via_lift != via_psi) rep.ok = false;
        ++rep.quotient_generators_checked;
    }
    return rep;
}

}  // namespace brm
