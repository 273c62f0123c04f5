#pragma once

#include <string>
#include <vector>

#include "brmonoid/int_matrix.hpp"
#include "brmonoid/lattice.hpp"

namespace brm {

// Finitely generated abelian group Z^rank / rowspan(relations). Elements are
// row vectors in generator coordinates; the Smith transforms convert to
// invariant-factor ("smith") coordinates where the group reads off as
// ⊕ Z/d_i with a divisibility chain, zeros meaning free summands.
struct PresentedAbelianGroup {
    int rank = 0;
    IntMatrix relations;
    std::vector<Int> invariant_factors;  // the d_i >= 2, chain order
    int free_rank = 0;
    IntMatrix to_smith, from_smith;      // v_gen * to_smith = v_smith
    std::vector<Int> smith_diag;         // per smith coordinate, 0 = free
    std::vector<int> reported_cols;      // smith column per reported generator

    int reported_rank() const { return static_cast<int>(invariant_factors.size()) + free_rank; }
    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return reported_rank() == 0; }

    Int order() const {
        internal_check(is_finite(), "order() on an infinite group");
        Int o = 1;
        for (const Int& d : invariant_factors) o *= d;
        return o;
    }

    // Canonical coordinates of [v]: one entry per reported generator, torsion
    // entries reduced into [0, d_i).
    std::vector<Int> canonical_coords(const std::vector<Int>& v_gen) const {
        if (static_cast<int>(v_gen.size()) != rank)
            throw DimensionMismatch("canonical_coords: wrong length");
        std::vector<Int> w = mul_row(v_gen, to_smith);
        std::vector<Int> out;
        out.reserve(reported_cols.size());
        for (int col : reported_cols) {
            const Int& d = smith_diag[col];
            out.push_back(d == 0 ? w[col] : mod_floor(w[col], d));
        }
        return out;
    }

    bool is_zero_element(const std::vector<Int>& v_gen) const {
        for (const Int& c : canonical_coords(v_gen))
            if (c != 0) return false;
        return true;
    }

    // Generator-coordinate representative of reported coordinates.
    std::vector<Int> from_reported(const std::vector<Int>& coords) const {
        if (coords.size() != reported_cols.size())
            throw DimensionMismatch("from_reported: wrong length");
        std::vector<Int> w(rank);
        for (size_t i = 0; i < coords.size(); ++i) w[reported_cols[i]] = coords[i];
        return mul_row(w, from_smith);
    }

    friend bool operator==(const PresentedAbelianGroup&, const PresentedAbelianGroup&) = default;
};

inline PresentedAbelianGroup group_from_presentation(int rank, const IntMatrix& relations) {
    if (relations.rows > 0 && relations.cols != rank)
        throw DimensionMismatch("group_from_presentation: relations must have `rank` columns");
    PresentedAbelianGroup g;
    g.rank = rank;
    g.relations = relations.rows > 0 ? relations : IntMatrix(0, rank);

    SmithDecomposition s = snf(g.relations);
    g.to_smith = std::move(s.right);
    g.from_smith = std::move(s.right_inv);
    if (rank == 0) { g.to_smith = IntMatrix(0, 0); g.from_smith = IntMatrix(0, 0); }

    g.smith_diag.assign(rank, 0);
    for (size_t i = 0; i < s.diag.size() && static_cast<int>(i) < rank; ++i) g.smith_diag[i] = s.diag[i];
    for (int i = 0; i < rank; ++i)
        if (g.smith_diag[i] >= 2) {
            g.invariant_factors.push_back(g.smith_diag[i]);
            g.reported_cols.push_back(i);
        }
    for (int i = 0; i < rank; ++i)
        if (g.smith_diag[i] == 0) {
            ++g.free_rank;
            g.reported_cols.push_back(i);
        }
    return g;
}

inline PresentedAbelianGroup cyclic_sum_group(const std::vector<Int>& factors) {
    return group_from_presentation(static_cast<int>(factors.size()), IntMatrix::diagonal(factors));
}

inline PresentedAbelianGroup trivial_group() { return group_from_presentation(0, IntMatrix(0, 0)); }

// Homomorphism between presented groups: v ↦ v * matrix on generator
// coordinates. Well-definedness (relations land in relations) is checked.
struct AbelianHom {
    PresentedAbelianGroup source, target;
    IntMatrix matrix;  // source.rank × target.rank

    std::vector<Int> apply_gen(const std::vector<Int>& v) const { return mul_row(v, matrix); }
    std::vector<Int> apply_reported(const std::vector<Int>& coords) const {
        return target.canonical_coords(mul_row(source.from_reported(coords), matrix));
    }
};

inline AbelianHom make_hom(PresentedAbelianGroup source, PresentedAbelianGroup target, IntMatrix matrix) {
    if (matrix.rows != source.rank || matrix.cols != target.rank)
        throw DimensionMismatch("make_hom: matrix shape must be source.rank × target.rank");
    for (int i = 0; i < source.relations.rows; ++i)
        if (!target.is_zero_element(mul_row(source.relations.row(i), matrix)))
            throw IllDefined("make_hom: matrix does not respect source relations (row " + std::to_string(i) + ")");
    return AbelianHom{std::move(source), std::move(target), std::move(matrix)};
}

inline AbelianHom identity_hom(const PresentedAbelianGroup& g) {
    return AbelianHom{g, g, IntMatrix::identity(g.rank)};
}

inline AbelianHom compose(const AbelianHom& first, const AbelianHom& then) {
    if (first.target.rank != then.source.rank)
        throw DimensionMismatch("compose: middle ranks differ");
    return AbelianHom{first.source, then.target, first.matrix * then.matrix};
}

inline bool hom_equal(const AbelianHom& a, const AbelianHom& b) {
    if (a.source.rank != b.source.rank || a.target.rank != b.target.rank) return false;
    for (int i = 0; i < a.matrix.rows; ++i) {
        std::vector<Int> diff(a.matrix.cols);
        for (int j = 0; j < a.matrix.cols; ++j) diff[j] = a.matrix.at(i, j) - b.matrix.at(i, j);
        if (!a.target.is_zero_element(diff)) return false;
    }
    return true;
}

// Lattice of {v : v*matrix ∈ target relations}; contains the source relations
// whenever the hom is well defined.
inline IntMatrix hom_preimage_of_zero(const AbelianHom& h) {
    const PresentedAbelianGroup& t = h.target;
    if (t.rank == 0) return IntMatrix::identity(h.source.rank);
    if (t.is_finite()) {
        // constraints live in smith coordinates of the target
        IntMatrix b = h.matrix * t.to_smith;
        std::vector<Int> mods(t.smith_diag.begin(), t.smith_diag.end());
        for (const Int& m : mods) internal_check(m >= 1, "finite group with zero smith entry");
        return kernel_mod(b, mods);
    }
    return preimage_lattice(h.matrix, t.relations);
}

struct HomAnalysis {
    PresentedAbelianGroup kernel, image;
    bool injective = false, zero = false;
    IntMatrix kernel_generators;  // rows in source generator coordinates
    IntMatrix image_generators;   // rows in target generator coordinates
};

inline HomAnalysis hom_analysis(const AbelianHom& h) {
    HomAnalysis out;
    IntMatrix k = hom_preimage_of_zero(h);  // HNF, spans ker as sublattice of Z^src

    // kernel subgroup = K / source relations; express relations in K's basis
    std::vector<std::vector<Int>> rel_coords;
    for (int i = 0; i < h.source.relations.rows; ++i) {
        auto c = back_substitute(k, h.source.relations.row(i));
        internal_check(c.has_value(), "hom_analysis: source relation outside kernel lattice");
        rel_coords.push_back(std::move(*c));
    }
    out.kernel = group_from_presentation(k.rows, IntMatrix::from_rows(rel_coords, k.rows));
    out.kernel_generators = k;

    // image ≅ Z^src / K, presented on the source generators
    out.image = group_from_presentation(h.source.rank, k);
    out.image_generators = h.matrix;

    out.injective = out.kernel.is_trivial();
    out.zero = true;
    for (int i = 0; i < h.matrix.rows && out.zero; ++i)
        out.zero = h.target.is_zero_element(h.matrix.row(i));
    return out;
}

// Do two sets of generator rows span the same subgroup of the ambient group?
inline bool subgroups_equal(const IntMatrix& gens_a, const IntMatrix& gens_b,
                            const PresentedAbelianGroup& ambient) {
    if ((gens_a.rows > 0 && gens_a.cols != ambient.rank) ||
        (gens_b.rows > 0 && gens_b.cols != ambient.rank))
        throw DimensionMismatch("subgroups_equal: generator width must equal ambient rank");
    IntMatrix a(gens_a.rows, ambient.rank), b(gens_b.rows, ambient.rank);
    for (int i = 0; i < gens_a.rows; ++i)
        for (int j = 0; j < ambient.rank; ++j) a.at(i, j) = gens_a.at(i, j);
    for (int i = 0; i < gens_b.rows; ++i)
        for (int j = 0; j < ambient.rank; ++j) b.at(i, j) = gens_b.at(i, j);
    return hnf(vstack(a, ambient.relations)) == hnf(vstack(b, ambient.relations));
}

inline std::string format_factors(const PresentedAbelianGroup& g) {
    if (g.is_trivial()) return "0";
    std::string s;
    for (size_t i = 0; i < g.invariant_factors.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + g.invariant_factors[i].str();
    }
    for (int i = 0; i < g.free_rank; ++i) {
        if (!s.empty()) s += " + ";
        s += "Z";
    }
    return s;
}

}  // namespace brm
