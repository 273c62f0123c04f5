#pragma once

#include <optional>
#include <vector>

#include "brmonoid/int_matrix.hpp"

namespace brm {

// Linear algebra for systems  x * B ≡ rhs  (mod m_j in column j)  where every
// modulus is a positive integer. The solution lattice always contains
// lcm(m)·Z^n, so the elimination can be kept reduced modulo N = lcm(m): a
// Howell-form elimination over Z/N in which no entry grows past N. This
// carries the load for cocycle lattices, where plain integer HNF of the
// stacked system would be far slower.
class ModSolver {
public:
    ModSolver(const IntMatrix& b, const std::vector<Int>& mods) : n_(b.rows), c_(b.cols) {
        if (static_cast<int>(mods.size()) != b.cols)
            throw DimensionMismatch("ModSolver: one modulus per column required");
        N_ = 1;
        for (const Int& m : mods) {
            if (m <= 0) throw DimensionMismatch("ModSolver: moduli must be positive");
            N_ = lcm_int(N_, m);
        }
        scale_.resize(c_);
        for (int j = 0; j < c_; ++j) scale_[j] = N_ / mods[j];
        if (N_ == 1) return;  // every x is a solution

        // augmented rows [ B_i * scale | e_i ] over Z/N
        std::vector<std::vector<Int>> active;
        active.reserve(n_);
        for (int i = 0; i < n_; ++i) {
            std::vector<Int> row(c_ + n_);
            for (int j = 0; j < c_; ++j) row[j] = mod_floor(b.at(i, j) * scale_[j], N_);
            row[c_ + i] = 1;
            active.push_back(std::move(row));
        }

        for (int col = 0; col < c_; ++col) {
            int pr = -1;
            for (size_t i = 0; i < active.size(); ++i) {
                if (active[i][col] == 0) continue;
                if (pr < 0) { pr = static_cast<int>(i); continue; }
                combine(active[static_cast<size_t>(pr)], active[i], col);
            }
            if (pr < 0) continue;
            std::vector<Int> row = std::move(active[static_cast<size_t>(pr)]);
            active.erase(active.begin() + pr);
            Int d = normalize_pivot(row, col);
            if (d != N_) {
                // stabilizer row captures the annihilator part of the pivot
                std::vector<Int> stab(c_ + n_);
                Int f = N_ / d;
                bool nz = false;
                for (int j = 0; j < c_ + n_; ++j) {
                    stab[j] = mod_floor(row[j] * f, N_);
                    nz = nz || stab[j] != 0;
                }
                if (nz) active.push_back(std::move(stab));
            }
            pivot_cols_.push_back(col);
            pivots_.push_back(std::move(row));
        }
        for (auto& row : active) {
            for (int j = 0; j < c_; ++j)
                internal_check(row[j] == 0, "ModSolver: residual entry after elimination");
            kernel_tail_.emplace_back(row.begin() + c_, row.end());
        }
    }

    // HNF basis (n rows, full rank) of {x in Z^n : x*B ≡ 0 (mod m_j)}.
    IntMatrix kernel() const {
        if (N_ == 1) return IntMatrix::identity(n_);
        IntMatrix gens(static_cast<int>(kernel_tail_.size()) + n_, n_);
        int r = 0;
        for (const auto& k : kernel_tail_) {
            for (int j = 0; j < n_; ++j) gens.at(r, j) = k[j];
            ++r;
        }
        for (int i = 0; i < n_; ++i) gens.at(r + i, i) = N_;

        // The bounded HNF may discard multiples of N·e_j; the kernel always
        // contains N·Z^n, so re-adjoin and repeat until it is truly inside.
        IntMatrix h = hnf_bounded(std::move(gens));
        for (;;) {
            bool ok = h.rows == n_;
            for (int j = 0; ok && j < n_; ++j) {
                std::vector<Int> nej(n_);
                nej[j] = N_;
                ok = lattice_contains(h, nej);
            }
            if (ok) break;
            IntMatrix again(h.rows + n_, n_);
            for (int i = 0; i < h.rows; ++i)
                for (int j = 0; j < n_; ++j) again.at(i, j) = h.at(i, j);
            for (int i = 0; i < n_; ++i) again.at(h.rows + i, i) = N_;
            h = hnf_bounded(std::move(again));
        }
        return h;
    }

    // One solution of x*B ≡ rhs (mod m_j), entries in [0, N), or nullopt.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& rhs) const {
        if (static_cast<int>(rhs.size()) != c_) throw DimensionMismatch("ModSolver::solve: rhs length");
        if (N_ == 1) return std::vector<Int>(n_);
        std::vector<Int> res(c_);
        for (int j = 0; j < c_; ++j) res[j] = mod_floor(rhs[j] * scale_[j], N_);
        std::vector<Int> x(n_);
        for (size_t k = 0; k < pivots_.size(); ++k) {
            int col = pivot_cols_[k];
            if (res[col] == 0) continue;
            const Int& d = pivots_[k][col];
            if (res[col] % d != 0) return std::nullopt;
            Int t = res[col] / d;
            for (int j = col; j < c_; ++j) res[j] = mod_floor(res[j] - t * pivots_[k][j], N_);
            for (int j = 0; j < n_; ++j) x[j] = mod_floor(x[j] + t * pivots_[k][c_ + j], N_);
        }
        for (int j = 0; j < c_; ++j)
            if (res[j] != 0) return std::nullopt;
        return x;
    }

    const Int& modulus_lcm() const { return N_; }

private:
    // HNF sweep in which every intermediate entry may be reduced mod N;
    // callers must re-check that N·Z^n stayed inside (see kernel()).
    IntMatrix hnf_bounded(IntMatrix gens) const {
        int r = 0;
        for (int c = 0; c < gens.cols && r < gens.rows; ++c) {
            int piv = -1;
            for (int i = r; i < gens.rows; ++i)
                if (gens.at(i, c) != 0) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != r) detail::row_swap(gens, r, piv);
            for (int i = r + 1; i < gens.rows; ++i) {
                if (gens.at(i, c) == 0) continue;
                Int x, y;
                Int g = ext_gcd(gens.at(r, c), gens.at(i, c), x, y);
                Int u = gens.at(r, c) / g, v = gens.at(i, c) / g;
                detail::row_combine(gens, r, i, x, y, -v, u);
                for (int j = c; j < gens.cols; ++j) {
                    gens.at(r, j) = mod_floor(gens.at(r, j), N_);
                    gens.at(i, j) = mod_floor(gens.at(i, j), N_);
                }
            }
            if (gens.at(r, c) == 0) { --c; continue; }  // pivot cancelled mod N, retry column
            for (int i = 0; i < r; ++i) {
                Int q = floor_div(gens.at(i, c), gens.at(r, c));
                if (q != 0) {
                    detail::row_addmul(gens, i, r, -q);
                    for (int j = c; j < gens.cols; ++j) gens.at(i, j) = mod_floor(gens.at(i, j), N_);
                }
            }
            ++r;
        }
        IntMatrix out(r, gens.cols);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < gens.cols; ++j) out.at(i, j) = gens.at(i, j);
        return out;
    }

    // zero row b at column col using a unimodular combination with row a
    void combine(std::vector<Int>& a, std::vector<Int>& b, int col) const {
        Int x, y;
        Int g = ext_gcd(a[col], b[col], x, y);
        Int u = a[col] / g, v = b[col] / g;
        for (size_t j = col; j < a.size(); ++j) {
            Int na = mod_floor(x * a[j] + y * b[j], N_);
            Int nb = mod_floor(u * b[j] - v * a[j], N_);
            a[j] = std::move(na);
            b[j] = std::move(nb);
        }
    }

    // scale the pivot row by a unit of Z/N so the pivot becomes gcd(pivot, N)
    Int normalize_pivot(std::vector<Int>& row, int col) const {
        Int g = row[col];
        Int d = gcd_int(g, N_);
        Int g1 = g / d, n1 = N_ / d;
        Int w;
        if (n1 == 1) {
            w = 1;
        } else {
            Int inv, tmp;
            Int one = ext_gcd(mod_floor(g1, n1), n1, inv, tmp);
            internal_check(one == 1, "ModSolver: pivot/d not invertible mod N/d");
            w = mod_floor(inv, n1);
            if (w == 0) w = n1;  // keep w positive
            while (gcd_int(w, N_) != 1) w += n1;
        }
        if (w != 1)
            for (size_t j = col; j < row.size(); ++j) row[j] = mod_floor(w * row[j], N_);
        internal_check(row[col] == d, "ModSolver: pivot normalization failed");
        return d;
    }

    int n_, c_;
    Int N_;
    std::vector<Int> scale_;
    std::vector<std::vector<Int>> pivots_;
    std::vector<int> pivot_cols_;
    std::vector<std::vector<Int>> kernel_tail_;
};

inline IntMatrix kernel_mod(const IntMatrix& b, const std::vector<Int>& mods) {
    return ModSolver(b, mods).kernel();
}

inline std::optional<std::vector<Int>> solve_mod(const IntMatrix& b, const std::vector<Int>& mods,
                                                 const std::vector<Int>& rhs) {
    return ModSolver(b, mods).solve(rhs);
}

// {x : x * b ∈ rowspan(relations)} for an arbitrary integer relation lattice;
// exact-arithmetic fallback used where finite moduli are unavailable.
inline IntMatrix preimage_lattice(const IntMatrix& b, const IntMatrix& relations) {
    IntMatrix stacked = vstack(b, relations.cols == b.cols ? relations : IntMatrix(0, b.cols));
    if (relations.rows > 0 && relations.cols != b.cols)
        throw DimensionMismatch("preimage_lattice: relation width mismatch");
    IntMatrix ker = left_kernel(stacked);
    IntMatrix proj(ker.rows, b.rows);
    for (int i = 0; i < ker.rows; ++i)
        for (int j = 0; j < b.rows; ++j) proj.at(i, j) = ker.at(i, j);
    return hnf(proj);
}

}  // namespace brm
