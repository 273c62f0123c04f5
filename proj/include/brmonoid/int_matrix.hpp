#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "brmonoid/errors.hpp"

namespace brm {

using Int = boost::multiprecision::cpp_int;

// Dense row-major matrix over arbitrary-precision integers. Throughout the
// library, lattice elements are ROW vectors and a matrix represents the map
// v -> v * M.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    IntMatrix(int r, int c, std::vector<Int> entries) : rows(r), cols(c), data(std::move(entries)) {
        if (data.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
            throw DimensionMismatch("IntMatrix: entry count does not match dimensions");
    }

    Int& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix diagonal(const std::vector<Int>& d) {
        IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rs, int ncols) {
        IntMatrix m(static_cast<int>(rs.size()), ncols);
        for (size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != static_cast<size_t>(ncols))
                throw DimensionMismatch("from_rows: ragged input");
            for (int j = 0; j < ncols; ++j) m.at(static_cast<int>(i), j) = rs[i][j];
        }
        return m;
    }

    std::vector<Int> row(int i) const {
        return std::vector<Int>(data.begin() + static_cast<size_t>(i) * cols,
                                data.begin() + static_cast<size_t>(i + 1) * cols);
    }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const {
        for (const Int& v : data)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("matrix product: inner dimensions differ");
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;  // coboundary matrices are sparse
            for (int j = 0; j < b.cols; ++j) {
                const Int& bkj = b.at(k, j);
                if (bkj != 0) c.at(i, j) += aik * bkj;
            }
        }
    return c;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("matrix difference: shapes differ");
    IntMatrix c(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
    return c;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("matrix sum: shapes differ");
    IntMatrix c(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
    return c;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows == 0) return b;
    if (b.rows == 0 && b.cols == 0) return a;
    if (a.cols != b.cols) throw DimensionMismatch("vstack: column counts differ");
    IntMatrix c(a.rows + b.rows, a.cols);
    std::copy(a.data.begin(), a.data.end(), c.data.begin());
    std::copy(b.data.begin(), b.data.end(), c.data.begin() + a.data.size());
    return c;
}

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols == 0 && a.rows == 0) return b;
    if (b.cols == 0 && b.rows == 0) return a;
    if (a.rows != b.rows) throw DimensionMismatch("hstack: row counts differ");
    IntMatrix c(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
    }
    return c;
}

inline std::vector<Int> mul_row(const std::vector<Int>& v, const IntMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows) throw DimensionMismatch("mul_row: vector length != matrix rows");
    std::vector<Int> out(m.cols);
    for (int i = 0; i < m.rows; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols; ++j) {
            const Int& e = m.at(i, j);
            if (e != 0) out[j] += v[i] * e;
        }
    }
    return out;
}

// ax + by = g, g = gcd(a, b) >= 0
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    x = old_s;
    y = old_t;
    return old_r;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// floor(a / b); with b > 0 this gives a - floor_div(a,b)*b in [0, b)
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

namespace detail {

inline void row_swap(IntMatrix& m, int i, int j) {
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
inline void row_neg(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}
// row i += f * row j
inline void row_addmul(IntMatrix& m, int i, int j, const Int& f) {
    if (f == 0) return;
    for (int c = 0; c < m.cols; ++c)
        if (m.at(j, c) != 0) m.at(i, c) += f * m.at(j, c);
}
// rows i, j <- (s*row_i + t*row_j, u*row_i + v*row_j)
inline void row_combine(IntMatrix& m, int i, int j, const Int& s, const Int& t, const Int& u, const Int& v) {
    for (int c = 0; c < m.cols; ++c) {
        Int a = m.at(i, c), b = m.at(j, c);
        m.at(i, c) = s * a + t * b;
        m.at(j, c) = u * a + v * b;
    }
}

}  // namespace detail

struct HnfResult {
    IntMatrix h;          // full height, zero rows at the bottom
    IntMatrix transform;  // unimodular, transform * input = h
    int rank = 0;
    std::vector<int> pivot_cols;  // one per nonzero row
};

// Row-style Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Returns the unimodular transform as well.
inline HnfResult hnf_with_transform(IntMatrix m) {
    IntMatrix w = IntMatrix::identity(m.rows);
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) { detail::row_swap(m, r, piv); detail::row_swap(w, r, piv); }
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Int x, y;
            Int g = ext_gcd(m.at(r, c), m.at(i, c), x, y);
            Int u = m.at(r, c) / g, v = m.at(i, c) / g;
            detail::row_combine(m, r, i, x, y, -v, u);
            detail::row_combine(w, r, i, x, y, -v, u);
        }
        if (m.at(r, c) < 0) { detail::row_neg(m, r); detail::row_neg(w, r); }
        for (int i = 0; i < r; ++i) {
            Int q = floor_div(m.at(i, c), m.at(r, c));
            detail::row_addmul(m, i, r, -q);
            detail::row_addmul(w, i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    return HnfResult{std::move(m), std::move(w), r, std::move(pivots)};
}

// Canonical HNF basis of the row lattice (zero rows dropped).
inline IntMatrix hnf(const IntMatrix& m) {
    HnfResult res = hnf_with_transform(m);
    IntMatrix out(res.rank, m.cols);
    for (int i = 0; i < res.rank; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = res.h.at(i, j);
    return out;
}

// Basis of {x : x * m = 0} as HNF rows.
inline IntMatrix left_kernel(const IntMatrix& m) {
    HnfResult res = hnf_with_transform(m);
    IntMatrix ker(m.rows - res.rank, m.rows);
    for (int i = res.rank; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) ker.at(i - res.rank, j) = res.transform.at(i, j);
    return hnf(ker);
}

// Basis of {x : m * x = 0}, rows of length m.cols.
inline IntMatrix kernel_basis(const IntMatrix& m) { return left_kernel(m.transposed()); }

struct SmithDecomposition {
    IntMatrix left, right;          // unimodular: left * m * right = diagonal(diag)
    IntMatrix left_inv, right_inv;  // tracked inverses
    std::vector<Int> diag;          // d1 | d2 | ..., zeros last
};

inline SmithDecomposition snf(const IntMatrix& m) {
    IntMatrix d = m;
    int nr = m.rows, nc = m.cols;
    IntMatrix L = IntMatrix::identity(nr), Li = IntMatrix::identity(nr);
    IntMatrix R = IntMatrix::identity(nc), Ri = IntMatrix::identity(nc);

    // row op on d mirrors on L (and inversely on Li columns);
    // col op on d mirrors on R (and inversely on Ri rows)
    auto rswap = [&](int i, int j) {
        detail::row_swap(d, i, j); detail::row_swap(L, i, j);
        for (int k = 0; k < nr; ++k) std::swap(Li.at(k, i), Li.at(k, j));
    };
    auto raddmul = [&](int i, int j, const Int& f) {  // row i += f * row j
        detail::row_addmul(d, i, j, f); detail::row_addmul(L, i, j, f);
        for (int k = 0; k < nr; ++k) Li.at(k, j) -= f * Li.at(k, i);
    };
    auto rneg = [&](int i) {
        detail::row_neg(d, i); detail::row_neg(L, i);
        for (int k = 0; k < nr; ++k) Li.at(k, i) = -Li.at(k, i);
    };
    auto cswap = [&](int i, int j) {
        for (int k = 0; k < nr; ++k) std::swap(d.at(k, i), d.at(k, j));
        for (int k = 0; k < nc; ++k) std::swap(R.at(k, i), R.at(k, j));
        detail::row_swap(Ri, i, j);
    };
    auto caddmul = [&](int i, int j, const Int& f) {  // col i += f * col j
        if (f == 0) return;
        for (int k = 0; k < nr; ++k) d.at(k, i) += f * d.at(k, j);
        for (int k = 0; k < nc; ++k) R.at(k, i) += f * R.at(k, j);
        detail::row_addmul(Ri, j, i, -f);
    };

    int nmin = std::min(nr, nc);
    for (int t = 0; t < nmin; ++t) {
        for (;;) {
            // locate smallest nonzero |entry| in the lower-right block
            int bi = -1, bj = -1;
            Int best = 0;
            for (int i = t; i < nr; ++i)
                for (int j = t; j < nc; ++j) {
                    if (d.at(i, j) == 0) continue;
                    Int a = boost::multiprecision::abs(d.at(i, j));
                    if (bi < 0 || a < best) { best = a; bi = i; bj = j; }
                }
            if (bi < 0) break;  // block is zero, remaining diagonal stays 0
            if (bi != t) rswap(t, bi);
            if (bj != t) cswap(t, bj);

            bool clean = true;
            for (int i = t + 1; i < nr; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                raddmul(i, t, -q);
                if (d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < nc; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                caddmul(j, t, -q);
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot divides every entry of the remaining block?
            int vi = -1, vj = -1;
            for (int i = t + 1; i < nr && vi < 0; ++i)
                for (int j = t + 1; j < nc; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) { vi = i; vj = j; break; }
            if (vi < 0) break;
            raddmul(t, vi, 1);  // fold the violating row in and repeat
        }
        if (d.at(t, t) < 0) rneg(t);
    }

    std::vector<Int> diag(nmin);
    for (int i = 0; i < nmin; ++i) diag[i] = d.at(i, i);
    return SmithDecomposition{std::move(L), std::move(R), std::move(Li), std::move(Ri), std::move(diag)};
}

// Bareiss fraction-free determinant.
inline Int determinant(IntMatrix m) {
    if (m.rows != m.cols) throw DimensionMismatch("determinant: matrix not square");
    int n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            detail::row_swap(m, k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

// Solve x * h = v for h in echelon (HNF) form; nullopt if v is outside the
// row lattice. Zero rows of h are permitted and skipped.
inline std::optional<std::vector<Int>> back_substitute(const IntMatrix& h, std::vector<Int> v) {
    if (static_cast<int>(v.size()) != h.cols) throw DimensionMismatch("back_substitute: length mismatch");
    std::vector<Int> x(h.rows);
    for (int i = 0; i < h.rows; ++i) {
        int p = -1;
        for (int j = 0; j < h.cols; ++j)
            if (h.at(i, j) != 0) { p = j; break; }
        if (p < 0) continue;
        if (v[p] % h.at(i, p) != 0) return std::nullopt;
        Int q = v[p] / h.at(i, p);
        x[i] = q;
        if (q != 0)
            for (int j = p; j < h.cols; ++j) v[j] -= q * h.at(i, j);
    }
    for (const Int& e : v)
        if (e != 0) return std::nullopt;
    return x;
}

inline bool lattice_contains(const IntMatrix& hnf_basis, const std::vector<Int>& v) {
    return back_substitute(hnf_basis, v).has_value();
}

// Canonical representative of v modulo the row lattice of h (h in HNF):
// pivot coordinates are reduced into [0, pivot).
inline std::vector<Int> reduce_mod_rows(std::vector<Int> v, const IntMatrix& h) {
    if (static_cast<int>(v.size()) != h.cols) throw DimensionMismatch("reduce_mod_rows: length mismatch");
    for (int i = 0; i < h.rows; ++i) {
        int p = -1;
        for (int j = 0; j < h.cols; ++j)
            if (h.at(i, j) != 0) { p = j; break; }
        if (p < 0) continue;
        Int q = floor_div(v[p], h.at(i, p));
        if (q != 0)
            for (int j = p; j < h.cols; ++j) v[j] -= q * h.at(i, j);
    }
    return v;
}

// Particular solution of x * m = rhs over the integers, canonicalized modulo
// the left kernel of m so that equal systems give equal answers.
inline std::optional<std::vector<Int>> solve_row_exact(const IntMatrix& m, const std::vector<Int>& rhs) {
    HnfResult res = hnf_with_transform(m);
    IntMatrix hn(res.rank, m.cols);
    for (int i = 0; i < res.rank; ++i)
        for (int j = 0; j < m.cols; ++j) hn.at(i, j) = res.h.at(i, j);
    auto t = back_substitute(hn, rhs);
    if (!t) return std::nullopt;
    std::vector<Int> x(m.rows);
    for (int i = 0; i < res.rank; ++i)
        if ((*t)[i] != 0)
            for (int j = 0; j < m.rows; ++j) x[j] += (*t)[i] * res.transform.at(i, j);
    return reduce_mod_rows(std::move(x), left_kernel(m));
}

}  // namespace brm
