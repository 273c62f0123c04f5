#include <catch_amalgamated.hpp>

#include <random>

#include "brmonoid/int_matrix.hpp"
#include "brmonoid/lattice.hpp"

using namespace brm;

namespace {

IntMatrix mat(int r, int c, std::vector<long long> vals) {
    IntMatrix m(r, c);
    for (size_t i = 0; i < vals.size(); ++i) m.data[i] = vals[i];
    return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, int max_dim, int span) {
    int r = 1 + static_cast<int>(rng() % max_dim), c = 1 + static_cast<int>(rng() % max_dim);
    IntMatrix m(r, c);
    for (Int& v : m.data) v = static_cast<long long>(rng() % (2 * span + 1)) - span;
    return m;
}

}  // namespace

TEST_CASE("hnf matches pinned examples") {
    CHECK(hnf(mat(2, 2, {0, 1, 1, 0})) == mat(2, 2, {1, 0, 0, 1}));
    CHECK(hnf(mat(2, 2, {2, 0, 1, 1})) == mat(2, 2, {1, 1, 0, 2}));
    CHECK(hnf(mat(2, 2, {0, 0, 0, 0})) == IntMatrix(0, 2));
}

TEST_CASE("snf matches pinned examples") {
    CHECK(snf(IntMatrix::identity(3)).diag == std::vector<Int>{1, 1, 1});
    auto s = snf(mat(2, 2, {2, 0, 0, 3}));
    CHECK(s.diag == std::vector<Int>{1, 6});
    CHECK(snf(mat(1, 1, {0})).diag == std::vector<Int>{0});
}

TEST_CASE("kernel_basis matches pinned examples") {
    auto k = kernel_basis(mat(1, 2, {2, 3}));
    REQUIRE(k.rows == 1);
    CHECK(((k.at(0, 0) == 3 && k.at(0, 1) == -2) || (k.at(0, 0) == -3 && k.at(0, 1) == 2)));
    CHECK(kernel_basis(IntMatrix::identity(3)).rows == 0);
    CHECK(kernel_basis(IntMatrix(1, 2)).rows == 2);
}

TEST_CASE("solve with moduli matches pinned examples") {
    auto x = solve_mod(mat(1, 1, {2}), {Int(3)}, {Int(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);

    // x ≡ 1 and x ≡ 0 mod 2 is contradictory
    CHECK_FALSE(solve_mod(mat(1, 2, {1, 1}), {Int(2), Int(2)}, {Int(1), Int(0)}).has_value());

    // identity system, no moduli: exact solve returns b itself
    auto y = solve_row_exact(IntMatrix::identity(3), {Int(4), Int(-5), Int(7)});
    REQUIRE(y.has_value());
    CHECK(*y == std::vector<Int>{4, -5, 7});
}

TEST_CASE("snf/hnf property suite on random matrices") {
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 500; ++trial) {
        IntMatrix m = random_matrix(rng, 8, 20);

        SmithDecomposition s = snf(m);
        IntMatrix d(m.rows, m.cols);
        for (size_t i = 0; i < s.diag.size(); ++i) d.at(static_cast<int>(i), static_cast<int>(i)) = s.diag[i];
        REQUIRE(s.left * m * s.right == d);
        Int dl = determinant(s.left), dr = determinant(s.right);
        REQUIRE((dl == 1 || dl == -1));
        REQUIRE((dr == 1 || dr == -1));
        REQUIRE(s.left * s.left_inv == IntMatrix::identity(m.rows));
        REQUIRE(s.right * s.right_inv == IntMatrix::identity(m.cols));
        for (size_t i = 0; i + 1 < s.diag.size(); ++i) {
            if (s.diag[i] == 0) REQUIRE(s.diag[i + 1] == 0);  // zeros last
            if (s.diag[i] != 0 && s.diag[i + 1] != 0) REQUIRE(s.diag[i + 1] % s.diag[i] == 0);
        }
        // re-running snf on the diagonal is a fixed point
        REQUIRE(snf(d).diag == s.diag);

        IntMatrix h = hnf(m);
        REQUIRE(hnf(h) == h);  // idempotent
        for (int i = 0; i < m.rows; ++i) REQUIRE(lattice_contains(h, m.row(i)));
        for (int i = 0; i < h.rows; ++i) {
            auto coeffs = solve_row_exact(m, h.row(i));  // h rows lie in the original lattice
            REQUIRE(coeffs.has_value());
        }

        IntMatrix k = left_kernel(m);
        for (int i = 0; i < k.rows; ++i)
            for (const Int& v : mul_row(k.row(i), m)) REQUIRE(v == 0);
        REQUIRE(k.rows + hnf(m).rows == m.rows);  // rank-nullity over the rationals
    }
}

TEST_CASE("solve_row_exact finds solutions exactly when they exist") {
    std::mt19937_64 rng(0xabcd);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix m = random_matrix(rng, 5, 6);
        // build a guaranteed-solvable rhs, then check recovery
        std::vector<Int> x0(m.rows);
        for (Int& v : x0) v = static_cast<long long>(rng() % 9) - 4;
        std::vector<Int> rhs = mul_row(x0, m);
        auto x = solve_row_exact(m, rhs);
        REQUIRE(x.has_value());
        REQUIRE(mul_row(*x, m) == rhs);
    }
}

TEST_CASE("ModSolver agrees with exhaustive search on small systems") {
    std::mt19937_64 rng(0x1234);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 3);
        IntMatrix b(n, c);
        for (Int& v : b.data) v = static_cast<long long>(rng() % 13) - 6;
        std::vector<Int> mods(c), rhs(c);
        for (Int& v : mods) v = 1 + static_cast<long long>(rng() % 8);
        for (Int& v : rhs) v = static_cast<long long>(rng() % 13) - 6;

        ModSolver solver(b, mods);
        long long n_lcm = static_cast<long long>(solver.modulus_lcm());
        auto satisfied = [&](const std::vector<long long>& x, bool homogeneous) {
            for (int j = 0; j < c; ++j) {
                Int acc = 0;
                for (int i = 0; i < n; ++i) acc += Int(x[i]) * b.at(i, j);
                if (mod_floor(acc - (homogeneous ? Int(0) : rhs[j]), mods[j]) != 0) return false;
            }
            return true;
        };

        bool exists = false;
        long long count_hom = 0;
        std::vector<long long> x(n, 0);
        for (;;) {
            if (satisfied(x, false)) exists = true;
            if (satisfied(x, true)) ++count_hom;
            int i = 0;
            while (i < n && ++x[i] == n_lcm) x[i++] = 0;
            if (i == n) break;
        }

        auto got = solver.solve(rhs);
        REQUIRE(got.has_value() == exists);
        if (got) {
            std::vector<long long> lifted(n);
            for (int i = 0; i < n; ++i) lifted[i] = static_cast<long long>((*got)[i]);
            REQUIRE(satisfied(lifted, false));
        }

        // kernel lattice index must equal the homogeneous solution count
        IntMatrix k = solver.kernel();
        REQUIRE(k.rows == n);
        Int det = 1;
        for (int i = 0; i < n; ++i) det *= k.at(i, i);
        Int box = 1;
        for (int i = 0; i < n; ++i) box *= n_lcm;
        REQUIRE(det != 0);
        REQUIRE(box % det == 0);
        REQUIRE(box / det == count_hom);
    }
}
