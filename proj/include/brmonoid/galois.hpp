#pragma once

#include <string>
#include <vector>

#include "brmonoid/cohomology.hpp"

namespace brm {

// Extension F_{p^m} ⊂ F_{p^n} with Galois group C_d, d = n/m.
struct ExtensionDescriptor {
    long long p = 0;
    int m = 0, n = 0, d = 0;
    Int q;  // p^n

    std::string str() const {
        return "F_" + std::to_string(p) + "^" + std::to_string(n) + "/F_" + std::to_string(p) + "^" +
               std::to_string(m);
    }
};

namespace detail {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline Int pow_int(long long base, int exp) {
    Int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace detail

inline ExtensionDescriptor extension(long long p, int m, int n, const Int& max_q = Int(65536)) {
    if (!detail::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (m < 1 || n < 1 || n % m != 0)
        throw NotDivisible("base exponent " + std::to_string(m) + " must divide " + std::to_string(n));
    ExtensionDescriptor e;
    e.p = p;
    e.m = m;
    e.n = n;
    e.d = n / m;
    e.q = detail::pow_int(p, n);
    if (e.q > max_q) throw TooLarge("field size " + e.q.str() + " exceeds bound " + max_q.str());
    return e;
}

// L^× as an abstract Galois module: C_d acting on Z/(q−1), the generator
// multiplying by p^m (the Frobenius of the extension in dlog coordinates).
struct GaloisModuleSpec {
    ExtensionDescriptor ext;
    GroupPtr group;                 // C_d
    std::vector<Int> orders;        // [q − 1] (empty if q = 2: trivial L^×)
    std::vector<IntMatrix> action;  // per element of C_d, 1×1 (or 0×0)
};

inline GaloisModuleSpec galois_module(const ExtensionDescriptor& e) {
    GaloisModuleSpec spec;
    spec.ext = e;
    spec.group = cyclic_group(e.d);
    Int qm1 = e.q - 1;
    if (qm1 == 1) {
        spec.action.assign(e.d, IntMatrix(0, 0));
        return spec;
    }
    spec.orders = {qm1};
    Int frob = mod_floor(detail::pow_int(e.p, e.m), qm1);
    Int acc = 1;
    for (int i = 0; i < e.d; ++i) {
        spec.action.push_back(IntMatrix(1, 1, {acc}));
        acc = mod_floor(acc * frob, qm1);
    }
    internal_check(acc == 1, "Frobenius power d must act trivially");
    return spec;
}

inline ZeroModule galois_zero_module(const GaloisModuleSpec& spec, Modification s) {
    internal_check(*s.group == *spec.group, "modification is not over the Galois group");
    return zero_module(std::move(s), spec.orders, spec.action);
}

// Fixed subfield P of the subgroup of order u in C_d: sizes and the index of
// P^× inside L^× in dlog coordinates.
struct SubfieldData {
    int subgroup_order = 1;  // u
    int P_exponent = 0;      // n/u
    Int P_order;             // p^(n/u) − 1
    Int embedding_index;     // (p^n − 1)/(p^(n/u) − 1)
};

inline SubfieldData fixed_data(const ExtensionDescriptor& e, int u) {
    if (u < 1 || e.d % u != 0) throw NotDivisible("subgroup order must divide the Galois degree");
    SubfieldData s;
    s.subgroup_order = u;
    s.P_exponent = e.n / u;
    s.P_order = detail::pow_int(e.p, s.P_exponent) - 1;
    Int qm1 = e.q - 1;
    internal_check(qm1 % s.P_order == 0, "subfield order must divide q − 1");
    s.embedding_index = qm1 / s.P_order;

    // the U-fixed submodule of Z/(q−1) must be exactly ⟨embedding_index⟩:
    // U = ⟨g^(d/u)⟩ acts by ×p^(n/u), so fixed means (p^(n/u) − 1)·a ≡ 0
    Int gen_mult = mod_floor(detail::pow_int(e.p, e.m * (e.d / u)), qm1);
    for (Int a = 0; a < qm1; ++a) {
        bool fixed = mod_floor(a * gen_mult - a, qm1) == 0;
        bool in_sub = a % s.embedding_index == 0;
        if (fixed != in_sub)
            throw FixedPointMismatch("fixed submodule disagrees with the subfield at a = " + a.str());
    }
    return s;
}

// P^× as a 0-module over S/U, with the embedding P^× ↪ L^× (multiplication
// of dlog coordinates by the embedding index).
struct QuotientGaloisModule {
    ZeroModule module;     // over the quotient modification
    IntMatrix embedding;   // r_quot × r_full
    SubfieldData subfield;
};

inline QuotientGaloisModule quotient_galois_module(const GaloisModuleSpec& spec, const Modification& s,
                                                   const UnitIdealSplit& split,
                                                   const QuotientModification& quot) {
    if (!units_normal(s, split)) throw NotNormal("quotient module requires normal units");
    const ExtensionDescriptor& e = spec.ext;
    SubfieldData sub = fixed_data(e, static_cast<int>(split.units.size()));

    QuotientGaloisModule out;
    out.subfield = sub;
    int k = quot.quotient.order();
    if (sub.P_order == 1 || spec.orders.empty()) {
        out.module = zero_module(quot.quotient, {}, std::vector<IntMatrix>(k, IntMatrix(0, 0)));
        out.embedding = IntMatrix(0, static_cast<int>(spec.orders.size()));
        return out;
    }
    // coset of g^j acts on P^×-coordinates by ×p^(m j) mod P_order; read the
    // exponent off a representative of each coset
    std::vector<IntMatrix> action;
    Int frob = mod_floor(Int(e.p), sub.P_order);
    for (int c = 0; c < k; ++c) {
        int rep = -1;
        for (int x = 0; x < s.order() && rep < 0; ++x)
            if (quot.projection[x] == c) rep = x;
        internal_check(rep >= 0, "empty coset");
        Int mult = 1;
        for (int i = 0; i < e.m * rep; ++i) mult = mod_floor(mult * frob, sub.P_order);
        action.push_back(IntMatrix(1, 1, {mult}));
    }
    out.module = zero_module(quot.quotient, {sub.P_order}, std::move(action));
    out.embedding = IntMatrix(1, 1, {sub.embedding_index});
    return out;
}

// ---- concrete field realization (cross-check only) ----

// F_{p^n} with elements coded as base-p digit strings of their coefficient
// vectors; multiplication is polynomial multiplication mod an irreducible
// modulus found by deterministic search.
struct ConcreteField {
    long long p = 0;
    int n = 0;
    Int q;
    std::vector<int> modulus;  // monic, degree n, coefficient of x^i at [i]
    long long primitive = 0;   // code of a multiplicative generator
    std::vector<long long> dlog;  // code -> exponent; dlog[0] unused

    std::vector<int> decode(long long code) const {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) {
            c[i] = static_cast<int>(code % p);
            code /= p;
        }
        return c;
    }
    long long encode(const std::vector<int>& c) const {
        long long code = 0;
        for (int i = n - 1; i >= 0; --i) code = code * p + c[i];
        return code;
    }
    long long mul(long long a, long long b) const {
        std::vector<int> ca = decode(a), cb = decode(b);
        std::vector<long long> prod(2 * n - 1, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) prod[i + j] += static_cast<long long>(ca[i]) * cb[j];
        for (int i = 2 * n - 2; i >= n; --i) {
            long long c = prod[i] % p;
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) prod[i - n + j] -= c * modulus[j];
            prod[i] = 0;
        }
        std::vector<int> out(n);
        for (int i = 0; i < n; ++i) out[i] = static_cast<int>(((prod[i] % p) + p) % p);
        return encode(out);
    }
    long long pow(long long a, Int e) const {
        long long out = 1;
        while (e > 0) {
            if ((e & 1) != 0) out = mul(out, a);
            a = mul(a, a);
            e >>= 1;
        }
        return out;
    }
};

namespace detail {

// polynomial arithmetic over Z/p on coefficient vectors (lowest degree first)
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, long long p) {
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) > db) {
        int da = static_cast<int>(a.size()) - 1;
        long long lead = a[da] % p;
        if (lead != 0) {
            // b is monic
            for (int i = 0; i <= db; ++i) {
                long long v = a[da - db + i] - lead * b[i];
                a[da - db + i] = static_cast<int>(((v % p) + p) % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline bool poly_is_zero(const std::vector<int>& a) { return a.empty(); }

inline bool irreducible(const std::vector<int>& f, long long p) {
    int n = static_cast<int>(f.size()) - 1;
    // trial division by every monic polynomial of degree 1..n/2
    for (int deg = 1; 2 * deg <= n; ++deg) {
        long long count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            std::vector<int> g(deg + 1);
            long long c = code;
            for (int i = 0; i < deg; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[deg] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

inline std::vector<long long> prime_factors(Int v) {
    std::vector<long long> out;
    for (Int d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(static_cast<long long>(d));
            while (v % d == 0) v /= d;
        }
    if (v > 1) out.push_back(static_cast<long long>(v));
    return out;
}

}  // namespace detail

inline ConcreteField concrete_field(long long p, int n, const Int& max_q = Int(65536)) {
    if (!detail::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    Int q = detail::pow_int(p, n);
    if (q > max_q) throw TooLarge("field size " + q.str() + " exceeds bound " + max_q.str());
    ConcreteField f;
    f.p = p;
    f.n = n;
    f.q = q;

    // first irreducible monic polynomial in lexicographic coefficient order
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        std::vector<int> cand(n + 1);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            cand[i] = static_cast<int>(c % p);
            c /= p;
        }
        cand[n] = 1;
        if (n == 1 || detail::irreducible(cand, p)) {
            f.modulus = std::move(cand);
            break;
        }
    }
    internal_check(!f.modulus.empty(), "no irreducible polynomial found");

    Int qm1 = q - 1;
    auto factors = detail::prime_factors(qm1);
    for (long long z = 1; z < static_cast<long long>(q); ++z) {
        bool primitive = true;
        for (long long r : factors)
            if (f.pow(z, qm1 / r) == 1) { primitive = false; break; }
        if (primitive || qm1 == 1) {
            f.primitive = z;
            break;
        }
    }
    internal_check(f.primitive != 0, "no primitive element found");

    f.dlog.assign(static_cast<size_t>(static_cast<long long>(q)), -1);
    long long acc = 1;
    for (Int e = 0; e < qm1; ++e) {
        internal_check(f.dlog[acc] == -1, "primitive element has short order");
        f.dlog[acc] = static_cast<long long>(e);
        acc = f.mul(acc, f.primitive);
    }
    internal_check(acc == 1, "dlog table did not close");
    return f;
}

// Validates the abstract model against real field arithmetic:
// dlog(z^(p^m)) ≡ p^m · dlog(z) for every nonzero z.
inline bool crosscheck_frobenius(const ExtensionDescriptor& e, const Int& max_q = Int(65536)) {
    ConcreteField f = concrete_field(e.p, e.n, max_q);
    Int qm1 = e.q - 1;
    Int pm = detail::pow_int(e.p, e.m);
    for (long long z = 1; z < static_cast<long long>(e.q); ++z) {
        long long img = f.pow(z, pm);
        if (mod_floor(Int(f.dlog[img]) - pm * f.dlog[z], qm1) != 0) return false;
    }
    return true;
}

// CLI grammar: "p^m:p^n" with literal prime powers ("2:16", "4:16"), or the
// triple form "p=2,m=1,n=4".
inline ExtensionDescriptor parse_extension_spec(const std::string& spec, const Int& max_q = Int(65536)) {
    auto fail = [&]() -> ExtensionDescriptor {
        throw ParseError("cannot parse extension spec '" + spec + "'");
    };
    auto parse_ll = [&](const std::string& s) -> long long {
        if (s.empty() || s.size() > 18) fail();
        long long v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };
    if (spec.find('=') != std::string::npos) {
        long long p = -1, m = -1, n = -1;
        size_t pos = 0;
        while (pos < spec.size()) {
            size_t comma = spec.find(',', pos);
            if (comma == std::string::npos) comma = spec.size();
            std::string part = spec.substr(pos, comma - pos);
            size_t eq = part.find('=');
            if (eq == std::string::npos || eq + 1 >= part.size()) fail();
            std::string key = part.substr(0, eq);
            long long val = parse_ll(part.substr(eq + 1));
            if (key == "p") p = val;
            else if (key == "m") m = val;
            else if (key == "n") n = val;
            else fail();
            pos = comma + 1;
        }
        if (p < 0 || m < 0 || n < 0) fail();
        return extension(p, static_cast<int>(m), static_cast<int>(n), max_q);
    }
    size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) fail();
    long long lhs = parse_ll(spec.substr(0, colon));
    long long rhs = parse_ll(spec.substr(colon + 1));
    if (lhs < 2 || rhs < 2) fail();
    // factor both sides as powers of one prime
    long long p = 2;
    while (lhs % p != 0) ++p;
    int m = 0, n = 0;
    long long v = lhs;
    while (v % p == 0) { v /= p; ++m; }
    if (v != 1) throw ParseError("'" + spec.substr(0, colon) + "' is not a prime power");
    v = rhs;
    while (v % p == 0) { v /= p; ++n; }
    if (v != 1) throw ParseError("'" + spec.substr(colon + 1) + "' is not a power of " + std::to_string(p));
    return extension(p, m, n, max_q);
}

}  // namespace brm
