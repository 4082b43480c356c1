#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "csrg/errors.hpp"

namespace csrg {

using Int = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid far beyond the 2^40 sizes used here.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

struct PrimePower {
    u64 prime;
    unsigned exp;
};

// Trial division; inputs at desk scale are < 2^40 so this is plenty.
inline std::vector<PrimePower> factorize(u64 n) {
    std::vector<PrimePower> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) n /= d, ++e;
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (auto& pp : factorize(n)) out.push_back(pp.prime);
    return out;
}

inline std::vector<u64> divisors(u64 n) {
    auto fac = factorize(n);
    std::vector<u64> out{1};
    for (auto& pp : fac) {
        size_t sz = out.size();
        u64 pe = 1;
        for (unsigned e = 1; e <= pp.exp; ++e) {
            pe *= pp.prime;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline u64 euler_phi_u64(u64 n) {
    u64 r = n;
    for (auto& pp : factorize(n)) r -= r / pp.prime;
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

inline unsigned valuation(u64 n, u64 p) {
    unsigned v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

inline Int pow_int(Int base, u64 exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// p^f mod m for arbitrarily large f; lets symbolic connection specs check
// k | p^f - 1 without forming p^f.
inline u64 powmod_u64exp(u64 base, const Int& exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    u64 b = base % m;
    Int e = exp;
    while (e > 0) {
        if ((e & 1) != 0) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 checked_mul_u64(u64 a, u64 b) {
    u128 r = u128(a) * b;
    if (r > u128(UINT64_MAX)) fail(err::too_large, "64-bit overflow in parameter arithmetic");
    return static_cast<u64>(r);
}

}  // namespace csrg
