#pragma once

#include <algorithm>
#include <vector>

#include "csrg/intutil.hpp"

namespace csrg {

// Arithmetic in (Z/nZ)^*: orders, subgroup indices, coset representatives,
// semi-primitivity and the index-stability condition that every lifting
// construction in this library leans on.

inline u64 euler_phi(u64 n) {
    if (n == 0) fail(err::range_error, "euler_phi(0)");
    return euler_phi_u64(n);
}

// Multiplicative order of p mod n.  n = 1 is the trivial group.
inline u64 mult_order(u64 p, u64 n) {
    if (n == 0) fail(err::range_error, "order mod 0");
    if (n == 1) return 1;
    p %= n;
    if (gcd_u64(p, n) != 1) fail(err::not_coprime, "order of " + std::to_string(p) + " mod " + std::to_string(n));
    // order divides phi(n); strip prime factors from phi.
    u64 order = euler_phi_u64(n);
    for (u64 q : distinct_prime_factors(order)) {
        while (order % q == 0 && powmod(p, order / q, n) == 1) order /= q;
    }
    return order;
}

inline u64 subgroup_index(u64 p, u64 n) { return euler_phi(n) / mult_order(p, n); }

struct SubgroupProfile {
    u64 n = 0;
    u64 p = 0;
    u64 order_f = 0;
    u64 index_e = 0;
    std::vector<u64> coset_reps;  // minimal representative per coset, ascending
    bool semiprimitive = false;
};

inline bool is_semiprimitive(u64 p, u64 n) {
    if (n == 0) fail(err::range_error, "mod 0");
    if (n <= 2) return true;  // -1 == 1
    p %= n;
    if (gcd_u64(p, n) != 1) fail(err::not_coprime, "semiprimitivity of " + std::to_string(p) + " mod " + std::to_string(n));
    u64 x = p % n;
    u64 ord = mult_order(p, n);
    for (u64 s = 1; s <= ord; ++s) {
        if (x == n - 1) return true;
        x = mulmod(x, p, n);
    }
    return false;
}

inline SubgroupProfile subgroup_profile(u64 p, u64 n) {
    if (n < 2) fail(err::range_error, "subgroup_profile needs n >= 2");
    if (gcd_u64(p % n == 0 ? n : p % n, n) != 1 || gcd_u64(p, n) != 1)
        fail(err::not_coprime, "subgroup_profile(" + std::to_string(p) + ", " + std::to_string(n) + ")");
    SubgroupProfile sp;
    sp.n = n;
    sp.p = p;
    sp.order_f = mult_order(p, n);
    sp.index_e = euler_phi(n) / sp.order_f;
    std::vector<char> seen(n, 0);
    for (u64 r = 1; r < n; ++r) {
        if (seen[r] || gcd_u64(r, n) != 1) continue;
        sp.coset_reps.push_back(r);
        u64 x = r;
        for (u64 i = 0; i < sp.order_f; ++i) {
            seen[x] = 1;
            x = mulmod(x, p % n, n);
        }
    }
    if (n == 2) sp.coset_reps = {1};
    sp.semiprimitive = is_semiprimitive(p, n);
    return sp;
}

// The standing assumption: for every divisor d of h, the index of <p> must be
// unchanged when the odd prime powers of d are inflated to their exponents in
// k.  h is squarefree-odd times a 2-power and k shares its prime support
// (2-part equal).  All intermediate exponent patterns inside k are checked,
// which is the strongest finite version of the "for any x_i >= 1" condition.
inline bool check_index_stability(u64 p, u64 h, u64 k) {
    if (h == 0 || k == 0) fail(err::range_error, "zero modulus");
    if (gcd_u64(p, k) != 1 || gcd_u64(p, h) != 1)
        fail(err::not_coprime, "index stability base " + std::to_string(p));
    auto hf = factorize(h);
    auto kf = factorize(k);
    unsigned h2 = valuation(h, 2), k2 = valuation(k, 2);
    if (h2 != k2) fail(err::bad_support, "2-parts differ: " + std::to_string(h) + " vs " + std::to_string(k));
    std::vector<u64> hodd, kodd;
    for (auto& pp : hf)
        if (pp.prime != 2) {
            if (pp.exp != 1) fail(err::bad_support, "h not squarefree away from 2");
            hodd.push_back(pp.prime);
        }
    for (auto& pp : kf)
        if (pp.prime != 2) kodd.push_back(pp.prime);
    std::sort(hodd.begin(), hodd.end());
    std::sort(kodd.begin(), kodd.end());
    if (hodd != kodd) fail(err::bad_support, "odd prime supports differ");

    // Group the divisors of k by (2-part, odd radical); within one group the
    // index must be constant and equal to the index mod the matching divisor
    // of h (which is the group's squarefree member).
    for (u64 d : divisors(h)) {
        u64 base_idx = subgroup_index(p, d);
        u64 d2 = u64(1) << valuation(d, 2);
        std::vector<u64> rad;
        for (u64 q : hodd)
            if (d % q == 0) rad.push_back(q);
        for (u64 g : divisors(k)) {
            if ((u64(1) << valuation(g, 2)) != d2) continue;
            std::vector<u64> grad;
            for (u64 q : kodd)
                if (g % q == 0) grad.push_back(q);
            if (grad != rad) continue;
            if (subgroup_index(p, g) != base_idx) return false;
        }
    }
    return true;
}

}  // namespace csrg
