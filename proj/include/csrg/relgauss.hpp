#pragma once

#include <unordered_map>

#include "csrg/cache.hpp"
#include "csrg/gauss.hpp"

namespace csrg {

// Relative Gauss sums theta_p(chi', chi) = G_{f'}(chi') / (p^{(f'-f)/2} G_f(chi))
// for the compatible character pair built structurally: chi' is the
// gamma'-normalized character of order k' on F_{p^{f'}}, chi its restriction
// to the subfield F_{p^f}.  With Gamma = gamma'^{(q'-1)/(q-1)} the restriction
// satisfies chi'(Gamma^a) = zeta_k^{a} exactly, so both sums use one exponent.

enum class ThetaKind { PlusOne, MinusOne, RootOfUnity, Other };

inline const char* theta_kind_name(ThetaKind k) {
    switch (k) {
        case ThetaKind::PlusOne: return "plus_one";
        case ThetaKind::MinusOne: return "minus_one";
        case ThetaKind::RootOfUnity: return "root_of_unity";
        case ThetaKind::Other: return "other";
    }
    return "?";
}

struct RelativeGaussResult {
    u64 p = 0, k = 0, p1 = 0, kprime = 0, u = 1;
    unsigned f = 0, fprime = 0;
    CycInt theta;
    ThetaKind classification = ThetaKind::Other;
    std::optional<RootOfUnity> root;
    int predicted_epsilon = 0;  // +1, -1, or 0 = not applicable
};

// The h of the standing assumption: the 2-part of k' times its odd radical.
inline u64 standing_h(u64 kprime) {
    u64 h = u64(1) << valuation(kprime, 2);
    for (u64 q : distinct_prime_factors(kprime))
        if (q != 2) h *= q;
    return h;
}

// Sign predicted for theta under the two rationality statements: +1 when k'
// is odd and gcd(k', p-1) = 1; (-1)^{(p-1)(p_1-1)phi(h)/(4e)} when 2||k and
// gcd(k'/2, p-1) = gcd(k/2, p-1) = 1.  Returns 0 when neither set of
// hypotheses holds.  With 2||k' the two readings of h (with or without its
// 2-part) give the same phi(h), so the exponent is computed once.
inline int predicted_sign(u64 p, u64 k, u64 p1) {
    if (p1 % 2 == 0 || !is_prime_u64(p1) || k % p1 != 0) return 0;
    u64 kprime = k * p1;
    if (gcd_u64(p, kprime) != 1) return 0;
    u64 h = standing_h(kprime);
    if (!check_index_stability(p, h, kprime)) return 0;
    u64 e = subgroup_index(p, h);
    if (kprime % 2 == 1) {
        return gcd_u64(kprime, p - 1) == 1 ? 1 : 0;
    }
    if (k % 4 == 2 && gcd_u64(kprime / 2, p - 1) == 1 && gcd_u64(k / 2, p - 1) == 1) {
        u128 num = u128(p - 1) * (p1 - 1) * euler_phi_u64(h);
        if (num % (4 * e) != 0) return 0;
        return (num / (4 * e)) % 2 == 0 ? 1 : -1;
    }
    return 0;
}

inline RelativeGaussResult relative_gauss(u64 p, u64 k, u64 p1, u64 u = 1, unsigned threads = 1,
                                          u64 max_q = kVerifyLimit,
                                          const std::string& cache_dir = {}) {
    if (!is_prime_u64(p)) fail(err::not_prime, std::to_string(p));
    if (p1 % 2 == 0 || !is_prime_u64(p1)) fail(err::bad_parameters, "p1 must be an odd prime");
    if (k % p1 != 0) fail(err::incompatible_characters, "p1 must divide k");
    u64 kprime = k * p1;
    if (gcd_u64(p, kprime) != 1) fail(err::not_coprime, "p and k'");
    if (u % k == 0) fail(err::degenerate_character, "base character trivial");

    if (!check_index_stability(p, standing_h(kprime), kprime))
        fail(err::index_unstable, "index of <p> changes between " + std::to_string(k) + " and " +
                                      std::to_string(kprime));
    u64 e = subgroup_index(p, k);
    if (subgroup_index(p, kprime) != e)
        fail(err::index_unstable, "index differs mod k and mod k'");

    RelativeGaussResult R;
    R.p = p;
    R.k = k;
    R.p1 = p1;
    R.kprime = kprime;
    R.u = u % kprime;
    R.f = unsigned(euler_phi_u64(k) / e);
    R.fprime = unsigned(euler_phi_u64(kprime) / e);
    if (R.fprime != R.f * p1) fail(err::index_unstable, "degree did not scale by p1");
    if ((u128(R.fprime) - R.f) % 2 != 0) fail(err::bad_parameters, "f'-f must be even");

    auto F = get_field(p, R.fprime, max_q);
    TableOptions topt;
    topt.threads = threads;
    topt.max_q = max_q;
    topt.cache_dir = cache_dir;
    auto T = get_table(*F, kprime, topt);
    CycInt Gbig = gauss_sum_exact(*T, u).value;
    CycInt Gsub = gauss_sum_in_subfield(*F, R.f, k, u);

    Int denom = pow_int(Int(p), (u64(R.fprime) + R.f) / 2);
    R.theta = (Gbig * Gsub.conj()).div_exact(denom);

    if (auto r = R.theta.detect_rational()) {
        if (*r == 1)
            R.classification = ThetaKind::PlusOne;
        else if (*r == -1)
            R.classification = ThetaKind::MinusOne;
        else
            R.classification = ThetaKind::Other;
    }
    if (R.classification == ThetaKind::Other) {
        if (auto ru = classify_root_of_unity(R.theta)) {
            R.classification = ThetaKind::RootOfUnity;
            R.root = *ru;
        }
    }
    R.predicted_epsilon = predicted_sign(p, k, p1);
    return R;
}

// theta^d = 1 with d = 2 gcd(k', p-1) or gcd(k', p-1) as k' is odd or even.
inline bool root_order_bound_check(const RelativeGaussResult& R) {
    u64 g = gcd_u64(R.kprime, R.p - 1);
    u64 d = R.kprime % 2 == 1 ? 2 * g : g;
    return pow(R.theta, d).detect_rational().value_or(0) == 1;
}

// Subset character sum of Yamamoto's lemma: over coset representatives of
// F_{q'}^* / F_q^* normalized to relative trace 1,
//   sum chi'(x) = G_{f'}(chi') / G_f(chi'|),
// an element of Z[zeta_{k'}].
inline CycInt yamamoto_sum(u64 p, unsigned f, unsigned fprime, u64 kprime, u64 u,
                           unsigned threads = 1, u64 max_q = kVerifyLimit) {
    (void)threads;
    if (fprime % f != 0) fail(err::not_a_divisor, "f must divide f'");
    auto F = get_field(p, fprime, max_q);
    if (F->q > max_q) fail(err::too_large, "q'");
    if ((F->q - 1) % kprime != 0) fail(err::not_a_divisor, "k' must divide q'-1");
    u128 qw = 1;
    for (unsigned i = 0; i < f; ++i) qw *= p;
    u64 q = u64(qw);
    u64 N = (F->q - 1) / (q - 1);
    if (mulmod(u % kprime, N % kprime, kprime) == 0)
        fail(err::trivial_restriction, "restriction of chi' to the subfield is trivial");
    if (q > (u64(1) << 22)) fail(err::too_large, "subfield too large for the discrete-log map");

    // discrete logs of the embedded subfield w.r.t. Gamma
    FieldElement Gamma = F->pow(F->gamma, N);
    std::unordered_map<u64, u64> dlog;
    dlog.reserve(q);
    {
        FieldElement x = F->one();
        for (u64 b = 0; b < q - 1; ++b) {
            dlog.emplace(F->encode(x), b);
            x = F->mul(x, Gamma);
        }
    }
    auto M = F->partial_trace_matrix(f);  // Tr_{q'/q}: stride-f Frobenius orbit sums

    std::vector<Int> raw(kprime, 0);
    for (PowerStream s(*F, 0, N); !s.done(); s.advance()) {
        FieldElement tr = F->apply_matrix(M, s.value());
        if (F->is_zero(tr)) continue;
        auto it = dlog.find(F->encode(tr));
        if (it == dlog.end()) fail(err::range_error, "relative trace left the subfield");
        u64 b = it->second;
        // normalized representative gamma'^{a - bN}; character exponent u*(a - bN)
        u64 expo = (s.exponent() + (F->q - 1) - mulmod(b, N, F->q - 1)) % (F->q - 1);
        raw[mulmod(u % kprime, expo % kprime, kprime)] += 1;
    }
    return CycInt::from_raw(kprime, std::move(raw));
}

// cross-check of the lemma: sum * G_f(chi'|_{F_q}) == G_{f'}(chi') exactly.
inline bool yamamoto_matches(u64 p, unsigned f, unsigned fprime, u64 kprime, u64 u,
                             unsigned threads = 1, u64 max_q = kVerifyLimit,
                             const std::string& cache_dir = {}) {
    auto F = get_field(p, fprime, max_q);
    TableOptions topt;
    topt.threads = threads;
    topt.max_q = max_q;
    topt.cache_dir = cache_dir;
    auto T = get_table(*F, kprime, topt);
    CycInt Gbig = gauss_sum_exact(*T, u).value;
    // chi' restricted to F_q sends Gamma^a to zeta_{k'}^{u N a}
    u128 qw = 1;
    for (unsigned i = 0; i < f; ++i) qw *= p;
    u64 N = (F->q - 1) / (u64(qw) - 1);
    u64 u_restricted = mulmod(u % kprime, N % kprime, kprime);
    CycInt Grest = gauss_sum_in_subfield(*F, f, kprime, u_restricted);
    CycInt S = yamamoto_sum(p, f, fprime, kprime, u, threads, max_q);
    return values_equal(S * Grest, Gbig);
}

// Corollary check: for odd k' with gcd(k', p-1) = 1, theta at exponent t is
// still exactly 1 provided p_1^{e_1} does not divide t.
inline bool conjugate_exponent_check(u64 p, u64 k, u64 p1, u64 t, unsigned threads = 1,
                                     u64 max_q = kVerifyLimit) {
    u64 kprime = k * p1;
    if (kprime % 2 == 0 || gcd_u64(kprime, p - 1) != 1)
        fail(err::bad_parameters, "corollary requires odd k' and gcd(k', p-1) = 1");
    unsigned e1 = valuation(k, p1);
    u64 bound = 1;
    for (unsigned i = 0; i < e1; ++i) bound *= p1;
    if (t % bound == 0) fail(err::bad_parameters, "t outside the corollary's divisibility bound");
    auto R = relative_gauss(p, k, p1, t, threads, max_q);
    return R.classification == ThetaKind::PlusOne;
}

}  // namespace csrg
