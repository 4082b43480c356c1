#pragma once

#include <algorithm>
#include <map>
#include <set>

#include "csrg/gf.hpp"
#include "csrg/residue.hpp"

namespace csrg {

// Connection-set builders.  A ConnectionSpec is (p, f, k, I): the union of
// cyclotomic classes D = U_{i in I} C_i^{(k, p^f)}.  Builders never refuse
// large parameters; specs whose field exceeds the numeric tier are marked
// symbolic and only their set arithmetic is checked.

inline constexpr u64 kNumericLimit = u64(1) << 25;  // symbolic beyond this

struct ConnectionSpec {
    u64 p = 0;
    u64 f = 0;
    u64 k = 0;
    std::vector<u64> I;  // sorted, distinct, in [0, k)
    bool symbolic = false;
    std::string source = "manual";
    std::map<std::string, std::string> params;

    u64 q() const {
        if (symbolic) fail(err::too_large, "symbolic spec has no materialized q");
        u64 q = 1;
        for (u64 i = 0; i < f; ++i) q *= p;
        return q;
    }
    // |D| = |I| (q-1)/k for numeric specs
    u64 degree() const { return I.size() * ((q() - 1) / k); }
};

inline bool fits_numeric(u64 p, u64 f) {
    u128 q = 1;
    for (u64 i = 0; i < f; ++i) {
        q *= p;
        if (q > kNumericLimit) return false;
    }
    return true;
}

inline ConnectionSpec make_spec(u64 p, u64 f, u64 k, std::vector<u64> I,
                                std::string source = "manual",
                                std::map<std::string, std::string> params = {}) {
    if (!is_prime_u64(p)) fail(err::not_prime, std::to_string(p));
    if (f < 1 || k < 2) fail(err::bad_parameters, "need f >= 1 and k >= 2");
    // k | p^f - 1, checked by modular exponentiation so symbolic sizes work
    if (powmod(p % k, f, k) != 1 % k)
        fail(err::bad_parameters, "k = " + std::to_string(k) + " does not divide p^f - 1");
    std::sort(I.begin(), I.end());
    if (I.empty()) fail(err::bad_parameters, "index set is empty");
    if (std::adjacent_find(I.begin(), I.end()) != I.end())
        fail(err::duplicate_indices, "index set has duplicates");
    if (I.back() >= k) fail(err::bad_parameters, "index out of range");
    ConnectionSpec s;
    s.p = p;
    s.f = f;
    s.k = k;
    s.I = std::move(I);
    s.symbolic = !fits_numeric(p, f);
    s.source = std::move(source);
    s.params = std::move(params);
    return s;
}

// x in C_i^{(k,q)}  <=>  (x * gamma^{-i})^{(q-1)/k} = 1
inline bool cyclotomic_class_membership(const FieldSpec& F, u64 k, u64 i, const FieldElement& x) {
    if ((F.q - 1) % k != 0) fail(err::not_a_divisor, "k");
    if (F.is_zero(x)) fail(err::zero_element, "0 is in no cyclotomic class");
    FieldElement y = F.mul(x, F.pow(F.gamma, F.q - 1 - (i % (F.q - 1))));
    return F.pow(y, (F.q - 1) / k) == F.one();
}

// ---- H sets ---------------------------------------------------------------

struct HSet {
    u64 k = 0;   // ambient modulus of the members
    u64 p1 = 0;  // distinguished odd prime
    std::vector<u64> H;
};

enum class HMode { ResidueCover, VanishingSum };

// residue-cover: H covers Z_{p1^m} exactly once mod p1^m (m = v_{p1}(k)).
// vanishing-sum: sum of zeta_{p1}^i over H is 0, i.e. equal counts mod p1.
inline bool validate_H(const HSet& hs, HMode mode) {
    if (hs.H.empty()) return false;
    if (mode == HMode::ResidueCover) {
        u64 m = 1;
        u64 kk = hs.k;
        while (kk % hs.p1 == 0) kk /= hs.p1, m *= hs.p1;
        std::vector<u64> cnt(m, 0);
        for (u64 i : hs.H) cnt[i % m]++;
        for (u64 c : cnt)
            if (c != 1) return false;
        return true;
    }
    std::vector<u64> cnt(hs.p1, 0);
    for (u64 i : hs.H) cnt[i % hs.p1]++;
    for (u64 c : cnt)
        if (c != cnt[0]) return false;
    return true;
}

// Q = index-2 subgroup (the squares) of (Z/2p1Z)^*, 2Q its coset by 2,
// plus a chosen extra residue; the paper's H for the skew-Hadamard family.
inline std::vector<u64> q_union_2q(u64 p1, u64 extra) {
    u64 m = 2 * p1;
    std::set<u64> out;
    for (u64 x = 1; x < m; ++x)
        if (gcd_u64(x, m) == 1) out.insert(mulmod(x, x, m));
    std::set<u64> twoq;
    for (u64 x : out) twoq.insert(mulmod(2, x, m));
    out.insert(twoq.begin(), twoq.end());
    out.insert(extra % m);
    return std::vector<u64>(out.begin(), out.end());
}

// ---- sporadic seeds (the eleven exceptional parameter rows) ---------------

inline ConnectionSpec build_table1(unsigned no) {
    struct Row {
        u64 k, p, f;
    };
    static const Row rows[11] = {{11, 3, 5},   {19, 5, 9},   {35, 3, 12},  {37, 7, 9},
                                 {43, 11, 7},  {67, 17, 33}, {107, 3, 53}, {133, 5, 18},
                                 {163, 41, 81}, {323, 3, 144}, {499, 5, 249}};
    if (no < 1 || no > 11) fail(err::bad_parameters, "row number must be 1..11");
    const Row& r = rows[no - 1];
    return make_spec(r.p, r.f, r.k, {0}, "table1", {{"no", std::to_string(no)}});
}

// ---- the three strongly-regular families with explicit parameter lists ----

inline ConnectionSpec build_thm13(const std::string& variant, u64 p, u64 p1, u64 p2, u64 m,
                                  u64 n) {
    if (m < 1) fail(err::bad_parameters, "m >= 1");
    auto pw = [](u64 b, u64 e) {
        u64 r = 1;
        for (u64 i = 0; i < e; ++i) r = checked_mul_u64(r, b);
        return r;
    };
    std::map<std::string, std::string> params{{"p", std::to_string(p)},
                                              {"p1", std::to_string(p1)},
                                              {"m", std::to_string(m)}};
    if (variant == "i") {
        static const std::set<std::pair<u64, u64>> listed{{2, 7},  {3, 107}, {5, 19},
                                                          {5, 499}, {17, 67}, {41, 163}};
        if ((p1 - 1) % 2 != 0) fail(err::bad_parameters, "p1 must be odd");
        u64 k = pw(p1, m);
        u64 f = checked_mul_u64(pw(p1, m - 1), (p1 - 1) / 2);
        std::vector<u64> I(pw(p1, m - 1));
        for (u64 i = 0; i < I.size(); ++i) I[i] = i;
        params["listed"] = listed.count({p, p1}) ? "true" : "false";
        return make_spec(p, f, k, std::move(I), "thm13i", std::move(params));
    }
    if (variant == "ii") {
        static const std::set<std::pair<u64, u64>> listed{{3, 13}, {7, 37}};
        if ((p1 - 1) % 4 != 0) fail(err::bad_parameters, "p1 = 1 (mod 4) required");
        u64 k = pw(p1, m);
        u64 f = checked_mul_u64(pw(p1, m - 1), (p1 - 1) / 4);
        std::vector<u64> I(pw(p1, m - 1));
        for (u64 i = 0; i < I.size(); ++i) I[i] = i;
        params["listed"] = listed.count({p, p1}) ? "true" : "false";
        return make_spec(p, f, k, std::move(I), "thm13ii", std::move(params));
    }
    if (variant == "iii") {
        static const std::set<std::tuple<u64, u64, u64>> listed{{2, 3, 5}, {3, 5, 7}, {3, 17, 19}};
        if (n < 1) fail(err::bad_parameters, "n >= 1");
        u64 k = checked_mul_u64(pw(p1, m), pw(p2, n));
        u64 f = checked_mul_u64(checked_mul_u64(pw(p1, m - 1), p1 - 1),
                                checked_mul_u64(pw(p2, n - 1), p2 - 1));
        if (f % 2 != 0) fail(err::bad_parameters, "phi(k) must be even");
        f /= 2;
        std::vector<u64> I;
        u64 P1m = pw(p1, m), P2n = pw(p2, n);
        for (u64 i = 0; i < P1m / p1; ++i)
            for (u64 j = 0; j < P2n / p2; ++j) I.push_back((i * P2n + j * P1m) % k);
        params["p2"] = std::to_string(p2);
        params["n"] = std::to_string(n);
        params["listed"] = listed.count({p, p1, p2}) ? "true" : "false";
        return make_spec(p, f, k, std::move(I), "thm13iii", std::move(params));
    }
    fail(err::bad_parameters, "variant must be i, ii or iii");
}

// ---- skew-Hadamard / Paley-type families -----------------------------------

inline ConnectionSpec build_thm14(const std::string& variant, u64 p, u64 p1, u64 m, u64 s,
                                  const std::vector<u64>* Hopt = nullptr) {
    auto pw = [](u64 b, u64 e) {
        u64 r = 1;
        for (u64 i = 0; i < e; ++i) r = checked_mul_u64(r, b);
        return r;
    };
    std::map<std::string, std::string> params{{"p", std::to_string(p)},
                                              {"p1", std::to_string(p1)},
                                              {"m", std::to_string(m)}};
    if (variant == "i") {
        if (p1 % 8 != 7 || !is_prime_u64(p1)) fail(err::bad_parameters, "p1 = 7 (mod 8) prime required");
        if (s % 2 == 0) fail(err::bad_parameters, "s must be odd");
        u64 k = 2 * pw(p1, m);
        u64 f0 = mult_order(p, k);
        if (f0 != euler_phi_u64(k) / 2)
            fail(err::bad_parameters, "ord_k(p) must be phi(k)/2");
        std::vector<u64> H;
        if (Hopt) {
            H = *Hopt;
        } else {
            H.resize(pw(p1, m));
            for (u64 i = 0; i < H.size(); ++i) H[i] = i;
        }
        if (!validate_H(HSet{k, p1, H}, HMode::ResidueCover))
            fail(err::invalid_h, "H must cover Z_{p1^m} exactly once");
        u64 f = checked_mul_u64(f0, s);
        params["s"] = std::to_string(s);
        params["predicted"] = (p % 4 == 3) ? "skew_hadamard" : "paley_pds";
        return make_spec(p, f, k, std::move(H), "thm14i", std::move(params));
    }
    if (variant == "ii") {
        static const std::set<std::pair<u64, u64>> listed{{3, 107}, {5, 19}, {17, 67}, {41, 163},
                                                          {5, 499}};
        if (p1 % 2 == 0 || !is_prime_u64(p1)) fail(err::bad_parameters, "odd prime p1 required");
        u64 k = 2 * pw(p1, m);
        u64 f = checked_mul_u64(pw(p1, m - 1), (p1 - 1) / 2);
        std::vector<u64> H = Hopt ? *Hopt : q_union_2q(p1, 0);
        if (!validate_H(HSet{2 * p1, p1, H}, HMode::VanishingSum))
            fail(err::invalid_h, "sum of zeta_{p1}^i over H must vanish");
        // the union bound in the display reads inclusively; cardinality
        // |D| = (q-1)/2 forces exactly p1^{m-1} values of j
        std::set<u64> I;
        u64 jmax = pw(p1, m - 1);
        for (u64 j = 0; j < jmax; ++j)
            for (u64 i : H) I.insert((2 * j + i * jmax) % k);
        if (I.size() != pw(p1, m)) fail(err::invalid_h, "index set does not reach size k/2");
        params["listed"] = listed.count({p, p1}) ? "true" : "false";
        params["predicted"] = (p % 4 == 3) ? "skew_hadamard" : "paley_pds";
        params["union_bound"] = "exclusive";
        return make_spec(p, f, k, std::vector<u64>(I.begin(), I.end()), "thm14ii",
                         std::move(params));
    }
    fail(err::bad_parameters, "variant must be i or ii");
}

// ---- general recursive families -------------------------------------------

// k = prod p_i^{e_i}; hypotheses: <p> has index e mod h = prod p_i, the index
// survives inflation to k, and p is semi-primitive mod h_j = prod_{i != j} p_i
// for every j with e_j > 1.
inline ConnectionSpec build_srg_family(u64 p, const std::vector<std::pair<u64, unsigned>>& primes,
                                       u64 e) {
    if (primes.empty()) fail(err::bad_parameters, "need at least one prime");
    u64 h = 1, k = 1;
    for (auto& [pi, ei] : primes) {
        if (pi % 2 == 0 || !is_prime_u64(pi)) fail(err::bad_parameters, "odd primes required");
        if (ei < 1) fail(err::bad_parameters, "exponents must be >= 1");
        h = checked_mul_u64(h, pi);
        for (unsigned j = 0; j < ei; ++j) k = checked_mul_u64(k, pi);
    }
    if (gcd_u64(p, k) != 1) fail(err::not_coprime, "p and k");
    if (subgroup_index(p, h) != e)
        fail(err::hypothesis_failed, "index of <p> mod " + std::to_string(h) + " is " +
                                         std::to_string(subgroup_index(p, h)) + ", not " +
                                         std::to_string(e));
    if (!check_index_stability(p, h, k))
        fail(err::hypothesis_failed, "index of <p> is not stable from " + std::to_string(h) +
                                         " to " + std::to_string(k));
    for (size_t j = 0; j < primes.size(); ++j) {
        if (primes[j].second == 1) continue;
        u64 hj = 1;
        for (size_t i = 0; i < primes.size(); ++i)
            if (i != j) hj *= primes[i].first;
        if (!is_semiprimitive(p, hj))
            fail(err::hypothesis_failed, "p^s = -1 (mod " + std::to_string(hj) +
                                             ") has no solution (needed for p_" +
                                             std::to_string(j + 1) + ")");
    }
    u64 f = euler_phi_u64(k) / e;
    // I = { sum_j i_j n_j : 0 <= i_j < p_j^{e_j - 1} }, n_j = prod_{i != j} p_i^{e_i}
    std::vector<u64> I{0};
    for (size_t j = 0; j < primes.size(); ++j) {
        u64 nj = 1;
        for (size_t i = 0; i < primes.size(); ++i) {
            if (i == j) continue;
            for (unsigned t = 0; t < primes[i].second; ++t) nj = checked_mul_u64(nj, primes[i].first);
        }
        u64 reps = 1;
        for (unsigned t = 0; t + 1 < primes[j].second; ++t) reps *= primes[j].first;
        std::vector<u64> next;
        for (u64 base : I)
            for (u64 ij = 0; ij < reps; ++ij) next.push_back((base + ij % k * (nj % k)) % k);
        I = std::move(next);
    }
    std::map<std::string, std::string> params{{"p", std::to_string(p)}, {"e", std::to_string(e)}};
    std::string ks;
    for (auto& [pi, ei] : primes) ks += (ks.empty() ? "" : ",") + std::to_string(pi) + "^" + std::to_string(ei);
    params["primes"] = ks;
    return make_spec(p, f, k, std::move(I), "srg_family", std::move(params));
}

// k = 2 p1^{e1}; D' = U_{i1} U_{i in H} C_{2 i1 + i k/h}; H has a vanishing
// zeta_{p1} sum.  The base (e1 = 1) member is exactly H itself.
inline ConnectionSpec build_shd_family(u64 p, u64 p1, unsigned e1, u64 e, const std::vector<u64>& H) {
    if (p1 % 2 == 0 || !is_prime_u64(p1)) fail(err::bad_parameters, "odd prime p1 required");
    if (e1 < 1) fail(err::bad_parameters, "e1 >= 1");
    u64 h = 2 * p1;
    u64 k = 2;
    for (unsigned i = 0; i < e1; ++i) k = checked_mul_u64(k, p1);
    if (gcd_u64(p, k) != 1) fail(err::not_coprime, "p and k");
    if (subgroup_index(p, h) != e)
        fail(err::hypothesis_failed, "index of <p> mod 2p1 is not " + std::to_string(e));
    if (!check_index_stability(p, h, k))
        fail(err::hypothesis_failed, "index of <p> is not stable up to k");
    if (gcd_u64(k / 2, p - 1) != 1) fail(err::hypothesis_failed, "gcd(k/2, p-1) must be 1");
    if (H.size() != p1 || !validate_H(HSet{h, p1, H}, HMode::VanishingSum))
        fail(err::invalid_h, "H must have p1 elements with vanishing zeta_{p1} sum");
    u64 f = euler_phi_u64(k) / e;
    std::set<u64> I;
    u64 step = k / h;  // p1^{e1-1}
    for (u64 i1 = 0; i1 < step; ++i1)
        for (u64 i : H) I.insert((2 * i1 + mulmod(i, step, k)) % k);
    if (2 * I.size() != k) fail(err::invalid_h, "index set does not reach size k/2");
    std::map<std::string, std::string> params{{"p", std::to_string(p)},
                                              {"p1", std::to_string(p1)},
                                              {"e1", std::to_string(e1)},
                                              {"e", std::to_string(e)},
                                              {"union_bound", "exclusive"},
                                              {"predicted", p % 4 == 3 ? "skew_hadamard" : "paley_pds"}};
    return make_spec(p, f, k, std::vector<u64>(I.begin(), I.end()), "shd_family",
                     std::move(params));
}

// One inflation step k -> k p1: I' = { i p1 + j k/p1^{e1} : i in I, 0 <= j < p1 }.
inline ConnectionSpec lift_index_set(const ConnectionSpec& s, u64 p1, unsigned e1) {
    if (p1 % 2 == 0 || !is_prime_u64(p1)) fail(err::bad_parameters, "odd prime p1 required");
    if (valuation(s.k, p1) != e1)
        fail(err::hypothesis_failed, "p1^e1 must divide k exactly");
    u64 kprime = checked_mul_u64(s.k, p1);
    if (subgroup_index(s.p, s.k) != subgroup_index(s.p, kprime))
        fail(err::hypothesis_failed, "index of <p> changes from k to k p1");
    u64 pe = 1;
    for (unsigned i = 0; i < e1; ++i) pe *= p1;
    u64 step = s.k / pe;
    std::set<u64> I;
    for (u64 i : s.I)
        for (u64 j = 0; j < p1; ++j) I.insert((mulmod(i, p1, kprime) + mulmod(j, step, kprime)) % kprime);
    if (I.size() != p1 * s.I.size())
        fail(err::duplicate_indices, "lifted index set collapsed; hypothesis violated");
    u64 fprime = checked_mul_u64(s.f, p1);
    std::map<std::string, std::string> params = s.params;
    params["lifted_from_k"] = std::to_string(s.k);
    params["lift_p1"] = std::to_string(p1);
    return make_spec(s.p, fprime, kprime, std::vector<u64>(I.begin(), I.end()),
                     "lift(" + s.source + ")", std::move(params));
}

}  // namespace csrg
