#pragma once

#include <fstream>
#include <thread>

#include "csrg/cycint.hpp"
#include "csrg/gf.hpp"

namespace csrg {

// Trace-count tables N(i,t) = #{a : a = i (mod k), Tr(gamma^a) = t} compress
// one field enumeration into the k*p numbers every character sum needs; all
// Gauss sums and profiles are derived from them exactly.

inline constexpr u64 kVerifyLimit = u64(1) << 24;  // default cap for enumeration paths
inline constexpr u64 kHeavyLimit = u64(1) << 25;   // explicit opt-in tier (covers 11^7)

struct TraceCountTable {
    u64 p = 0;
    unsigned f = 0;
    u64 k = 0;
    u64 q = 0;
    std::vector<u64> counts;  // k rows of p entries, row-major

    u64 at(u64 i, u64 t) const { return counts[i * p + t]; }

    void validate() const {
        if (counts.size() != k * p) fail(err::io_error, "count table has wrong size");
        u64 total = 0, expect = (q - 1) / k;
        for (u64 i = 0; i < k; ++i) {
            u64 row = 0;
            for (u64 t = 0; t < p; ++t) row += at(i, t);
            if (row != expect) fail(err::io_error, "non-uniform class size in count table");
            total += row;
        }
        if (total != q - 1) fail(err::io_error, "count table total mismatch");
    }
};

inline TraceCountTable build_trace_counts(const FieldSpec& F, u64 k, unsigned threads = 0,
                                          u64 max_q = kVerifyLimit) {
    if (F.q > max_q) fail(err::too_large, "q = " + std::to_string(F.q));
    if (k == 0 || (F.q - 1) % k != 0) fail(err::not_a_divisor, "k = " + std::to_string(k));
    TraceCountTable T;
    T.p = F.p;
    T.f = F.f;
    T.k = k;
    T.q = F.q;
    T.counts.assign(k * F.p, 0);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    u64 n = F.q - 1;
    threads = unsigned(std::min<u64>(threads, std::max<u64>(1, n / 4096)));
    if (threads <= 1) {
        u64 cls = 0;
        const auto& tv = F.trace_vec;
        for (PowerStream s(F, 0, n); !s.done(); s.advance()) {
            u64 acc = 0;
            const auto& c = s.value().c;
            for (unsigned i = 0; i < F.f; ++i) acc += tv[i] * c[i] % F.p;
            T.counts[cls * F.p + acc % F.p]++;
            if (++cls == k) cls = 0;
        }
        return T;
    }

    std::vector<std::vector<u64>> part(threads);
    std::vector<std::thread> pool;
    u64 chunk = n / threads;
    for (unsigned t = 0; t < threads; ++t) {
        u64 start = t * chunk;
        u64 count = (t + 1 == threads) ? n - start : chunk;
        pool.emplace_back([&, t, start, count] {
            std::vector<u64> local(k * F.p, 0);
            u64 cls = start % k;
            const auto& tv = F.trace_vec;
            for (PowerStream s(F, start, count); !s.done(); s.advance()) {
                u64 acc = 0;
                const auto& c = s.value().c;
                for (unsigned i = 0; i < F.f; ++i) acc += tv[i] * c[i] % F.p;
                local[cls * F.p + acc % F.p]++;
                if (++cls == k) cls = 0;
            }
            part[t] = std::move(local);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& local : part)
        for (size_t i = 0; i < local.size(); ++i) T.counts[i] += local[i];
    return T;
}

// ---- cache file: magic "CSRG", version 1, p/f/k as u64 LE, counts u64 LE --

namespace iodetail {
inline void put_u64(std::ostream& os, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<char*>(b), 8);
}
inline u64 get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) fail(err::io_error, "truncated cache file");
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return v;
}
}  // namespace iodetail

inline void write_trace_counts(const std::string& path, const TraceCountTable& T) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) fail(err::io_error, "cannot write " + path);
    os.write("CSRG", 4);
    os.put(1);
    iodetail::put_u64(os, T.p);
    iodetail::put_u64(os, T.f);
    iodetail::put_u64(os, T.k);
    for (u64 c : T.counts) iodetail::put_u64(os, c);
    if (!os) fail(err::io_error, "write failed: " + path);
}

inline TraceCountTable read_trace_counts(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(err::io_error, "cannot read " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "CSRG") fail(err::io_error, "bad magic in " + path);
    int ver = is.get();
    if (ver != 1) fail(err::io_error, "unsupported cache version");
    TraceCountTable T;
    T.p = iodetail::get_u64(is);
    T.f = unsigned(iodetail::get_u64(is));
    T.k = iodetail::get_u64(is);
    u128 q = 1;
    for (unsigned i = 0; i < T.f; ++i) q *= T.p;
    T.q = u64(q);
    T.counts.resize(T.k * T.p);
    for (auto& c : T.counts) c = iodetail::get_u64(is);
    T.validate();
    return T;
}

// ---- Gauss sums ----------------------------------------------------------

// Values live in Z[zeta_{kp}] for odd p; for p = 2 the sign zeta_2 = -1 is
// folded into the coefficients and the conductor is k.
inline u64 gauss_conductor(u64 p, u64 k) { return p == 2 ? k : k * p; }

struct GaussSumValue {
    CycInt value;
    u64 p = 0;
    unsigned f = 0;
    u64 k = 0;
    u64 u = 0;
};

// G_f(chi^u) with chi(gamma^a) = zeta_k^a, from the count table:
//   sum_i zeta_k^{ui} sum_t N(i,t) zeta_p^t.
inline GaussSumValue gauss_sum_exact(const TraceCountTable& T, u64 u) {
    u64 n = gauss_conductor(T.p, T.k);
    std::vector<Int> raw(n, 0);
    u %= T.k;
    for (u64 i = 0; i < T.k; ++i) {
        u64 e = mulmod(u, i, T.k);
        for (u64 t = 0; t < T.p; ++t) {
            u64 c = T.at(i, t);
            if (!c) continue;
            if (T.p == 2) {
                if (t)
                    raw[e] -= c;
                else
                    raw[e] += c;
            } else {
                raw[(e * T.p + t * T.k) % n] += c;
            }
        }
    }
    return GaussSumValue{CycInt::from_raw(n, std::move(raw)), T.p, T.f, T.k, u};
}

// Quadratic sum folded into Z[zeta_p]: A_0 - A_1 where A_i are the two class
// sums.  Same value as gauss_sum_exact at k = 2 but usable when p is large.
inline CycInt quadratic_gauss_folded(const TraceCountTable& T) {
    if (T.k != 2) fail(err::bad_parameters, "k must be 2");
    std::vector<Int> raw(T.p, 0);
    for (u64 t = 0; t < T.p; ++t) raw[t] = Int(T.at(0, t)) - Int(T.at(1, t));
    return CycInt::from_raw(T.p, std::move(raw));
}

// Classical quadratic closed form: (-1)^(f-1) * g_p^f where g_p is the prime
// quadratic Gauss sum sum_x (x|p) zeta_p^x.
inline CycInt quadratic_gauss_closed(u64 p, unsigned f) {
    if (p == 2 || !is_prime_u64(p)) fail(err::bad_parameters, "odd prime required");
    std::vector<Int> raw(p, -1);
    raw[0] = 0;
    for (u64 x = 1; x <= (p - 1) / 2; ++x) raw[mulmod(x, x, p)] = 1;  // Legendre by square marking
    CycInt g = CycInt::from_raw(p, std::move(raw));
    CycInt v = pow(g, f);
    return f % 2 == 0 ? v.neg() : v;
}

// Semi-primitive (pure) closed form: p^{-f/2} G_f(chi) = (-1)^{t-1} for
// p = 2 and (-1)^{t-1+(p^s+1)t/k} for odd p, with s minimal, f = 2st.
struct SemiprimitiveValue {
    int sign;     // +1 or -1
    Int value;    // sign * p^{f/2}
    u64 s;        // minimal exponent with p^s = -1 (mod k)
    u64 t;        // f / (2s)
};

inline SemiprimitiveValue semiprimitive_gauss_closed(u64 p, u64 k, unsigned f) {
    if (k <= 2) fail(err::bad_parameters, "k > 2 required");
    if (gcd_u64(p, k) != 1) fail(err::not_coprime, "p, k");
    u64 ord = mult_order(p, k);
    u64 s = 0;
    {
        u64 x = p % k;
        for (u64 i = 1; i <= ord; ++i) {
            if (x == k - 1) {
                s = i;
                break;
            }
            x = mulmod(x, p % k, k);
        }
    }
    if (s == 0) fail(err::not_semiprimitive, std::to_string(p) + " mod " + std::to_string(k));
    if (f % (2 * s) != 0) fail(err::bad_degree, "f must be a multiple of 2s = " + std::to_string(2 * s));
    u64 t = f / (2 * s);
    int sign;
    if (p == 2) {
        sign = (t - 1) % 2 == 0 ? 1 : -1;
    } else {
        // (p^s + 1)/k mod 2, computed mod 2k to avoid huge powers
        u64 ps = powmod(p, s, 2 * k);
        u64 ratio = ((ps + 1) % (2 * k)) / k;  // 0 or 1 times k folded: (p^s+1)/k mod 2
        u64 expo = (t - 1) + (ratio % 2) * t;
        sign = expo % 2 == 0 ? 1 : -1;
    }
    SemiprimitiveValue r;
    r.sign = sign;
    r.s = s;
    r.t = t;
    r.value = Int(sign) * pow_int(Int(p), f / 2);
    return r;
}

// ---- characters evaluated at field elements ------------------------------

// discrete log by scan; only used at desk scale (q <= 2^24 one-off lookups).
inline u64 discrete_log(const FieldSpec& F, const FieldElement& x) {
    if (F.is_zero(x)) fail(err::zero_element, "log of zero");
    for (PowerStream s(F, 0, F.q - 1); !s.done(); s.advance())
        if (s.value() == x) return s.exponent();
    fail(err::range_error, "element not found in cyclic group");
}

// ---- Gauss sums of characters restricted to a subfield -------------------

// For the subfield F_{p^f0} of F (with Gamma = gamma^{(q-1)/(q0-1)}), the sum
//   sum_a zeta_k0^{u a} zeta_p^{Tr_{q0/p}(Gamma^a)}
// computed intrinsically inside F.  This is the Gauss sum of the character
// compatible with the big field's gamma-normalized character, which is what
// Davenport-Hasse lifting and relative Gauss sums pair against.
inline CycInt gauss_sum_in_subfield(const FieldSpec& F, unsigned f0, u64 k0, u64 u) {
    if (f0 == 0 || F.f % f0 != 0) fail(err::not_a_divisor, "subfield degree");
    u128 q0w = 1;
    for (unsigned i = 0; i < f0; ++i) q0w *= F.p;
    u64 q0 = u64(q0w);
    // zeta_k0^{u a} must be well defined on the cyclic group of order q0-1
    if (mulmod(u % k0, (q0 - 1) % k0, k0) != 0)
        fail(err::not_a_divisor, "character not well defined on the subfield");
    // Tr_{q0/p} on subfield elements: sum of the first f0 Frobenius powers
    auto M = frobenius_sum_matrix(F, f0);
    FieldElement Gamma = F.pow(F.gamma, (F.q - 1) / (q0 - 1));
    u64 n = gauss_conductor(F.p, k0);
    std::vector<Int> raw(n, 0);
    FieldElement x = F.one();
    u64 e = 0;
    u %= k0;
    for (u64 a = 0; a < q0 - 1; ++a) {
        FieldElement tr = F.apply_matrix(M, x);
        for (unsigned i = 1; i < F.f; ++i)
            if (tr.c[i]) fail(err::range_error, "subfield trace not in prime field");
        u64 t = tr.c[0];
        if (F.p == 2) {
            if (t)
                raw[e] -= 1;
            else
                raw[e] += 1;
        } else {
            raw[(e * F.p + t * k0) % n] += 1;
        }
        x = F.mul(x, Gamma);
        e += u;
        if (e >= k0) e -= k0;
    }
    return CycInt::from_raw(n, std::move(raw));
}

// ---- Davenport-Hasse relations -------------------------------------------

// Lifting: the gamma-normalized character of order k on F_{p^f}, lifted
// through the norm to F_{p^fs}, satisfies G_{fs}(chi') = (-1)^{s-1} G_f(chi)^s.
inline bool dh_lift_check_core(const FieldSpec& big, const TraceCountTable& T, unsigned f, u64 u,
                               unsigned s) {
    if (s == 1) return true;
    CycInt lifted = gauss_sum_exact(T, u).value;
    CycInt base = gauss_sum_in_subfield(big, f, T.k, u);
    CycInt rhs = pow(base, s);
    if (s % 2 == 0) rhs = rhs.neg();
    return values_equal(lifted, rhs);
}

inline bool dh_lift_check(u64 p, unsigned f, u64 k, u64 u, unsigned s, unsigned threads = 0,
                          u64 max_q = kVerifyLimit) {
    if (s == 0) fail(err::bad_parameters, "s >= 1");
    auto big = build_field(p, f * s, max_q);
    if (s == 1) return true;
    auto T = build_trace_counts(big, k, threads, max_q);
    return dh_lift_check_core(big, T, f, u, s);
}

// Product relation, cross-multiplied to stay in the ring: with eta = chi^(k/l),
//   chi^l(l) * prod_{i=0}^{l-1} G(chi eta^i) = G(chi^l) * prod_{i=1}^{l-1} G(eta^i).
inline bool dh_product_check(const FieldSpec& F, const TraceCountTable& T, u64 ell, u64 u) {
    u64 k = T.k;
    if (ell <= 1 || k % ell != 0) fail(err::bad_parameters, "auxiliary order must divide k");
    u64 step = k / ell;
    u %= k;
    if (u == 0) fail(err::degenerate_character, "chi trivial");
    for (u64 i = 1; i < ell; ++i)
        if ((u + i * step) % k == 0) fail(err::degenerate_character, "chi*eta^i trivial");
    if (mulmod(u, ell, k) == 0) fail(err::degenerate_character, "chi^l trivial");

    u64 n = gauss_conductor(T.p, k);
    // chi^l evaluated at the field element l*1: zeta_k^{l*u*dlog(l)}
    u64 lmodp = ell % F.p;
    if (lmodp == 0) fail(err::degenerate_character, "l vanishes in F_q");
    u64 dl = discrete_log(F, F.from_int(lmodp));
    u64 char_exp = mulmod(mulmod(u, ell, k), dl % k, k);

    CycInt lhs = CycInt::one(n);
    for (u64 i = 0; i < ell; ++i) lhs = lhs * gauss_sum_exact(T, (u + i * step) % k).value;
    lhs = lhs.shift((char_exp * (T.p == 2 ? 1 : T.p)) % n);  // multiply by zeta_k^char_exp

    CycInt rhs = gauss_sum_exact(T, mulmod(u, ell, k)).value;
    for (u64 i = 1; i < ell; ++i) rhs = rhs * gauss_sum_exact(T, (i * step) % k).value;
    return lhs == rhs;
}

// ---- Stickelberger digit-sum lemma ---------------------------------------

inline u64 digit_sum(u64 a, u64 p) {
    if (p < 2) fail(err::bad_parameters, "base must be >= 2");
    u64 s = 0;
    while (a) {
        s += a % p;
        a /= p;
    }
    return s;
}

// s_p(a) = (p-1) * sum_i <p^i a / (q-1)> with exact fractions over q-1.
inline bool digit_sum_identity_check(u64 a, u64 p, unsigned f) {
    u128 qw = 1;
    for (unsigned i = 0; i < f; ++i) qw *= p;
    if (qw > (u128(1) << 62)) fail(err::too_large, "q too large for digit-sum check");
    u64 q = u64(qw);
    if (a >= q - 1) fail(err::range_error, "need 0 <= a < q-1");
    u128 rhs_num = 0;  // sum of (p^i * a mod (q-1)), denominator q-1
    u64 x = a % (q - 1);
    for (unsigned i = 0; i < f; ++i) {
        rhs_num += x;
        x = mulmod(x, p, q - 1);
    }
    return u128(digit_sum(a, p)) * (q - 1) == u128(p - 1) * rhs_num;
}

}  // namespace csrg
