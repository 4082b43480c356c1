#pragma once

#include <chrono>

#include "csrg/cache.hpp"
#include "csrg/construct.hpp"
#include "csrg/gauss.hpp"

namespace csrg {

// Verdicts on connection sets: strong regularity from exact character
// profiles (the restricted eigenvalues), skew-Hadamard and Paley-type
// conditions from Lemma-style character value constraints, brute force
// confirmation on small fields.

struct VerifyOptions {
    unsigned threads = 1;
    u64 max_q = kVerifyLimit;
    u64 brute_limit = 4096;
    bool cross_check = false;  // also derive the profile through Gauss sums
    std::string cache_dir;
};

struct CharProfile {
    u64 q = 0, k = 0;
    u64 set_size = 0;              // |D|
    std::vector<CycInt> values;    // psi(gamma^a D) for a = 0..k-1, conductor p
};

// profile[a] = sum_{i in I} sum_t N((i+a) mod k, t) zeta_p^t
inline CharProfile char_profile(const TraceCountTable& T, const ConnectionSpec& spec) {
    T.validate();  // uniform class sizes justify factoring through a mod k
    CharProfile P;
    P.q = T.q;
    P.k = T.k;
    P.set_size = spec.I.size() * ((T.q - 1) / T.k);
    P.values.reserve(T.k);
    for (u64 a = 0; a < T.k; ++a) {
        std::vector<Int> raw(T.p, 0);
        for (u64 i : spec.I)
            for (u64 t = 0; t < T.p; ++t) raw[t] += Int(T.at((i + a) % T.k, t));
        P.values.push_back(CycInt::from_raw(T.p, std::move(raw)));
    }
    return P;
}

// Same values through the Gauss-sum expansion
//   psi(gamma^a D) = (1/k) sum_{j} G(chi^{-j}) sum_{i in I} zeta_k^{j(a+i)},
// computed in Z[zeta_{kp}] with an exact division by k at the end.
inline std::vector<CycInt> char_profile_via_gauss(const TraceCountTable& T,
                                                  const ConnectionSpec& spec) {
    u64 k = T.k, p = T.p;
    u64 n = gauss_conductor(p, k);
    u64 zk = (p == 2) ? 1 : p;  // zeta_k = zeta_n^{zk}
    std::vector<CycInt> gs;
    gs.reserve(k);
    for (u64 j = 0; j < k; ++j) gs.push_back(gauss_sum_exact(T, (k - j) % k).value);
    std::vector<CycInt> out;
    out.reserve(k);
    for (u64 a = 0; a < k; ++a) {
        std::vector<Int> raw(n + euler_phi_u64(n), 0);
        for (u64 j = 0; j < k; ++j) {
            const auto& G = gs[j].coeffs();
            for (u64 i : spec.I) {
                u64 shift = (mulmod(j, (a + i) % k, k) * zk) % n;
                for (u64 m = 0; m < G.size(); ++m) {
                    if (G[m] == 0) continue;
                    raw[m + shift] += G[m];  // multiply by zeta_k^{j(a+i)}
                }
            }
        }
        CycInt v = CycInt::from_raw(n, std::move(raw));
        out.push_back(v.div_exact(Int(k)));  // NonIntegralDivision = internal bug
    }
    return out;
}

struct SrgParams {
    u64 v = 0;
    u64 degree = 0;
    i64 lambda = 0, mu = 0;
    bool integral_eigenvalues = false;
    i64 r = 0, s = 0;       // valid when integral_eigenvalues
    i64 eig_sum = 0;        // r + s, always
    i64 eig_prod = 0;       // r * s, always
};

enum class VerdictKind { Srg, SkewHadamard, PaleyPds, None };

inline const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Srg: return "srg";
        case VerdictKind::SkewHadamard: return "skew_hadamard";
        case VerdictKind::PaleyPds: return "paley_pds";
        case VerdictKind::None: return "none";
    }
    return "?";
}

struct Verdict {
    VerdictKind kind = VerdictKind::None;
    std::optional<SrgParams> srg;
    std::vector<CycInt> profile;
    std::string method = "charsum";
    std::string reason;
    double elapsed_ms = 0;
};

// class of -1: gamma^{(q-1)/2}; in characteristic 2, -D = D always.
inline u64 minus_one_class(u64 q, u64 p, u64 k) { return p == 2 ? 0 : ((q - 1) / 2) % k; }

inline bool translate_equals(const std::vector<u64>& I, u64 j, u64 k) {
    std::set<u64> s(I.begin(), I.end());
    for (u64 i : I)
        if (!s.count((i + j) % k)) return false;
    return true;
}

inline bool translate_disjoint(const std::vector<u64>& I, u64 j, u64 k) {
    std::set<u64> s(I.begin(), I.end());
    for (u64 i : I)
        if (s.count((i + j) % k)) return false;
    return true;
}

// Common-neighbor counts by difference: c(w) = #{d in D : w + d in D}.
// SRG <=> c is constant on D (lambda) and on the non-neighbors (mu).
// Parallel over w; threads only read the membership bitmap.
inline std::vector<u64> pair_counts(const FieldSpec& F, const std::vector<char>& inD,
                                    unsigned threads = 1) {
    std::vector<u64> c(F.q, 0);
    std::vector<FieldElement> elems(F.q);
    for (u64 v = 0; v < F.q; ++v) elems[v] = F.decode(v);
    std::vector<u64> D;
    for (u64 d = 0; d < F.q; ++d)
        if (inD[d]) D.push_back(d);
    auto work = [&](u64 lo, u64 hi) {
        FieldElement sum = F.zero();  // per-thread scratch (lambda runs once per thread)
        for (u64 w = lo; w < hi; ++w) {
            u64 hits = 0;
            for (u64 d : D) {
                for (unsigned i = 0; i < F.f; ++i)
                    sum.c[i] = addmod(elems[w].c[i], elems[d].c[i], F.p);
                if (inD[F.encode(sum)]) ++hits;
            }
            c[w] = hits;
        }
    };
    if (threads <= 1 || F.q < 1024) {
        work(1, F.q);
    } else {
        std::vector<std::thread> pool;
        u64 chunk = (F.q - 1) / threads + 1;
        for (unsigned t = 0; t < threads; ++t) {
            u64 lo = 1 + t * chunk, hi = std::min<u64>(F.q, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return c;
}

inline std::vector<char> materialize_set(const FieldSpec& F, const ConnectionSpec& spec) {
    std::vector<char> inD(F.q, 0);
    std::set<u64> idx(spec.I.begin(), spec.I.end());
    u64 cls = 0;
    for (PowerStream s(F, 0, F.q - 1); !s.done(); s.advance()) {
        if (idx.count(cls)) inD[F.encode(s.value())] = 1;
        if (++cls == spec.k) cls = 0;
    }
    return inD;
}

// A^2 identity by explicit common-neighbor counting; q <= brute_limit.
inline std::optional<SrgParams> brute_force_adjacency(const FieldSpec& F, const ConnectionSpec& spec,
                                                      u64 brute_limit = 4096, unsigned threads = 1) {
    if (F.q > brute_limit) fail(err::too_large, "brute force beyond cap");
    if (spec.I.size() == spec.k) return std::nullopt;  // complete graph excluded
    u64 j0 = minus_one_class(F.q, F.p, spec.k);
    if (!translate_equals(spec.I, j0, spec.k)) return std::nullopt;  // not symmetric
    auto inD = materialize_set(F, spec);
    auto c = pair_counts(F, inD, threads);
    i64 lambda = -1, mu = -1;
    for (u64 w = 1; w < F.q; ++w) {
        if (inD[w]) {
            if (lambda < 0) lambda = i64(c[w]);
            if (i64(c[w]) != lambda) return std::nullopt;
        } else {
            if (mu < 0) mu = i64(c[w]);
            if (i64(c[w]) != mu) return std::nullopt;
        }
    }
    SrgParams P;
    P.v = F.q;
    P.degree = spec.degree();
    P.lambda = lambda;
    P.mu = mu < 0 ? 0 : mu;  // mu unset only if D U {0} = F_q
    // eigenvalues from x^2 - (lambda - mu) x - (degree - mu) = 0
    i64 b = P.lambda - P.mu, cq = i64(P.degree) - P.mu;
    i64 disc = b * b + 4 * cq;
    i64 root = i64(std::sqrt(double(disc)));
    while (root * root > disc) --root;
    while ((root + 1) * (root + 1) <= disc) ++root;
    P.eig_sum = b;
    P.eig_prod = -cq;
    if (root * root == disc && (b + root) % 2 == 0) {
        P.integral_eigenvalues = true;
        P.r = (b + root) / 2;
        P.s = (b - root) / 2;
    }
    return P;
}

namespace vdetail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline std::vector<CycInt> distinct_values(const std::vector<CycInt>& vals) {
    std::vector<CycInt> out;
    for (const auto& v : vals) {
        bool seen = false;
        for (const auto& w : out) seen = seen || w == v;
        if (!seen) out.push_back(v);
    }
    return out;
}

}  // namespace vdetail

inline Verdict verify_srg(const ConnectionSpec& spec, const VerifyOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.symbolic) fail(err::too_large, "symbolic spec cannot be verified numerically");
    Verdict V;
    auto F = get_field(spec.p, spec.f, kBuildLimit);
    if (F->q > opt.max_q) fail(err::too_large, "q = " + std::to_string(F->q));
    TableOptions topt{opt.threads, opt.max_q, opt.cache_dir};
    auto T = get_table(*F, spec.k, topt);
    auto prof = char_profile(*T, spec);
    V.profile = prof.values;

    if (opt.cross_check) {
        auto via = char_profile_via_gauss(*T, spec);
        for (u64 a = 0; a < spec.k; ++a)
            if (!values_equal(via[a], prof.values[a]))
                fail(err::non_integral_division, "gauss-expansion profile mismatch at class " +
                                                     std::to_string(a));
        V.method = "both";
    }

    if (spec.I.size() == spec.k) {
        V.kind = VerdictKind::None;
        V.reason = "connection set is all of F_q^*: complete graph excluded";
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    }
    u64 j0 = minus_one_class(F->q, F->p, spec.k);
    if (!translate_equals(spec.I, j0, spec.k)) {
        V.kind = VerdictKind::None;
        V.reason = "connection set is not symmetric (-D != D)";
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    }

    auto distinct = vdetail::distinct_values(prof.values);
    if (distinct.size() != 2) {
        V.kind = VerdictKind::None;
        V.reason = "profile has " + std::to_string(distinct.size()) +
                   " distinct values; strong regularity needs exactly 2";
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    }
    auto S = (distinct[0] + distinct[1]).detect_rational();
    auto Pr = (distinct[0] * distinct[1]).detect_rational();
    if (!S || !Pr) {
        V.kind = VerdictKind::None;
        V.reason = "eigenvalue sum/product not rational";
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    }
    SrgParams P;
    P.v = F->q;
    P.degree = prof.set_size;
    P.eig_sum = i64(*S);
    P.eig_prod = i64(*Pr);
    P.lambda = i64(P.degree) + P.eig_sum + P.eig_prod;
    P.mu = i64(P.degree) + P.eig_prod;
    if (P.lambda < 0 || P.mu < 0) {
        V.kind = VerdictKind::None;
        V.reason = "negative lambda or mu";
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    }
    auto r0 = distinct[0].detect_rational();
    auto r1 = distinct[1].detect_rational();
    if (r0 && r1) {
        P.integral_eigenvalues = true;
        P.r = i64(std::max(*r0, *r1));
        P.s = i64(std::min(*r0, *r1));
        // multiplicities solvable in nonnegative integers
        i64 num = -i64(P.degree) - i64(P.v - 1) * P.s;
        i64 den = P.r - P.s;
        if (num % den != 0 || num / den < 0 || num / den > i64(P.v - 1)) {
            V.kind = VerdictKind::None;
            V.reason = "multiplicity equations have no nonnegative integer solution";
            V.elapsed_ms = vdetail::ms_since(t0);
            return V;
        }
    } else {
        // irrational pair: feasibility forces conference-type parameters
        if (2 * i64(P.degree) + i64(P.v - 1) * P.eig_sum != 0) {
            V.kind = VerdictKind::None;
            V.reason = "irrational eigenvalues with non-conference parameters";
            V.elapsed_ms = vdetail::ms_since(t0);
            return V;
        }
    }

    if (F->q <= opt.brute_limit) {
        auto B = brute_force_adjacency(*F, spec, opt.brute_limit, opt.threads);
        if (!B || B->v != P.v || B->degree != P.degree || B->lambda != P.lambda || B->mu != P.mu)
            fail(err::range_error, "brute-force adjacency disagrees with the character profile");
        V.method = "both";
    }

    V.kind = VerdictKind::Srg;
    V.srg = P;
    V.elapsed_ms = vdetail::ms_since(t0);
    return V;
}

// difference representation counts: every nonzero element of F_q must occur
// exactly (q-3)/4 times among d1 - d2, d_i in D.
inline bool brute_force_difference_counts(const FieldSpec& F, const ConnectionSpec& spec,
                                          unsigned threads = 1) {
    auto inD = materialize_set(F, spec);
    // #{(d1,d2): d1 - d2 = w} = #{d in D : w + d in D}
    auto c = pair_counts(F, inD, threads);
    u64 want = (F.q - 3) / 4;
    for (u64 w = 1; w < F.q; ++w)
        if (c[w] != want) return false;
    return true;
}

inline Verdict verify_skew_hadamard(const ConnectionSpec& spec, const VerifyOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.symbolic) fail(err::too_large, "symbolic spec cannot be verified numerically");
    if (spec.p == 2) fail(err::even_field, "skew Hadamard difference sets need odd q");
    Verdict V;
    auto F = get_field(spec.p, spec.f, kBuildLimit);
    if (F->q > opt.max_q) fail(err::too_large, "q = " + std::to_string(F->q));
    TableOptions topt{opt.threads, opt.max_q, opt.cache_dir};
    auto T = get_table(*F, spec.k, topt);
    auto prof = char_profile(*T, spec);
    V.profile = prof.values;

    auto done = [&](VerdictKind kind, std::string reason) {
        V.kind = kind;
        V.reason = std::move(reason);
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    };

    if (2 * spec.I.size() != spec.k) return done(VerdictKind::None, "|D| != (q-1)/2");
    u64 j0 = minus_one_class(F->q, F->p, spec.k);
    if (!translate_disjoint(spec.I, j0, spec.k))
        return done(VerdictKind::None, "D and -D intersect");

    // Character condition: (2 psi(aD) + 1)^2 = -q for every a.
    for (const auto& x : prof.values) {
        CycInt u = x + x + CycInt(Int(1));
        if (!(u * u + CycInt(Int(i64(F->q)))).is_zero())
            return done(VerdictKind::None, "character value outside (-1 +- sqrt(-q))/2");
    }
    if (F->q <= opt.brute_limit) {
        if (!brute_force_difference_counts(*F, spec, opt.threads))
            fail(err::range_error, "difference counts disagree with the character condition");
        V.method = "both";
    }
    SrgParams P;  // difference-set parameters (v, (v-1)/2, (v-3)/4)
    P.v = F->q;
    P.degree = prof.set_size;
    P.lambda = i64((F->q - 3) / 4);
    P.mu = P.lambda;
    V.srg = P;
    return done(VerdictKind::SkewHadamard, "");
}

inline Verdict verify_paley_pds(const ConnectionSpec& spec, const VerifyOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.symbolic) fail(err::too_large, "symbolic spec cannot be verified numerically");
    Verdict V;
    auto F = get_field(spec.p, spec.f, kBuildLimit);
    if (F->q % 4 != 1) fail(err::bad_residue, "Paley type needs q = 1 (mod 4)");
    if (F->q > opt.max_q) fail(err::too_large, "q = " + std::to_string(F->q));
    TableOptions topt{opt.threads, opt.max_q, opt.cache_dir};
    auto T = get_table(*F, spec.k, topt);
    auto prof = char_profile(*T, spec);
    V.profile = prof.values;

    auto done = [&](VerdictKind kind, std::string reason) {
        V.kind = kind;
        V.reason = std::move(reason);
        V.elapsed_ms = vdetail::ms_since(t0);
        return V;
    };

    if (2 * spec.I.size() != spec.k) return done(VerdictKind::None, "|D| != (q-1)/2");
    u64 j0 = minus_one_class(F->q, F->p, spec.k);
    if (!translate_equals(spec.I, j0, spec.k)) return done(VerdictKind::None, "-D != D");

    for (const auto& x : prof.values) {
        CycInt u = x + x + CycInt(Int(1));
        if (!(u * u - CycInt(Int(i64(F->q)))).is_zero())
            return done(VerdictKind::None, "character value outside (-1 +- sqrt(q))/2");
    }
    SrgParams P;
    P.v = F->q;
    P.degree = (F->q - 1) / 2;
    P.lambda = i64((F->q - 5) / 4);
    P.mu = i64((F->q - 1) / 4);
    P.eig_sum = -1;
    P.eig_prod = -i64((F->q - 1) / 4);
    // integral eigenvalues exactly when q is a perfect square
    u64 root = u64(std::llround(std::sqrt(double(F->q))));
    if (root * root == F->q) {
        P.integral_eigenvalues = true;
        P.r = (i64(root) - 1) / 2;
        P.s = (-i64(root) - 1) / 2;
    }
    if (F->q <= opt.brute_limit) {
        auto B = brute_force_adjacency(*F, spec, opt.brute_limit, opt.threads);
        if (!B || B->lambda != P.lambda || B->mu != P.mu)
            fail(err::range_error, "brute-force adjacency disagrees with the Paley condition");
        V.method = "both";
    }
    V.srg = P;
    return done(VerdictKind::PaleyPds, "");
}

// The computer-found H sets of the skew-Hadamard examples are normalized to
// a particular character choice; a change of primitive element multiplies
// the index set by a unit.  Select the member of the multiplier orbit of
// Q u 2Q u {extra} whose e1 = 1 base member actually verifies under this
// library's canonical gamma.  Returns the H together with the multiplier.
inline std::pair<std::vector<u64>, u64> find_verified_shd_H(u64 p, u64 p1, u64 e, u64 extra,
                                                            const VerifyOptions& opt = {}) {
    u64 h = 2 * p1;
    auto base = q_union_2q(p1, extra);
    for (u64 c = 1; c < h; ++c) {
        if (gcd_u64(c, h) != 1) continue;
        std::set<u64> img;
        for (u64 i : base) img.insert(i == extra ? extra : mulmod(c, i, h));
        std::vector<u64> H(img.begin(), img.end());
        if (!validate_H(HSet{h, p1, H}, HMode::VanishingSum)) continue;
        auto spec = build_shd_family(p, p1, 1, e, H);
        Verdict V = (p % 4 == 3) ? verify_skew_hadamard(spec, opt) : verify_paley_pds(spec, opt);
        if (V.kind == VerdictKind::SkewHadamard || V.kind == VerdictKind::PaleyPds) return {H, c};
    }
    fail(err::hypothesis_failed, "no member of the multiplier orbit verifies");
}

// Eigenvalue transfer under one lifting step:
//   s  |->  eps P s + |I| (eps P - 1) / k,   P = p^{phi(k)(p1-1)/(2e)}.
inline std::pair<CycInt, CycInt> predict_lifted_profile(const CycInt& val_r, const CycInt& val_s,
                                                        u64 size_I, u64 k, u64 p, u64 p1, u64 e,
                                                        int eps) {
    if (eps != 1 && eps != -1) fail(err::bad_parameters, "eps must be +-1");
    u128 num = u128(euler_phi_u64(k)) * (p1 - 1);
    if (num % (2 * e) != 0) fail(err::non_integral_prediction, "exponent phi(k)(p1-1)/(2e)");
    Int P = pow_int(Int(p), u64(num / (2 * e)));
    Int epsP = eps > 0 ? P : Int(-P);
    Int shift_num = Int(size_I) * (epsP - 1);
    if (shift_num % Int(k) != 0)
        fail(err::non_integral_prediction, "|I|(eps p^E - 1) not divisible by k");
    CycInt shift(shift_num / Int(k));
    auto apply = [&](const CycInt& x) { return x * CycInt(epsP) + shift; };
    return {apply(val_r), apply(val_s)};
}

}  // namespace csrg
