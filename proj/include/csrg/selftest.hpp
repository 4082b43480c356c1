#pragma once

#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "csrg/relgauss.hpp"
#include "csrg/verify.hpp"

namespace csrg {

// The acceptance suite: one entry per criterion, each printing a pass/fail
// line.  `quick` runs everything that stays below 2^16 field elements;
// `full` adds the heavy tier (3^12, 5^9, 11^7, 2^20, 2^21, 53^3, 11^6).

enum class SelftestLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double ms = 0;
    std::string detail;
};

namespace stdetail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Ctx {
    SelftestLevel level;
    unsigned threads;
    std::ostream* out;
    std::vector<CheckResult> results;

    bool full() const { return level == SelftestLevel::Full; }

    void run(const std::string& name, const std::function<std::string()>& body) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
            r.pass = false;
        }
        r.ms = ms_since(t0);
        if (out) {
            (*out) << (r.pass ? "[PASS] " : "[FAIL] ") << name;
            if (!r.detail.empty()) (*out) << ": " << r.detail;
            (*out) << " (" << std::fixed << std::setprecision(0) << r.ms << " ms)" << std::endl;
        }
        results.push_back(std::move(r));
    }
};

[[noreturn]] inline void reject(const std::string& msg) { throw std::runtime_error(msg); }

inline void expect(bool cond, const std::string& msg) {
    if (!cond) reject(msg);
}

inline VerifyOptions vopt(const Ctx& c, u64 max_q = kVerifyLimit, bool cross = false) {
    VerifyOptions o;
    o.threads = c.threads;
    o.max_q = max_q;
    o.cross_check = cross;
    return o;
}

// ---- criterion bodies ----------------------------------------------------

inline void c1_paley(Ctx& c) {
    c.run("criterion 1: Paley graphs q in {5,9,13,17,25,29}", [&] {
        for (auto [p, f] : std::vector<std::pair<u64, unsigned>>{
                 {5, 1}, {3, 2}, {13, 1}, {17, 1}, {5, 2}, {29, 1}}) {
            auto spec = make_spec(p, f, 2, {0});
            auto V = verify_srg(spec, vopt(c));
            u64 q = spec.q(), t = (q - 1) / 4;
            expect(V.kind == VerdictKind::Srg, "q=" + std::to_string(q) + " not srg");
            expect(V.srg->v == q && V.srg->degree == 2 * t && V.srg->lambda == i64(t - 1) &&
                       V.srg->mu == i64(t),
                   "q=" + std::to_string(q) + " parameters differ from (4t+1,2t,t-1,t)");
        }
        return "(4t+1, 2t, t-1, t) exact for all six fields";
    });
}

inline void c2_table1_row1(Ctx& c) {
    c.run("criterion 2: sporadic row 1 = srg(243,22,1,2), profile and brute force", [&] {
        auto V = verify_srg(build_table1(1), vopt(c, kVerifyLimit, true));
        expect(V.kind == VerdictKind::Srg, "not an srg");
        expect(V.srg->v == 243 && V.srg->degree == 22 && V.srg->lambda == 1 && V.srg->mu == 2,
               "parameters differ");
        expect(V.method == "both", "brute force did not run");
        expect(V.srg->r == 4 && V.srg->s == -5, "eigenvalues differ");
        return "srg(243,22,1,2), eigenvalues {4,-5}, both methods agree";
    });
}

inline void c3_table1_row3(Ctx& c) {
    if (!c.full()) return;
    c.run("criterion 3: sporadic row 3 (3^12, k=35) with gauss-expansion cross-check", [&] {
        auto V = verify_srg(build_table1(3), vopt(c, kVerifyLimit, true));
        expect(V.kind == VerdictKind::Srg, "not an srg");
        expect(V.srg->integral_eigenvalues, "eigenvalues not integers");
        return "srg(" + std::to_string(V.srg->v) + "," + std::to_string(V.srg->degree) + "," +
               std::to_string(V.srg->lambda) + "," + std::to_string(V.srg->mu) +
               "), eigenvalues {" + std::to_string(V.srg->r) + "," + std::to_string(V.srg->s) + "}";
    });
}

inline void c4_heavy_rows(Ctx& c) {
    if (!c.full()) return;
    c.run("criterion 4a: sporadic row 2 (5^9, k=19) under 60 s", [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto V = verify_srg(build_table1(2), vopt(c));
        double ms = ms_since(t0);
        expect(V.kind == VerdictKind::Srg, "not an srg");
        expect(ms < 60000, "exceeded 60 s");
        return "srg confirmed, eigenvalues {" + std::to_string(V.srg->r) + "," +
               std::to_string(V.srg->s) + "}";
    });
    c.run("criterion 4b: sporadic row 5 (11^7, k=43) under 8 min", [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto V = verify_srg(build_table1(5), vopt(c, kHeavyLimit));
        double ms = ms_since(t0);
        expect(V.kind == VerdictKind::Srg, "not an srg");
        expect(ms < 480000, "exceeded 8 min");
        return "srg confirmed, eigenvalues {" + std::to_string(V.srg->r) + "," +
               std::to_string(V.srg->s) + "}";
    });
}

inline void c5_lifted_family(Ctx& c) {
    if (!c.full()) return;
    c.run("criterion 5: (p,p1,m)=(2,7,2) over 2^21 matches the predicted eigenvalues", [&] {
        auto base = verify_srg(make_spec(2, 3, 7, {0}), vopt(c));
        expect(base.kind == VerdictKind::Srg, "base member not an srg");
        expect(base.srg->integral_eigenvalues, "base eigenvalues not integers");
        auto pred = predict_lifted_profile(CycInt(Int(base.srg->r)), CycInt(Int(base.srg->s)), 1,
                                           7, 2, 7, 2, +1);
        Int pr = pred.first.detect_rational().value();
        Int ps = pred.second.detect_rational().value();
        expect(pr == 585 && ps == -439, "prediction is not {585, -439}");
        auto spec = build_thm13("i", 2, 7, 0, 2, 0);
        auto V = verify_srg(spec, vopt(c));
        expect(V.kind == VerdictKind::Srg, "lifted member not an srg");
        expect(Int(V.srg->r) == pr && Int(V.srg->s) == ps,
               "measured eigenvalues differ from prediction");
        return "measured {585, -439} equals the transfer formula output";
    });
}

inline void c6_two_prime(Ctx& c) {
    c.run("criterion 6: two-prime family (2, k=45, I={0,5,10}) over 2^12", [&] {
        auto spec = build_srg_family(2, {{3, 2}, {5, 1}}, 2);  // hypotheses machine-checked
        expect(spec.k == 45 && spec.I == std::vector<u64>{0, 5, 10}, "unexpected spec");
        auto V = verify_srg(spec, vopt(c));
        expect(V.kind == VerdictKind::Srg, "not an srg");
        expect(V.method == "both", "brute force did not run at q = 4096");
        return "srg(" + std::to_string(V.srg->v) + "," + std::to_string(V.srg->degree) + "," +
               std::to_string(V.srg->lambda) + "," + std::to_string(V.srg->mu) + ")";
    });
}

inline void c7_relative_gauss(Ctx& c) {
    c.run("criterion 7a: theta = 1 for (2,3,9)", [&] {
        auto R = relative_gauss(2, 3, 3, 1, c.threads);
        expect(R.classification == ThetaKind::PlusOne, "theta != 1");
        expect(root_order_bound_check(R), "root order bound fails");
        return "theta = 1 exactly; theta^2 = 1";
    });
    c.run("criterion 7b: Yamamoto identity (2, f=2 -> 4, chi' of order 15)", [&] {
        expect(yamamoto_matches(2, 2, 4, 15, 1, c.threads), "subset sum != G'/G");
        return "subset sum equals the Gauss-sum ratio";
    });
    if (!c.full()) return;
    c.run("criterion 7c: theta = 1 for (2,5,25) over 2^20", [&] {
        auto R = relative_gauss(2, 5, 5, 1, c.threads);
        expect(R.classification == ThetaKind::PlusOne, "theta != 1");
        expect(root_order_bound_check(R), "root order bound fails");
        return "theta = 1 exactly";
    });
    c.run("criterion 7d: theta = 1 for (2,7,49) over 2^21", [&] {
        auto R = relative_gauss(2, 7, 7, 1, c.threads);
        expect(R.classification == ThetaKind::PlusOne, "theta != 1");
        expect(root_order_bound_check(R), "root order bound fails");
        return "theta = 1 exactly";
    });
    c.run("criterion 7e: Yamamoto identity (2, f=3 -> 21, chi' of order 49)", [&] {
        expect(yamamoto_matches(2, 3, 21, 49, 1, c.threads), "subset sum != G'/G");
        auto R = relative_gauss(2, 7, 7, 1, c.threads);
        auto S = yamamoto_sum(2, 3, 21, 49, 1, c.threads);
        expect(values_equal(S, R.theta * CycInt(pow_int(Int(2), 9))),
               "subset sum != 2^9 * theta");
        return "subset sum equals 2^9 * theta";
    });
}

inline void c8_sign_corollary(Ctx& c) {
    c.run("criterion 8a: sign corollary for (5,6,18)", [&] {
        auto R = relative_gauss(5, 6, 3, 1, c.threads);
        expect(R.predicted_epsilon == 1, "predicted sign != +1");
        expect(R.classification == ThetaKind::PlusOne, "computed theta != +1");
        return "computed theta matches the predicted sign +1";
    });
    if (!c.full()) return;
    c.run("criterion 8b: sign corollary for (11,6,18) over 11^6", [&] {
        auto R = relative_gauss(11, 6, 3, 1, c.threads);
        expect(R.predicted_epsilon == 1, "predicted sign != +1");
        expect(R.classification == ThetaKind::PlusOne, "computed theta != +1");
        return "computed theta matches the predicted sign +1";
    });
}

inline void c9_difference_sets(Ctx& c) {
    c.run("criterion 9a: nonzero squares of F_7 form a skew Hadamard difference set", [&] {
        auto V = verify_skew_hadamard(make_spec(7, 1, 2, {0}), vopt(c));
        expect(V.kind == VerdictKind::SkewHadamard, "not skew Hadamard");
        expect(V.method == "both", "difference counts did not run");
        return "confirmed by character condition and difference counts";
    });
    c.run("criterion 9b: q=27, k=26, H from the Q u 2Q u {13} multiplier orbit", [&] {
        auto [H, mult] = find_verified_shd_H(3, 13, 4, 13, vopt(c));
        auto V = verify_skew_hadamard(build_shd_family(3, 13, 1, 4, H), vopt(c));
        expect(V.kind == VerdictKind::SkewHadamard, "not skew Hadamard");
        expect(V.method == "both", "difference counts did not run");
        for (auto& x : V.profile) {
            CycInt u = x + x + CycInt(Int(1));
            expect((u * u + CycInt(Int(27))).is_zero(), "(2x+1)^2 != -27");
        }
        return "confirmed (multiplier " + std::to_string(mult) + "); (2x+1)^2 = -27 for all values";
    });
    c.run("criterion 9c: q=1331, k=14, I={0..6} (p=11 = 3 mod 4)", [&] {
        auto spec = build_thm14("i", 11, 7, 1, 1);
        auto V = verify_skew_hadamard(spec, vopt(c));
        expect(V.kind == VerdictKind::SkewHadamard, "not skew Hadamard");
        return "confirmed via character profile";
    });
    if (!c.full()) return;
    c.run("criterion 9d: Paley type over q=53^3, k=14", [&] {
        auto spec = build_thm14("i", 53, 7, 1, 1);
        auto V = verify_paley_pds(spec, vopt(c));
        expect(V.kind == VerdictKind::PaleyPds, "not Paley type");
        return "confirmed via character profile over 148877 elements";
    });
}

// ---- criterion 10: identity sweep ----------------------------------------

struct SweepStats {
    u64 fields = 0, digit_checks = 0, quad_checks = 0, prop_checks = 0, lift_checks = 0,
        prod_checks = 0, semiprim_checks = 0;
};

// Work gates.  Exact products in Z[zeta_{kp}] cost dim^2 coefficient
// multiplications (dim = phi(kp)) and their reduction tables cost about
// (kp - dim) * dim cells, so product identities and k >= 3 conductors are
// bounded; the k = 2 route stays in conductor p where reduction is a single
// relation, which keeps every prime field up to 2^16 in the sweep.
struct SweepGates {
    u64 qcap;          // sweep all prime powers up to here
    u64 dim_all_u;     // product identities for every u
    u64 dim_sampled;   // product identities for u = 1 only
    u64 dim_table;     // build k >= 3 tables at all
    u64 quad_product;  // |G|^2 = q at k = 2 for p up to here
    u64 pair_work_cap; // coefficient-op budget per (field, k)
};

inline constexpr SweepGates kFullGates{u64(1) << 16, 256, 1024, 1024, 512, 50000000};
inline constexpr SweepGates kQuickGates{u64(1) << 12, 64, 256, 512, 128, 5000000};

inline void sweep_field(const FieldSpec& F, SweepStats& st, std::mt19937_64& rng,
                        const SweepGates& gates) {
    u64 p = F.p, q = F.q;
    ++st.fields;

    // digit-sum lemma, 10^3 random a per (p, f)
    for (int rep = 0; rep < 1000; ++rep) {
        u64 a = rng() % (q - 1);
        if (!digit_sum_identity_check(a, p, F.f))
            reject("digit-sum identity fails at a=" + std::to_string(a) + " p=" + std::to_string(p) +
                   " f=" + std::to_string(F.f));
        ++st.digit_checks;
    }

    // k = 2 entirely in conductor p with machine integers: the reduction
    // mod Phi_p is the single relation z^{p-1} = -(1 + z + ... + z^{p-2}),
    // so raw vectors over exponents 0..p-1 reduce by one subtraction.  This
    // keeps every prime field up to 2^16 inside the sweep.
    if (p != 2) {
        auto T2 = build_trace_counts(F, 2, 1);
        T2.validate();
        std::vector<i64> fold(p), basis(p - 1);
        for (u64 t = 0; t < p; ++t) fold[t] = i64(T2.at(0, t)) - i64(T2.at(1, t));
        for (u64 i = 0; i + 1 < p; ++i) basis[i] = fold[i] - fold[p - 1];
        // closed form (-1)^{f-1} g_p^f; for f = 1 compare against the
        // Legendre vector directly, otherwise p <= 256 and CycInt is cheap
        if (F.f == 1) {
            std::vector<i64> leg(p, -1);
            leg[0] = 0;
            for (u64 x = 1; x <= (p - 1) / 2; ++x) leg[mulmod(x, x, p)] = 1;
            for (u64 i = 0; i + 1 < p; ++i)
                if (basis[i] != leg[i] - leg[p - 1])
                    reject("quadratic closed form mismatch at q=" + std::to_string(q));
        } else {
            std::vector<Int> raw(fold.begin(), fold.end());
            if (CycInt::from_raw(p, std::move(raw)) != quadratic_gauss_closed(p, F.f))
                reject("quadratic closed form mismatch at q=" + std::to_string(q));
        }
        ++st.quad_checks;
        // property (iii) at k = 2: conj(G) = chi(-1) G
        {
            bool even = ((q - 1) / 2) % 2 == 0;
            std::vector<i64> craw(p, 0);
            for (u64 t = 0; t < p; ++t) craw[(p - t) % p] = fold[t];
            for (u64 i = 0; i + 1 < p; ++i) {
                i64 want = even ? basis[i] : -basis[i];
                if (craw[i] - craw[p - 1] != want)
                    reject("quadratic conjugation law fails at q=" + std::to_string(q));
            }
        }
        // property (iv): trivial character sums to -1
        for (u64 i = 0; i + 1 < p; ++i) {
            i64 tot = i64(T2.at(0, i)) + i64(T2.at(1, i)) -
                      (i64(T2.at(0, p - 1)) + i64(T2.at(1, p - 1)));
            if (tot != (i == 0 ? -1 : 0))
                reject("trivial character sum != -1 at q=" + std::to_string(q));
        }
        if (p <= gates.quad_product) {
            std::vector<Int> raw(fold.begin(), fold.end());
            CycInt g = CycInt::from_raw(p, std::move(raw));
            if ((g.conj() * g).detect_rational().value_or(0) != Int(q))
                reject("|G|^2 != q at q=" + std::to_string(q) + " k=2");
            ++st.prop_checks;
        }
        st.prop_checks += 2;
    }

    for (u64 k : divisors(q - 1)) {
        if (k < 3 || k > 64) continue;
        u64 dim = euler_phi_u64(k) * (p == 2 ? 1 : p - 1);
        if (dim > gates.dim_table) continue;
        u64 n = gauss_conductor(p, k);
        u64 phin = euler_phi_u64(n);
        if (3 * k * (n - phin) * phin > gates.pair_work_cap) continue;
        auto T = build_trace_counts(F, k, 1);
        T.validate();  // class-size uniformity

        // all k Gauss sums from one table, computed once
        std::vector<CycInt> gs;
        gs.reserve(k);
        for (u64 j = 0; j < k; ++j) gs.push_back(gauss_sum_exact(T, j).value);

        // (iv) trivial character
        if (gs[0].detect_rational().value_or(0) != -1)
            reject("G(trivial) != -1 at q=" + std::to_string(q) + " k=" + std::to_string(k));

        u64 zk = p == 2 ? 1 : p;
        u64 m1 = p == 2 ? 0 : ((q - 1) / 2) % k;
        for (u64 u = 1; u < k; ++u) {
            bool products = dim <= gates.dim_all_u || (dim <= gates.dim_sampled && u == 1);
            const CycInt& G = gs[u];
            // (ii) G(chi^{pu}) = G(chi^u)
            if (gs[mulmod(u, p % k, k)] != G)
                reject("property (ii) fails at q=" + std::to_string(q) + " k=" + std::to_string(k));
            // (iii) G(chi^{-u}) = chi^u(-1) conj(G)
            CycInt rhs = G.conj().shift((mulmod(u, m1, k) * zk) % n);
            if (gs[k - u] != rhs)
                reject("property (iii) fails at q=" + std::to_string(q) + " k=" + std::to_string(k));
            st.prop_checks += 2;
            if (products) {
                // (i) G conj(G) = q
                if ((G.conj() * G).detect_rational().value_or(0) != Int(q))
                    reject("property (i) fails at q=" + std::to_string(q) + " k=" + std::to_string(k) +
                           " u=" + std::to_string(u));
                ++st.prop_checks;
            }
        }

        // semi-primitive closed form vs the exact value
        if (is_semiprimitive(p, k)) {
            u64 s = 1, x = p % k;
            while (x != k - 1) x = mulmod(x, p % k, k), ++s;
            if (F.f % (2 * s) == 0) {
                auto sv = semiprimitive_gauss_closed(p, k, F.f);
                auto r = gs[1].detect_rational();
                if (!r || *r != sv.value)
                    reject("semi-primitive closed form mismatch at q=" + std::to_string(q) +
                           " k=" + std::to_string(k));
                ++st.semiprim_checks;
            }
        }

        // Davenport-Hasse product for ell in {2,3}, from the cached sums:
        // chi^l(l) prod_{i<l} G(chi eta^i) = G(chi^l) prod_{0<i<l} G(eta^i)
        for (u64 ell : {2u, 3u}) {
            if (k % ell != 0 || dim > gates.dim_sampled) continue;
            u64 step = k / ell;
            u64 lmodp = ell % p;
            if (lmodp == 0) continue;
            u64 dl = discrete_log(F, F.from_int(lmodp));
            for (u64 u = 1; u < k; ++u) {
                if (!(dim <= gates.dim_all_u || u == 1)) continue;
                bool degen = mulmod(u, ell, k) == 0;
                for (u64 i = 1; i < ell && !degen; ++i)
                    if ((u + i * step) % k == 0) degen = true;
                if (degen) continue;
                CycInt lhs = gs[u];
                for (u64 i = 1; i < ell; ++i) lhs = lhs * gs[(u + i * step) % k];
                u64 char_exp = mulmod(mulmod(u, ell, k), dl % k, k);
                lhs = lhs.shift((char_exp * zk) % n);
                CycInt rhsp = gs[mulmod(u, ell, k)];
                for (u64 i = 1; i < ell; ++i) rhsp = rhsp * gs[(i * step) % k];
                if (lhs != rhsp)
                    reject("DH product fails at q=" + std::to_string(q) + " k=" + std::to_string(k) +
                           " ell=" + std::to_string(ell) + " u=" + std::to_string(u));
                ++st.prod_checks;
            }
        }
    }
}

inline void c10_identity_suite(Ctx& c) {
    const SweepGates& gates = c.full() ? kFullGates : kQuickGates;
    u64 qcap = gates.qcap;
    c.run("criterion 10: identity suite on all prime powers q <= 2^" +
              std::to_string(c.full() ? 16 : 12),
          [&] {
              SweepStats st;
              // sieve primes up to qcap
              std::vector<char> composite(qcap + 1, 0);
              for (u64 p = 2; p <= qcap; ++p) {
                  if (composite[p]) continue;
                  for (u64 m = p * p; m <= qcap; m += p) composite[m] = 1;
                  for (unsigned f = 1;; ++f) {
                      u128 q = 1;
                      for (unsigned i = 0; i < f; ++i) q *= p;
                      if (q > qcap) break;
                      std::mt19937_64 rng(0x5eed0000ull + p * 131 + f);
                      auto F = build_field(p, f);
                      sweep_field(F, st, rng, gates);
                  }
              }
              // Davenport-Hasse lifting for s in {2,3} wherever both fields fit
              for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
                  for (unsigned f = 1; f <= 8; ++f) {
                      for (unsigned s : {2u, 3u}) {
                          u128 qs = 1;
                          bool fit = true;
                          for (unsigned i = 0; i < f * s && fit; ++i) {
                              qs *= p;
                              if (qs > qcap) fit = false;
                          }
                          if (!fit) continue;
                          u64 qbase = 1;
                          for (unsigned i = 0; i < f; ++i) qbase *= p;
                          auto big = build_field(p, f * s);
                          for (u64 k : divisors(qbase - 1)) {
                              if (k < 2 || k > 64) continue;
                              auto T = build_trace_counts(big, k, 1);
                              for (u64 u = 1; u < k; ++u) {
                                  if (!dh_lift_check_core(big, T, f, u, s))
                                      reject("DH lifting fails at p=" + std::to_string(p) +
                                             " f=" + std::to_string(f) + " k=" + std::to_string(k) +
                                             " u=" + std::to_string(u) + " s=" + std::to_string(s));
                                  ++st.lift_checks;
                              }
                          }
                      }
                  }
              }
              std::ostringstream os;
              os << st.fields << " fields, " << st.digit_checks << " digit-sum, " << st.quad_checks
                 << " quadratic, " << st.prop_checks << " property, " << st.semiprim_checks
                 << " semi-primitive, " << st.lift_checks << " lifting, " << st.prod_checks
                 << " product checks, zero failures";
              return os.str();
          });
}

inline void c11_cross_method(Ctx& c) {
    const int want = c.full() ? 50 : 20;
    c.run("criterion 11: cross-method oracle on " + std::to_string(want) + " randomized specs", [&] {
        std::mt19937_64 rng(0xc0ffee);
        // candidate fields with q <= 2^16 and workable conductors
        std::vector<std::pair<u64, unsigned>> pool;
        for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 31u, 41u, 61u, 101u, 127u, 251u}) {
            for (unsigned f = 1;; ++f) {
                u128 q = 1;
                for (unsigned i = 0; i < f; ++i) q *= p;
                if (q > (1u << 16)) break;
                if (q >= 4) pool.push_back({p, f});
            }
        }
        int done = 0, brute_done = 0;
        while (done < want) {
            auto [p, f] = pool[rng() % pool.size()];
            auto F = get_field(p, f);
            std::vector<u64> ks;
            for (u64 k : divisors(F->q - 1))
                if (k >= 2 && k <= 64 && euler_phi_u64(k) * (p == 2 ? 1 : p - 1) <= 2048)
                    ks.push_back(k);
            if (ks.empty()) continue;
            u64 k = ks[rng() % ks.size()];
            std::vector<u64> I;
            for (u64 i = 0; i < k; ++i)
                if (rng() % 2) I.push_back(i);
            if (I.empty() || I.size() == k) continue;
            auto spec = make_spec(p, f, k, I);
            ++done;
            TableOptions topt{c.threads, kVerifyLimit, {}};
            auto T = get_table(*F, k, topt);
            auto direct = char_profile(*T, spec);
            auto via = char_profile_via_gauss(*T, spec);
            for (u64 a = 0; a < k; ++a)
                if (!values_equal(direct.values[a], via[a]))
                    reject("profile mismatch at spec #" + std::to_string(done));
            if (F->q <= 4096) {
                u64 j0 = minus_one_class(F->q, p, k);
                if (translate_equals(spec.I, j0, k)) {
                    auto B = brute_force_adjacency(*F, spec);
                    auto V = verify_srg(spec, vopt(c));
                    bool agree = B.has_value() == (V.kind == VerdictKind::Srg) &&
                                 (!B || (B->lambda == V.srg->lambda && B->mu == V.srg->mu));
                    if (!agree) reject("brute force disagrees at spec #" + std::to_string(done));
                    ++brute_done;
                }
            }
        }
        return std::to_string(want) + " specs cross-checked, " + std::to_string(brute_done) +
               " brute-force agreements, zero mismatches";
    });
}

}  // namespace stdetail

inline std::vector<CheckResult> run_acceptance(SelftestLevel level, unsigned threads = 1,
                                               std::ostream* out = nullptr) {
    stdetail::Ctx c{level, threads, out, {}};
    stdetail::c1_paley(c);
    stdetail::c2_table1_row1(c);
    stdetail::c3_table1_row3(c);
    stdetail::c4_heavy_rows(c);
    stdetail::c5_lifted_family(c);
    stdetail::c6_two_prime(c);
    stdetail::c7_relative_gauss(c);
    stdetail::c8_sign_corollary(c);
    stdetail::c9_difference_sets(c);
    stdetail::c10_identity_suite(c);
    stdetail::c11_cross_method(c);
    return std::move(c.results);
}

}  // namespace csrg
