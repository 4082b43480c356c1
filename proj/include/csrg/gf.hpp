#pragma once

#include <array>
#include <cstring>
#include <memory>
#include <vector>

#include "csrg/intutil.hpp"

namespace csrg {

// Explicit finite fields F_{p^f} with a deterministic presentation: the
// modulus is the lexicographically smallest monic irreducible of degree f
// (coefficients compared low-degree-first) and gamma is the smallest
// primitive element in the same ordering.  Every downstream number is then
// reproducible across runs.

struct FieldElement {
    std::vector<u64> c;
    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool operator!=(const FieldElement& o) const { return c != o.c; }
};

namespace gfdetail {

// Dense polynomial arithmetic over F_p used during field construction only.
inline u64 inv_mod_prime(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

inline void trim(std::vector<u64>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<u64> pmul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += u128(a[i]) * b[j] % p;
    }
    std::vector<u64> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = u64(acc[i] % p);
    trim(out);
    return out;
}

// remainder of a modulo monic g
inline std::vector<u64> pmod(std::vector<u64> a, const std::vector<u64>& g, u64 p) {
    size_t dg = g.size() - 1;
    while (a.size() > dg) {
        u64 c = a.back();
        size_t sh = a.size() - 1 - dg;
        if (c) {
            for (size_t j = 0; j < dg; ++j) {
                u64 t = mulmod(c, g[j], p);
                a[sh + j] = (a[sh + j] + p - t) % p;
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() <= dg) break;
    }
    return a;
}

inline std::vector<u64> pmulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                                const std::vector<u64>& g, u64 p) {
    return pmod(pmul(a, b, p), g, p);
}

inline std::vector<u64> ppowmod(std::vector<u64> base, u64 e, const std::vector<u64>& g, u64 p) {
    std::vector<u64> r{1};
    base = pmod(std::move(base), g, p);
    while (e) {
        if (e & 1) r = pmulmod(r, base, g, p);
        base = pmulmod(base, base, g, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<u64> pgcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        u64 lead = b.back();
        if (lead != 1) {
            u64 il = inv_mod_prime(lead, p);
            for (auto& c : b) c = mulmod(c, il, p);
        }
        auto r = pmod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin test: g irreducible of degree f over F_p iff x^{p^f} = x mod g and
// gcd(x^{p^{f/l}} - x, g) = 1 for every prime l | f.
inline bool is_irreducible(const std::vector<u64>& g, u64 p) {
    size_t f = g.size() - 1;
    if (f == 1) return true;
    auto fac = distinct_prime_factors(f);
    std::vector<u64> x{0, 1};
    std::vector<u64> y = x;
    for (size_t i = 1; i <= f; ++i) {
        y = ppowmod(std::move(y), p, g, p);  // y = x^{p^i} mod g
        bool at_checkpoint = false;
        for (u64 l : fac)
            if (i == f / l) at_checkpoint = true;
        if (at_checkpoint) {
            auto diff = y;
            diff.resize(std::max<size_t>(diff.size(), 2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(diff);
            auto d = pgcd(diff, g, p);
            if (!(d.size() == 1)) return false;
        }
    }
    auto diff = y;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    return diff.empty();
}

// Odometer over coefficient vectors in lexicographic order, c[0] most
// significant (so the last coordinate varies fastest).
inline bool next_vec(std::vector<u64>& v, u64 p) {
    for (size_t i = v.size(); i-- > 0;) {
        if (++v[i] < p) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace gfdetail

struct FieldSpec {
    u64 p = 0;
    unsigned f = 0;
    u64 q = 0;                          // p^f
    std::vector<u64> modulus;           // length f+1, monic
    FieldElement gamma;                 // fixed primitive element
    unsigned gamma_degree = 0;          // highest nonzero index of gamma
    std::vector<std::vector<u64>> redrows;  // x^{f+j} mod modulus, j in [0, f-1)
    std::vector<std::vector<u64>> frob;     // Frobenius matrix, column-major: frob[j] = vec(x^{jp})
    std::vector<u64> trace_vec;             // Tr(x^j) for j < f
    std::vector<PrimePower> q1_factors;     // factorization of q-1

    FieldElement zero() const { return FieldElement{std::vector<u64>(f, 0)}; }
    FieldElement one() const {
        FieldElement e = zero();
        e.c[0] = 1 % p;
        return e;
    }
    FieldElement from_int(u64 v) const {
        FieldElement e = zero();
        e.c[0] = v % p;
        return e;
    }
    bool is_zero(const FieldElement& a) const {
        for (u64 c : a.c)
            if (c) return false;
        return true;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement r = a;
        for (unsigned i = 0; i < f; ++i) r.c[i] = addmod(r.c[i], b.c[i], p);
        return r;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        FieldElement r = a;
        for (unsigned i = 0; i < f; ++i) r.c[i] = addmod(r.c[i], b.c[i] ? p - b.c[i] : 0, p);
        return r;
    }
    FieldElement neg(const FieldElement& a) const {
        FieldElement r = a;
        for (unsigned i = 0; i < f; ++i) r.c[i] = r.c[i] ? p - r.c[i] : 0;
        return r;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        std::vector<u128> acc(2 * f - 1, 0);
        for (unsigned i = 0; i < f; ++i) {
            if (!a.c[i]) continue;
            for (unsigned j = 0; j < f; ++j)
                if (b.c[j]) acc[i + j] += u128(a.c[i]) * b.c[j] % p;
        }
        return reduce_acc(acc);
    }

    FieldElement pow(FieldElement a, u64 e) const {
        FieldElement r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    FieldElement inv(const FieldElement& a) const {
        if (is_zero(a)) fail(err::division_by_zero, "field inverse of zero");
        return pow(a, q - 2);
    }

    u64 trace_abs(const FieldElement& a) const {
        u128 acc = 0;
        for (unsigned i = 0; i < f; ++i) acc += u128(trace_vec[i]) * a.c[i] % p;
        return u64(acc % p);
    }

    // Sum of i-step Frobenius orbits with stride d: Tr_{q/p^d}.  Returned as
    // an f x f matrix acting on coefficient vectors.
    std::vector<std::vector<u64>> partial_trace_matrix(unsigned d) const {
        if (d == 0 || f % d != 0) fail(err::not_a_divisor, "stride " + std::to_string(d));
        auto Fd = mat_identity();
        for (unsigned i = 0; i < d; ++i) Fd = mat_mul(frob_matrix(), Fd);
        auto acc = mat_identity();
        auto powm = mat_identity();
        for (unsigned i = 1; i < f / d; ++i) {
            powm = mat_mul(Fd, powm);
            acc = mat_add(acc, powm);
        }
        return acc;
    }

    std::vector<std::vector<u64>> frob_matrix() const { return frob; }

    FieldElement apply_matrix(const std::vector<std::vector<u64>>& M, const FieldElement& a) const {
        FieldElement r = zero();
        for (unsigned j = 0; j < f; ++j) {
            if (!a.c[j]) continue;
            for (unsigned i = 0; i < f; ++i)
                r.c[i] = u64((u128(r.c[i]) + u128(M[j][i]) * a.c[j]) % p);
        }
        return r;
    }

    u64 encode(const FieldElement& a) const {
        u64 v = 0;
        for (unsigned i = f; i-- > 0;) v = v * p + a.c[i];
        return v;
    }
    FieldElement decode(u64 v) const {
        FieldElement e = zero();
        for (unsigned i = 0; i < f; ++i) {
            e.c[i] = v % p;
            v /= p;
        }
        return e;
    }

private:
    FieldElement reduce_acc(std::vector<u128>& acc) const {
        // fold degrees >= f through the precomputed rows, top down
        for (size_t j = acc.size(); j-- > f;) {
            u64 c = u64(acc[j] % p);
            if (!c) continue;
            const auto& row = redrows[j - f];
            for (unsigned i = 0; i < f; ++i) acc[i] += u128(c) * row[i] % p;
        }
        FieldElement r = zero();
        for (unsigned i = 0; i < f; ++i) r.c[i] = u64(acc[i] % p);
        return r;
    }

    std::vector<std::vector<u64>> mat_identity() const {
        std::vector<std::vector<u64>> m(f, std::vector<u64>(f, 0));
        for (unsigned i = 0; i < f; ++i) m[i][i] = 1;
        return m;
    }
    std::vector<std::vector<u64>> mat_mul(const std::vector<std::vector<u64>>& A,
                                          const std::vector<std::vector<u64>>& B) const {
        // column-major: (A*B) column j = A applied to column B[j]
        std::vector<std::vector<u64>> C(f, std::vector<u64>(f, 0));
        for (unsigned j = 0; j < f; ++j)
            for (unsigned k = 0; k < f; ++k) {
                if (!B[j][k]) continue;
                for (unsigned i = 0; i < f; ++i)
                    C[j][i] = u64((u128(C[j][i]) + u128(A[k][i]) * B[j][k]) % p);
            }
        return C;
    }
    std::vector<std::vector<u64>> mat_add(const std::vector<std::vector<u64>>& A,
                                          const std::vector<std::vector<u64>>& B) const {
        auto C = A;
        for (unsigned j = 0; j < f; ++j)
            for (unsigned i = 0; i < f; ++i) C[j][i] = addmod(C[j][i], B[j][i], p);
        return C;
    }

    friend FieldSpec build_field(u64 p, unsigned f, u64 max_q);
};

inline constexpr u64 kBuildLimit = u64(1) << 40;

inline FieldSpec build_field(u64 p, unsigned f, u64 max_q = kBuildLimit) {
    if (!is_prime_u64(p)) fail(err::not_prime, std::to_string(p));
    if (f < 1) fail(err::range_error, "degree must be >= 1");
    u128 q = 1;
    for (unsigned i = 0; i < f; ++i) {
        q *= p;
        if (q > max_q) fail(err::too_large, "p^f exceeds " + std::to_string(max_q));
    }

    FieldSpec F;
    F.p = p;
    F.f = f;
    F.q = u64(q);

    // lexicographically smallest monic irreducible
    std::vector<u64> cand(f, 0);
    while (true) {
        std::vector<u64> g = cand;
        g.push_back(1);
        if (gfdetail::is_irreducible(g, p)) {
            F.modulus = g;
            break;
        }
        if (!gfdetail::next_vec(cand, p)) fail(err::range_error, "no irreducible found");
    }

    // reduction rows x^{f+j} mod modulus
    if (f >= 1) {
        std::vector<u64> row(f);
        for (unsigned i = 0; i < f; ++i) row[i] = F.modulus[i] ? p - F.modulus[i] : 0;
        F.redrows.push_back(row);
        for (unsigned j = 1; j + 1 < f; ++j) {
            std::vector<u64> next(f, 0);
            u64 top = row[f - 1];
            for (unsigned i = f; i-- > 1;) next[i] = row[i - 1];
            if (top)
                for (unsigned i = 0; i < f; ++i)
                    next[i] = u64((u128(next[i]) + u128(top) * F.redrows[0][i]) % p);
            F.redrows.push_back(next);
            row = next;
        }
    }

    // Frobenius matrix: column j = x^{jp} mod modulus
    F.frob.assign(f, std::vector<u64>(f, 0));
    if (f == 1) {
        F.frob[0][0] = 1;
    } else {
        std::vector<u64> x{0, 1};
        auto xp = gfdetail::ppowmod(x, p, F.modulus, p);
        std::vector<u64> t{1};
        for (unsigned j = 0; j < f; ++j) {
            for (size_t i = 0; i < t.size(); ++i) F.frob[j][i] = t[i];
            t = gfdetail::pmulmod(t, xp, F.modulus, p);
        }
    }

    // trace functional: first row of I + Frob + ... + Frob^{f-1}
    {
        auto M = F.mat_identity();
        auto A = F.mat_identity();
        for (unsigned i = 1; i < f; ++i) {
            A = F.mat_mul(F.frob, A);
            M = F.mat_add(M, A);
        }
        F.trace_vec.assign(f, 0);
        for (unsigned j = 0; j < f; ++j) {
            F.trace_vec[j] = M[j][0];
            for (unsigned i = 1; i < f; ++i)
                if (M[j][i] != 0) fail(err::range_error, "trace image not in prime field");
        }
    }

    F.q1_factors = factorize(F.q - 1);

    // smallest primitive element
    std::vector<u64> gv(f, 0);
    while (gfdetail::next_vec(gv, p)) {
        FieldElement cand_e{gv};
        bool prim = true;
        for (auto& pp : F.q1_factors) {
            if (F.pow(cand_e, (F.q - 1) / pp.prime) == F.one()) {
                prim = false;
                break;
            }
        }
        if (F.q == 2 || F.q - 1 == 1) prim = cand_e == F.one();
        if (prim) {
            F.gamma = cand_e;
            break;
        }
    }
    if (F.gamma.c.empty()) fail(err::range_error, "no primitive element found");
    F.gamma_degree = 0;
    for (unsigned i = 0; i < f; ++i)
        if (F.gamma.c[i]) F.gamma_degree = i;
    return F;
}

// Consecutive powers of gamma by one multiplication per step.
class PowerStream {
public:
    PowerStream(const FieldSpec& F, u64 start, u64 count) : F_(F), a_(start), end_(start + count) {
        if (start + count > F.q - 1 || start + count < start)
            fail(err::range_error, "power range beyond q-1");
        cur_ = F.pow(F.gamma, start);
        tmp_.assign(F.f + F.gamma_degree + 1, 0);
    }

    bool done() const { return a_ >= end_; }
    u64 exponent() const { return a_; }
    const FieldElement& value() const { return cur_; }

    void advance() {
        ++a_;
        if (a_ >= end_) return;
        step();
    }

private:
    void step() {
        // cur *= gamma; gamma has low degree so this is O(f * (deg+1)).
        const auto& g = F_.gamma.c;
        unsigned dg = F_.gamma_degree;
        unsigned f = F_.f;
        u64 p = F_.p;
        std::fill(tmp_.begin(), tmp_.end(), 0);
        if (p < (u64(1) << 28)) {
            for (unsigned i = 0; i < f; ++i) {
                u64 a = cur_.c[i];
                if (!a) continue;
                for (unsigned j = 0; j <= dg; ++j) tmp_[i + j] += a * g[j] % p;
            }
            for (unsigned j = f + dg; j-- > f;) {
                u64 c = tmp_[j] % p;
                if (!c) continue;
                const auto& row = F_.redrows[j - f];
                for (unsigned i = 0; i < f; ++i) tmp_[i] += c * row[i] % p;
            }
            for (unsigned i = 0; i < f; ++i) cur_.c[i] = tmp_[i] % p;
        } else {
            cur_ = F_.mul(cur_, F_.gamma);
        }
    }

    const FieldSpec& F_;
    u64 a_;
    u64 end_;
    FieldElement cur_;
    std::vector<u64> tmp_;
};

// ---- linear algebra mod p (small dense) --------------------------------

// Solve A x = b over F_p where A is rows x cols and has full column rank.
// Returns x; fails if inconsistent or rank-deficient.
inline std::vector<u64> solve_mod_p(std::vector<std::vector<u64>> A, std::vector<u64> b, u64 p) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<size_t> pivot_row(cols);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c] == 0) ++sel;
        if (sel == rows) fail(err::range_error, "rank-deficient system");
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        u64 il = gfdetail::inv_mod_prime(A[r][c], p);
        for (size_t j = c; j < cols; ++j) A[r][j] = mulmod(A[r][j], il, p);
        b[r] = mulmod(b[r], il, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            u64 m = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] = (A[i][j] + p - mulmod(m, A[r][j], p)) % p;
            b[i] = (b[i] + p - mulmod(m, b[r], p)) % p;
        }
        pivot_row[c] = r++;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) fail(err::range_error, "inconsistent system: vector not in subspace");
    std::vector<u64> x(cols);
    for (size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]];
    return x;
}

// ---- subfield embedding --------------------------------------------------

// F_{p^d} inside F_{p^f}: the canonical primitive element of the standalone
// subfield maps to Gamma = gamma^{(q-1)/(q0-1)}.  The map is F_p-linear and
// Frobenius-equivariant (gamma_sub^i -> Gamma^i on the power basis), which is
// what trace transport needs; it is a ring isomorphism exactly when Gamma is
// a root of the minimal polynomial of gamma_sub, recorded in `ring_hom`.
struct SubfieldEmbedding {
    FieldSpec sub;
    const FieldSpec* big = nullptr;
    FieldElement gamma_image;                // Gamma
    std::vector<std::vector<u64>> embed_mat;  // f x d, column-major (cols index sub coords)
    bool ring_hom = false;

    FieldElement embed(const FieldElement& e) const {
        FieldElement r = big->zero();
        for (unsigned j = 0; j < sub.f; ++j) {
            if (!e.c[j]) continue;
            for (unsigned i = 0; i < big->f; ++i)
                r.c[i] = u64((u128(r.c[i]) + u128(embed_mat[j][i]) * e.c[j]) % big->p);
        }
        return r;
    }

    FieldElement project(const FieldElement& E) const {
        std::vector<std::vector<u64>> A(big->f, std::vector<u64>(sub.f));
        for (unsigned i = 0; i < big->f; ++i)
            for (unsigned j = 0; j < sub.f; ++j) A[i][j] = embed_mat[j][i];
        auto x = solve_mod_p(std::move(A), E.c, big->p);
        return FieldElement{x};
    }
};

inline SubfieldEmbedding subfield_embed(const FieldSpec& F, unsigned d) {
    if (d == 0 || F.f % d != 0) fail(err::not_a_divisor, "subfield degree " + std::to_string(d));
    SubfieldEmbedding se;
    se.big = &F;
    se.sub = build_field(F.p, d);
    u64 q0 = se.sub.q;
    se.gamma_image = F.pow(F.gamma, (F.q - 1) / (q0 - 1));

    // powers of gamma_sub in subfield coordinates -> change of basis C
    std::vector<std::vector<u64>> C(d);  // column j = gamma_sub^j
    {
        FieldElement t = se.sub.one();
        for (unsigned j = 0; j < d; ++j) {
            C[j] = t.c;
            t = se.sub.mul(t, se.sub.gamma);
        }
    }
    // powers of Gamma in big coordinates -> B
    std::vector<std::vector<u64>> B(d);
    {
        FieldElement t = F.one();
        for (unsigned j = 0; j < d; ++j) {
            B[j] = t.c;
            t = F.mul(t, se.gamma_image);
        }
    }
    // embed_mat column for sub basis vector e_j: write e_j = sum b_i gamma_sub^i
    se.embed_mat.assign(d, std::vector<u64>(F.f, 0));
    for (unsigned j = 0; j < d; ++j) {
        std::vector<std::vector<u64>> A(d, std::vector<u64>(d));
        for (unsigned i = 0; i < d; ++i)
            for (unsigned k = 0; k < d; ++k) A[i][k] = C[k][i];
        std::vector<u64> rhs(d, 0);
        rhs[j] = 1;
        auto b = solve_mod_p(std::move(A), rhs, F.p);
        for (unsigned k = 0; k < d; ++k) {
            if (!b[k]) continue;
            for (unsigned i = 0; i < F.f; ++i)
                se.embed_mat[j][i] = u64((u128(se.embed_mat[j][i]) + u128(b[k]) * B[k][i]) % F.p);
        }
    }

    // minimal polynomial of gamma_sub: gamma_sub^d = sum m_i gamma_sub^i
    {
        FieldElement gd = se.sub.pow(se.sub.gamma, d);
        std::vector<std::vector<u64>> A(d, std::vector<u64>(d));
        for (unsigned i = 0; i < d; ++i)
            for (unsigned k = 0; k < d; ++k) A[i][k] = C[k][i];
        auto m = solve_mod_p(std::move(A), gd.c, F.p);
        FieldElement acc = F.zero();
        FieldElement t = F.one();
        for (unsigned k = 0; k < d; ++k) {
            for (unsigned i = 0; i < F.f; ++i)
                acc.c[i] = u64((acc.c[i] + u128(m[k]) * t.c[i]) % F.p);
            t = F.mul(t, se.gamma_image);
        }
        se.ring_hom = (acc == t);  // Gamma^d == sum m_k Gamma^k
    }
    return se;
}

// I + Frob + ... + Frob^{terms-1}; with terms = f0 this is Tr_{p^f0/p} on
// subfield elements, with terms = f/f0 stride handled by partial_trace_matrix.
inline std::vector<std::vector<u64>> frobenius_sum_matrix(const FieldSpec& F, unsigned terms) {
    std::vector<std::vector<u64>> M(F.f, std::vector<u64>(F.f, 0)), A = M;
    for (unsigned i = 0; i < F.f; ++i) M[i][i] = 1, A[i][i] = 1;
    const auto& Frob = F.frob;
    for (unsigned j = 1; j < terms; ++j) {
        std::vector<std::vector<u64>> C(F.f, std::vector<u64>(F.f, 0));
        for (unsigned a = 0; a < F.f; ++a)
            for (unsigned b = 0; b < F.f; ++b) {
                if (!A[a][b]) continue;
                for (unsigned i = 0; i < F.f; ++i)
                    C[a][i] = u64((u128(C[a][i]) + u128(Frob[b][i]) * A[a][b]) % F.p);
            }
        A = C;
        for (unsigned a = 0; a < F.f; ++a)
            for (unsigned i = 0; i < F.f; ++i) M[a][i] = addmod(M[a][i], A[a][i], F.p);
    }
    return M;
}

// Tr_{q/q0} of x, re-expressed in the standalone subfield's coordinates.
inline FieldElement trace_rel(const FieldSpec& F, const FieldElement& x, unsigned d,
                              const SubfieldEmbedding* se = nullptr) {
    if (d == 0 || F.f % d != 0) fail(err::not_a_divisor, "subfield degree " + std::to_string(d));
    auto S = F.partial_trace_matrix(d);
    FieldElement y = F.apply_matrix(S, x);
    if (d == F.f) return y;
    if (se) return se->project(y);
    auto own = subfield_embed(F, d);
    return own.project(y);
}

}  // namespace csrg
