#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include "csrg/intutil.hpp"
#include "csrg/residue.hpp"

namespace csrg {

// Exact arithmetic in Z[zeta_n], elements in the reduced power basis
// {1, z, ..., z^(phi(n)-1)} modulo the n-th cyclotomic polynomial.  Equality
// of values is equality of coefficient vectors.

using Poly = std::vector<Int>;  // little-endian coefficients

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division, q = num / den; den monic.  Used only for cyclotomic
// polynomial construction, where division is exact by construction.
inline Poly poly_div_exact(Poly num, const Poly& den) {
    Poly q;
    if (den.empty() || den.back() != 1) fail(err::range_error, "divisor must be monic");
    if (num.size() < den.size()) {
        poly_trim(num);
        if (!num.empty()) fail(err::range_error, "non-exact polynomial division");
        return {};
    }
    q.assign(num.size() - den.size() + 1, 0);
    for (size_t i = num.size(); i-- >= den.size();) {
        Int c = num[i];
        if (c == 0) {
            if (i + 1 == den.size()) break;
            continue;
        }
        size_t shift = i - (den.size() - 1);
        q[shift] = c;
        for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
        if (i + 1 == den.size()) break;
    }
    poly_trim(num);
    if (!num.empty()) fail(err::range_error, "non-exact polynomial division");
    return q;
}

// Phi_n by exact division of x^n - 1 by the Phi_d over proper divisors d.
// Small conductors are cached; large ones (one-shot uses during sweeps) are
// recomputed so the cache cannot grow without bound.
inline Poly cyclotomic_polynomial(u64 n) {
    if (n == 0) fail(err::range_error, "cyclotomic_polynomial(0)");
    static constexpr u64 kCacheLimit = 2048;
    static std::map<u64, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto compute = [&](u64 d, auto&& self) -> Poly {
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
        Poly out;
        if (d == 1) {
            out = Poly{-1, 1};
        } else {
            Poly num(d + 1, 0);
            num[0] = -1;
            num[d] = 1;
            for (u64 e : divisors(d))
                if (e < d) num = poly_div_exact(std::move(num), self(e, self));
            out = std::move(num);
        }
        if (d <= kCacheLimit) cache.emplace(d, out);
        return out;
    };
    return compute(n, compute);
}

// Per-conductor context: Phi_n plus the reductions of z^j for j in
// [phi(n), n), which make reduction of raw exponent vectors linear time.
struct CycCtx {
    u64 n = 0;
    u64 phi = 0;
    Poly Phi;
    std::vector<std::vector<Int>> rows;  // rows[j - phi] = z^j in the basis

    explicit CycCtx(u64 n_) : n(n_), phi(euler_phi_u64(n_)), Phi(cyclotomic_polynomial(n_)) {
        if (u128(n - phi) * phi > (u128(1) << 28))
            fail(err::too_large, "conductor " + std::to_string(n) + " reduction table");
        rows.reserve(n - phi);
        if (n == phi) return;  // n == 1
        std::vector<Int> row(phi);
        for (u64 i = 0; i < phi; ++i) row[i] = -Phi[i];
        rows.push_back(row);
        for (u64 j = phi + 1; j < n; ++j) {
            std::vector<Int> next(phi, 0);
            const Int& top = row[phi - 1];
            for (u64 i = phi; i-- > 1;) next[i] = row[i - 1];
            if (top != 0)
                for (u64 i = 0; i < phi; ++i) next[i] += top * rows[0][i];
            rows.push_back(next);
            row.swap(next);
        }
    }

    // raw has one slot per exponent 0..len-1 with len <= 2n; exponents fold
    // mod n, degrees >= phi fold through the row table.
    std::vector<Int> reduce(std::vector<Int> raw) const {
        if (raw.size() > n) {
            for (size_t i = raw.size(); i-- > n;) {
                if (raw[i] != 0) raw[i - n] += raw[i];
            }
            raw.resize(n);
        }
        raw.resize(std::max<size_t>(raw.size(), phi), 0);
        std::vector<Int> out(raw.begin(), raw.begin() + phi);
        for (size_t j = phi; j < raw.size(); ++j) {
            const Int& c = raw[j];
            if (c == 0) continue;
            const auto& row = rows[j - phi];
            for (u64 i = 0; i < phi; ++i) out[i] += c * row[i];
        }
        return out;
    }
};

// Bounded context cache: reduction tables for large conductors are the
// dominant memory cost, so evict least-recently-used contexts once the total
// cell count passes the budget.  Live shared_ptrs keep evicted contexts valid.
inline std::shared_ptr<const CycCtx> cyc_ctx(u64 n) {
    struct Entry {
        std::shared_ptr<const CycCtx> ctx;
        u64 stamp;
    };
    static std::map<u64, Entry> cache;
    static u64 clock = 0;
    static u64 total_cells = 0;
    static constexpr u64 kCellBudget = u64(1) << 22;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) {
        it->second.stamp = ++clock;
        return it->second.ctx;
    }
    auto ctx = std::make_shared<const CycCtx>(n);
    u64 cells = (n - ctx->phi) * ctx->phi + n;
    while (total_cells + cells > kCellBudget && !cache.empty()) {
        auto victim = cache.begin();
        for (auto jt = cache.begin(); jt != cache.end(); ++jt)
            if (jt->second.stamp < victim->second.stamp) victim = jt;
        total_cells -= (victim->first - victim->second.ctx->phi) * victim->second.ctx->phi +
                       victim->first;
        cache.erase(victim);
    }
    total_cells += cells;
    cache.emplace(n, Entry{ctx, ++clock});
    return ctx;
}

class CycInt {
public:
    CycInt() : CycInt(Int(0)) {}
    explicit CycInt(const Int& v, u64 conductor = 1) : n_(conductor), c_(euler_phi_u64(conductor), 0) { c_[0] = v; }
    CycInt(u64 conductor, std::vector<Int> reduced) : n_(conductor), c_(std::move(reduced)) {
        if (c_.size() != euler_phi_u64(conductor)) fail(err::range_error, "bad coefficient length");
    }

    static CycInt zero(u64 n) { return CycInt(Int(0), n); }
    static CycInt one(u64 n) { return CycInt(Int(1), n); }
    // zeta_n^e
    static CycInt root_of_unity(u64 n, u64 e) {
        auto ctx = cyc_ctx(n);
        std::vector<Int> raw(n, 0);
        raw[e % n] = 1;
        return CycInt(n, ctx->reduce(std::move(raw)));
    }
    static CycInt from_raw(u64 n, std::vector<Int> raw) {
        auto ctx = cyc_ctx(n);
        return CycInt(n, ctx->reduce(std::move(raw)));
    }

    u64 conductor() const { return n_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const CycInt& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    std::optional<Int> detect_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }

    CycInt neg() const {
        CycInt r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    CycInt lift_to(u64 m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) fail(err::conductor_mismatch, "lift " + std::to_string(n_) + " -> " + std::to_string(m));
        u64 step = m / n_;
        std::vector<Int> raw(m, 0);
        for (u64 i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) raw[(u128(i) * step) % m] += c_[i];
        return from_raw(m, std::move(raw));
    }

    // zeta_n |-> zeta_n^t for gcd(t, n) = 1; a ring automorphism.
    CycInt galois_apply(u64 t) const {
        t %= n_;
        if (n_ == 1) return *this;
        if (gcd_u64(t, n_) != 1) fail(err::not_coprime, "galois exponent " + std::to_string(t));
        std::vector<Int> raw(n_, 0);
        for (u64 i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) raw[mulmod(i, t, n_)] += c_[i];
        return from_raw(n_, std::move(raw));
    }

    CycInt conj() const { return galois_apply(n_ - 1 + (n_ == 1)); }

    // multiply by zeta_n^e
    CycInt shift(u64 e) const {
        e %= n_;
        if (e == 0) return *this;
        std::vector<Int> raw(n_ + euler_phi_u64(n_), 0);
        for (u64 i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) raw[i + e] += c_[i];
        return from_raw(n_, std::move(raw));
    }

    CycInt div_exact(const Int& d) const {
        if (d == 0) fail(err::division_by_zero, "division by zero integer");
        CycInt r = *this;
        for (auto& c : r.c_) {
            if (c % d != 0) fail(err::non_integral_division, "coefficient " + c.str() + " not divisible by " + d.str());
            c /= d;
        }
        return r;
    }

private:
    u64 n_;
    std::vector<Int> c_;

    friend CycInt add_impl(const CycInt& a, const CycInt& b, int sign);
    friend CycInt mul(const CycInt& a, const CycInt& b);
};

// Conductor coercion: exact match, rational coercion, or divisibility lift.
inline std::pair<CycInt, CycInt> coerce(const CycInt& a, const CycInt& b) {
    if (a.conductor() == b.conductor()) return {a, b};
    if (auto r = a.detect_rational()) return {CycInt(*r, b.conductor()), b};
    if (auto r = b.detect_rational()) return {a, CycInt(*r, a.conductor())};
    if (b.conductor() % a.conductor() == 0) return {a.lift_to(b.conductor()), b};
    if (a.conductor() % b.conductor() == 0) return {a, b.lift_to(a.conductor())};
    fail(err::conductor_mismatch,
         std::to_string(a.conductor()) + " vs " + std::to_string(b.conductor()));
}

inline CycInt add_impl(const CycInt& a0, const CycInt& b0, int sign) {
    auto [a, b] = coerce(a0, b0);
    CycInt r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += sign > 0 ? b.c_[i] : -b.c_[i];
    return r;
}

inline CycInt add(const CycInt& a, const CycInt& b) { return add_impl(a, b, +1); }
inline CycInt sub(const CycInt& a, const CycInt& b) { return add_impl(a, b, -1); }

inline CycInt mul(const CycInt& a0, const CycInt& b0) {
    auto [a, b] = coerce(a0, b0);
    u64 n = a.conductor();
    auto ctx = cyc_ctx(n);
    size_t phi = a.c_.size();
    std::vector<Int> raw(2 * phi - 1, 0);
    for (size_t i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < phi; ++j) {
            if (b.c_[j] == 0) continue;
            raw[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return CycInt(n, ctx->reduce(std::move(raw)));
}

inline CycInt operator+(const CycInt& a, const CycInt& b) { return add(a, b); }
inline CycInt operator-(const CycInt& a, const CycInt& b) { return sub(a, b); }
inline CycInt operator*(const CycInt& a, const CycInt& b) { return mul(a, b); }
inline CycInt operator-(const CycInt& a) { return a.neg(); }

inline CycInt pow(const CycInt& a, u64 e) {
    CycInt r = CycInt::one(a.conductor());
    CycInt base = a;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

// Equality of values across conductors (compare in the compositum).
inline bool values_equal(const CycInt& a, const CycInt& b) {
    if (a.conductor() == b.conductor()) return a == b;
    u64 l = std::lcm(a.conductor(), b.conductor());
    return a.lift_to(l) == b.lift_to(l);
}

struct RootOfUnity {
    u64 order;
    u64 exponent;  // value = zeta_order^exponent, gcd(exponent, order) = 1 unless order == 1
};

// Roots of unity in Z[zeta_n] are exactly +-zeta_n^i; scan both signs.
inline std::optional<RootOfUnity> classify_root_of_unity(const CycInt& a) {
    u64 n = a.conductor();
    for (u64 i = 0; i < n; ++i) {
        CycInt cand = CycInt::root_of_unity(n, i);
        int sgn = 0;
        if (a == cand)
            sgn = 1;
        else if (n % 2 == 1 && a == cand.neg())
            sgn = -1;
        if (sgn == 0) continue;
        if (sgn == 1) {
            if (i == 0) return RootOfUnity{1, 0};
            u64 g = gcd_u64(i, n);
            return RootOfUnity{n / g, i / g};
        }
        u64 M = 2 * n, J = (n + 2 * i) % M;
        u64 g = gcd_u64(J, M);
        return RootOfUnity{M / g, J / g};
    }
    return std::nullopt;
}

// Conductor n = 2m with m odd defines the same field as conductor m; rewrite
// via zeta_2m = -zeta_m^((m+1)/2).  Used to print values minimally.
inline CycInt fold_even_conductor(const CycInt& a) {
    u64 n = a.conductor();
    if (n % 2 != 0 || (n / 2) % 2 == 0) return a;
    u64 m = n / 2;
    std::vector<Int> raw(m, 0);
    u64 half = (m + 1) / 2;
    for (u64 i = 0; i < a.coeffs().size(); ++i) {
        const Int& c = a.coeffs()[i];
        if (c == 0) continue;
        u64 e = mulmod(i % m, half, m);
        if (i % 2 == 0)
            raw[e] += c;
        else
            raw[e] -= c;
    }
    return CycInt::from_raw(m, std::move(raw));
}

inline CycInt canonical_form(const CycInt& a) {
    CycInt r = fold_even_conductor(a);
    if (auto v = r.detect_rational()) return CycInt(*v, 1);
    return r;
}

inline std::string render_terms(const std::vector<Int>& c) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Int mag = c[i] < 0 ? Int(-c[i]) : c[i];
        if (first) {
            if (c[i] < 0) os << "-";
            first = false;
        } else {
            os << (c[i] < 0 ? " - " : " + ");
        }
        if (i == 0)
            os << mag.str();
        else if (mag == 1)
            os << "z^" << i;
        else
            os << mag.str() << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
}

inline std::string to_text(const CycInt& a) { return render_terms(a.coeffs()); }

// Human-facing form.  For an odd prime conductor the relation
// 1 + z + ... + z^(p-1) = 0 gives a second integral representation supported
// on exponents 1..p-1; pick whichever is tidier (smaller max coefficient,
// then fewer terms), so e.g. the quadratic Gauss sum prints as "z^1 - z^2".
inline std::string display_text(const CycInt& a) {
    u64 n = a.conductor();
    if (n < 3 || !is_prime_u64(n)) return to_text(a);
    const auto& c = a.coeffs();
    std::vector<Int> alt(n, 0);
    for (size_t i = 1; i < c.size(); ++i) alt[i] = c[i] - c[0];
    alt[n - 1] = -c[0];
    auto score = [](const std::vector<Int>& v) {
        Int maxc = 0;
        u64 terms = 0;
        for (auto& x : v) {
            Int m = x < 0 ? Int(-x) : x;
            if (m > maxc) maxc = m;
            if (m != 0) ++terms;
        }
        return std::make_pair(maxc, terms);
    };
    std::vector<Int> base(c.begin(), c.end());
    return score(alt) < score(base) ? render_terms(alt) : render_terms(base);
}

// Numeric embedding at zeta_n -> exp(2*pi*i*j/n); test support only.
inline std::complex<double> numeric_eval(const CycInt& a, u64 j) {
    std::complex<double> acc = 0;
    const double tau = 6.283185307179586476925287;
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        double c = static_cast<double>(a.coeffs()[i]);
        double ang = tau * double((u128(i) * j) % a.conductor()) / double(a.conductor());
        acc += c * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

}  // namespace csrg
