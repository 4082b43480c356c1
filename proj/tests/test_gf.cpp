#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "csrg/gf.hpp"

using namespace csrg;

TEST_CASE("build small fields") {
    auto F2 = build_field(2, 1);
    CHECK(F2.q == 2);
    CHECK(F2.modulus == std::vector<u64>{0, 1});  // x
    CHECK(F2.gamma == F2.one());

    auto F4 = build_field(2, 2);
    CHECK(F4.modulus == std::vector<u64>{1, 1, 1});  // x^2+x+1
    // gamma = x, and gamma*gamma = gamma + 1
    CHECK(F4.gamma.c == std::vector<u64>{0, 1});
    CHECK(F4.mul(F4.gamma, F4.gamma).c == std::vector<u64>{1, 1});

    auto F5 = build_field(5, 1);
    CHECK(F5.gamma.c == std::vector<u64>{2});

    CHECK_THROWS_AS(build_field(6, 2), error);   // not prime
    CHECK_THROWS_AS(build_field(2, 41), error);  // beyond 2^40
}

TEST_CASE("primitivity of gamma") {
    auto F = build_field(3, 5);
    CHECK(F.q == 243);
    CHECK(F.pow(F.gamma, 242) == F.one());
    for (u64 d : divisors(242))
        if (d != 242) CHECK(F.pow(F.gamma, d) != F.one());
}

TEST_CASE("large field constructs") {
    auto F = build_field(2, 21);
    CHECK(F.q == 2097152);
    // order checked against the factorization of 2^21-1 = 7^2 * 127 * 337
    for (u64 r : {7u, 127u, 337u}) CHECK(F.pow(F.gamma, (F.q - 1) / r) != F.one());
}

TEST_CASE("field axioms on F_9") {
    auto F = build_field(3, 2);
    std::vector<FieldElement> elems;
    for (u64 v = 0; v < 9; ++v) elems.push_back(F.decode(v));
    for (auto& a : elems) {
        CHECK(F.add(a, F.zero()) == a);
        CHECK(F.mul(a, F.one()) == a);
        CHECK(F.add(a, F.neg(a)) == F.zero());
        if (!F.is_zero(a)) {
            CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(F.pow(a, F.q - 1) == F.one());
        } else {
            CHECK_THROWS_AS(F.inv(a), error);
        }
        for (auto& b : elems) {
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.sub(F.add(a, b), b) == a);
            for (auto& c : elems)
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
    }
}

TEST_CASE("absolute trace") {
    auto F4 = build_field(2, 2);
    CHECK(F4.trace_abs(F4.zero()) == 0);
    CHECK(F4.trace_abs(F4.one()) == 0);       // f mod p = 2 mod 2
    CHECK(F4.trace_abs(F4.gamma) == 1);       // gamma + gamma^2 = 1

    auto F27 = build_field(3, 3);
    CHECK(F27.trace_abs(F27.one()) == 3 % 3);
    // trace is additive and Frobenius-invariant
    for (u64 v = 0; v < 27; ++v) {
        auto x = F27.decode(v);
        CHECK(F27.trace_abs(F27.pow(x, 3)) == F27.trace_abs(x));
        for (u64 w = 0; w < 27; ++w) {
            auto y = F27.decode(w);
            CHECK(F27.trace_abs(F27.add(x, y)) == (F27.trace_abs(x) + F27.trace_abs(y)) % 3);
        }
    }
    // surjectivity: every t in F_p is hit
    std::set<u64> seen;
    for (u64 v = 0; v < 27; ++v) seen.insert(F27.trace_abs(F27.decode(v)));
    CHECK(seen.size() == 3);
}

TEST_CASE("frobenius fixes the prime field") {
    auto F = build_field(5, 3);
    for (u64 c = 0; c < 5; ++c) {
        auto e = F.from_int(c);
        CHECK(F.pow(e, 5) == e);
    }
}

TEST_CASE("power enumeration") {
    auto F5 = build_field(5, 1);
    std::vector<std::pair<u64, u64>> got;
    for (PowerStream s(F5, 0, 4); !s.done(); s.advance()) got.push_back({s.exponent(), s.value().c[0]});
    CHECK(got == std::vector<std::pair<u64, u64>>{{0, 1}, {1, 2}, {2, 4}, {3, 3}});

    // chunked enumeration equals one pass, and visits each nonzero element once
    auto F16 = build_field(2, 4);
    std::vector<u64> full, chunked;
    for (PowerStream s(F16, 0, 15); !s.done(); s.advance()) full.push_back(F16.encode(s.value()));
    for (PowerStream s(F16, 0, 6); !s.done(); s.advance()) chunked.push_back(F16.encode(s.value()));
    for (PowerStream s(F16, 6, 9); !s.done(); s.advance()) chunked.push_back(F16.encode(s.value()));
    CHECK(full == chunked);
    std::set<u64> uniq(full.begin(), full.end());
    CHECK(uniq.size() == 15);
    CHECK_FALSE(uniq.count(0));

    CHECK_THROWS_AS(PowerStream(F16, 10, 6), error);
}

TEST_CASE("relative trace and subfield embedding") {
    auto F16 = build_field(2, 4);
    auto se = subfield_embed(F16, 2);
    CHECK(se.sub.q == 4);
    // image of nonzero subfield elements = {x : x^4 = x, x != 0} = {1, g^5, g^10}
    std::set<u64> img;
    for (u64 v = 1; v < 4; ++v) img.insert(F16.encode(se.embed(se.sub.decode(v))));
    std::set<u64> expect{F16.encode(F16.one()), F16.encode(F16.pow(F16.gamma, 5)),
                         F16.encode(F16.pow(F16.gamma, 10))};
    CHECK(img == expect);
    for (u64 v = 0; v < 4; ++v) {
        auto e = se.embed(se.sub.decode(v));
        CHECK(F16.pow(e, 4) == e);
        CHECK(se.project(e) == se.sub.decode(v));
    }
    CHECK(se.embed(se.sub.gamma) == F16.pow(F16.gamma, 5));

    // trace_rel lands in the subfield and matches the power-sum definition
    for (u64 v = 0; v < 16; ++v) {
        auto x = F16.decode(v);
        auto tr_big = F16.add(x, F16.pow(x, 4));  // x + x^{q0}
        auto tr_sub = trace_rel(F16, x, 2, &se);
        CHECK(se.embed(tr_sub) == tr_big);
    }
    // identity and zero cases
    auto any = F16.decode(7);
    CHECK(trace_rel(F16, any, 4) == any);
    CHECK(se.sub.is_zero(trace_rel(F16, F16.zero(), 2, &se)));
    CHECK_THROWS_AS(trace_rel(F16, any, 3), error);
}

TEST_CASE("trace transitivity through a subfield") {
    auto F = build_field(2, 6);
    auto se = subfield_embed(F, 2);
    for (u64 v = 0; v < 64; ++v) {
        auto x = F.decode(v);
        auto t = trace_rel(F, x, 2, &se);
        CHECK(F.trace_abs(x) == se.sub.trace_abs(t));
    }
    auto F81 = build_field(3, 4);
    auto se2 = subfield_embed(F81, 2);
    for (u64 v = 0; v < 81; ++v) {
        auto x = F81.decode(v);
        CHECK(F81.trace_abs(x) == se2.sub.trace_abs(trace_rel(F81, x, 2, &se2)));
    }
}

TEST_CASE("embedding generator into a big field") {
    auto F = build_field(2, 21);
    auto se = subfield_embed(F, 3);
    CHECK(se.embed(se.sub.gamma) == F.pow(F.gamma, (F.q - 1) / 7));
    // Frobenius equivariance of the embedding
    for (u64 v = 0; v < 8; ++v) {
        auto e = se.sub.decode(v);
        CHECK(se.embed(se.sub.pow(e, 2)) == F.pow(se.embed(e), 2));
    }
}
