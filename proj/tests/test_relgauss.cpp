#include <catch2/catch_amalgamated.hpp>

#include "csrg/relgauss.hpp"

using namespace csrg;

TEST_CASE("theta for (2,3,9): unit, rational, equal to one") {
    auto R = relative_gauss(2, 3, 3, 1);
    CHECK(R.f == 2);
    CHECK(R.fprime == 6);
    CHECK(R.kprime == 9);
    CHECK(R.classification == ThetaKind::PlusOne);
    CHECK((R.theta.conj() * R.theta).detect_rational().value() == 1);
    CHECK(root_order_bound_check(R));  // d = 2*gcd(9,1) = 2
    CHECK(R.predicted_epsilon == 1);
}

TEST_CASE("character compatibility under restriction") {
    // chi'(Gamma^a) = zeta_{k'}^{u a N} must equal zeta_k^{u a}: N = p1 (mod k')
    for (auto [p, k, p1] : std::vector<std::array<u64, 3>>{{2, 3, 3}, {2, 5, 5}, {5, 6, 3}}) {
        u64 kp = k * p1;
        u64 e = subgroup_index(p, k);
        unsigned f = unsigned(euler_phi_u64(k) / e), fp = unsigned(euler_phi_u64(kp) / e);
        u64 q = 1, qp = 1;
        for (unsigned i = 0; i < f; ++i) q *= p;
        for (unsigned i = 0; i < fp; ++i) qp *= p;
        u64 N = (qp - 1) / (q - 1);
        for (u64 a = 0; a < 100; ++a) {
            u64 lhs = mulmod(N % kp, a % kp, kp);       // exponent of zeta_{k'}
            u64 rhs = mulmod(p1 % kp, a % kp, kp);      // zeta_k^a = zeta_{k'}^{p1 a}
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("theta for (5,6,18) and predicted sign") {
    auto R = relative_gauss(5, 6, 3, 1);
    CHECK(R.f == 2);
    CHECK(R.fprime == 6);
    CHECK(R.classification == ThetaKind::PlusOne);
    CHECK(R.predicted_epsilon == 1);
    CHECK(root_order_bound_check(R));  // k' even: d = gcd(18,4) = 2
    CHECK((R.theta.conj() * R.theta).detect_rational().value() == 1);
}

TEST_CASE("predicted signs without field work") {
    CHECK(predicted_sign(2, 7, 7) == 1);    // odd k' theorem
    CHECK(predicted_sign(2, 3, 3) == 1);
    CHECK(predicted_sign(2, 5, 5) == 1);
    CHECK(predicted_sign(5, 6, 3) == 1);    // exponent (4*2*2)/4 = 4
    CHECK(predicted_sign(11, 6, 3) == 1);   // exponent (10*2*2)/4 = 10
    CHECK(predicted_sign(3, 11, 11) == 0);  // index collapses mod 121
    CHECK(predicted_sign(3, 4, 3) == 0);    // p1 does not divide k
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(relative_gauss(3, 11, 11, 1), error);      // IndexUnstable
    CHECK_THROWS_AS(relative_gauss(2, 5, 3, 1), error);        // p1 must divide k
    CHECK_THROWS_AS(relative_gauss(2, 3, 3, 3), error);        // trivial base character
    CHECK_THROWS_AS(relative_gauss(2, 7, 7, 1, 1, 1 << 10), error);  // TooLarge (2^21 > cap)
}

TEST_CASE("yamamoto subset sum equals the gauss sum ratio") {
    // F_16 over F_4 with chi' of order 15 (restriction has order 3)
    CHECK(yamamoto_matches(2, 2, 4, 15, 1));
    CHECK(yamamoto_matches(2, 2, 4, 15, 2));
    CHECK(yamamoto_matches(3, 1, 2, 8, 1));
    CHECK(yamamoto_matches(2, 3, 6, 21, 1));
    CHECK(yamamoto_matches(2, 3, 6, 63, 2));
    CHECK(yamamoto_matches(3, 2, 4, 16, 1));
    CHECK(yamamoto_matches(5, 1, 2, 24, 1));
    CHECK_THROWS_AS(yamamoto_sum(2, 2, 4, 15, 3), error);  // 3*5 = 0 mod 15: trivial restriction
    CHECK_THROWS_AS(yamamoto_sum(2, 2, 4, 5, 1), error);   // N = 5 = 0 mod 5: trivial restriction
}

TEST_CASE("yamamoto identity in the index-stable setting") {
    // (2,3,9): sum * G_f equals G_{f'} and sum = 2^{(f'-f)/2} theta
    auto R = relative_gauss(2, 3, 3, 1);
    auto S = yamamoto_sum(2, R.f, R.fprime, 9, 1);
    Int scale = pow_int(Int(2), (R.fprime - R.f) / 2);
    CHECK(values_equal(S, R.theta * CycInt(scale)));
}

TEST_CASE("conjugate exponents stay rational") {
    CHECK(conjugate_exponent_check(2, 3, 3, 2));
    CHECK(conjugate_exponent_check(2, 3, 3, 4));
    CHECK_THROWS_AS(conjugate_exponent_check(2, 3, 3, 3), error);   // p1^{e1} | t
    CHECK_THROWS_AS(conjugate_exponent_check(5, 6, 3, 1), error);   // k' even
}

TEST_CASE("galois stability of the classification") {
    auto R1 = relative_gauss(2, 3, 3, 1);
    for (u64 a = 2; a < 9; ++a) {
        if (gcd_u64(a, 9) != 1) continue;
        auto Ra = relative_gauss(2, 3, 3, a);
        CHECK(Ra.classification == R1.classification);
    }
}

TEST_CASE("theta for (2,5,25)") {
    // F_{2^20}: the middle case of the odd-k' rationality theorem
    auto R = relative_gauss(2, 5, 5, 1);
    CHECK(R.fprime == 20);
    CHECK(R.classification == ThetaKind::PlusOne);
    CHECK(root_order_bound_check(R));
}
