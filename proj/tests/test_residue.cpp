#include <catch2/catch_amalgamated.hpp>

#include "csrg/residue.hpp"

using namespace csrg;

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(11) == 10);
    CHECK(euler_phi(338) == 156);  // 2 * 13^2
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(45) == 24);
}

TEST_CASE("subgroup profile basics") {
    auto sp = subgroup_profile(3, 11);
    CHECK(sp.order_f == 5);
    CHECK(sp.index_e == 2);
    CHECK(sp.coset_reps.size() == 2);
    CHECK(sp.semiprimitive == false);

    auto sp2 = subgroup_profile(2, 7);
    CHECK(sp2.order_f == 3);
    CHECK(sp2.index_e == 2);

    auto sp3 = subgroup_profile(1, 5);
    CHECK(sp3.order_f == 1);
    CHECK(sp3.index_e == 4);
    CHECK(sp3.coset_reps == std::vector<u64>{1, 2, 3, 4});

    CHECK_THROWS_AS(subgroup_profile(3, 9), error);
}

TEST_CASE("subgroup invariants on a sweep") {
    for (u64 n : {5u, 7u, 12u, 26u, 45u, 49u, 121u}) {
        for (u64 p = 2; p < 30; ++p) {
            if (gcd_u64(p, n) != 1) continue;
            auto sp = subgroup_profile(p, n);
            CHECK(sp.order_f * sp.index_e == euler_phi(n));
            CHECK(powmod(p, sp.order_f, n) == 1 % n);
            for (u64 m = 1; m < sp.order_f; ++m) CHECK(powmod(p, m, n) != 1);
            // reps, multiplied by powers of p, tile (Z/nZ)^* exactly once
            std::vector<int> hits(n, 0);
            for (u64 r : sp.coset_reps) {
                u64 x = r;
                for (u64 i = 0; i < sp.order_f; ++i) {
                    hits[x]++;
                    x = mulmod(x, p % n, n);
                }
            }
            for (u64 r = 0; r < n; ++r) CHECK(hits[r] == (gcd_u64(r, n) == 1 ? 1 : 0));
            // ascending minimal representatives
            for (size_t i = 1; i < sp.coset_reps.size(); ++i)
                CHECK(sp.coset_reps[i - 1] < sp.coset_reps[i]);
        }
    }
}

TEST_CASE("semiprimitivity") {
    CHECK(is_semiprimitive(2, 5));
    CHECK_FALSE(is_semiprimitive(3, 11));
    CHECK(is_semiprimitive(3, 2));
    CHECK(is_semiprimitive(5, 2));
    CHECK(is_semiprimitive(2, 3));
    CHECK_FALSE(is_semiprimitive(2, 7));
    CHECK_THROWS_AS(is_semiprimitive(3, 6), error);
    // semiprimitive implies the index divides phi(n)/2 for n > 2
    for (u64 n = 3; n < 60; ++n) {
        for (u64 p = 2; p < 30; ++p) {
            if (gcd_u64(p, n) != 1) continue;
            if (is_semiprimitive(p, n)) {
                auto sp = subgroup_profile(p, n);
                CHECK(euler_phi(n) % (2 * sp.index_e) == 0);
            }
        }
    }
}

TEST_CASE("index stability") {
    // trivial: k == h
    CHECK(check_index_stability(3, 13, 13));
    CHECK(check_index_stability(7, 10, 10));

    // ord_13(3) = 3 (index 4); ord_169(3) = 39 (index 4): stable
    CHECK(check_index_stability(3, 13, 169));

    // 3^5 = 243 = 2*121 + 1, so <3> collapses mod 121: index jumps from 2 to 22.
    CHECK(subgroup_index(3, 11) == 2);
    CHECK(powmod(3, 5, 121) == 1);
    CHECK(subgroup_index(3, 121) == 22);
    CHECK_FALSE(check_index_stability(3, 11, 121));

    // 2 has index 2 mod 7 and mod 49
    CHECK(check_index_stability(2, 7, 49));
    // 2 mod 15 and mod 45: index 2 both
    CHECK(check_index_stability(2, 15, 45));
    // 3 mod 26 and mod 2*169
    CHECK(check_index_stability(3, 26, 338));

    CHECK_THROWS_AS(check_index_stability(3, 11, 22), error);   // 2-parts differ
    CHECK_THROWS_AS(check_index_stability(3, 10, 70), error);   // odd supports differ
    CHECK_THROWS_AS(check_index_stability(7, 14, 14), error);   // not coprime
}
