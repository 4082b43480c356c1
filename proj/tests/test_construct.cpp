#include <catch2/catch_amalgamated.hpp>

#include "csrg/construct.hpp"

using namespace csrg;

TEST_CASE("class membership") {
    auto F5 = build_field(5, 1);
    CHECK(cyclotomic_class_membership(F5, 2, 0, F5.from_int(4)));   // 4 = 2^2
    CHECK(cyclotomic_class_membership(F5, 2, 1, F5.from_int(2)));   // gamma itself
    CHECK_FALSE(cyclotomic_class_membership(F5, 2, 0, F5.from_int(2)));
    auto F16 = build_field(2, 4);
    for (u64 i = 0; i < 5; ++i)
        CHECK(cyclotomic_class_membership(F16, 5, i, F16.pow(F16.gamma, i)));
    CHECK_THROWS_AS(cyclotomic_class_membership(F5, 2, 0, F5.zero()), error);
}

TEST_CASE("sporadic table rows") {
    auto s1 = build_table1(1);
    CHECK(s1.p == 3);
    CHECK(s1.f == 5);
    CHECK(s1.k == 11);
    CHECK(s1.I == std::vector<u64>{0});
    CHECK_FALSE(s1.symbolic);

    auto s3 = build_table1(3);
    CHECK(s3.p == 3);
    CHECK(s3.f == 12);
    CHECK(s3.k == 35);
    CHECK_FALSE(s3.symbolic);

    auto s5 = build_table1(5);
    CHECK(s5.p == 11);
    CHECK(s5.f == 7);
    CHECK(s5.k == 43);
    CHECK_FALSE(s5.symbolic);  // 11^7 < 2^25: numeric, heavy tier

    CHECK(build_table1(2).symbolic == false);  // 5^9
    CHECK(build_table1(4).symbolic == true);   // 7^9 > 2^25
    for (unsigned no = 6; no <= 11; ++no) CHECK(build_table1(no).symbolic);
    // k | p^f - 1 holds for every row (validated inside make_spec)
    for (unsigned no = 1; no <= 11; ++no) CHECK(build_table1(no).k > 1);
    CHECK_THROWS_AS(build_table1(0), error);
    CHECK_THROWS_AS(build_table1(12), error);
}

TEST_CASE("three srg families") {
    auto a = build_thm13("i", 2, 7, 0, 2, 0);
    CHECK(a.p == 2);
    CHECK(a.f == 21);
    CHECK(a.k == 49);
    CHECK(a.I == std::vector<u64>{0, 1, 2, 3, 4, 5, 6});
    CHECK(a.params.at("listed") == "true");

    auto b = build_thm13("ii", 3, 13, 0, 1, 0);
    CHECK(b.p == 3);
    CHECK(b.f == 3);
    CHECK(b.k == 13);
    CHECK(b.I == std::vector<u64>{0});

    auto c = build_thm13("iii", 2, 3, 5, 1, 1);
    CHECK(c.p == 2);
    CHECK(c.f == 4);
    CHECK(c.k == 15);
    CHECK(c.I == std::vector<u64>{0});

    auto d = build_thm13("iii", 2, 3, 5, 2, 1);
    CHECK(d.k == 45);
    CHECK(d.f == 12);
    CHECK(d.I == std::vector<u64>{0, 5, 10});

    CHECK_THROWS_AS(build_thm13("ii", 3, 11, 0, 1, 0), error);  // 4 does not divide 10
    CHECK_THROWS_AS(build_thm13("x", 2, 7, 0, 1, 0), error);
}

TEST_CASE("skew-hadamard / paley families") {
    std::vector<u64> H7{0, 1, 2, 3, 4, 5, 6};
    auto a = build_thm14("i", 11, 7, 1, 1, &H7);
    CHECK(a.p == 11);
    CHECK(a.f == 3);
    CHECK(a.k == 14);
    CHECK(a.I == H7);
    CHECK(a.params.at("predicted") == "skew_hadamard");  // 11 = 3 (mod 4)

    auto b = build_thm14("i", 53, 7, 1, 1, &H7);
    CHECK(b.params.at("predicted") == "paley_pds");  // 53 = 1 (mod 4)
    CHECK(b.f == 3);

    auto c = build_thm14("ii", 5, 19, 1, 0);
    CHECK(c.p == 5);
    CHECK(c.f == 9);
    CHECK(c.k == 38);
    CHECK(c.I.size() == 19);
    CHECK(c.I == q_union_2q(19, 0));
    CHECK(c.symbolic == false);  // 5^9 < 2^25

    CHECK_THROWS_AS(build_thm14("i", 11, 5, 1, 1, nullptr), error);   // 5 != 7 mod 8
    CHECK_THROWS_AS(build_thm14("i", 11, 7, 1, 2, &H7), error);       // s even
    std::vector<u64> okH{0, 1, 2, 3, 4, 5, 13};  // 13 = 6 (mod 7): still a cover
    CHECK(build_thm14("i", 11, 7, 1, 1, &okH).I.back() == 13);
    std::vector<u64> badH{0, 1, 2, 3, 4, 5, 12};  // 12 = 5 (mod 7): 5 twice, 6 missing
    CHECK_THROWS_AS(build_thm14("i", 11, 7, 1, 1, &badH), error);
}

TEST_CASE("general srg family builder") {
    auto a = build_srg_family(2, {{7, 2}}, 2);
    CHECK(a.f == 21);
    CHECK(a.k == 49);
    CHECK(a.I == std::vector<u64>{0, 1, 2, 3, 4, 5, 6});

    auto b = build_srg_family(2, {{3, 2}, {5, 1}}, 2);
    CHECK(b.f == 12);
    CHECK(b.k == 45);
    CHECK(b.I == std::vector<u64>{0, 5, 10});

    auto c = build_srg_family(3, {{13, 1}}, 4);
    CHECK(c.f == 3);
    CHECK(c.k == 13);
    CHECK(c.I == std::vector<u64>{0});

    // hypothesis failures are named
    CHECK_THROWS_AS(build_srg_family(2, {{7, 2}}, 3), error);        // wrong index
    CHECK_THROWS_AS(build_srg_family(3, {{11, 2}}, 2), error);       // index collapses mod 121
    CHECK_THROWS_AS(build_srg_family(2, {{7, 2}, {23, 2}}, 2), error);  // no semiprimitivity
}

TEST_CASE("shd family builder") {
    auto H13 = q_union_2q(13, 13);
    auto a = build_shd_family(3, 13, 1, 4, H13);
    CHECK(a.p == 3);
    CHECK(a.f == 3);
    CHECK(a.k == 26);
    CHECK(a.I == H13);
    CHECK(a.params.at("predicted") == "skew_hadamard");

    auto H29 = q_union_2q(29, 0);
    auto b = build_shd_family(7, 29, 1, 4, H29);
    CHECK(b.p == 7);
    CHECK(b.f == 7);
    CHECK(b.k == 58);
    CHECK(b.I == H29);
    CHECK_FALSE(b.symbolic);  // 7^7 < 2^25

    auto c = build_shd_family(3, 13, 2, 4, H13);
    CHECK(c.k == 338);
    CHECK(c.f == 39);
    CHECK(c.symbolic);
    CHECK(c.I.size() == 169);

    CHECK_THROWS_AS(build_shd_family(3, 13, 1, 2, H13), error);  // index is 4, not 2
    std::vector<u64> badH{0, 1, 2};
    CHECK_THROWS_AS(build_shd_family(3, 13, 1, 4, badH), error);
}

TEST_CASE("H validation") {
    CHECK(validate_H(HSet{14, 7, {0, 1, 2, 3, 4, 5, 6}}, HMode::ResidueCover));
    CHECK(validate_H(HSet{14, 7, {0, 1, 2, 3, 4, 5, 13}}, HMode::ResidueCover));        // 13 = 6 (mod 7)
    CHECK_FALSE(validate_H(HSet{14, 7, {0, 1, 2, 3, 4, 5, 12}}, HMode::ResidueCover));   // 5 twice
    CHECK(validate_H(HSet{26, 13, q_union_2q(13, 13)}, HMode::VanishingSum));
    CHECK_FALSE(validate_H(HSet{6, 3, {0, 1}}, HMode::VanishingSum));
    CHECK(validate_H(HSet{6, 3, {0, 1, 2}}, HMode::VanishingSum));
    CHECK(validate_H(HSet{6, 3, {0, 1, 2, 3, 4, 5}}, HMode::VanishingSum));
}

TEST_CASE("index-set lifting") {
    auto base = make_spec(2, 3, 7, {0}, "manual");
    auto lifted = lift_index_set(base, 7, 1);
    CHECK(lifted.k == 49);
    CHECK(lifted.f == 21);
    CHECK(lifted.I == build_thm13("i", 2, 7, 0, 2, 0).I);

    auto base13 = make_spec(3, 3, 13, {0}, "manual");
    auto l13 = lift_index_set(base13, 13, 1);
    CHECK(l13.k == 169);
    CHECK(l13.f == 39);
    CHECK(l13.symbolic);
    CHECK(l13.I.size() == 13);

    // composing lifts m times reproduces the m+1 family member
    auto twice = lift_index_set(lifted, 7, 2);
    auto m3 = build_thm13("i", 2, 7, 0, 3, 0);
    CHECK(twice.k == m3.k);
    CHECK(twice.f == m3.f);
    CHECK(twice.I == m3.I);
    CHECK(twice.I.size() == 7 * lifted.I.size());

    CHECK_THROWS_AS(lift_index_set(base, 7, 2), error);   // 7^2 does not divide 7
    CHECK_THROWS_AS(lift_index_set(make_spec(3, 5, 11, {0}), 11, 1), error);  // index unstable
}

TEST_CASE("half-size invariant for difference-set specs") {
    for (auto s : {build_thm14("i", 11, 7, 1, 1), build_thm14("ii", 5, 19, 1, 0),
                   build_shd_family(3, 13, 1, 4, q_union_2q(13, 13)),
                   build_shd_family(7, 29, 1, 4, q_union_2q(29, 0))}) {
        CHECK(2 * s.I.size() == s.k);
        if (!s.symbolic) CHECK(s.degree() == (s.q() - 1) / 2);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_spec(4, 2, 3, {0}), error);          // not prime
    CHECK_THROWS_AS(make_spec(2, 3, 5, {0}), error);          // 5 does not divide 7
    CHECK_THROWS_AS(make_spec(2, 3, 7, {}), error);           // empty
    CHECK_THROWS_AS(make_spec(2, 3, 7, {0, 0}), error);       // duplicates
    CHECK_THROWS_AS(make_spec(2, 3, 7, {7}), error);          // out of range
    auto s = make_spec(3, 144, 323, {0});                     // table row 10, symbolic
    CHECK(s.symbolic);
    CHECK_THROWS_AS(s.q(), error);
}
