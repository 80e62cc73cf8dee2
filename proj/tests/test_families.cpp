#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "coverbound/families.hpp"
#include "doctest.h"

using namespace coverbound;

namespace {

// GF(4) as {0, 1, w, w+1}: addition is xor, multiplication per the field.
const char* kGf4 =
    "4\n"
    "0 0 0 0\n"
    "0 1 2 3\n"
    "0 2 3 1\n"
    "0 3 1 2\n"
    "0 1 2 3\n"
    "1 0 3 2\n"
    "2 3 0 1\n"
    "3 2 1 0\n";

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("families_") + name + ".txt";
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("inffam m=6") {
    InfFamReport r = inffam_check(6);
    CHECK(r.params == Params{148, 32, 5, 1});
    CHECK(r.l4 == 6);
    CHECK(r.l3 == 30);
    CHECK(r.l2 == 146);
    CHECK(r.a0 == 6);
    CHECK(r.a1 == 24);
    CHECK(r.a2 == 92);
    CHECK(r.d == 0);
    CHECK(r.schonheim_value == 3206);
    CHECK(r.promised == 3208);
    CHECK(r.theorem_bound >= 3208);
    CHECK(r.ok);
    CHECK_THROWS_WITH(inffam_check(5), "out of family range");
}

TEST_CASE("inffam closed forms over m in [6,30]") {
    for (long m = 6; m <= 30; ++m) {
        InfFamReport r = inffam_check(m);
        CHECK(r.ok);
        CHECK(r.l4 == m);
        CHECK(r.l3 == m * (m - 1));
        CHECK(r.l2 == m * m * (m - 2) + 2);
        CHECK(r.a0 == m);
        CHECK(r.a1 == m * (m - 2));
        CHECK(r.a2 == m * m * m - 4 * m * m + 3 * m + 2);
        CHECK(r.d == 0);
        if (m >= 14) {
            Int m1(m);
            Int L = m1 * m1 * m1 * m1 * m1 - 4 * m1 * m1 * m1 * m1 + 20 * m1 * m1 - 10 * m1 - 45;
            CHECK(r.schonheim_value == L);
            Int promised = m1 * m1 * m1 * m1 * m1 - 4 * m1 * m1 * m1 * m1 + 21 * m1 * m1 - 14 * m1 - 55;
            CHECK(r.theorem_bound >= promised);
        }
    }
}

TEST_CASE("affine_flats small fields") {
    Covering c22 = affine_flats(2, 2);
    CHECK(c22.v == 4);
    CHECK(c22.blocks.size() == 6);  // all pairs of a 4-set
    for (const auto& b : c22.blocks) CHECK(b.size() == 2);
    CHECK(is_covering(c22, 2, 1));

    Covering c32 = affine_flats(3, 2);
    CHECK(c32.v == 9);
    CHECK(c32.blocks.size() == 12);
    for (const auto& b : c32.blocks) CHECK(b.size() == 3);
    CHECK(is_covering(c32, 2, 1));

    for (long q : {2L, 3L, 5L})
        for (long t : {2L, 3L}) {
            Covering c = affine_flats(q, t);
            Int expect = Int(q) * (Int(c.v) - 1) / (q - 1);  // q (q^t-1)/(q-1)
            CHECK(Int(c.blocks.size()) == expect);
            for (const auto& b : c.blocks) CHECK(Int(b.size()) == Int(c.v) / q);
            CHECK(is_covering(c, t, 1));
        }

    CHECK_THROWS_WITH(affine_flats(4, 2), "field unavailable");
    CHECK_THROWS_WITH(affine_flats(6, 2), "field unavailable");
}

TEST_CASE("affine_flats over GF(4) via a field table") {
    auto path = write_temp("gf4", kGf4);
    FieldTable f = FieldTable::load(path);
    std::remove(path.c_str());
    CHECK(f.q == 4);
    Covering c = affine_flats(4, 2, &f);
    CHECK(c.v == 16);
    CHECK(c.blocks.size() == 20);  // 4 * (16-1)/3
    for (const auto& b : c.blocks) CHECK(b.size() == 4);
    CHECK(is_covering(c, 2, 1));

    auto bad = write_temp("badfield", "4\n0 0 0 0\n0 1 2 3\n0 2 3 1\n0 3 1 2\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 9\n");
    CHECK_THROWS(FieldTable::load(bad));
    std::remove(bad.c_str());
}

TEST_CASE("blowup") {
    Covering c = blowup(2, 2, 6, 24);
    CHECK(c.v == 24);
    CHECK(c.blocks.size() == 6);
    for (const auto& b : c.blocks) CHECK(b.size() == 12);  // v = m q^t: no deletion
    CHECK(is_covering(c, 2, 1));

    Covering trimmed = blowup(2, 2, 6, 22);
    CHECK(trimmed.v == 22);
    CHECK(trimmed.blocks.size() == 6);  // block count unchanged by deletion
    for (const auto& b : trimmed.blocks) {
        CHECK(b.size() >= 10);
        CHECK(b.size() <= 12);
    }
    CHECK(is_covering(trimmed, 2, 1));

    CHECK_THROWS_WITH(blowup(2, 2, 6, 25), "out of range");
}

TEST_CASE("exactlem2 closed forms") {
    CHECK(exactlem2_ell(72, 8, 3, 2, 1) == 4);  // (9-1)/2
    CHECK(exactlem2_ell(69, 8, 3, 2, 1) == 3);  // 3*(3-1)/2
    CHECK(exactlem2_ell(72, 8, 3, 2, 0) == 12);
    CHECK(exactlem2_ell(69, 8, 3, 2, 0) == 9);

    // cross-evaluation against the Schonheim bound (wider grid in acceptance)
    for (long q : {2L, 3L})
        for (long t : {2L, 3L}) {
            long n = 1;
            for (long i = 0; i < t; ++i) n *= q;
            for (long m = 2 * q + 2; m <= 3 * q + 2; ++m)
                for (long v = m * n - 2 * q + 3; v <= m * n; ++v)
                    for (long i = 0; i <= t - 1; ++i)
                        CHECK(exactlem2_ell(v, m, q, t, i) ==
                              schonheim({v - i, m * (n / q) - i, t - i, 1}));
        }

    CHECK_THROWS_WITH(exactlem2_ell(60, 8, 3, 2, 1), "closed form out of range");
    CHECK_THROWS_WITH(exactlem2_ell(72, 8, 3, 2, 2), "closed form out of range");
    CHECK_THROWS_WITH(exactlem2_ell(72, 7, 3, 2, 1), "closed form out of range");  // m < 2q+2
}

TEST_CASE("exactth2 worked example and corollary") {
    ExactTh2Report r = exactth2(8, 3, 2);
    CHECK(r.z == 1);  // min(q-2, floor(48/8) - 5) = min(1, 1)
    CHECK(r.v_min == 69);
    CHECK(r.exact_value == 12);
    CHECK(r.lower_bound == 12);
    CHECK(r.lower_ok);
    CHECK(r.witness_blocks == 12);
    CHECK(r.witness_ok);

    // z = q-2 whenever m >= 3q
    for (long q : {2L, 3L, 5L})
        for (long m : {3 * q, 3 * q + 1, 4 * q}) {
            ExactTh2Report rr = exactth2(m, q, 2, nullptr, false);
            CHECK(rr.z == q - 2);
        }

    // q = 2: z = 0 and the exact value 2(2^t - 1)
    for (long t : {2L, 3L}) {
        ExactTh2Report r2 = exactth2(6, 2, t, nullptr, false);
        CHECK(r2.z == 0);
        CHECK(r2.exact_value == 2 * ((1 << t) - 1));
        CHECK(r2.lower_ok);
    }

    CHECK_THROWS_WITH(exactth2(7, 3, 2), "family inapplicable");  // m < 2q+2
}

TEST_CASE("exactth2 over GF(4)") {
    auto path = write_temp("gf4b", kGf4);
    FieldTable f = FieldTable::load(path);
    std::remove(path.c_str());
    ExactTh2Report r = exactth2(10, 4, 2, &f, true);
    CHECK(r.z == 1);  // min(2, floor(120/15) - 7)
    CHECK(r.v_min == 156);
    CHECK(r.exact_value == 20);
    CHECK(r.lower_bound == 20);
    CHECK(r.witness_blocks == 20);
    CHECK(r.witness_ok);
    CHECK_THROWS_WITH(exactth2(10, 4, 2, nullptr, true), "field unavailable");
}

TEST_CASE("exactth2 lower bound equals the exact value on a sampled family grid") {
    for (long q : {2L, 3L})
        for (long t : {2L, 3L})
            for (long m : {2 * q + 2, 3 * q}) {
                ExactTh2Report r = exactth2(m, q, t, nullptr, true);
                CHECK(r.lower_bound == r.exact_value);
                CHECK(r.witness_ok);
            }
}
