#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "coverbound/classic.hpp"
#include "doctest.h"

using namespace coverbound;

namespace {

// Straightforward long-arithmetic recurrence, kept independent of schonheim().
long schonheim_oracle(long v, long k, long t, long lambda) {
    if (t == 0) return lambda;
    auto cdiv = [](long a, long b) { return (a + b - 1) / b; };
    long x = cdiv(lambda * (v - t + 1), k - t + 1);
    for (long j = t - 2; j >= 0; --j) x = cdiv((v - j) * x, k - j);
    return x;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("classic_") + name + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("schonheim matches the direct recurrence") {
    CHECK(schonheim_oracle(19, 9, 3, 1) == 15);
    CHECK(schonheim({19, 9, 3, 1}) == 15);
    for (long k = 2; k <= 12; ++k)
        for (long t : {1L, 2L, 3L}) {
            if (t > k) continue;
            for (long v = k; v <= 40; ++v)
                for (long lambda : {1L, 2L})
                    CHECK(schonheim({v, k, t, lambda}) == schonheim_oracle(v, k, t, lambda));
        }
}

TEST_CASE("schonheim degenerate and family ell values") {
    for (long k : {3L, 7L, 11L})
        for (long t = 0; t <= k; ++t)
            for (long lambda : {1L, 2L, 5L}) CHECK(schonheim({k, k, t, lambda}) == lambda);
    // ell values from the m = 6 member of the t=5 family
    CHECK(schonheim({144, 28, 1, 1}) == 6);
    CHECK(schonheim({145, 29, 2, 1}) == 30);
    CHECK(schonheim({146, 30, 3, 1}) == 146);
}

TEST_CASE("schonheim dominates the plain counting bound") {
    for (long k = 3; k <= 9; ++k)
        for (long t = 1; t <= 4 && t <= k; ++t)
            for (long v = k + 1; v <= 30; ++v) {
                Int lhs = schonheim({v, k, t, 1});
                CHECK(lhs >= ceil_div(binom(v, t), binom(k, t)));
            }
}

TEST_CASE("schonheim recursion consistency and monotonicity in v") {
    for (long k = 4; k <= 10; ++k)
        for (long t = 1; t <= 4 && t < k; ++t)
            for (long v = k + 1; v <= 35; ++v) {
                CHECK(schonheim({v, k, t, 1}) ==
                      schonheim_step(Int(v), Int(k), schonheim({v - 1, k - 1, t - 1, 1})));
                CHECK(schonheim({v, k, t, 1}) <= schonheim({v + 1, k, t, 1}));
            }
}

TEST_CASE("schonheim_step") {
    CHECK(schonheim_step(22, 10, 7) == 16);
    CHECK(schonheim_step(44, 20, 7) == 16);
    CHECK(schonheim_step(31, 9, 0) == 0);
}

TEST_CASE("base_bound") {
    CHECK(*base_bound({17, 7, 1, 1}) == 3);
    CHECK(*base_bound({20, 8, 1, 1}) == 3);
    CHECK(*base_bound({9, 4, 0, 3}) == 3);
    CHECK(!base_bound({9, 4, 2, 1}));
}

TEST_CASE("mills_mullin_special") {
    // 42 mod 3 = 0 != 1
    CHECK(!mills_mullin_special({7, 3, 2, 1}, schonheim({7, 3, 2, 1})));
    // 156 mod 4 = 0 != 1
    CHECK(!mills_mullin_special({13, 4, 2, 1}, schonheim({13, 4, 2, 1})));
    // first condition fails: lambda(v-1) = 13 not divisible by k-1 = 4
    CHECK(!mills_mullin_special({14, 5, 2, 1}, schonheim({14, 5, 2, 1})));
    CHECK(!mills_mullin_special({9, 4, 3, 1}, schonheim({9, 4, 3, 1})));  // t != 2

    // (13,5,2,1): 12 = 0 mod 4 and 13*12 = 156 = 1 mod 5; L = ceil(13/5*3) = 8
    Params p{13, 5, 2, 1};
    CHECK(schonheim_oracle(13, 5, 2, 1) == 8);
    auto fired = mills_mullin_special(p, schonheim(p));
    REQUIRE(fired.has_value());
    CHECK(*fired == 9);
}

TEST_CASE("mills_mullin_special fires exactly at L+1 over a sampled grid") {
    for (long k = 3; k <= 9; ++k)
        for (long v = k + 1; v <= 60; ++v)
            for (long lambda : {1L, 2L}) {
                Params p{v, k, 2, lambda};
                Int L = schonheim(p);
                auto r = mills_mullin_special(p, L);
                if (r) CHECK(*r == L + 1);
            }
}

TEST_CASE("mills_mullin_general gating") {
    ExactValueTable empty;
    CHECK(!mills_mullin_general({13, 5, 2, 1}, 2, empty));
    CHECK(!mills_mullin_general({9, 4, 3, 1}, 3, empty));

    // Divisibility condition fails: 8 * C(7,3,2) = 56 = 0 mod 8.
    ExactValueTable fano;
    fano.insert({7, 3, 2, 1}, 7, "fano");
    fano.insert({5, 1, 0, 1}, 1, "trivial");
    CHECK(!mills_mullin_general({8, 4, 3, 1}, 3, fano));

    // (13,5,2,1) with r = 2: C(12,4,1) = 3 = (12/4) * C(11,3,0); 13*3 = 39 != 0 mod 5.
    ExactValueTable t;
    t.insert({12, 4, 1, 1}, 3, "partition");
    t.insert({11, 3, 0, 1}, 1, "convention");
    auto r = mills_mullin_general({13, 5, 2, 1}, 2, t);
    REQUIRE(r.has_value());
    CHECK(*r == 9);  // ceil((13*3 + 2)/5)
    // strict improvement property
    CHECK(*r >= schonheim_step(13, 5, 3) + 1);
}

TEST_CASE("exact value table csv") {
    auto path = write_temp("ok", "v,k,t,lambda,value,source\n7,3,2,1,7,fano\n12,4,1,1,3,partition\n");
    ExactValueTable t;
    CHECK(t.load_csv(path) == 2);
    CHECK(*t.lookup({7, 3, 2, 1}) == 7);
    CHECK(!t.lookup({8, 3, 2, 1}));
    std::remove(path.c_str());

    auto bad = write_temp("bad", "v,k,t,lambda,value,source\n7,3,2,1,7,fano\n7,3,xx,1,7,fano\n");
    ExactValueTable t2;
    CHECK_THROWS_WITH(t2.load_csv(bad), "malformed row 2");
    std::remove(bad.c_str());

    auto inv = write_temp("inv", "v,k,t,lambda,value,source\n3,9,2,1,7,oops\n");
    ExactValueTable t3;
    CHECK_THROWS_WITH(t3.load_csv(inv), "invalid parameter row 1");
    std::remove(inv.c_str());
}
