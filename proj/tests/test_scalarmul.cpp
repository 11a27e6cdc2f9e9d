#include "ecmul/scalarmul.hpp"

#include <random>

#include "doctest.h"
#include "ecmul/errors.hpp"

using namespace ecmul;

namespace {

// Exhaustive-search oracle: minimal Hamming weight over all signed binary
// representations of n, via the full recursion tree on digit choices.
int min_signed_weight(std::uint64_t n) {
    if (n == 0) return 0;
    if (n == 1) return 1;
    if ((n & 1) == 0) return min_signed_weight(n >> 1);
    int via_minus = 1 + min_signed_weight((n - 1) >> 1);
    int via_plus = 1 + min_signed_weight((n + 1) >> 1);
    return via_minus < via_plus ? via_minus : via_plus;
}

std::uint64_t digits_value(const SignedDigits& d) {
    // signed reconstruction; valid for the small k used in tests
    long long v = 0;
    for (int i = (int)d.digits.size() - 1; i >= 0; --i) v = 2 * v + d.digits[i];
    return (std::uint64_t)v;
}

int weight(const SignedDigits& d) {
    int w = 0;
    for (auto x : d.digits) w += x != 0;
    return w;
}

U576 random_scalar(std::mt19937_64& g, const U576& n) {
    int limbs = (n.bit_length() + 63) / 64;
    for (;;) {
        U576 r;
        for (int i = 0; i < limbs; ++i) r.w[i] = g();
        int extra = 64 * limbs - n.bit_length();
        r.w[limbs - 1] &= (~std::uint64_t(0)) >> extra;
        if (cmp(r, n) < 0) return r;
    }
}

Point run_strategy(const Strategy& s, const U576& k, const Point& p, const Curve& c) {
    switch (s.kind) {
        case StrategyKind::DoubleAndAdd: return double_and_add(k, p, c);
        case StrategyKind::Naf: return naf_scalar_mul(k, p, c);
        case StrategyKind::TwoKAry: return two_k_ary_mul(k, p, c, s.window);
        case StrategyKind::SlidingWindow: return sliding_window_mul(k, p, c, s.window);
        case StrategyKind::MontgomeryLadder: return montgomery_ladder_mul(k, p, c);
        case StrategyKind::FixedWindow: return fixed_window_mul(k, p, c, s.window);
        case StrategyKind::FixedBaseComb: {
            CombTable t = build_comb_table(p, c, s.window, s.teeth);
            return fixed_base_comb_mul(k, t, p, c);
        }
        default: throw NotFound("mary strategies are exercised in the mary tests");
    }
}

const char* kBaselineIds[] = {"double-and-add", "naf",         "2k-ary",      "sliding-window",
                              "montgomery",     "comb",        "fixed-window"};

}  // namespace

TEST_CASE("strategy ids parse and round-trip") {
    for (const auto& s : Strategy::all()) CHECK(Strategy::parse(s.id()).kind == s.kind);
    CHECK(Strategy::all().size() == 9);
    CHECK_THROWS_AS(Strategy::parse("wnaf"), NotFound);
    CHECK(Strategy::parse("2k-ary").window == 5);
    CHECK(Strategy::parse("comb").teeth == 2);
}

TEST_CASE("naf_recode examples and basic shape") {
    CHECK(naf_recode(U576(0)).digits.empty());
    SignedDigits two = naf_recode(U576(2));
    CHECK(two.digits == std::vector<std::int8_t>{0, 1});
    SignedDigits seven = naf_recode(U576(7));
    CHECK(seven.digits == std::vector<std::int8_t>{-1, 0, 0, 1});  // 8 - 1
}

TEST_CASE("NAF properties for all k < 2^16") {
    for (std::uint64_t k = 1; k < (1u << 16); ++k) {
        SignedDigits d = naf_recode(U576(k));
        // reconstruction
        CHECK(digits_value(d) == k);
        // non-adjacency and digit domain
        for (std::size_t i = 0; i < d.digits.size(); ++i) {
            CHECK(d.digits[i] >= -1);
            CHECK(d.digits[i] <= 1);
            if (i + 1 < d.digits.size()) CHECK(d.digits[i] * d.digits[i + 1] == 0);
        }
        // leading digit nonzero
        CHECK(d.digits.back() != 0);
        // length bounds: floor(log2 k) + 1 <= len <= ceil(log2 k) + 1
        int fl = 63 - __builtin_clzll(k);
        int cl = fl + ((k & (k - 1)) != 0);
        CHECK((int)d.digits.size() >= fl + 1);
        CHECK((int)d.digits.size() <= cl + 1);
    }
}

TEST_CASE("NAF weight is minimal among signed binary forms for k < 2^12") {
    for (std::uint64_t k = 1; k < (1u << 12); ++k) {
        CHECK(weight(naf_recode(U576(k))) == min_signed_weight(k));
    }
}

TEST_CASE("every baseline equals the naive oracle exhaustively on small curves") {
    for (const char* curve_name : {"tiny17", "tiny97"}) {
        auto c = registry_get(curve_name);
        std::uint64_t order = c->n.low_u64();
        std::vector<Point> expect;
        Point acc = Point::at_infinity();
        for (std::uint64_t k = 0; k < order; ++k) {
            expect.push_back(acc);
            acc = point_add(acc, c->g, *c);
        }
        for (const char* id : kBaselineIds) {
            Strategy s = Strategy::parse(id);
            for (std::uint64_t k = 0; k < order; ++k) {
                Point got = run_strategy(s, U576(k), c->g, *c);
                CHECK_MESSAGE(point_eq(got, expect[k]),
                              "strategy ", id, " disagrees at k=", k, " on ", curve_name);
            }
        }
    }
}

TEST_CASE("baselines agree with double-and-add on secp256k1 random scalars") {
    auto c = registry_get("secp256k1");
    std::mt19937_64 g(77);
    for (int i = 0; i < 6; ++i) {
        U576 k = random_scalar(g, c->n);
        Point want = double_and_add(k, c->g, *c);
        for (const char* id : kBaselineIds) {
            Strategy s = Strategy::parse(id);
            CHECK(point_eq(run_strategy(s, k, c->g, *c), want));
        }
    }
}

TEST_CASE("k = n-1 gives the negated base point") {
    auto c = registry_get("secp256k1");
    U576 km1 = sub_checked(c->n, U576(1));
    Point want = point_negate(c->g, *c);
    CHECK(point_eq(double_and_add(km1, c->g, *c), want));
    CHECK(point_eq(montgomery_ladder_mul(km1, c->g, *c), want));
}

TEST_CASE("scalars reduce mod n") {
    auto c = registry_get("tiny97");
    std::uint64_t order = c->n.low_u64();
    for (std::uint64_t k : {order, order + 1, 5 * order + 13}) {
        Point want = naive_scalar_mul(U576(k % order), c->g, *c);
        CHECK(point_eq(double_and_add(U576(k), c->g, *c), want));
        CHECK(point_eq(naf_scalar_mul(U576(k), c->g, *c), want));
    }
}

TEST_CASE("degenerate windows reduce to double-and-add") {
    auto c = registry_get("tiny233");
    std::mt19937_64 g(5);
    for (int i = 0; i < 40; ++i) {
        U576 k(g() % 2048);
        Point want = double_and_add(k, c->g, *c);
        CHECK(point_eq(two_k_ary_mul(k, c->g, *c, 1), want));
        CHECK(point_eq(fixed_window_mul(k, c->g, *c, 1), want));
        CHECK(point_eq(sliding_window_mul(k, c->g, *c, 1), want));
    }
}

TEST_CASE("window guards") {
    auto c = registry_get("tiny17");
    CHECK_THROWS_AS(sliding_window_mul(U576(3), c->g, *c, 0), ContractViolation);
    CHECK_THROWS_AS(sliding_window_mul(U576(3), c->g, *c, 17), ContractViolation);
    CHECK_THROWS_AS(build_comb_table(c->g, *c, 4, 0), ContractViolation);
}

TEST_CASE("sliding window table holds 2^(w-1) odd multiples") {
    auto c = registry_get("secp256k1");
    auto table = build_odd_multiples(c->g, *c, 4);
    CHECK(table.size() == 8);
    // spot-check contents: table[j] = (2j+1) G
    CHECK(point_eq(table[0], c->g));
    Point want = c->g;
    for (int j = 1; j < 8; ++j) {
        want = point_add(point_add(want, c->g, *c), c->g, *c);
        CHECK(point_eq(table[j], want));
    }
}

TEST_CASE("comb handles bit lengths not divisible by the width") {
    auto c = registry_get("tiny17");  // n = 19, 5 bits: 5 % 4 != 0
    CombTable t = build_comb_table(c->g, *c, 4, 2);
    CHECK(t.stored_points() == 2u << 4);
    for (std::uint64_t k = 0; k < 19; ++k) {
        CHECK(point_eq(fixed_base_comb_mul(U576(k), t, c->g, *c), naive_scalar_mul(U576(k), c->g, *c)));
    }
    Point other = point_add(c->g, c->g, *c);
    CHECK_THROWS_AS(fixed_base_comb_mul(U576(3), t, other, *c), ContractViolation);
}

TEST_CASE("montgomery ladder maintains R1 - R0 = P") {
    auto c = registry_get("tiny97");
    for (std::uint64_t k : {0ull, 1ull, 5ull, 42ull, 96ull}) {
        montgomery_ladder_mul(U576(k), c->g, *c, [&](const Point& r0, const Point& r1) {
            CHECK(point_eq(point_add(r0, c->g, *c), r1));
        });
    }
}

TEST_CASE("montgomery ladder operation trace depends only on the order bit-length") {
    auto c = registry_get("secp256k1");
    std::mt19937_64 g(6);
    for (int i = 0; i < 3; ++i) {
        U576 k = i == 0 ? U576(1) : random_scalar(g, c->n);
        reset_op_counters();
        montgomery_ladder_mul(k, c->g, *c);
        CHECK(op_counters().adds == (std::uint64_t)c->n_bits);
        CHECK(op_counters().doubles == (std::uint64_t)c->n_bits);
    }
    reset_op_counters();
}

TEST_CASE("double-and-add performs bitlen(k) doublings") {
    auto c = registry_get("secp256k1");
    std::mt19937_64 g(7);
    for (int i = 0; i < 3; ++i) {
        U576 k = random_scalar(g, c->n);
        reset_op_counters();
        double_and_add(k, c->g, *c);
        CHECK(op_counters().doubles == (std::uint64_t)k.bit_length());
    }
    reset_op_counters();
    double_and_add(U576(0), registry_get("tiny17")->g, *registry_get("tiny17"));
    CHECK(op_counters().doubles == 0);
    reset_op_counters();
}
