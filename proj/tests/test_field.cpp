#include "ecmul/field.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "ecmul/errors.hpp"

using namespace ecmul;

namespace {

const U576 kP256 = from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f");
const U576 kP384 = from_hex(
    "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffffff0000000000000000ffffffff");
const U576 kP521 = sub_checked(pow2(521), U576(1));

std::vector<std::uint64_t> small_primes_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    std::vector<bool> sieve(limit + 1, true);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!sieve[i]) continue;
        if (i >= 3) out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return out;
}

U576 random_below(std::mt19937_64& g, const U576& n) {
    int bits = n.bit_length();
    for (;;) {
        U576 r;
        for (int i = 0; i < (bits + 63) / 64; ++i) r.w[i] = g();
        int extra = 64 * ((bits + 63) / 64) - bits;
        r.w[(bits + 63) / 64 - 1] &= (~std::uint64_t(0)) >> extra;
        if (cmp(r, n) < 0) return r;
    }
}

}  // namespace

TEST_CASE("p=17 arithmetic examples") {
    Field f(U576(17));
    auto e = [&](std::uint64_t v) { return f.element(U576(v)); };
    CHECK((e(9) + e(12)).value() == U576(4));
    CHECK((e(0) + e(5)).value() == U576(5));
    CHECK((e(16) + e(1)).value() == U576(0));
    CHECK((e(5) * e(7)).value() == U576(1));
    CHECK((e(13) * e(1)).value() == U576(13));
    CHECK((e(13) * e(0)).value() == U576(0));
    CHECK(e(2).invert().value() == U576(9));
    CHECK(e(1).invert().value() == U576(1));
    CHECK(e(16).invert().value() == U576(16));
    CHECK_THROWS_AS(e(0).invert(), DomainError);
}

TEST_CASE("p=17 square roots (enumeration oracle)") {
    Field f(U576(17));
    // oracle: set of squares mod 17
    bool is_square[17] = {};
    for (int x = 0; x < 17; ++x) is_square[(x * x) % 17] = true;
    for (int a = 0; a < 17; ++a) {
        auto r = f.element(U576((std::uint64_t)a)).sqrt();
        if (is_square[a]) {
            REQUIRE(r.has_value());
            CHECK((r->square()).value() == U576((std::uint64_t)a));
            // smaller of the two roots
            CHECK(cmp(r->value(), r->negate().value()) <= 0);
        } else {
            CHECK(!r.has_value());
        }
    }
    CHECK(f.element(U576(13)).sqrt()->value() == U576(8));
    CHECK(f.element(U576(0)).sqrt()->value() == U576(0));
    CHECK(!f.element(U576(3)).sqrt().has_value());
}

TEST_CASE("modulus mismatch rejected") {
    Field f17(U576(17)), f19(U576(19));
    CHECK_THROWS_AS(f17.element(U576(3)) + f19.element(U576(4)), ContractViolation);
    CHECK_THROWS_AS(f17.element(U576(3)) * f19.element(U576(4)), ContractViolation);
    CHECK_THROWS_AS(f17.element(U576(18)), ContractViolation);
}

TEST_CASE("inversion exhaustive over small odd primes") {
    // validates the divsteps machinery against every residue of every odd
    // prime below 600, plus a Fermat cross-check
    for (auto p : small_primes_to(600)) {
        Field f{U576(p)};
        for (std::uint64_t a = 1; a < p; ++a) {
            Fe x = f.element(U576(a));
            Fe inv = x.invert();
            CHECK((x * inv).value() == U576(1));
            U576 pm2 = sub_checked(U576(p), U576(2));
            CHECK(inv.value() == x.pow(pm2).value());
        }
    }
}

TEST_CASE("sqrt exhaustive over small odd primes incl. 1 mod 4") {
    for (auto p : small_primes_to(300)) {
        Field f{U576(p)};
        std::vector<bool> sq(p, false);
        for (std::uint64_t x = 0; x < p; ++x) sq[(x * x) % p] = true;
        for (std::uint64_t a = 0; a < p; ++a) {
            auto r = f.element(U576(a)).sqrt();
            CHECK(r.has_value() == sq[a]);
            if (r) CHECK(r->square().value() == U576(a));
        }
    }
}

TEST_CASE("big-field inversion and algebra random checks") {
    for (const U576& p : {kP256, kP384, kP521}) {
        Field f(p);
        std::mt19937_64 g(42);
        for (int i = 0; i < 200; ++i) {
            Fe a = f.element(random_below(g, p));
            Fe b = f.element(random_below(g, p));
            Fe c = f.element(random_below(g, p));
            // commutativity / associativity / distributivity
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a.square() == a * a);
            if (!a.is_zero()) {
                Fe inv = a.invert();
                CHECK(a * inv == f.one());
                // Fermat cross-check
                U576 pm2 = sub_checked(p, U576(2));
                CHECK(inv == a.pow(pm2));
            }
            // sqrt of a square
            Fe s = a.square();
            auto r = s.sqrt();
            REQUIRE(r.has_value());
            CHECK(r->square() == s);
        }
    }
}

TEST_CASE("legendre matches sqrt presence") {
    Field f(kP256);
    std::mt19937_64 g(43);
    for (int i = 0; i < 40; ++i) {
        Fe a = f.element(random_below(g, kP256));
        int lg = a.legendre();
        auto r = a.sqrt();
        if (lg == 1) CHECK(r.has_value());
        if (lg == -1) CHECK(!r.has_value());
    }
}

TEST_CASE("field element hex round-trip is exact and fixed width") {
    Field f(kP521);
    std::mt19937_64 g(44);
    for (int i = 0; i < 50; ++i) {
        Fe a = f.element(random_below(g, kP521));
        std::string h = a.to_hex();
        CHECK(h.size() == 2 * (std::size_t)f.byte_width());
        CHECK(f.from_hex(h) == a);
    }
    CHECK_THROWS_AS(f.from_hex("zz"), FormatError);
    Field f17(U576(17));
    CHECK_THROWS_AS(f17.from_hex("12"), FormatError);  // 0x12 = 18 >= 17
}

TEST_CASE("half and negate") {
    Field f(kP384);
    std::mt19937_64 g(45);
    for (int i = 0; i < 100; ++i) {
        Fe a = f.element(random_below(g, kP384));
        CHECK(a.half() + a.half() == a);
        CHECK(a + a.negate() == f.zero());
    }
}
