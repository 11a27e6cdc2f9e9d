#ifndef ECMUL_BIGINT_HPP
#define ECMUL_BIGINT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ecmul {

/// Fixed-capacity unsigned integer, 9 x 64-bit limbs (576 bits), little-endian.
/// Wide enough for any registered curve modulus (secp521r1) plus headroom.
/// Value semantics throughout; all operations are pure.
struct U576 {
    static constexpr int kLimbs = 9;
    std::array<std::uint64_t, kLimbs> w{};

    U576() = default;
    explicit U576(std::uint64_t v) { w[0] = v; }

    bool is_zero() const {
        std::uint64_t r = 0;
        for (auto x : w) r |= x;
        return r == 0;
    }
    bool is_odd() const { return (w[0] & 1) != 0; }
    bool fits_u64() const {
        std::uint64_t r = 0;
        for (int i = 1; i < kLimbs; ++i) r |= w[i];
        return r == 0;
    }
    std::uint64_t low_u64() const { return w[0]; }

    bool bit(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set_bit(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }

    /// Number of significant bits (0 for zero).
    int bit_length() const;

    friend bool operator==(const U576& a, const U576& b) { return a.w == b.w; }
    friend bool operator!=(const U576& a, const U576& b) { return !(a == b); }
};

/// Three-way compare: -1, 0, +1.
int cmp(const U576& a, const U576& b);
inline bool operator<(const U576& a, const U576& b) { return cmp(a, b) < 0; }
inline bool operator<=(const U576& a, const U576& b) { return cmp(a, b) <= 0; }
inline bool operator>(const U576& a, const U576& b) { return cmp(a, b) > 0; }
inline bool operator>=(const U576& a, const U576& b) { return cmp(a, b) >= 0; }

/// r = a + b, returns carry out of bit 576.
std::uint64_t add_carry(U576& r, const U576& a, const U576& b);
/// r = a - b, returns borrow (1 if a < b).
std::uint64_t sub_borrow(U576& r, const U576& a, const U576& b);

U576 add_checked(const U576& a, const U576& b);  ///< throws DomainError on overflow
U576 sub_checked(const U576& a, const U576& b);  ///< throws DomainError on underflow

/// Full product; overflow flag set if the result exceeds 576 bits.
U576 mul_checked(const U576& a, const U576& b, bool* overflow);

U576 shl(const U576& a, int bits);  ///< truncating left shift
U576 shr(const U576& a, int bits);

/// Quotient and remainder by a 64-bit divisor.
U576 divmod_u64(const U576& a, std::uint64_t d, std::uint64_t* rem);

/// a mod m for arbitrary nonzero m (binary fold; not performance critical).
U576 mod(const U576& a, const U576& m);

/// 2^k as U576 (k < 576).
U576 pow2(int k);

/// Integer a^e, clamped: returns true in *overflow once the value exceeds
/// 576 bits (used by root finding, where only comparisons matter).
U576 pow_clamped(const U576& a, std::uint64_t e, bool* overflow);

/// Smallest B with B^d >= n (d >= 1, n >= 1). Result must fit in 64 bits.
std::uint64_t nth_root_ceil(const U576& n, unsigned d);

/// Hex (big-endian, lowercase, no prefix). Empty/odd-length/non-hex input throws FormatError.
U576 from_hex(const std::string& hex);
/// Minimal even-length hex, at least one byte ("00" for zero).
std::string to_hex(const U576& a);
/// Fixed-width hex, exactly 2*width_bytes characters; throws DomainError if it does not fit.
std::string to_hex_width(const U576& a, int width_bytes);

/// Big-endian bytes, fixed width; throws DomainError if the value does not fit.
std::vector<std::uint8_t> to_bytes_be(const U576& a, int width);
U576 from_bytes_be(const std::uint8_t* data, int len);

}  // namespace ecmul

#endif
