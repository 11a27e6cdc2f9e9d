#include "ecmul/bigint.hpp"

#include <cctype>

#include "ecmul/errors.hpp"

namespace ecmul {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int U576::bit_length() const {
    for (int i = kLimbs - 1; i >= 0; --i) {
        if (w[i]) return 64 * i + 64 - __builtin_clzll(w[i]);
    }
    return 0;
}

int cmp(const U576& a, const U576& b) {
    for (int i = U576::kLimbs - 1; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    }
    return 0;
}

u64 add_carry(U576& r, const U576& a, const U576& b) {
    u64 carry = 0;
    for (int i = 0; i < U576::kLimbs; ++i) {
        u128 cur = (u128)a.w[i] + b.w[i] + carry;
        r.w[i] = (u64)cur;
        carry = (u64)(cur >> 64);
    }
    return carry;
}

u64 sub_borrow(U576& r, const U576& a, const U576& b) {
    u64 borrow = 0;
    for (int i = 0; i < U576::kLimbs; ++i) {
        u128 cur = (u128)a.w[i] - b.w[i] - borrow;
        r.w[i] = (u64)cur;
        borrow = (u64)((cur >> 64) != 0);
    }
    return borrow;
}

U576 add_checked(const U576& a, const U576& b) {
    U576 r;
    if (add_carry(r, a, b)) throw DomainError("integer overflow in add");
    return r;
}

U576 sub_checked(const U576& a, const U576& b) {
    U576 r;
    if (sub_borrow(r, a, b)) throw DomainError("integer underflow in sub");
    return r;
}

U576 mul_checked(const U576& a, const U576& b, bool* overflow) {
    u64 t[2 * U576::kLimbs] = {0};
    for (int i = 0; i < U576::kLimbs; ++i) {
        u64 carry = 0;
        for (int j = 0; j < U576::kLimbs; ++j) {
            u128 cur = (u128)a.w[i] * b.w[j] + t[i + j] + carry;
            t[i + j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        t[i + U576::kLimbs] += carry;
    }
    u64 hi = 0;
    for (int i = U576::kLimbs; i < 2 * U576::kLimbs; ++i) hi |= t[i];
    *overflow = hi != 0;
    U576 r;
    for (int i = 0; i < U576::kLimbs; ++i) r.w[i] = t[i];
    return r;
}

U576 shl(const U576& a, int bits) {
    if (bits <= 0) return a;
    if (bits >= 576) return U576{};
    U576 r;
    int limb = bits >> 6, off = bits & 63;
    for (int i = U576::kLimbs - 1; i >= limb; --i) {
        u64 v = a.w[i - limb] << off;
        if (off && i - limb - 1 >= 0) v |= a.w[i - limb - 1] >> (64 - off);
        r.w[i] = v;
    }
    return r;
}

U576 shr(const U576& a, int bits) {
    if (bits <= 0) return a;
    if (bits >= 576) return U576{};
    U576 r;
    int limb = bits >> 6, off = bits & 63;
    for (int i = 0; i + limb < U576::kLimbs; ++i) {
        u64 v = a.w[i + limb] >> off;
        if (off && i + limb + 1 < U576::kLimbs) v |= a.w[i + limb + 1] << (64 - off);
        r.w[i] = v;
    }
    return r;
}

U576 divmod_u64(const U576& a, u64 d, u64* rem) {
    if (d == 0) throw DomainError("division by zero");
    U576 q;
    u128 r = 0;
    for (int i = U576::kLimbs - 1; i >= 0; --i) {
        u128 cur = (r << 64) | a.w[i];
        q.w[i] = (u64)(cur / d);
        r = cur % d;
    }
    if (rem) *rem = (u64)r;
    return q;
}

U576 mod(const U576& a, const U576& m) {
    if (m.is_zero()) throw DomainError("modulus is zero");
    if (m.fits_u64()) {
        u64 r;
        divmod_u64(a, m.low_u64(), &r);
        return U576(r);
    }
    if (cmp(a, m) < 0) return a;
    // shift-and-subtract; fine for the cold paths that need a general modulus
    U576 r = a;
    int shift = r.bit_length() - m.bit_length();
    U576 s = shl(m, shift);
    for (; shift >= 0; --shift) {
        if (cmp(r, s) >= 0) sub_borrow(r, r, s);
        s = shr(s, 1);
    }
    return r;
}

U576 pow2(int k) {
    U576 r;
    r.set_bit(k);
    return r;
}

U576 pow_clamped(const U576& a, u64 e, bool* overflow) {
    *overflow = false;
    U576 result(1);
    U576 base = a;
    while (e) {
        bool of = false;
        if (e & 1) {
            result = mul_checked(result, base, &of);
            if (of) {
                *overflow = true;
                return result;
            }
        }
        e >>= 1;
        if (e) {
            base = mul_checked(base, base, &of);
            if (of) {
                // base^2 overflowed but remaining exponent bits still need it
                *overflow = true;
                return result;
            }
        }
    }
    return result;
}

std::uint64_t nth_root_ceil(const U576& n, unsigned d) {
    if (d == 0) throw DomainError("root degree must be >= 1");
    if (n.is_zero()) return 0;
    if (d == 1) {
        if (!n.fits_u64()) throw DomainError("1st root does not fit in 64 bits");
        return n.low_u64();
    }
    if (cmp(n, U576(1)) == 0) return 1;
    if (d >= 576) return 2;
    // binary search for smallest B with B^d >= n
    u64 lo = 1, hi = 2;
    auto pow_ge_n = [&](u64 b) {
        bool of = false;
        U576 p = pow_clamped(U576(b), d, &of);
        return of || cmp(p, n) >= 0;
    };
    while (!pow_ge_n(hi)) {
        lo = hi;
        if (hi > (u64(1) << 62)) throw DomainError("nth root does not fit in 64 bits");
        hi *= 2;
    }
    while (lo + 1 < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (pow_ge_n(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

U576 from_hex(const std::string& hex) {
    if (hex.empty()) throw FormatError("empty hex string");
    if (hex.size() % 2 != 0) throw FormatError("hex string must have even length");
    if (hex.size() > 2 * 72) throw FormatError("hex string too long for 576-bit integer");
    U576 r;
    int bit = 0;
    for (int i = (int)hex.size() - 1; i >= 0; --i) {
        int v = hex_val(hex[i]);
        if (v < 0) throw FormatError("invalid hex digit");
        for (int b = 0; b < 4; ++b) {
            if (v & (1 << b)) r.set_bit(bit + b);
        }
        bit += 4;
    }
    return r;
}

static const char* kHexDigits = "0123456789abcdef";

std::string to_hex(const U576& a) {
    int bytes = (a.bit_length() + 7) / 8;
    if (bytes == 0) bytes = 1;
    return to_hex_width(a, bytes);
}

std::string to_hex_width(const U576& a, int width_bytes) {
    if (a.bit_length() > 8 * width_bytes) throw DomainError("value does not fit requested hex width");
    std::string s(2 * width_bytes, '0');
    for (int i = 0; i < width_bytes; ++i) {
        u64 byte = (a.w[i >> 3] >> (8 * (i & 7))) & 0xFF;
        s[2 * (width_bytes - 1 - i)] = kHexDigits[byte >> 4];
        s[2 * (width_bytes - 1 - i) + 1] = kHexDigits[byte & 0xF];
    }
    return s;
}

std::vector<std::uint8_t> to_bytes_be(const U576& a, int width) {
    if (a.bit_length() > 8 * width) throw DomainError("value does not fit requested byte width");
    std::vector<std::uint8_t> out(width);
    for (int i = 0; i < width; ++i) {
        out[width - 1 - i] = (std::uint8_t)((a.w[i >> 3] >> (8 * (i & 7))) & 0xFF);
    }
    return out;
}

U576 from_bytes_be(const std::uint8_t* data, int len) {
    if (len > 72) throw FormatError("byte string too long for 576-bit integer");
    U576 r;
    for (int i = 0; i < len; ++i) {
        int pos = len - 1 - i;  // byte index from the little end
        r.w[pos >> 3] |= (u64)data[i] << (8 * (pos & 7));
    }
    return r;
}

}  // namespace ecmul
