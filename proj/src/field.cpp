#include "ecmul/field.hpp"

#include <cassert>
#include <cstring>

#include "ecmul/errors.hpp"

namespace ecmul {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

namespace {

constexpr int kL = U576::kLimbs;       // 9
constexpr int kWide = 2 * kL;          // 18
constexpr u64 kM62 = (u64(1) << 62) - 1;
constexpr int kL62 = 11;               // signed-62 limbs: 620+ bits of headroom

template <int N>
void mul_n(const u64* a, const u64* b, u64* t) {
    std::memset(t, 0, sizeof(u64) * 2 * N);
    for (int i = 0; i < N; ++i) {
        u64 carry = 0;
        const u64 ai = a[i];
        for (int j = 0; j < N; ++j) {
            u128 cur = (u128)ai * b[j] + t[i + j] + carry;
            t[i + j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        t[i + N] = carry;
    }
}

template <int N>
void sqr_n(const u64* a, u64* t) {
    std::memset(t, 0, sizeof(u64) * 2 * N);
    // off-diagonal products
    for (int i = 0; i < N; ++i) {
        u64 carry = 0;
        for (int j = i + 1; j < N; ++j) {
            u128 cur = (u128)a[i] * a[j] + t[i + j] + carry;
            t[i + j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        t[i + N] = carry;
    }
    // double, then add the diagonal
    u64 top = 0;
    for (int i = 0; i < 2 * N; ++i) {
        u64 v = t[i];
        t[i] = (v << 1) | top;
        top = v >> 63;
    }
    u64 carry = 0;
    for (int i = 0; i < N; ++i) {
        u128 cur = (u128)a[i] * a[i] + t[2 * i] + carry;
        t[2 * i] = (u64)cur;
        u128 hi = (u128)t[2 * i + 1] + (u64)(cur >> 64);
        t[2 * i + 1] = (u64)hi;
        carry = (u64)(hi >> 64);
    }
}

void mul_dispatch(const u64* a, const u64* b, u64* t, int n) {
    switch (n) {
        case 1: mul_n<1>(a, b, t); break;
        case 2: mul_n<2>(a, b, t); break;
        case 3: mul_n<3>(a, b, t); break;
        case 4: mul_n<4>(a, b, t); break;
        case 5: mul_n<5>(a, b, t); break;
        case 6: mul_n<6>(a, b, t); break;
        case 7: mul_n<7>(a, b, t); break;
        case 8: mul_n<8>(a, b, t); break;
        default: mul_n<9>(a, b, t); break;
    }
}

void sqr_dispatch(const u64* a, u64* t, int n) {
    switch (n) {
        case 1: sqr_n<1>(a, t); break;
        case 2: sqr_n<2>(a, t); break;
        case 3: sqr_n<3>(a, t); break;
        case 4: sqr_n<4>(a, t); break;
        case 5: sqr_n<5>(a, t); break;
        case 6: sqr_n<6>(a, t); break;
        case 7: sqr_n<7>(a, t); break;
        case 8: sqr_n<8>(a, t); break;
        default: sqr_n<9>(a, t); break;
    }
}

// signed-62 representation helpers -----------------------------------------

struct S62 {
    i64 v[kL62];
};

S62 to_s62(const U576& a) {
    S62 r{};
    for (int i = 0; i < kL62; ++i) {
        int bit = 62 * i;
        u64 limb = 0;
        if (bit < 576) {
            limb = a.w[bit >> 6] >> (bit & 63);
            if ((bit & 63) && (bit >> 6) + 1 < kL) limb |= a.w[(bit >> 6) + 1] << (64 - (bit & 63));
        }
        r.v[i] = (i64)(limb & kM62);
    }
    return r;
}

U576 from_s62_nonneg(const S62& a) {
    U576 r;
    for (int i = 0; i < kL62; ++i) {
        int bit = 62 * i;
        u64 limb = (u64)a.v[i] & kM62;
        if (bit >= 576) continue;
        r.w[bit >> 6] |= limb << (bit & 63);
        if ((bit & 63) > 2 && (bit >> 6) + 1 < kL) r.w[(bit >> 6) + 1] |= limb >> (64 - (bit & 63));
    }
    return r;
}

}  // namespace

// Field ----------------------------------------------------------------------

Field::Field(const U576& p) : p_(p) {
    bits_ = p.bit_length();
    if (bits_ < 2 || bits_ > 570) throw DomainError("field modulus must be between 2 and 570 bits");
    if (!p.is_odd()) throw DomainError("field modulus must be odd");
    nlimbs_ = (bits_ + 63) / 64;
    fold_c_ = sub_checked(pow2(bits_), p_);
    fold_c_limbs_ = (fold_c_.bit_length() + 63) / 64;
    if (fold_c_limbs_ == 0) fold_c_limbs_ = 1;

    // p^-1 mod 2^62 by Newton iteration
    u64 inv = p.w[0];
    for (int i = 0; i < 5; ++i) inv *= 2 - p.w[0] * inv;
    p_inv62_ = inv & kM62;

    // divsteps iteration count; bound per the hybrid divstep analysis, with a
    // safety pad, rounded up to whole 62-step batches
    long iters = (45907L * bits_ + 26313L + 19928L) / 19929L + 16;
    divsteps_batches_ = (int)((iters + 61) / 62);

    u64 rem4;
    divmod_u64(p_, 4, &rem4);
    p_mod4_is3_ = rem4 == 3;
    if (p_mod4_is3_) {
        U576 t = add_checked(p_, U576(1));
        sqrt_exp_ = shr(t, 2);
    } else {
        // p = 1 (mod 4): Tonelli-Shanks setup
        ts_q_ = sub_checked(p_, U576(1));
        ts_s_ = 0;
        while (!ts_q_.is_odd()) {
            ts_q_ = shr(ts_q_, 1);
            ++ts_s_;
        }
        U576 exp = shr(sub_checked(p_, U576(1)), 1);
        for (u64 z = 2;; ++z) {
            Fe cand = element_mod(U576(z));
            Fe lg = cand.pow(exp);
            if (lg == element(sub_checked(p_, U576(1)))) {
                ts_z_ = U576(z);
                break;
            }
            if (z > 1000) throw DomainError("no quadratic non-residue found");
        }
    }
}

Fe Field::zero() const {
    Fe r;
    r.f_ = this;
    return r;
}

Fe Field::one() const {
    Fe r;
    r.v_ = U576(1);
    r.f_ = this;
    return r;
}

Fe Field::element(const U576& v) const {
    if (cmp(v, p_) >= 0) throw ContractViolation("field element value not below modulus");
    Fe r;
    r.v_ = v;
    r.f_ = this;
    return r;
}

Fe Field::element_mod(const U576& v) const {
    Fe r;
    r.v_ = mod(v, p_);
    r.f_ = this;
    return r;
}

Fe Field::from_hex(const std::string& hex) const {
    U576 v = ecmul::from_hex(hex);
    if (cmp(v, p_) >= 0) throw FormatError("field element hex value not below modulus");
    return element(v);
}

// Reduce a wide value (wn active limbs) by folding on 2^bits = c (mod p)
// until the part above 2^bits vanishes, then subtract p as needed.
void Field::reduce_wide(u64* t, int wn, U576& out) const {
    const int shift_limb = bits_ >> 6, shift_off = bits_ & 63;
    const int top_limb = (bits_ - 1) >> 6;
    const u64 top_mask = (bits_ & 63) ? ((u64(1) << (bits_ & 63)) - 1) : ~u64(0);
    for (;;) {
        // hi = t >> bits
        u64 hi[kWide];
        int hn = 0;
        for (int i = 0; i + shift_limb < wn; ++i) {
            u64 v = t[i + shift_limb] >> shift_off;
            if (shift_off && i + shift_limb + 1 < wn) v |= t[i + shift_limb + 1] << (64 - shift_off);
            hi[i] = v;
            if (v) hn = i + 1;
        }
        if (hn == 0) break;
        // t = (t mod 2^bits) + hi * c
        t[top_limb] &= top_mask;
        int reach = hn + fold_c_limbs_ + 1;  // highest limb the fold can touch
        if (reach > kWide) reach = kWide;
        if (reach < wn) reach = wn;
        for (int i = top_limb + 1; i < reach; ++i) t[i] = 0;
        wn = top_limb + 1;
        for (int i = 0; i < hn; ++i) {
            const u64 h = hi[i];
            if (!h) continue;
            u64 carry = 0;
            for (int j = 0; j < fold_c_limbs_; ++j) {
                u128 cur = (u128)h * fold_c_.w[j] + t[i + j] + carry;
                t[i + j] = (u64)cur;
                carry = (u64)(cur >> 64);
            }
            int j = i + fold_c_limbs_;
            for (; carry; ++j) {
                u128 cur = (u128)t[j] + carry;
                t[j] = (u64)cur;
                carry = (u64)(cur >> 64);
            }
            if (j > wn) wn = j;
            else if (i + fold_c_limbs_ > wn) wn = i + fold_c_limbs_;
        }
    }
    U576 r;
    for (int i = 0; i < nlimbs_; ++i) r.w[i] = t[i];
    for (int i = nlimbs_; i < kL; ++i) r.w[i] = 0;
    while (cmp(r, p_) >= 0) sub_borrow(r, r, p_);
    out = r;
}

void Field::mul_into(const U576& a, const U576& b, U576& out) const {
    if (nlimbs_ == 1) {
        u128 t = (u128)a.w[0] * b.w[0];
        out = U576((u64)(t % p_.w[0]));
        return;
    }
    u64 t[kWide];
    mul_dispatch(a.w.data(), b.w.data(), t, nlimbs_);
    reduce_wide(t, 2 * nlimbs_, out);
}

void Field::sqr_into(const U576& a, U576& out) const {
    if (nlimbs_ == 1) {
        u128 t = (u128)a.w[0] * a.w[0];
        out = U576((u64)(t % p_.w[0]));
        return;
    }
    u64 t[kWide];
    sqr_dispatch(a.w.data(), t, nlimbs_);
    reduce_wide(t, 2 * nlimbs_, out);
}

// Modular inversion via Bernstein-Yang divsteps in 62-bit batches. The number
// of steps is fixed by the modulus bit-length, so the operation schedule does
// not depend on the value being inverted.
U576 Field::inverse_of(const U576& a) const {
    if (a.is_zero()) throw DomainError("zero is not invertible");
    S62 f = to_s62(p_);
    S62 g = to_s62(a);
    S62 d{};  // cofactor of f, starts 0
    S62 e{};  // cofactor of g, starts 1
    e.v[0] = 1;
    const S62 P = to_s62(p_);
    const int len = (bits_ + 2 + 61) / 62 + 1 <= kL62 ? (bits_ + 2 + 61) / 62 + 1 : kL62;

    i64 zeta = -1;
    for (int batch = 0; batch < divsteps_batches_; ++batch) {
        i64 f0 = f.v[0], g0 = g.v[0];
        i64 u = 1, v = 0, q = 0, r = 1;
        for (int j = 0; j < 62; ++j) {
            u64 c1 = (u64)(zeta >> 63);
            u64 c2 = (u64)(-(g0 & 1));
            i64 x = (i64)(((u64)f0 ^ c1) - c1);
            i64 y = (i64)(((u64)u ^ c1) - c1);
            i64 z = (i64)(((u64)v ^ c1) - c1);
            g0 += (i64)((u64)x & c2);
            q += (i64)((u64)y & c2);
            r += (i64)((u64)z & c2);
            c1 &= c2;
            zeta = (i64)(((u64)zeta ^ c1) - 1);
            f0 += (i64)((u64)g0 & c1);
            u += (i64)((u64)q & c1);
            v += (i64)((u64)r & c1);
            g0 >>= 1;
            u <<= 1;
            v <<= 1;
        }

        // d, e <- (u*d + v*e) / 2^62, (q*d + r*e) / 2^62  (mod p)
        {
            u64 sd = (u64)(d.v[len - 1] >> 63);
            u64 se = (u64)(e.v[len - 1] >> 63);
            i64 md = (i64)(((u64)u & sd) + ((u64)v & se));
            i64 me = (i64)(((u64)q & sd) + ((u64)r & se));
            i128 cd = (i128)u * d.v[0] + (i128)v * e.v[0];
            i128 ce = (i128)q * d.v[0] + (i128)r * e.v[0];
            md -= (i64)((p_inv62_ * (u64)cd + (u64)md) & kM62);
            me -= (i64)((p_inv62_ * (u64)ce + (u64)me) & kM62);
            cd += (i128)P.v[0] * md;
            ce += (i128)P.v[0] * me;
            cd >>= 62;
            ce >>= 62;
            for (int i = 1; i < len; ++i) {
                cd += (i128)u * d.v[i] + (i128)v * e.v[i] + (i128)P.v[i] * md;
                ce += (i128)q * d.v[i] + (i128)r * e.v[i] + (i128)P.v[i] * me;
                d.v[i - 1] = (i64)cd & kM62;
                e.v[i - 1] = (i64)ce & kM62;
                cd >>= 62;
                ce >>= 62;
            }
            d.v[len - 1] = (i64)cd;
            e.v[len - 1] = (i64)ce;
        }

        // f, g <- (u*f + v*g) / 2^62, (q*f + r*g) / 2^62
        {
            i128 cf = (i128)u * f.v[0] + (i128)v * g.v[0];
            i128 cg = (i128)q * f.v[0] + (i128)r * g.v[0];
            cf >>= 62;
            cg >>= 62;
            for (int i = 1; i < len; ++i) {
                cf += (i128)u * f.v[i] + (i128)v * g.v[i];
                cg += (i128)q * f.v[i] + (i128)r * g.v[i];
                f.v[i - 1] = (i64)cf & kM62;
                g.v[i - 1] = (i64)cg & kM62;
                cf >>= 62;
                cg >>= 62;
            }
            f.v[len - 1] = (i64)cf;
            g.v[len - 1] = (i64)cg;
        }
    }

    // g must be zero and f = +-1 (gcd with a prime modulus)
    i64 gacc = 0;
    for (int i = 0; i < len; ++i) gacc |= g.v[i];
    bool upper_zero = true, upper_ones = true;
    for (int i = 1; i < len - 1; ++i) {
        if (f.v[i] != 0) upper_zero = false;
        if (f.v[i] != (i64)kM62) upper_ones = false;
    }
    bool f_is_one, f_is_minus_one;
    if (len == 1) {
        f_is_one = f.v[0] == 1;
        f_is_minus_one = f.v[0] == -1;
    } else {
        f_is_one = f.v[0] == 1 && upper_zero && f.v[len - 1] == 0;
        f_is_minus_one = f.v[0] == (i64)kM62 && upper_ones && f.v[len - 1] == -1;
    }
    if (gacc != 0 || (!f_is_one && !f_is_minus_one)) throw DomainError("value not invertible in field");

    // |d| < 2p; shift into nonnegative range by adding 2p, then reduce
    i128 carry = 0;
    for (int i = 0; i < len; ++i) {
        i128 cur = (i128)d.v[i] + 2 * (i128)P.v[i] + carry;
        d.v[i] = (i64)cur & kM62;
        carry = cur >> 62;
    }
    if (len < kL62) d.v[len] = (i64)carry;
    U576 result = from_s62_nonneg(d);
    while (cmp(result, p_) >= 0) sub_borrow(result, result, p_);
    if (f_is_minus_one && !result.is_zero()) result = sub_checked(p_, result);
    return result;
}

// Fe ---------------------------------------------------------------------------

namespace {
inline void check_same(const Fe& a, const Fe& b) {
    if (a.field() == nullptr || a.field() != b.field())
        throw ContractViolation("field elements belong to different moduli");
}
}  // namespace

Fe Fe::operator+(const Fe& o) const {
    check_same(*this, o);
    Fe r;
    r.f_ = f_;
    add_carry(r.v_, v_, o.v_);
    if (cmp(r.v_, f_->p_) >= 0) sub_borrow(r.v_, r.v_, f_->p_);
    return r;
}

Fe Fe::operator-(const Fe& o) const {
    check_same(*this, o);
    Fe r;
    r.f_ = f_;
    if (sub_borrow(r.v_, v_, o.v_)) add_carry(r.v_, r.v_, f_->p_);
    return r;
}

Fe Fe::operator*(const Fe& o) const {
    check_same(*this, o);
    Fe r;
    r.f_ = f_;
    f_->mul_into(v_, o.v_, r.v_);
    return r;
}

Fe Fe::square() const {
    Fe r;
    r.f_ = f_;
    f_->sqr_into(v_, r.v_);
    return r;
}

Fe Fe::negate() const {
    if (v_.is_zero()) return *this;
    Fe r;
    r.f_ = f_;
    sub_borrow(r.v_, f_->p_, v_);
    return r;
}

Fe Fe::half() const {
    Fe r;
    r.f_ = f_;
    if (v_.is_odd()) {
        U576 t;
        add_carry(t, v_, f_->p_);  // no carry: moduli are capped at 570 bits
        r.v_ = shr(t, 1);
    } else {
        r.v_ = shr(v_, 1);
    }
    return r;
}

Fe Fe::invert() const {
    Fe r;
    r.f_ = f_;
    r.v_ = f_->inverse_of(v_);
    return r;
}

Fe Fe::pow(const U576& e) const {
    Fe result = f_->one();
    int top = e.bit_length();
    for (int i = top - 1; i >= 0; --i) {
        result = result.square();
        if (e.bit(i)) result = result * *this;
    }
    return result;
}

int Fe::legendre() const {
    if (v_.is_zero()) return 0;
    U576 e = shr(sub_checked(f_->p_, U576(1)), 1);
    Fe t = pow(e);
    if (t == f_->one()) return 1;
    return -1;
}

std::optional<Fe> Fe::sqrt() const {
    if (v_.is_zero()) return f_->zero();
    Fe root = f_->zero();
    if (f_->p_mod4_is3_) {
        root = pow(f_->sqrt_exp_);
    } else {
        if (legendre() != 1) return std::nullopt;
        // Tonelli-Shanks
        Fe c = f_->element(f_->ts_z_).pow(f_->ts_q_);
        Fe t = pow(f_->ts_q_);
        Fe rr = pow(shr(add_checked(f_->ts_q_, U576(1)), 1));
        int m = f_->ts_s_;
        while (!(t == f_->one())) {
            Fe t2 = t;
            int i = 0;
            while (!(t2 == f_->one())) {
                t2 = t2.square();
                ++i;
                if (i == m) return std::nullopt;
            }
            Fe b = c;
            for (int j = 0; j < m - i - 1; ++j) b = b.square();
            m = i;
            c = b.square();
            t = t * c;
            rr = rr * b;
        }
        root = rr;
    }
    if (!(root.square() == *this)) return std::nullopt;
    Fe other = root.negate();
    return cmp(root.v_, other.v_) <= 0 ? root : other;
}

bool Fe::operator==(const Fe& o) const {
    check_same(*this, o);
    return v_ == o.v_;
}

std::string Fe::to_hex() const {
    return to_hex_width(v_, f_->byte_width());
}

}  // namespace ecmul
