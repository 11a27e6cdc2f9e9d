#ifndef ECMUL_FIELD_HPP
#define ECMUL_FIELD_HPP

#include <memory>
#include <optional>
#include <string>

#include "ecmul/bigint.hpp"

namespace ecmul {

class Field;

/// Residue in F_p, always kept in canonical reduced form (0 <= value < p).
/// Immutable after construction; combining elements of different fields
/// throws ContractViolation. All operations are pure.
class Fe {
public:
    Fe() = default;

    const U576& value() const { return v_; }
    const Field* field() const { return f_; }

    bool is_zero() const { return v_.is_zero(); }

    Fe operator+(const Fe& o) const;
    Fe operator-(const Fe& o) const;
    Fe operator*(const Fe& o) const;
    Fe square() const;
    Fe negate() const;
    Fe half() const;  ///< division by 2

    /// Multiplicative inverse; throws DomainError on zero input.
    /// Fixed operation schedule: the step sequence depends only on the
    /// modulus bit-length, never on the value being inverted.
    Fe invert() const;

    /// this^e via binary square-and-multiply.
    Fe pow(const U576& e) const;

    /// Square root when this is a quadratic residue (the smaller of the two
    /// roots), absent otherwise. Result is verified by squaring.
    std::optional<Fe> sqrt() const;

    /// Euler criterion: 0 for zero, 1 for residue, -1 for non-residue.
    int legendre() const;

    bool operator==(const Fe& o) const;
    bool operator!=(const Fe& o) const { return !(*this == o); }

    /// Fixed-width big-endian hex (2 * field byte width characters).
    std::string to_hex() const;

private:
    friend class Field;
    U576 v_;
    const Field* f_ = nullptr;
};

/// Prime-field context: the modulus plus everything precomputed for fast
/// reduction and inversion. Owned (shared) by curves; field elements hold a
/// non-owning pointer, so a Field must outlive its elements.
class Field {
public:
    /// p must be an odd prime >= 3. Primality is the caller's responsibility
    /// (the registry only ever feeds vetted moduli).
    explicit Field(const U576& p);

    const U576& modulus() const { return p_; }
    int bits() const { return bits_; }
    int limbs() const { return nlimbs_; }
    int byte_width() const { return (bits_ + 7) / 8; }

    Fe zero() const;
    Fe one() const;
    Fe element(const U576& v) const;      ///< throws ContractViolation if v >= p
    Fe element_mod(const U576& v) const;  ///< reduces v mod p first
    Fe from_hex(const std::string& hex) const;

    bool same_as(const Field& o) const { return this == &o; }

private:
    friend class Fe;

    void reduce_wide(std::uint64_t* t, int wn, U576& out) const;
    void mul_into(const U576& a, const U576& b, U576& out) const;
    void sqr_into(const U576& a, U576& out) const;
    U576 inverse_of(const U576& a) const;

    U576 p_;
    int bits_ = 0;
    int nlimbs_ = 0;
    U576 fold_c_;       // 2^bits - p
    int fold_c_limbs_ = 0;
    std::uint64_t p_inv62_ = 0;  // p^-1 mod 2^62, for the divsteps cofactor update
    int divsteps_batches_ = 0;
    U576 sqrt_exp_;     // (p+1)/4 when p = 3 (mod 4)
    bool p_mod4_is3_ = false;
    // Tonelli-Shanks data for p = 1 (mod 4): p - 1 = q * 2^s, z a non-residue
    U576 ts_q_;
    int ts_s_ = 0;
    U576 ts_z_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace ecmul

#endif
