#ifndef ECMUL_CURVE_HPP
#define ECMUL_CURVE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ecmul/field.hpp"

namespace ecmul {

/// Point on a short-Weierstrass curve in affine coordinates, or the point at
/// infinity (an explicit variant, never a magic coordinate pair).
struct Point {
    bool infinity = true;
    Fe x, y;

    Point() = default;
    Point(const Fe& px, const Fe& py) : infinity(false), x(px), y(py) {}

    static Point at_infinity() { return Point(); }
};

/// Curve parameters: y^2 = x^3 + ax + b over F_p, with base point G of order n.
/// Immutable after registration; safe to share across threads.
class Curve {
public:
    std::string name;
    FieldPtr field;
    Fe a, b;
    Point g;
    U576 n;       ///< order of the base point
    int n_bits = 0;

    const Field& f() const { return *field; }
    int coord_bytes() const { return field->byte_width(); }
    /// Serialized point width: tag byte plus two coordinates.
    int point_bytes() const { return 1 + 2 * coord_bytes(); }
};

using CurvePtr = std::shared_ptr<const Curve>;

/// Counters for group-law operations, used by benchmarks and the
/// operation-trace tests. Thread-local: each thread observes its own counts.
struct OpCounters {
    std::uint64_t adds = 0;
    std::uint64_t doubles = 0;
    std::uint64_t total() const { return adds + doubles; }
};

OpCounters& op_counters();
void reset_op_counters();

/// true iff P is the point at infinity or satisfies the curve equation.
bool is_on_curve(const Point& p, const Curve& curve);

/// Group addition per the affine chord-and-tangent formulas. Inputs are
/// validated; off-curve points raise ContractViolation.
Point point_add(const Point& p, const Point& q, const Curve& curve);

/// 2P, validated like point_add.
Point point_double(const Point& p, const Curve& curve);

/// O -> O, (x, y) -> (x, p - y).
Point point_negate(const Point& p, const Curve& curve);

bool point_eq(const Point& p, const Point& q);

namespace detail {
// Group law without the on-curve input checks, for multiplier inner loops
// whose intermediates are on-curve by closure. Counters are bumped here.
Point add_unchecked(const Point& p, const Point& q, const Curve& curve);
Point dbl_unchecked(const Point& p, const Curve& curve);
}  // namespace detail

/// Ground-truth oracle: k successive additions of P. Intended for small k
/// and small curves; k must fit in 32 bits.
Point naive_scalar_mul(const U576& k, const Point& p, const Curve& curve);

/// Uncompressed hex: "04" || x || y (fixed width per curve), "00" for O.
std::string point_to_hex(const Point& p, const Curve& curve);
Point point_from_hex(const std::string& hex, const Curve& curve);

/// Fixed-width binary serialization (tag byte 0x04/0x00 plus coordinates).
std::vector<std::uint8_t> point_to_bytes(const Point& p, const Curve& curve);
Point point_from_bytes(const std::uint8_t* data, int len, const Curve& curve);

/// Curve registry. SECG curves carry their standard parameters; small test
/// curves (p < 2^10) get their order computed by exhaustive enumeration at
/// registration. Unknown names raise NotFound.
CurvePtr registry_get(const std::string& name);
std::vector<std::string> registry_names();

}  // namespace ecmul

#endif
