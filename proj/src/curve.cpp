#include "ecmul/curve.hpp"

#include <map>
#include <mutex>

#include "ecmul/errors.hpp"

namespace ecmul {

OpCounters& op_counters() {
    thread_local OpCounters counters;
    return counters;
}

void reset_op_counters() {
    op_counters() = OpCounters{};
}

bool is_on_curve(const Point& p, const Curve& curve) {
    if (p.infinity) return true;
    if (p.x.field() != curve.field.get() || p.y.field() != curve.field.get()) return false;
    Fe lhs = p.y.square();
    Fe rhs = p.x.square() * p.x + curve.a * p.x + curve.b;
    return lhs == rhs;
}

namespace detail {

Point add_unchecked(const Point& p, const Point& q, const Curve& curve) {
    ++op_counters().adds;
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y == q.y.negate()) return Point::at_infinity();
        // p == q: tangent slope (3x^2 + a) / (2y)
        Fe num = p.x.square();
        num = num + num + num + curve.a;
        Fe lambda = num * (p.y + p.y).invert();
        Fe x3 = lambda.square() - p.x - q.x;
        Fe y3 = lambda * (p.x - x3) - p.y;
        return Point(x3, y3);
    }
    Fe lambda = (q.y - p.y) * (q.x - p.x).invert();
    Fe x3 = lambda.square() - p.x - q.x;
    Fe y3 = lambda * (p.x - x3) - p.y;
    return Point(x3, y3);
}

Point dbl_unchecked(const Point& p, const Curve& curve) {
    ++op_counters().doubles;
    if (p.infinity) return p;
    if (p.y.is_zero()) return Point::at_infinity();
    Fe num = p.x.square();
    num = num + num + num + curve.a;
    Fe lambda = num * (p.y + p.y).invert();
    Fe x3 = lambda.square() - p.x - p.x;
    Fe y3 = lambda * (p.x - x3) - p.y;
    return Point(x3, y3);
}

}  // namespace detail

namespace {

void require_on_curve(const Point& p, const Curve& curve, const char* role) {
    if (!is_on_curve(p, curve)) throw ContractViolation(std::string(role) + " point is not on curve " + curve.name);
}

}  // namespace

Point point_add(const Point& p, const Point& q, const Curve& curve) {
    require_on_curve(p, curve, "left");
    require_on_curve(q, curve, "right");
    return detail::add_unchecked(p, q, curve);
}

Point point_double(const Point& p, const Curve& curve) {
    require_on_curve(p, curve, "input");
    return detail::dbl_unchecked(p, curve);
}

Point point_negate(const Point& p, const Curve& curve) {
    (void)curve;
    if (p.infinity) return p;
    return Point(p.x, p.y.negate());
}

bool point_eq(const Point& p, const Point& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
}

Point naive_scalar_mul(const U576& k, const Point& p, const Curve& curve) {
    if (!k.fits_u64() || k.low_u64() > (std::uint64_t(1) << 32))
        throw ContractViolation("naive_scalar_mul is an oracle for small scalars");
    require_on_curve(p, curve, "input");
    Point acc = Point::at_infinity();
    std::uint64_t count = k.low_u64();
    for (std::uint64_t i = 0; i < count; ++i) acc = detail::add_unchecked(acc, p, curve);
    return acc;
}

std::string point_to_hex(const Point& p, const Curve& curve) {
    if (p.infinity) return "00";
    return "04" + p.x.to_hex() + p.y.to_hex();
}

Point point_from_hex(const std::string& hex, const Curve& curve) {
    if (hex == "00") return Point::at_infinity();
    const std::size_t want = 2 + 4 * (std::size_t)curve.coord_bytes();
    if (hex.size() != want || hex.compare(0, 2, "04") != 0)
        throw FormatError("malformed point encoding for curve " + curve.name);
    Fe x = curve.f().from_hex(hex.substr(2, 2 * curve.coord_bytes()));
    Fe y = curve.f().from_hex(hex.substr(2 + 2 * curve.coord_bytes()));
    Point p(x, y);
    if (!is_on_curve(p, curve)) throw FormatError("decoded point is not on curve " + curve.name);
    return p;
}

std::vector<std::uint8_t> point_to_bytes(const Point& p, const Curve& curve) {
    std::vector<std::uint8_t> out(curve.point_bytes(), 0);
    if (p.infinity) return out;
    out[0] = 0x04;
    auto xb = to_bytes_be(p.x.value(), curve.coord_bytes());
    auto yb = to_bytes_be(p.y.value(), curve.coord_bytes());
    std::copy(xb.begin(), xb.end(), out.begin() + 1);
    std::copy(yb.begin(), yb.end(), out.begin() + 1 + curve.coord_bytes());
    return out;
}

Point point_from_bytes(const std::uint8_t* data, int len, const Curve& curve) {
    if (len != curve.point_bytes()) throw FormatError("point byte length mismatch for curve " + curve.name);
    if (data[0] == 0x00) {
        for (int i = 1; i < len; ++i) {
            if (data[i]) throw FormatError("malformed infinity encoding");
        }
        return Point::at_infinity();
    }
    if (data[0] != 0x04) throw FormatError("unknown point encoding tag");
    U576 xv = from_bytes_be(data + 1, curve.coord_bytes());
    U576 yv = from_bytes_be(data + 1 + curve.coord_bytes(), curve.coord_bytes());
    if (cmp(xv, curve.f().modulus()) >= 0 || cmp(yv, curve.f().modulus()) >= 0)
        throw FormatError("point coordinate out of field range");
    Point p(curve.f().element(xv), curve.f().element(yv));
    if (!is_on_curve(p, curve)) throw FormatError("decoded point is not on curve " + curve.name);
    return p;
}

// Registry ---------------------------------------------------------------------

namespace {

// private left-to-right double-and-add, only for registration self-checks
Point check_mul(const U576& k, const Point& p, const Curve& curve) {
    Point acc = Point::at_infinity();
    for (int i = k.bit_length() - 1; i >= 0; --i) {
        acc = detail::dbl_unchecked(acc, curve);
        if (k.bit(i)) acc = detail::add_unchecked(acc, p, curve);
    }
    return acc;
}

CurvePtr make_curve(const std::string& name, const U576& p, const U576& a, const U576& b,
                    const U576& gx, const U576& gy, const U576& n) {
    auto curve = std::make_shared<Curve>();
    curve->name = name;
    curve->field = std::make_shared<const Field>(p);
    const Field& f = *curve->field;
    curve->a = f.element(a);
    curve->b = f.element(b);
    curve->g = Point(f.element(gx), f.element(gy));
    curve->n = n;
    curve->n_bits = n.bit_length();

    // 4a^3 + 27b^2 != 0 (mod p)
    Fe fa = curve->a, fb = curve->b;
    Fe disc = fa.square() * fa * f.element_mod(U576(4)) + fb.square() * f.element_mod(U576(27));
    if (disc.is_zero()) throw DomainError("singular curve: 4a^3 + 27b^2 = 0 for " + name);
    if (!is_on_curve(curve->g, *curve)) throw DomainError("base point not on curve " + name);
    if (!point_eq(check_mul(n, curve->g, *curve), Point::at_infinity()))
        throw DomainError("base point order check failed for " + name);
    return curve;
}

// Small curve: group order found by exhaustive point enumeration. The
// registered small curves all have prime group order, so the order of any
// base point equals the group order (confirmed by the n*G = O check).
CurvePtr make_small_curve(const std::string& name, std::uint64_t p, std::uint64_t a, std::uint64_t b,
                          std::uint64_t gx, std::uint64_t gy) {
    std::vector<std::uint8_t> sq_count(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) sq_count[(y * y) % p]++;
    std::uint64_t total = 1;  // the point at infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t rhs = ((x * x % p) * x + a * x + b) % p;
        total += sq_count[rhs];
    }
    return make_curve(name, U576(p), U576(a), U576(b), U576(gx), U576(gy), U576(total));
}

std::map<std::string, CurvePtr>& registry() {
    static std::map<std::string, CurvePtr> curves;
    static std::once_flag once;
    std::call_once(once, [] {
        curves["secp256k1"] = make_curve(
            "secp256k1",
            from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f"),
            U576(0), U576(7),
            from_hex("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"),
            from_hex("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8"),
            from_hex("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141"));
        curves["secp384r1"] = make_curve(
            "secp384r1",
            from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffffff00000000"
                     "00000000ffffffff"),
            from_hex("fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffffff00000000"
                     "00000000fffffffc"),
            from_hex("b3312fa7e23ee7e4988e056be3f82d19181d9c6efe8141120314088f5013875ac656398d8a2ed19d"
                     "2a85c8edd3ec2aef"),
            from_hex("aa87ca22be8b05378eb1c71ef320ad746e1d3b628ba79b9859f741e082542a385502f25dbf55296c"
                     "3a545e3872760ab7"),
            from_hex("3617de4a96262c6f5d9e98bf9292dc29f8f41dbd289a147ce9da3113b5f0b8c00a60b1ce1d7e819d"
                     "7a431d7c90ea0e5f"),
            from_hex("ffffffffffffffffffffffffffffffffffffffffffffffffc7634d81f4372ddf581a0db248b0a77a"
                     "ecec196accc52973"));
        curves["secp521r1"] = make_curve(
            "secp521r1",
            from_hex("01ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
                     "ffffffffffffffffffffffffffffffffffffffffffffffffffff"),
            from_hex("01ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
                     "fffffffffffffffffffffffffffffffffffffffffffffffffffc"),
            from_hex("0051953eb9618e1c9a1f929a21a0b68540eea2da725b99b315f3b8b489918ef109e156193951ec7e"
                     "937b1652c0bd3bb1bf073573df883d2c34f1ef451fd46b503f00"),
            from_hex("00c6858e06b70404e9cd9e3ecb662395b4429c648139053fb521f828af606b4d3dbaa14b5e77efe7"
                     "5928fe1dc127a2ffa8de3348b3c1856a429bf97e7e31c2e5bd66"),
            from_hex("011839296a789a3bc0045c8a5fb42c7d1bd998f54449579b446817afbd17273e662c97ee72995ef4"
                     "2640c550b9013fad0761353c7086a272c24088be94769fd16650"),
            from_hex("01fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffa51868783bf2f"
                     "966b7fcc0148f709a5d03bb5c9b8899c47aebb6fb71e91386409"));
        curves["tiny17"] = make_small_curve("tiny17", 17, 2, 2, 5, 1);
        curves["tiny97"] = make_small_curve("tiny97", 97, 1, 1, 0, 1);
        curves["tiny233"] = make_small_curve("tiny233", 233, 1, 4, 0, 2);
        curves["tiny941"] = make_small_curve("tiny941", 941, 4, 2, 3, 87);
    });
    return curves;
}

}  // namespace

CurvePtr registry_get(const std::string& name) {
    auto& r = registry();
    auto it = r.find(name);
    if (it == r.end()) throw NotFound("curve '" + name + "' is not registered");
    return it->second;
}

std::vector<std::string> registry_names() {
    std::vector<std::string> names;
    for (const auto& [name, curve] : registry()) names.push_back(name);
    return names;
}

}  // namespace ecmul
