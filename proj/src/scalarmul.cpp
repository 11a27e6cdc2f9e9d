#include "ecmul/scalarmul.hpp"

#include "ecmul/errors.hpp"

namespace ecmul {

namespace {

void check_window(int w) {
    if (w < 1) throw ContractViolation("window parameter must be >= 1");
    if (w > 16) throw ContractViolation("window parameter must be <= 16 (table-size guard)");
}

U576 reduce_scalar(const U576& k, const Curve& curve) {
    return cmp(k, curve.n) < 0 ? k : mod(k, curve.n);
}

void check_base(const Point& p, const Curve& curve) {
    if (!is_on_curve(p, curve)) throw ContractViolation("base point is not on curve " + curve.name);
}

// value of bits [from, from + count) of k, count <= 16
std::uint64_t bit_window(const U576& k, int from, int count) {
    std::uint64_t v = 0;
    for (int i = count - 1; i >= 0; --i) {
        v = (v << 1) | (std::uint64_t)(from + i < 576 && k.bit(from + i));
    }
    return v;
}

}  // namespace

Strategy Strategy::parse(const std::string& id) {
    Strategy s;
    if (id == "double-and-add") {
        s.kind = StrategyKind::DoubleAndAdd;
    } else if (id == "naf") {
        s.kind = StrategyKind::Naf;
    } else if (id == "2k-ary") {
        s.kind = StrategyKind::TwoKAry;
        s.window = kDefaultTwoKAry;
    } else if (id == "sliding-window") {
        s.kind = StrategyKind::SlidingWindow;
        s.window = kDefaultWindow;
    } else if (id == "montgomery") {
        s.kind = StrategyKind::MontgomeryLadder;
    } else if (id == "comb") {
        s.kind = StrategyKind::FixedBaseComb;
        s.window = kDefaultWindow;
        s.teeth = kDefaultCombTeeth;
    } else if (id == "fixed-window") {
        s.kind = StrategyKind::FixedWindow;
        s.window = kDefaultWindow;
    } else if (id == "mary") {
        s.kind = StrategyKind::Mary;
    } else if (id == "mary-binary") {
        s.kind = StrategyKind::MaryBinary;
    } else {
        throw NotFound("strategy '" + id + "' is not one of the nine identifiers");
    }
    return s;
}

std::string Strategy::id() const {
    switch (kind) {
        case StrategyKind::DoubleAndAdd: return "double-and-add";
        case StrategyKind::Naf: return "naf";
        case StrategyKind::TwoKAry: return "2k-ary";
        case StrategyKind::SlidingWindow: return "sliding-window";
        case StrategyKind::MontgomeryLadder: return "montgomery";
        case StrategyKind::FixedBaseComb: return "comb";
        case StrategyKind::FixedWindow: return "fixed-window";
        case StrategyKind::Mary: return "mary";
        case StrategyKind::MaryBinary: return "mary-binary";
    }
    return "?";
}

std::vector<Strategy> Strategy::all() {
    std::vector<Strategy> out;
    for (const char* id : {"double-and-add", "naf", "2k-ary", "sliding-window", "montgomery", "comb",
                           "fixed-window", "mary", "mary-binary"})
        out.push_back(parse(id));
    return out;
}

Point double_and_add(const U576& k, const Point& p, const Curve& curve) {
    check_base(p, curve);
    U576 r = reduce_scalar(k, curve);
    // right-to-left halving: one doubling per bit of k
    Point acc = Point::at_infinity();
    Point base = p;
    int bits = r.bit_length();
    for (int i = 0; i < bits; ++i) {
        if (r.bit(i)) acc = detail::add_unchecked(acc, base, curve);
        base = detail::dbl_unchecked(base, curve);
    }
    return acc;
}

SignedDigits naf_recode(const U576& k) {
    SignedDigits out;
    U576 r = k;
    const U576 one(1);
    while (!r.is_zero()) {
        if (r.is_odd()) {
            int mod4 = (int)(r.w[0] & 3);
            if (mod4 == 1) {
                out.digits.push_back(1);
                sub_borrow(r, r, one);
            } else {
                out.digits.push_back(-1);
                add_carry(r, r, one);
            }
        } else {
            out.digits.push_back(0);
        }
        r = shr(r, 1);
    }
    return out;
}

Point naf_scalar_mul(const U576& k, const Point& p, const Curve& curve) {
    check_base(p, curve);
    U576 r = reduce_scalar(k, curve);
    SignedDigits naf = naf_recode(r);
    Point neg = point_negate(p, curve);
    Point acc = Point::at_infinity();
    for (int i = (int)naf.digits.size() - 1; i >= 0; --i) {
        acc = detail::dbl_unchecked(acc, curve);
        if (naf.digits[i] == 1) acc = detail::add_unchecked(acc, p, curve);
        else if (naf.digits[i] == -1) acc = detail::add_unchecked(acc, neg, curve);
    }
    return acc;
}

std::vector<Point> build_odd_multiples(const Point& p, const Curve& curve, int bits) {
    check_window(bits);
    std::vector<Point> table;
    table.reserve(std::size_t(1) << (bits - 1));
    table.push_back(p);
    Point twice = detail::dbl_unchecked(p, curve);
    for (std::size_t i = 1; i < (std::size_t(1) << (bits - 1)); ++i)
        table.push_back(detail::add_unchecked(table.back(), twice, curve));
    return table;
}

Point two_k_ary_mul(const U576& scalar, const Point& p, const Curve& curve, int k) {
    check_base(p, curve);
    return two_k_ary_mul(scalar, p, curve, k, build_odd_multiples(p, curve, k));
}

Point two_k_ary_mul(const U576& scalar, const Point& p, const Curve& curve, int k,
                    const std::vector<Point>& odd_table) {
    check_window(k);
    check_base(p, curve);
    if (odd_table.size() != (std::size_t(1) << (k - 1)))
        throw ContractViolation("odd-multiple table size does not match radix");
    U576 r = reduce_scalar(scalar, curve);
    int bits = r.bit_length();
    if (bits == 0) return Point::at_infinity();
    int digits = (bits + k - 1) / k;
    Point acc = Point::at_infinity();
    for (int j = digits - 1; j >= 0; --j) {
        std::uint64_t a = bit_window(r, j * k, k);
        if (a == 0) {
            for (int s = 0; s < k; ++s) acc = detail::dbl_unchecked(acc, curve);
            continue;
        }
        // a = u * 2^s with u odd
        int s = __builtin_ctzll(a);
        std::uint64_t u = a >> s;
        for (int i = 0; i < k - s; ++i) acc = detail::dbl_unchecked(acc, curve);
        acc = detail::add_unchecked(acc, odd_table[(u - 1) >> 1], curve);
        for (int i = 0; i < s; ++i) acc = detail::dbl_unchecked(acc, curve);
    }
    return acc;
}

Point sliding_window_mul(const U576& k, const Point& p, const Curve& curve, int w) {
    check_window(w);
    check_base(p, curve);
    U576 r = reduce_scalar(k, curve);
    std::vector<Point> table = build_odd_multiples(p, curve, w);
    Point acc = Point::at_infinity();
    int i = r.bit_length() - 1;
    while (i >= 0) {
        if (!r.bit(i)) {
            acc = detail::dbl_unchecked(acc, curve);
            --i;
            continue;
        }
        // widest window [t..i] ending on a set bit, width <= w
        int t = i - w + 1 < 0 ? 0 : i - w + 1;
        while (!r.bit(t)) ++t;
        std::uint64_t h = bit_window(r, t, i - t + 1);
        for (int s = 0; s < i - t + 1; ++s) acc = detail::dbl_unchecked(acc, curve);
        acc = detail::add_unchecked(acc, table[(h - 1) >> 1], curve);
        i = t - 1;
    }
    return acc;
}

Point montgomery_ladder_mul(const U576& k, const Point& p, const Curve& curve) {
    return montgomery_ladder_mul(k, p, curve, nullptr);
}

Point montgomery_ladder_mul(const U576& k, const Point& p, const Curve& curve,
                            const std::function<void(const Point&, const Point&)>& observer) {
    check_base(p, curve);
    U576 r = reduce_scalar(k, curve);
    // fixed-length ladder over the order bit-length: one add and one double
    // per bit regardless of the scalar's value
    Point r0 = Point::at_infinity();
    Point r1 = p;
    for (int i = curve.n_bits - 1; i >= 0; --i) {
        if (r.bit(i)) {
            r0 = detail::add_unchecked(r0, r1, curve);
            r1 = detail::dbl_unchecked(r1, curve);
        } else {
            r1 = detail::add_unchecked(r0, r1, curve);
            r0 = detail::dbl_unchecked(r0, curve);
        }
        if (observer) observer(r0, r1);
    }
    return r0;
}

CombTable build_comb_table(const Point& p, const Curve& curve, int w, int v) {
    check_window(w);
    if (v < 1) throw ContractViolation("comb teeth must be >= 1");
    check_base(p, curve);
    CombTable t;
    t.w = w;
    t.v = v;
    t.blocks = (curve.n_bits + w - 1) / w;
    t.per_tooth = (t.blocks + v - 1) / v;
    t.base = p;
    t.rows.resize(v);
    Point row_base = p;  // 2^{j*b*w} P
    for (int j = 0; j < v; ++j) {
        auto& row = t.rows[j];
        row.reserve(std::size_t(1) << w);
        row.push_back(Point::at_infinity());
        for (std::size_t s = 1; s < (std::size_t(1) << w); ++s)
            row.push_back(detail::add_unchecked(row.back(), row_base, curve));
        if (j + 1 < v) {
            for (int d = 0; d < t.per_tooth * w; ++d) row_base = detail::dbl_unchecked(row_base, curve);
        }
    }
    return t;
}

Point fixed_base_comb_mul(const U576& k, const CombTable& table, const Point& base, const Curve& curve) {
    if (!point_eq(table.base, base))
        throw ContractViolation("comb table was built for a different base point");
    U576 r = reduce_scalar(k, curve);
    Point acc = Point::at_infinity();
    for (int t = table.per_tooth - 1; t >= 0; --t) {
        for (int s = 0; s < table.w; ++s) acc = detail::dbl_unchecked(acc, curve);
        for (int j = 0; j < table.v; ++j) {
            int block = j * table.per_tooth + t;
            if (block >= table.blocks) continue;
            std::uint64_t s = bit_window(r, block * table.w, table.w);
            if (s) acc = detail::add_unchecked(acc, table.rows[j][s], curve);
        }
    }
    return acc;
}

Point fixed_window_mul(const U576& k, const Point& p, const Curve& curve, int w) {
    check_window(w);
    check_base(p, curve);
    U576 r = reduce_scalar(k, curve);
    int bits = r.bit_length();
    if (bits == 0) return Point::at_infinity();
    // table of all digit multiples j*P, 0 <= j < 2^w
    std::vector<Point> table;
    table.reserve(std::size_t(1) << w);
    table.push_back(Point::at_infinity());
    for (std::size_t j = 1; j < (std::size_t(1) << w); ++j)
        table.push_back(detail::add_unchecked(table.back(), p, curve));
    int digits = (bits + w - 1) / w;
    Point acc = Point::at_infinity();
    for (int j = digits - 1; j >= 0; --j) {
        for (int s = 0; s < w; ++s) acc = detail::dbl_unchecked(acc, curve);
        std::uint64_t a = bit_window(r, j * w, w);
        if (a) acc = detail::add_unchecked(acc, table[a], curve);
    }
    return acc;
}

}  // namespace ecmul
