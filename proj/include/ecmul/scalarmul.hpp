#ifndef ECMUL_SCALARMUL_HPP
#define ECMUL_SCALARMUL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ecmul/curve.hpp"

namespace ecmul {

/// Signed binary digits, least-significant first, digits in {-1, 0, 1}.
/// In NAF form no two adjacent digits are nonzero and the leading digit of a
/// nonempty sequence is nonzero.
struct SignedDigits {
    std::vector<std::int8_t> digits;
};

enum class StrategyKind {
    DoubleAndAdd,
    Naf,
    TwoKAry,
    SlidingWindow,
    MontgomeryLadder,
    FixedBaseComb,
    FixedWindow,
    Mary,
    MaryBinary,
};

/// A multiplier choice plus its window/teeth parameters. Parameters are
/// validated on parse: window in [1, 16], teeth >= 1.
struct Strategy {
    StrategyKind kind = StrategyKind::DoubleAndAdd;
    int window = 0;  // radix bits for 2k-ary / sliding / fixed window / comb width
    int teeth = 0;   // comb teeth v

    /// CLI-stable identifiers: double-and-add, naf, 2k-ary, sliding-window,
    /// montgomery, comb, fixed-window, mary, mary-binary.
    static Strategy parse(const std::string& id);
    std::string id() const;
    static std::vector<Strategy> all();  ///< all nine, default parameters
};

/// Defaults per the evaluation setup: w=4 windows, 2^k-ary k=5, comb (4, 2).
inline constexpr int kDefaultWindow = 4;
inline constexpr int kDefaultTwoKAry = 5;
inline constexpr int kDefaultCombTeeth = 2;

/// Scalars are reduced mod n before multiplication by every strategy.
Point double_and_add(const U576& k, const Point& p, const Curve& curve);

SignedDigits naf_recode(const U576& k);
Point naf_scalar_mul(const U576& k, const Point& p, const Curve& curve);

/// Odd multiples u*P for odd u < 2^bits: {P, 3P, ..., (2^bits - 1)P}.
std::vector<Point> build_odd_multiples(const Point& p, const Curve& curve, int bits);

/// Radix-2^k left-to-right with odd/even digit factoring a_i = u_i * 2^{s_i}.
/// The odd-multiples table is built per call; batch callers reuse one table
/// through the table overload.
Point two_k_ary_mul(const U576& scalar, const Point& p, const Curve& curve, int k = kDefaultTwoKAry);
Point two_k_ary_mul(const U576& scalar, const Point& p, const Curve& curve, int k,
                    const std::vector<Point>& odd_table);

Point sliding_window_mul(const U576& k, const Point& p, const Curve& curve, int w = kDefaultWindow);

Point montgomery_ladder_mul(const U576& k, const Point& p, const Curve& curve);
/// Test hook: observer sees (R0, R1) after every ladder step.
Point montgomery_ladder_mul(const U576& k, const Point& p, const Curve& curve,
                            const std::function<void(const Point&, const Point&)>& observer);

/// Comb precomputation for a fixed base point: rows[j][s] = s * 2^{j*b*w} * P
/// for j < v and all 2^w block values s; b = ceil(ceil(l/w) / v) with l the
/// order bit-length.
struct CombTable {
    int w = 0, v = 0;
    int blocks = 0;      // a = ceil(l/w)
    int per_tooth = 0;   // b = ceil(a/v)
    Point base;
    std::vector<std::vector<Point>> rows;
    std::size_t stored_points() const { return (std::size_t)v << w; }
};

CombTable build_comb_table(const Point& p, const Curve& curve, int w = kDefaultWindow,
                           int v = kDefaultCombTeeth);
/// base must be the point the table was built for.
Point fixed_base_comb_mul(const U576& k, const CombTable& table, const Point& base, const Curve& curve);

Point fixed_window_mul(const U576& k, const Point& p, const Curve& curve, int w = kDefaultWindow);

}  // namespace ecmul

#endif
