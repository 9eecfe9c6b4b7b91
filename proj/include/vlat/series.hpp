#pragma once

#include <climits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "vlat/scalar.hpp"

namespace vlat {

struct EmptyWindow : std::runtime_error {
    EmptyWindow() : std::runtime_error("EmptyWindow") {}
};
struct NotFormallyNilpotent : std::runtime_error {
    NotFormallyNilpotent() : std::runtime_error("NotFormallyNilpotent") {}
};
struct UnsupportedExpansionDirection : std::runtime_error {
    UnsupportedExpansionDirection() : std::runtime_error("UnsupportedExpansionDirection") {}
};

// Sentinels for open window ends.
constexpr int kNegInf = INT_MIN / 4;
constexpr int kPosInf = INT_MAX / 4;

struct Window {
    int lo = kNegInf;
    int hi = kPosInf;
    bool empty() const { return lo > hi; }
    bool contains(int e) const { return e >= lo && e <= hi; }
    friend bool operator==(const Window&, const Window&) = default;
};

inline int sat_add(int a, int b) {
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    long s = static_cast<long>(a) + b;
    if (s <= kNegInf) return kNegInf;
    if (s >= kPosInf) return kPosInf;
    return static_cast<int>(s);
}

// One-variable Laurent series over Scalar. Coefficients in [lo, hi] are exact;
// nothing is stored outside the window. For products, lo acts as a valuation
// bound (the series is taken to vanish below it).
class LaurentSeries {
public:
    LaurentSeries() = default;
    explicit LaurentSeries(Window w, char var = 'x') : var_(var), w_(w) {}
    static LaurentSeries monomial(const Scalar& c, int e, Window w, char var = 'x');
    // exact Laurent polynomial: window [min support, +inf)
    static LaurentSeries polynomial(const std::map<int, Scalar>& terms, char var = 'x');

    char var() const { return var_; }
    const Window& window() const { return w_; }
    const std::map<int, Scalar>& terms() const { return t_; }
    Scalar coeff(int e) const;
    void set(int e, const Scalar& c);
    void add_to(int e, const Scalar& c);
    bool is_zero() const { return t_.empty(); }
    int min_exponent() const;  // kPosInf when zero

    LaurentSeries truncated(int hi) const;
    LaurentSeries with_window(Window w) const;
    LaurentSeries operator-() const;
    LaurentSeries scaled(const Scalar& c) const;
    // f(c x)
    LaurentSeries dilated(const Scalar& c) const;
    LaurentSeries shifted(int k) const;  // x^k f

    std::string str() const;
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.var_ == b.var_ && a.w_ == b.w_ && a.t_ == b.t_;
    }

private:
    char var_ = 'x';
    Window w_{};
    std::map<int, Scalar> t_;
};

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_derive(const LaurentSeries& f, int k);
LaurentSeries series_exp(const LaurentSeries& f);
// Agreement on the overlap of the two windows.
bool series_agree(const LaurentSeries& f, const LaurentSeries& g);

// Exact Laurent polynomial, exponent -> coefficient, zeros never stored.
using Poly = std::map<int, Scalar>;

void poly_add(Poly& p, int e, const Scalar& c);
Poly poly_sum(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scaled(const Poly& a, const Scalar& c);
Poly poly_derive(const Poly& p, int k);
// p(c x)
Poly poly_dilate(const Poly& p, const Scalar& c);
std::string poly_str(const Poly& p, char var = 'x');
// "1 + x", "x^-1", "-1/2 x^2 + 3"; throws std::invalid_argument
Poly poly_parse(const std::string& s, char var = 'x');

enum class Direction { None, X1Major, X2Major };

// Two-variable series; w1, w2 are per-variable windows.
class BiSeries {
public:
    BiSeries() = default;
    BiSeries(Window w1, Window w2, Direction d = Direction::None, char v1 = '1', char v2 = '2')
        : w1_(w1), w2_(w2), dir_(d), v1_(v1), v2_(v2) {}

    const Window& w1() const { return w1_; }
    const Window& w2() const { return w2_; }
    Direction direction() const { return dir_; }
    char var1() const { return v1_; }
    char var2() const { return v2_; }
    const std::map<std::pair<int, int>, Scalar>& terms() const { return t_; }
    Scalar coeff(int e1, int e2) const;
    void add_to(int e1, int e2, const Scalar& c);
    bool in_window(int e1, int e2) const { return w1_.contains(e1) && w2_.contains(e2); }
    std::string str() const;

private:
    Window w1_{}, w2_{};
    Direction dir_ = Direction::None;
    char v1_ = '1', v2_ = '2';
    std::map<std::pair<int, int>, Scalar> t_;
};

// (x1 - x2)^n expanded to `order` terms in the small variable.
BiSeries iota_binom(int n, Direction dir, int order);
// x1 -> x2 + x0, binomials expanded in nonnegative powers of x0 up to x0^order.
// Output variables are (x0, x2).
BiSeries subst_affine(const BiSeries& f, int order);
BiSeries bi_mul(const BiSeries& f, const BiSeries& g);

}  // namespace vlat
