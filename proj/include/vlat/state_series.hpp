#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "vlat/fock.hpp"
#include "vlat/series.hpp"

namespace vlat {

// Series with coefficients in V (State or Tensor). Every coefficient with
// exponent <= hi is exact; nothing nonzero sits below val.
template <class V>
struct Series {
    std::map<int, V> t;
    int val = 0;
    int hi = 0;

    Series() = default;
    Series(int v, int h) : val(v), hi(h) {}

    V coeff(int e) const {
        auto it = t.find(e);
        return it == t.end() ? V() : it->second;
    }
    void add(int e, const V& v, const Scalar& c = Scalar(1)) {
        if (e > hi || v.is_zero() || c.is_zero()) return;
        auto& slot = t[e];
        slot.add_scaled(v, c);
        if (slot.is_zero()) t.erase(e);
    }
    bool is_zero() const { return t.empty(); }
    // smallest stored exponent, or hi + 1 when nothing is stored
    int min_exponent() const { return t.empty() ? hi + 1 : t.begin()->first; }
};

template <class V>
struct Series2 {
    std::map<std::pair<int, int>, V> t;
    int val1 = 0, hi1 = 0, val2 = 0, hi2 = 0;

    V coeff(int a, int b) const {
        auto it = t.find({a, b});
        return it == t.end() ? V() : it->second;
    }
    void add(int a, int b, const V& v, const Scalar& c = Scalar(1)) {
        if (a > hi1 || b > hi2 || v.is_zero() || c.is_zero()) return;
        auto& slot = t[{a, b}];
        slot.add_scaled(v, c);
        if (slot.is_zero()) t.erase({a, b});
    }
    bool is_zero() const { return t.empty(); }
};

using SeriesState = Series<State>;
using SeriesTensor = Series<Tensor>;
using Series2State = Series2<State>;
using Series2Tensor = Series2<Tensor>;

// Y(u, x) acting on a state, exact up to the requested exponent.
using Field = std::function<SeriesState(const State&, int hi)>;

template <class V>
Series<V> truncate(const Series<V>& s, int hi) {
    Series<V> r(s.val, std::min(hi, s.hi));
    for (auto& [e, v] : s.t)
        if (e <= r.hi) r.t.emplace(e, v);
    return r;
}

template <class V>
Series<V> series_sum(const Series<V>& a, const Series<V>& b, const Scalar& cb = Scalar(1)) {
    Series<V> r(std::min(a.val, b.val), std::min(a.hi, b.hi));
    for (auto& [e, v] : a.t) r.add(e, v);
    for (auto& [e, v] : b.t) r.add(e, v, cb);
    return r;
}

template <class V>
Series<V> series_scaled(const Series<V>& a, const Scalar& c) {
    Series<V> r(a.val, a.hi);
    for (auto& [e, v] : a.t) r.add(e, v, c);
    return r;
}

// f(c x)
template <class V>
Series<V> series_dilate(const Series<V>& a, const Scalar& c) {
    Series<V> r(a.val, a.hi);
    for (auto& [e, v] : a.t) r.add(e, v, c.pow(e));
    return r;
}

template <class V>
Series<V> series_d(const Series<V>& a) {
    Series<V> r(a.val - 1, a.hi - 1);
    for (auto& [e, v] : a.t)
        if (e != 0) r.add(e - 1, v, Scalar(e));
    return r;
}

// multiply by a finite Laurent polynomial in the same variable
template <class V>
Series<V> series_mul_poly(const Series<V>& a, const std::map<int, Scalar>& p) {
    if (p.empty()) return Series<V>(a.val, a.hi);
    int lo = p.begin()->first;
    Series<V> r(a.val + lo, a.hi + lo);
    for (auto& [e, v] : a.t)
        for (auto& [k, c] : p) r.add(e + k, v, c);
    return r;
}

// apply a linear map to every coefficient
template <class V, class W>
Series<W> series_map(const Series<V>& a, const std::function<W(const V&)>& f) {
    Series<W> r(a.val, a.hi);
    for (auto& [e, v] : a.t) r.add(e, f(v));
    return r;
}

// A(x) applied to the coefficients of s(x); pole_bound bounds the valuation of
// A on every coefficient of s. s must be exact up to hi - pole_bound.
SeriesState apply_field(const Field& A, const SeriesState& s, int hi, int pole_bound);

SeriesTensor series_tensor(const SeriesState& a, const SeriesState& b);
SeriesTensor series_to_tensor(const SeriesState& a);  // arity-1 tensors

// Outer field in one variable applied to each coefficient of the inner one.
// Keys are (var1, var2); outer_first says whether the outer field sits in var1.
Series2State compose(const Field& outer, const Field& inner, const State& w, int hi_outer, int hi_inner,
                     bool outer_is_var1);

template <class V>
Series2<V> restrict2(const Series2<V>& F, int hi1, int hi2) {
    Series2<V> r = F;
    r.hi1 = std::min(hi1, F.hi1);
    r.hi2 = std::min(hi2, F.hi2);
    r.t.clear();
    for (auto& [k, v] : F.t)
        if (k.first <= r.hi1 && k.second <= r.hi2) r.t.emplace(k, v);
    return r;
}

template <class V>
Series2<V> series2_sum(const Series2<V>& a, const Series2<V>& b, const Scalar& cb = Scalar(1)) {
    Series2<V> r;
    r.val1 = std::min(a.val1, b.val1);
    r.val2 = std::min(a.val2, b.val2);
    r.hi1 = std::min(a.hi1, b.hi1);
    r.hi2 = std::min(a.hi2, b.hi2);
    for (auto& [k, v] : a.t) r.add(k.first, k.second, v);
    for (auto& [k, v] : b.t) r.add(k.first, k.second, v, cb);
    return r;
}

// multiply by a finite Laurent polynomial in (var1, var2)
template <class V>
Series2<V> series2_mul_poly(const Series2<V>& F, const std::map<std::pair<int, int>, Scalar>& p) {
    Series2<V> r;
    if (p.empty()) {
        r.val1 = F.val1, r.val2 = F.val2, r.hi1 = F.hi1, r.hi2 = F.hi2;
        return r;
    }
    int lo1 = kPosInf, lo2 = kPosInf;
    for (auto& [k, c] : p) lo1 = std::min(lo1, k.first), lo2 = std::min(lo2, k.second);
    r.val1 = F.val1 + lo1;
    r.val2 = F.val2 + lo2;
    r.hi1 = F.hi1 + lo1;
    r.hi2 = F.hi2 + lo2;
    for (auto& [k, v] : F.t)
        for (auto& [e, c] : p) r.add(k.first + e.first, k.second + e.second, v, c);
    return r;
}

// Multiply by (x1 - x2)^n: Direction::X1Major expands in nonnegative powers of
// x2, X2Major writes it as (-x2 + x1)^n in nonnegative powers of x1. The
// exactness region shrinks in the major variable as needed.
template <class V>
Series2<V> series2_mul_binom(const Series2<V>& F, int n, Direction dir) {
    std::map<std::pair<int, int>, Scalar> p;
    if (dir == Direction::X1Major) {
        int J = F.hi2 - F.val2;
        if (n >= 0) J = std::min(J, n);
        J = std::max(J, 0);
        for (int j = 0; j <= J; ++j) {
            Scalar c(binomial_int(n, j));
            if (j % 2) c = -c;
            p[{n - j, j}] = c;
        }
        Series2<V> r = series2_mul_poly(F, p);
        r.hi2 = F.hi2;
        r.val2 = F.val2;
        r.hi1 = F.hi1 + n - J;
        r.val1 = F.val1 + n - J;
        return restrict2(r, r.hi1, r.hi2);
    }
    int J = F.hi1 - F.val1;
    if (n >= 0) J = std::min(J, n);
    J = std::max(J, 0);
    for (int j = 0; j <= J; ++j) {
        Scalar c(binomial_int(n, j));
        if ((n - j) % 2) c = -c;
        p[{j, n - j}] = c;
    }
    Series2<V> r = series2_mul_poly(F, p);
    r.hi1 = F.hi1;
    r.val1 = F.val1;
    r.hi2 = F.hi2 + n - J;
    r.val2 = F.val2 + n - J;
    return restrict2(r, r.hi1, r.hi2);
}

// Multiply by g(sign * (x1 - x2)) for a power series g given by its
// coefficients; g must hold every degree up to (hi1 - val1) + (hi2 - val2).
template <class V>
Series2<V> series2_mul_diff_series(const Series2<V>& F, const std::map<int, Scalar>& g, int sign) {
    int N = (F.hi1 - F.val1) + (F.hi2 - F.val2);
    std::map<std::pair<int, int>, Scalar> p;
    for (auto& [k, c] : g) {
        if (k < 0) throw std::invalid_argument("power series expected");
        if (k > N) break;
        Scalar ck = c;
        if (sign < 0 && k % 2) ck = -ck;
        for (int i = 0; i <= k; ++i) {
            Scalar b(binomial_int(k, i));
            if ((k - i) % 2) b = -b;
            p[{i, k - i}] += ck * b;
        }
    }
    for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
    Series2<V> r = series2_mul_poly(F, p);
    r.val1 = F.val1, r.val2 = F.val2, r.hi1 = F.hi1, r.hi2 = F.hi2;
    return restrict2(r, r.hi1, r.hi2);
}

// (x1^l F)|_{x1 = x0 + x2}, expanding (x0 + x2)^k in nonnegative powers of x2.
// Output keys are (x0, x2).
template <class V>
Series2<V> series2_shift_subst(const Series2<V>& F, int l) {
    Series2<V> r;
    int K = F.hi2 - F.val2;
    r.hi2 = F.hi2;
    r.val2 = F.val2;
    r.hi1 = F.hi1 + l - K;
    r.val1 = F.val1 + l - K;
    for (auto& [key, v] : F.t) {
        int a = key.first + l, b = key.second;
        for (int k = 0; k <= K && b + k <= r.hi2; ++k) {
            Scalar c(binomial_int(a, k));
            if (c.is_zero()) {
                if (a >= 0 && k > a) break;
                continue;
            }
            r.add(a - k, b + k, v, c);
        }
    }
    return r;
}

// coefficient of var1^e1 as a series in var2
template <class V>
Series<V> series2_row(const Series2<V>& F, int e1) {
    Series<V> r(F.val2, F.hi2);
    for (auto& [k, v] : F.t)
        if (k.first == e1) r.add(k.second, v);
    return r;
}

struct Mismatch {
    std::string exponents;
    std::string monomial;
    std::string expected;
    std::string actual;
};

std::optional<Mismatch> compare_states(const State& expected, const State& actual, const std::string& where);
std::optional<Mismatch> compare_tensors(const Tensor& expected, const Tensor& actual, const std::string& where);
// compared on exponents up to the smaller hi (and above lo when given)
std::optional<Mismatch> compare_series(const SeriesState& expected, const SeriesState& actual, int lo = kNegInf);
std::optional<Mismatch> compare_series(const SeriesTensor& expected, const SeriesTensor& actual, int lo = kNegInf);
std::optional<Mismatch> compare_series2(const Series2State& expected, const Series2State& actual);
std::optional<Mismatch> compare_series2(const Series2Tensor& expected, const Series2Tensor& actual);

}  // namespace vlat
