#include "vlat/state_series.hpp"

#include <set>

namespace vlat {

SeriesState apply_field(const Field& A, const SeriesState& s, int hi, int pole_bound) {
    SeriesState out(s.val + pole_bound, std::min(hi, s.hi + pole_bound));
    for (auto& [e, v] : s.t) {
        if (e + pole_bound > out.hi) break;
        auto part = A(v, out.hi - e);
        for (auto& [k, w] : part.t) out.add(e + k, w);
    }
    return out;
}

SeriesTensor series_tensor(const SeriesState& a, const SeriesState& b) {
    SeriesTensor out(a.val + b.val, std::min(a.hi + b.val, b.hi + a.val));
    for (auto& [i, u] : a.t)
        for (auto& [j, v] : b.t)
            if (i + j <= out.hi) out.add(i + j, tensor(u, v));
    return out;
}

SeriesTensor series_to_tensor(const SeriesState& a) {
    SeriesTensor out(a.val, a.hi);
    for (auto& [e, v] : a.t) {
        Tensor t;
        for (auto& [m, c] : v.terms()) t.add(TensorKey{m}, c);
        out.add(e, t);
    }
    return out;
}

Series2State compose(const Field& outer, const Field& inner, const State& w, int hi_outer, int hi_inner,
                     bool outer_is_var1) {
    SeriesState in = inner(w, hi_inner);
    Series2State out;
    int oval = hi_outer + 1;
    std::vector<std::pair<int, SeriesState>> rows;
    for (auto& [e, s] : in.t) {
        rows.emplace_back(e, outer(s, hi_outer));
        oval = std::min(oval, rows.back().second.val);
    }
    if (outer_is_var1) {
        out.val1 = oval, out.hi1 = hi_outer, out.val2 = in.val, out.hi2 = in.hi;
        for (auto& [e, S] : rows)
            for (auto& [k, v] : S.t) out.add(k, e, v);
    } else {
        out.val1 = in.val, out.hi1 = in.hi, out.val2 = oval, out.hi2 = hi_outer;
        for (auto& [e, S] : rows)
            for (auto& [k, v] : S.t) out.add(e, k, v);
    }
    return out;
}

namespace {

template <class K, class F>
std::optional<Mismatch> compare_lin(const LinComb<K>& expected, const LinComb<K>& actual, const std::string& where,
                                    F key_str) {
    if (expected == actual) return std::nullopt;
    std::set<K> keys;
    for (auto& [k, c] : expected.terms()) keys.insert(k);
    for (auto& [k, c] : actual.terms()) keys.insert(k);
    for (auto& k : keys) {
        Scalar a = expected.coeff(k), b = actual.coeff(k);
        if (a != b) return Mismatch{where, key_str(k), a.str(), b.str()};
    }
    return std::nullopt;
}

std::string tensor_key_str(const TensorKey& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) s += (i ? " ⊗ " : "") + mono_str(k[i]);
    return s + ")";
}

template <class V, class Cmp>
std::optional<Mismatch> compare_one(const Series<V>& expected, const Series<V>& actual, int lo, Cmp cmp) {
    int hi = std::min(expected.hi, actual.hi);
    std::set<int> keys;
    for (auto& [e, v] : expected.t) keys.insert(e);
    for (auto& [e, v] : actual.t) keys.insert(e);
    for (int e : keys) {
        if (e < lo || e > hi) continue;
        if (auto m = cmp(expected.coeff(e), actual.coeff(e), "x^" + std::to_string(e))) return m;
    }
    return std::nullopt;
}

template <class V, class Cmp>
std::optional<Mismatch> compare_two(const Series2<V>& expected, const Series2<V>& actual, Cmp cmp) {
    int h1 = std::min(expected.hi1, actual.hi1), h2 = std::min(expected.hi2, actual.hi2);
    std::set<std::pair<int, int>> keys;
    for (auto& [k, v] : expected.t) keys.insert(k);
    for (auto& [k, v] : actual.t) keys.insert(k);
    for (auto& k : keys) {
        if (k.first > h1 || k.second > h2) continue;
        std::string where = "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
        if (auto m = cmp(expected.coeff(k.first, k.second), actual.coeff(k.first, k.second), where)) return m;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Mismatch> compare_states(const State& expected, const State& actual, const std::string& where) {
    return compare_lin(expected, actual, where, mono_str);
}

std::optional<Mismatch> compare_tensors(const Tensor& expected, const Tensor& actual, const std::string& where) {
    return compare_lin(expected, actual, where, tensor_key_str);
}

std::optional<Mismatch> compare_series(const SeriesState& expected, const SeriesState& actual, int lo) {
    return compare_one(expected, actual, lo, compare_states);
}

std::optional<Mismatch> compare_series(const SeriesTensor& expected, const SeriesTensor& actual, int lo) {
    return compare_one(expected, actual, lo, compare_tensors);
}

std::optional<Mismatch> compare_series2(const Series2State& expected, const Series2State& actual) {
    return compare_two(expected, actual, compare_states);
}

std::optional<Mismatch> compare_series2(const Series2Tensor& expected, const Series2Tensor& actual) {
    return compare_two(expected, actual, compare_tensors);
}

}  // namespace vlat
