#include "vlat/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vlat {

namespace {

// Window of a product in one variable, lo read as a valuation bound. A
// variable without a valuation bound is only usable when fully known.
Window mul_window(const Window& f, const Window& g) {
    if (f.lo == kNegInf || g.lo == kNegInf) {
        if (f.hi == kPosInf && g.hi == kPosInf) return Window{};
        return Window{0, -1};
    }
    Window r;
    r.lo = sat_add(f.lo, g.lo);
    r.hi = std::min(sat_add(f.lo, g.hi), sat_add(f.hi, g.lo));
    return r;
}

std::string term_str(const Scalar& c, const std::string& mono) {
    std::string cs = c.str();
    if (mono.empty()) return cs;
    if (cs == "1") return mono;
    if (cs == "-1") return "-" + mono;
    if (!c.is_rational()) cs = "(" + cs + ")";
    return cs + "*" + mono;
}

std::string pow_str(char v, int e) {
    if (e == 0) return "";
    std::string s(1, v);
    if (v >= '0' && v <= '9') s = std::string("x") + v;
    if (e == 1) return s;
    return s + "^" + std::to_string(e);
}

}  // namespace

LaurentSeries LaurentSeries::monomial(const Scalar& c, int e, Window w, char var) {
    LaurentSeries s(w, var);
    s.set(e, c);
    return s;
}

LaurentSeries LaurentSeries::polynomial(const std::map<int, Scalar>& terms, char var) {
    LaurentSeries s(Window{}, var);
    for (auto& [e, c] : terms) s.set(e, c);
    s.w_.lo = s.t_.empty() ? 0 : s.t_.begin()->first;
    return s;
}

Scalar LaurentSeries::coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Scalar(0) : it->second;
}

void LaurentSeries::set(int e, const Scalar& c) {
    if (!w_.contains(e)) return;
    if (c.is_zero()) t_.erase(e);
    else t_[e] = c;
}

void LaurentSeries::add_to(int e, const Scalar& c) {
    if (!w_.contains(e) || c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

int LaurentSeries::min_exponent() const { return t_.empty() ? kPosInf : t_.begin()->first; }

LaurentSeries LaurentSeries::truncated(int hi) const { return with_window(Window{w_.lo, std::min(hi, w_.hi)}); }

LaurentSeries LaurentSeries::with_window(Window w) const {
    LaurentSeries r(w, var_);
    for (auto& [e, c] : t_)
        if (w.contains(e)) r.t_.emplace(e, c);
    return r;
}

LaurentSeries LaurentSeries::operator-() const { return scaled(Scalar(-1)); }

LaurentSeries LaurentSeries::scaled(const Scalar& c) const {
    LaurentSeries r(w_, var_);
    if (c.is_zero()) return r;
    for (auto& [e, v] : t_) r.t_.emplace(e, v * c);
    return r;
}

LaurentSeries LaurentSeries::dilated(const Scalar& c) const {
    LaurentSeries r(w_, var_);
    for (auto& [e, v] : t_) r.set(e, v * c.pow(e));
    return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
    LaurentSeries r(Window{sat_add(w_.lo, k), sat_add(w_.hi, k)}, var_);
    for (auto& [e, v] : t_) r.t_.emplace(e + k, v);
    return r;
}

std::string LaurentSeries::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto& [e, c] : t_) {
        std::string t = term_str(c, pow_str(var_, e));
        if (out.empty()) out = t;
        else if (t[0] == '-') out += " - " + t.substr(1);
        else out += " + " + t;
    }
    return out;
}

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g) {
    if (f.var() != g.var()) throw std::invalid_argument("variable tags differ");
    Window w{std::max(f.window().lo, g.window().lo), std::min(f.window().hi, g.window().hi)};
    if (w.empty()) throw EmptyWindow();
    LaurentSeries r(w, f.var());
    for (auto& [e, c] : f.terms()) r.add_to(e, c);
    for (auto& [e, c] : g.terms()) r.add_to(e, c);
    return r;
}

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g) {
    if (f.var() != g.var()) throw std::invalid_argument("variable tags differ");
    Window w = mul_window(f.window(), g.window());
    if (w.empty()) throw EmptyWindow();
    LaurentSeries r(w, f.var());
    for (auto& [a, ca] : f.terms())
        for (auto& [b, cb] : g.terms()) {
            int e = a + b;
            if (e > w.hi) break;
            r.add_to(e, ca * cb);
        }
    return r;
}

LaurentSeries series_derive(const LaurentSeries& f, int k) {
    if (k == 0) return f;
    Window w{sat_add(f.window().lo, -k), sat_add(f.window().hi, -k)};
    LaurentSeries r(w, f.var());
    for (auto& [e, c] : f.terms()) {
        Scalar m(1);
        for (int i = 0; i < k; ++i) m *= Scalar(e - i);
        r.add_to(e - k, c * m);
    }
    return r;
}

LaurentSeries series_exp(const LaurentSeries& f) {
    for (auto& [e, c] : f.terms())
        if (e <= 0) throw NotFormallyNilpotent();
    Window w{0, f.window().hi};
    if (f.is_zero()) return LaurentSeries::monomial(Scalar(1), 0, w, f.var());
    if (w.hi >= kPosInf) throw std::invalid_argument("exp of an untruncated series needs a finite window");
    // n E_n = sum_k k f_k E_{n-k}
    std::vector<Scalar> E(w.hi + 1);
    E[0] = 1;
    for (int n = 1; n <= w.hi; ++n) {
        Scalar s;
        for (auto& [k, c] : f.terms()) {
            if (k > n) break;
            if (!E[n - k].is_zero()) s += Scalar(k) * c * E[n - k];
        }
        E[n] = s / Scalar(n);
    }
    LaurentSeries r(w, f.var());
    for (int n = 0; n <= w.hi; ++n) r.set(n, E[n]);
    return r;
}

bool series_agree(const LaurentSeries& f, const LaurentSeries& g) {
    Window w{std::max(f.window().lo, g.window().lo), std::min(f.window().hi, g.window().hi)};
    for (auto& [e, c] : f.terms())
        if (w.contains(e) && g.coeff(e) != c) return false;
    for (auto& [e, c] : g.terms())
        if (w.contains(e) && f.coeff(e) != c) return false;
    return true;
}

Scalar BiSeries::coeff(int e1, int e2) const {
    auto it = t_.find({e1, e2});
    return it == t_.end() ? Scalar(0) : it->second;
}

void BiSeries::add_to(int e1, int e2, const Scalar& c) {
    if (!in_window(e1, e2) || c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace({e1, e2}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

std::string BiSeries::str() const {
    if (t_.empty()) return "0";
    std::string out;
    // print in order of the second variable, then the first
    std::vector<std::pair<std::pair<int, int>, Scalar>> v(t_.begin(), t_.end());
    std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
        return std::make_pair(a.first.second, a.first.first) < std::make_pair(b.first.second, b.first.first);
    });
    for (auto& [e, c] : v) {
        std::string m = pow_str(v1_, e.first);
        std::string m2 = pow_str(v2_, e.second);
        if (!m.empty() && !m2.empty()) m += "*";
        m += m2;
        std::string t = term_str(c, m);
        if (out.empty()) out = t;
        else if (t[0] == '-') out += " - " + t.substr(1);
        else out += " + " + t;
    }
    return out;
}

BiSeries iota_binom(int n, Direction dir, int order) {
    if (n >= 0) {
        BiSeries r(Window{0, kPosInf}, Window{0, kPosInf}, Direction::None);
        for (int k = 0; k <= n; ++k) {
            Scalar c(binomial_int(n, k));
            if ((n - k) % 2) c = -c;
            r.add_to(k, n - k, c);
        }
        return r;
    }
    if (dir == Direction::X1Major) {
        BiSeries r(Window{}, Window{0, order}, Direction::X1Major);
        for (int k = 0; k <= order; ++k) {
            Scalar c(binomial_int(n, k));
            if (k % 2) c = -c;
            r.add_to(n - k, k, c);
        }
        return r;
    }
    if (dir == Direction::X2Major) {
        BiSeries r(Window{0, order}, Window{}, Direction::X2Major);
        for (int k = 0; k <= order; ++k) {
            Scalar c(binomial_int(n, k));
            if ((n - k) % 2) c = -c;
            r.add_to(k, n - k, c);
        }
        return r;
    }
    throw UnsupportedExpansionDirection();
}

BiSeries subst_affine(const BiSeries& f, int order) {
    if (f.direction() == Direction::X2Major) throw UnsupportedExpansionDirection();
    const Window &w1 = f.w1(), &w2 = f.w2();
    // both lower bounds must be valuation bounds, otherwise the sums diverge
    if (w1.lo == kNegInf || w2.lo == kNegInf) throw UnsupportedExpansionDirection();
    Window out2;
    out2.lo = sat_add(sat_add(w1.lo, w2.lo), -order);
    out2.hi = sat_add(std::min(sat_add(w2.hi, w1.lo), sat_add(w1.hi, w2.lo)), -order);
    if (out2.empty()) throw EmptyWindow();
    BiSeries r(Window{0, order}, out2, Direction::None, '0', '2');
    for (auto& [e, c] : f.terms()) {
        auto [a, b] = e;
        int kmax = a >= 0 ? std::min(a, order) : order;
        for (int k = 0; k <= kmax; ++k) r.add_to(k, a - k + b, c * Scalar(binomial_int(a, k)));
    }
    return r;
}

BiSeries bi_mul(const BiSeries& f, const BiSeries& g) {
    Window w1 = mul_window(f.w1(), g.w1());
    Window w2 = mul_window(f.w2(), g.w2());
    if (w1.empty() || w2.empty()) throw EmptyWindow();
    Direction d = f.direction() == Direction::None ? g.direction() : f.direction();
    if (g.direction() != Direction::None && g.direction() != d) throw UnsupportedExpansionDirection();
    BiSeries r(w1, w2, d, f.var1(), f.var2());
    for (auto& [ea, ca] : f.terms())
        for (auto& [eb, cb] : g.terms()) r.add_to(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
}

void poly_add(Poly& p, int e, const Scalar& c) {
    if (c.is_zero()) return;
    auto& slot = p[e];
    slot += c;
    if (slot.is_zero()) p.erase(e);
}

Poly poly_sum(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [e, c] : b) poly_add(r, e, c);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [i, c] : a)
        for (auto& [j, d] : b) poly_add(r, i + j, c * d);
    return r;
}

Poly poly_scaled(const Poly& a, const Scalar& c) {
    Poly r;
    for (auto& [e, v] : a) poly_add(r, e, v * c);
    return r;
}

Poly poly_derive(const Poly& p, int k) {
    Poly r;
    for (auto& [e, c] : p) {
        Scalar f(1);
        for (int i = 0; i < k; ++i) f *= Scalar(e - i);
        poly_add(r, e - k, c * f);
    }
    return r;
}

Poly poly_dilate(const Poly& p, const Scalar& c) {
    Poly r;
    for (auto& [e, a] : p) poly_add(r, e, a * c.pow(e));
    return r;
}

std::string poly_str(const Poly& p, char var) {
    if (p.empty()) return "0";
    std::string out;
    for (auto& [e, c] : p) {
        std::string t = term_str(c, pow_str(var, e));
        if (out.empty()) out = t;
        else if (t[0] == '-') out += " - " + t.substr(1);
        else out += " + " + t;
    }
    return out;
}

Poly poly_parse(const std::string& text, char var) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    Poly r;
    size_t i = 0;
    auto bad = [&] { return std::invalid_argument("cannot parse polynomial '" + text + "'"); };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
        size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        Scalar c(1);
        bool has_coeff = j > i;
        if (has_coeff) c = Scalar(mpq_class(s.substr(i, j - i)));
        i = j;
        if (i < s.size() && s[i] == '*') ++i;
        int e = 0;
        bool has_var = i < s.size() && s[i] == var;
        if (!has_coeff && !has_var) throw bad();
        if (has_var) {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t k = i;
                if (k < s.size() && s[k] == '-') ++k;
                size_t d = k;
                while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
                if (d == k) throw bad();
                e = std::stoi(s.substr(i, d - i));
                i = d;
            }
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw bad();
        poly_add(r, e, sign < 0 ? -c : c);
    }
    return r;
}

}  // namespace vlat
