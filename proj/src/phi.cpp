#include "vlat/phi.hpp"

#include <algorithm>

namespace vlat {

namespace {

Poly constant(const Scalar& c) {
    Poly r;
    poly_add(r, 0, c);
    return r;
}

Poly shift(const Poly& p, int k) {
    Poly r;
    for (auto& [e, c] : p) r.emplace(e + k, c);
    return r;
}

std::optional<std::pair<int, Scalar>> as_monomial(const Poly& p) {
    if (p.size() != 1) return std::nullopt;
    return *p.begin();
}

Poly2 to_poly2(const Poly& p, Slot slot) {
    Poly2 r;
    for (auto& [e, c] : p) r.emplace(slot == Slot::X1 ? std::pair{e, 0} : std::pair{0, e}, c);
    return r;
}

void p2_add(Poly2& p, std::pair<int, int> e, const Scalar& c) {
    if (c.is_zero()) return;
    auto& slot = p[e];
    slot += c;
    if (slot.is_zero()) p.erase(e);
}

Poly2 p2_sum(const Poly2& a, const Poly2& b, const Scalar& cb = Scalar(1)) {
    Poly2 r = a;
    for (auto& [e, c] : b) p2_add(r, e, c * cb);
    return r;
}

Poly2 p2_mul(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (auto& [i, c] : a)
        for (auto& [j, d] : b) p2_add(r, {i.first + j.first, i.second + j.second}, c * d);
    return r;
}

Poly2 p2_pow(const Poly2& a, int k) {
    Poly2 r{{{0, 0}, Scalar(1)}};
    for (int i = 0; i < k; ++i) r = p2_mul(r, a);
    return r;
}

Poly2 p2_derive(const Poly2& a, Slot slot) {
    Poly2 r;
    for (auto& [e, c] : a) {
        if (slot == Slot::X1) p2_add(r, {e.first - 1, e.second}, c * Scalar(e.first));
        else p2_add(r, {e.first, e.second - 1}, c * Scalar(e.second));
    }
    return r;
}

// x1 - c x2
Poly2 linear(const Scalar& c) {
    Poly2 r;
    p2_add(r, {1, 0}, Scalar(1));
    p2_add(r, {0, 1}, -c);
    return r;
}

Poly2 den_poly(const std::vector<std::pair<Scalar, int>>& den) {
    Poly2 r{{{0, 0}, Scalar(1)}};
    for (auto& [c, k] : den) r = p2_mul(r, p2_pow(linear(c), k));
    return r;
}

std::string mono2_str(std::pair<int, int> e) {
    std::string s;
    auto one = [&](const char* v, int k) {
        if (k == 0) return;
        if (!s.empty()) s += "*";
        s += v;
        if (k != 1) s += "^" + std::to_string(k);
    };
    one("x1", e.first);
    one("x2", e.second);
    return s.empty() ? "1" : s;
}

std::string p2_str(const Poly2& p) {
    if (p.empty()) return "0";
    std::string out;
    for (auto& [e, c] : p) {
        std::string m = mono2_str(e), cs = c.str();
        std::string t = m == "1" ? cs : cs == "1" ? m : cs == "-1" ? "-" + m : cs + "*" + m;
        if (out.empty()) out = t;
        else if (t[0] == '-') out += " - " + t.substr(1);
        else out += " + " + t;
    }
    return out;
}

int unit_den_order(const BivarFunction& F) {
    int m = 0;
    for (auto& [c, k] : F.den)
        if (c == Scalar(1)) m += k;
    return m;
}

Associate ensure_order(const Associate& a, int order) {
    return a.zorder() >= order ? a : associate_expand(a.p, order);
}

XZSeries exact_poly(const Poly& p, int hi) {
    XZSeries s;
    s.hi = hi;
    s.add(0, p);
    return s;
}

XZSeries xz_sum(const XZSeries& a, const XZSeries& b, const Scalar& cb) {
    XZSeries r;
    r.hi = std::min(a.hi, b.hi);
    for (auto& [n, p] : a.t)
        if (n <= r.hi) r.add(n, p);
    for (auto& [n, p] : b.t)
        if (n <= r.hi) r.add(n, poly_scaled(p, cb));
    return r;
}

// z-series with coefficients in Laurent polynomials of (x1, x2)
struct P2Z {
    std::map<int, Poly2> t;
    int hi = 0;
};

P2Z p2z_from(const XZSeries& s, Slot slot) {
    P2Z r;
    r.hi = s.hi;
    for (auto& [n, p] : s.t) r.t[n] = to_poly2(p, slot);
    return r;
}

P2Z p2z_mul(const P2Z& a, const P2Z& b) {
    P2Z r;
    int av = a.t.empty() ? a.hi + 1 : a.t.begin()->first;
    int bv = b.t.empty() ? b.hi + 1 : b.t.begin()->first;
    r.hi = std::min(sat_add(a.hi, bv), sat_add(b.hi, av));
    for (auto& [i, p] : a.t)
        for (auto& [j, q] : b.t) {
            if (i + j > r.hi) continue;
            auto& slot = r.t[i + j];
            slot = p2_sum(slot, p2_mul(p, q));
            if (slot.empty()) r.t.erase(i + j);
        }
    return r;
}

// F's numerator and denominator after x_slot -> phi(x_slot, sign z)
std::pair<P2Z, P2Z> substitute_keep(const BivarFunction& F, Slot slot, const Associate& a, int sign, int order) {
    XZSeries phi = associate_series(ensure_order(a, order), sign);
    phi.hi = order;
    for (auto it = phi.t.begin(); it != phi.t.end();)
        it = it->first > order ? phi.t.erase(it) : std::next(it);
    std::map<int, P2Z> pows;
    auto power = [&](int e) -> const P2Z& {
        auto it = pows.find(e);
        if (it == pows.end()) it = pows.emplace(e, p2z_from(xz_pow(phi, e), slot)).first;
        return it->second;
    };
    Slot other = slot == Slot::X1 ? Slot::X2 : Slot::X1;
    P2Z num;
    num.hi = order;
    for (auto& [e, c] : F.num) {
        int es = slot == Slot::X1 ? e.first : e.second;
        int eo = slot == Slot::X1 ? e.second : e.first;
        Poly2 fixed = to_poly2(Poly{{eo, c}}, other);
        for (auto& [n, q] : power(es).t) {
            if (n > order) continue;
            auto& s = num.t[n];
            s = p2_sum(s, p2_mul(q, fixed));
            if (s.empty()) num.t.erase(n);
        }
    }
    P2Z den;
    den.hi = order;
    den.t[0] = Poly2{{{0, 0}, Scalar(1)}};
    for (auto& [c, k] : F.den) {
        // x1 - c x2 with one side substituted
        P2Z lin = power(1);
        if (slot == Slot::X1) {
            p2_add(lin.t[0], {0, 1}, -c);
        } else {
            for (auto& [n, q] : lin.t) q = p2_sum(Poly2{}, q, -c);
            p2_add(lin.t[0], {1, 0}, Scalar(1));
        }
        for (int i = 0; i < k; ++i) den = p2z_mul(den, lin);
    }
    return {num, den};
}

ZZSeries zz_from(const XZSeries& s, int var, int N) {
    ZZSeries r;
    r.N = N;
    for (auto& [n, p] : s.t)
        if (n <= N) r.add(var == 1 ? n : 0, var == 1 ? 0 : n, p);
    return r;
}

ZZSeries zz_sum(const ZZSeries& a, const ZZSeries& b, const Scalar& cb) {
    ZZSeries r = a;
    r.N = std::min(a.N, b.N);
    for (auto& [e, p] : b.t) r.add(e.first, e.second, poly_scaled(p, cb));
    for (auto it = r.t.begin(); it != r.t.end();)
        it = it->first.first + it->first.second > r.N ? r.t.erase(it) : std::next(it);
    return r;
}

}  // namespace

Associate associate_expand(const Poly& p, int zorder) {
    if (p.empty()) throw ZeroP();
    Associate a;
    a.p = p;
    Poly cur{{1, Scalar(1)}};
    a.coeff.push_back(cur);
    for (int n = 1; n <= zorder; ++n) {
        cur = poly_scaled(poly_mul(p, poly_derive(cur, 1)), Scalar(1, n));
        a.coeff.push_back(cur);
    }
    return a;
}

Associate phi_r_closed(int r, int zorder) {
    Associate a;
    a.p = Poly{{r + 1, Scalar(1)}};
    if (r == 0) {
        for (int n = 0; n <= zorder; ++n) a.coeff.push_back(Poly{{1, Scalar(mpq_class(1, factorial(n)))}});
        return a;
    }
    Scalar top = Scalar(-1) / Scalar(r);
    for (int n = 0; n <= zorder; ++n) {
        Poly c;
        poly_add(c, 1 + r * n, binomial(top, n) * Scalar(-r).pow(n));
        a.coeff.push_back(c);
    }
    return a;
}

Poly XZSeries::coeff(int n) const {
    auto it = t.find(n);
    return it == t.end() ? Poly{} : it->second;
}

void XZSeries::add(int n, const Poly& c) {
    if (c.empty()) return;
    auto& slot = t[n];
    slot = poly_sum(slot, c);
    if (slot.empty()) t.erase(n);
}

XZSeries xz_mul(const XZSeries& a, const XZSeries& b) {
    XZSeries r;
    r.hi = std::min(sat_add(a.hi, b.val()), sat_add(b.hi, a.val()));
    for (auto& [i, p] : a.t)
        for (auto& [j, q] : b.t)
            if (i + j <= r.hi) r.add(i + j, poly_mul(p, q));
    return r;
}

XZSeries xz_pow(const XZSeries& a, int k) {
    if (k == 0) return exact_poly(constant(Scalar(1)), kPosInf);
    if (k > 0) {
        XZSeries r = a;
        for (int i = 1; i < k; ++i) r = xz_mul(r, a);
        return r;
    }
    if (a.t.empty()) throw DivisionByZero();
    auto [m, lead] = *a.t.begin();
    auto mono = as_monomial(lead);
    if (!mono) throw UnsupportedExpansionDirection();
    auto [e, c] = *mono;
    Scalar cinv = c.inverse();
    XZSeries T;
    T.hi = a.hi - m;
    for (auto& [n, p] : a.t)
        if (n > m) T.add(n - m, poly_scaled(shift(p, -e), cinv));
    XZSeries sum = exact_poly(constant(Scalar(1)), T.hi);
    XZSeries Tj = sum;
    for (int j = 1; j <= T.hi; ++j) {
        Tj = xz_mul(Tj, T);
        Tj.hi = T.hi;
        sum = xz_sum(sum, Tj, Scalar(binomial_int(k, j)));
    }
    XZSeries r;
    r.hi = sat_add(sum.hi, m * k);
    Scalar ck = c.pow(k);
    for (auto& [n, p] : sum.t) r.add(n + m * k, poly_scaled(shift(p, e * k), ck));
    return r;
}

XZSeries associate_series(const Associate& a, int sign) {
    XZSeries s;
    s.hi = a.zorder();
    for (int n = 0; n <= a.zorder(); ++n) s.add(n, poly_scaled(a.coeff[n], Scalar(sign).pow(n)));
    return s;
}

Poly ZZSeries::coeff(int i, int j) const {
    auto it = t.find({i, j});
    return it == t.end() ? Poly{} : it->second;
}

void ZZSeries::add(int i, int j, const Poly& c) {
    if (c.empty() || i + j > N) return;
    auto& slot = t[{i, j}];
    slot = poly_sum(slot, c);
    if (slot.empty()) t.erase({i, j});
}

ZZSeries zz_mul(const ZZSeries& a, const ZZSeries& b) {
    ZZSeries r;
    r.N = std::min(a.N, b.N);
    for (auto& [i, p] : a.t)
        for (auto& [j, q] : b.t) r.add(i.first + j.first, i.second + j.second, poly_mul(p, q));
    return r;
}

ZZSeries zz_pow(const ZZSeries& a, int k) {
    ZZSeries one;
    one.N = a.N;
    one.add(0, 0, constant(Scalar(1)));
    if (k >= 0) {
        ZZSeries r = one;
        for (int i = 0; i < k; ++i) r = zz_mul(r, a);
        return r;
    }
    auto mono = as_monomial(a.coeff(0, 0));
    if (!mono) throw UnsupportedExpansionDirection();
    auto [e, c] = *mono;
    Scalar cinv = c.inverse();
    ZZSeries T;
    T.N = a.N;
    for (auto& [ij, p] : a.t)
        if (ij != std::pair{0, 0}) T.add(ij.first, ij.second, poly_scaled(shift(p, -e), cinv));
    ZZSeries sum = one, Tj = one;
    for (int j = 1; j <= a.N; ++j) {
        Tj = zz_mul(Tj, T);
        sum = zz_sum(sum, Tj, Scalar(binomial_int(k, j)));
    }
    ZZSeries r;
    r.N = a.N;
    Scalar ck = c.pow(k);
    for (auto& [ij, p] : sum.t) r.add(ij.first, ij.second, poly_scaled(shift(p, e * k), ck));
    return r;
}

std::optional<std::string> associate_law_violation(const Associate& a0, int order) {
    Associate a = ensure_order(a0, order);
    if (a.coeff[0] != Poly{{1, Scalar(1)}}) return "phi(x,0) = " + poly_str(a.coeff[0]);
    XZSeries phi_y = associate_series(a, 1);
    phi_y.hi = order;
    std::map<int, XZSeries> pows;
    ZZSeries lhs;
    lhs.N = order;
    // phi(phi(x,y), z) = sum_n z^n coeff[n](phi(x,y)); y is the first variable
    for (int n = 0; n <= order; ++n)
        for (auto& [e, c] : a.coeff[n]) {
            auto it = pows.find(e);
            if (it == pows.end()) it = pows.emplace(e, xz_pow(phi_y, e)).first;
            for (auto& [m, q] : it->second.t) lhs.add(m, n, poly_scaled(q, c));
        }
    ZZSeries rhs;
    rhs.N = order;
    for (int n = 0; n <= order; ++n)
        for (int i = 0; i <= n; ++i) rhs.add(i, n - i, poly_scaled(a.coeff[n], Scalar(binomial_int(n, i))));
    for (int i = 0; i <= order; ++i)
        for (int j = 0; i + j <= order; ++j)
            if (lhs.coeff(i, j) != rhs.coeff(i, j))
                return "y^" + std::to_string(i) + " z^" + std::to_string(j) + ": expected " +
                       poly_str(rhs.coeff(i, j)) + ", got " + poly_str(lhs.coeff(i, j));
    return std::nullopt;
}

std::optional<std::string> associate_mismatch(const Associate& a, const Associate& b) {
    int n = std::min(a.zorder(), b.zorder());
    for (int i = 0; i <= n; ++i)
        if (a.coeff[i] != b.coeff[i])
            return "z^" + std::to_string(i) + ": " + poly_str(a.coeff[i]) + " vs " + poly_str(b.coeff[i]);
    return std::nullopt;
}

BivarFunction BivarFunction::monomial(const Scalar& c, int e1, int e2) {
    BivarFunction F;
    p2_add(F.num, {e1, e2}, c);
    return F;
}

BivarFunction BivarFunction::inverse_power(const Scalar& c, int k) {
    BivarFunction F = monomial(Scalar(1), 0, 0);
    if (k > 0) F.den.emplace_back(c, k);
    return F;
}

std::string BivarFunction::str() const {
    std::string s = p2_str(num);
    if (den.empty()) return s;
    s = "(" + s + ")";
    for (auto& [c, k] : den) {
        std::string cs = c.str();
        std::string lin = c == Scalar(1) ? "x1 - x2" : c == Scalar(-1) ? "x1 + x2" : "x1 - " + cs + "*x2";
        s += " / (" + lin + ")" + (k == 1 ? "" : "^" + std::to_string(k));
    }
    return s;
}

namespace {

// numerator of F over the given denominator exponents (each at least F's)
Poly2 lift(const BivarFunction& F, const std::vector<std::pair<Scalar, int>>& den) {
    Poly2 n = F.num;
    for (auto& [c, k] : den) {
        int have = 0;
        for (auto& [d, j] : F.den)
            if (d == c) have = j;
        n = p2_mul(n, p2_pow(linear(c), k - have));
    }
    return n;
}

std::vector<std::pair<Scalar, int>> merge_den(const BivarFunction& a, const BivarFunction& b, bool add_exponents) {
    auto den = a.den;
    for (auto& [c, k] : b.den) {
        auto it = std::find_if(den.begin(), den.end(), [&](auto& d) { return d.first == c; });
        if (it == den.end()) den.emplace_back(c, k);
        else it->second = add_exponents ? it->second + k : std::max(it->second, k);
    }
    return den;
}

}  // namespace

BivarFunction bivar_add(const BivarFunction& a, const BivarFunction& b) {
    BivarFunction r;
    r.den = merge_den(a, b, false);
    r.num = p2_sum(lift(a, r.den), lift(b, r.den));
    return r;
}

BivarFunction bivar_mul(const BivarFunction& a, const BivarFunction& b) {
    BivarFunction r;
    r.den = merge_den(a, b, true);
    r.num = p2_mul(a.num, b.num);
    return r;
}

BivarFunction bivar_scaled(const BivarFunction& a, const Scalar& c) {
    BivarFunction r = a;
    r.num = p2_sum(Poly2{}, a.num, c);
    return r;
}

BivarFunction bivar_p_d1(const BivarFunction& F, const Poly& p) {
    Poly2 D = den_poly(F.den);
    BivarFunction r;
    r.num = p2_mul(to_poly2(p, Slot::X1),
                   p2_sum(p2_mul(p2_derive(F.num, Slot::X1), D), p2_mul(F.num, p2_derive(D, Slot::X1)), Scalar(-1)));
    for (auto& [c, k] : F.den) r.den.emplace_back(c, 2 * k);
    return r;
}

BivarFunction bivar_dilate(const BivarFunction& F, const Scalar& l) {
    BivarFunction r;
    r.den = F.den;
    int total = 0;
    for (auto& [c, k] : F.den) total += k;
    for (auto& [e, c] : F.num) p2_add(r.num, e, c * l.pow(e.first + e.second - total));
    return r;
}

BivarFunction F_r(int r) {
    if (r == 0) return BivarFunction::monomial(Scalar(1), 1, -1);
    Scalar c = Scalar(-1) / Scalar(r);
    return bivar_add(BivarFunction::monomial(c, -r, 0), BivarFunction::monomial(-c, 0, -r));
}

LaurentSeries f_r(int r, int order) {
    LaurentSeries s(Window{0, order}, 'z');
    if (r == 0) {
        for (int n = 0; n <= order; ++n) s.set(n, Scalar(mpq_class(1, factorial(n))));
    } else if (order >= 1) {
        s.set(1, Scalar(1));
    }
    return s;
}

XZSeries subst_phi(const BivarFunction& F, Slot slot, const Associate& a, int sign, int order) {
    int m = unit_den_order(F);
    int work = order + 2 * m;
    XZSeries phi = associate_series(ensure_order(a, work), sign);
    phi.hi = work;
    for (auto it = phi.t.begin(); it != phi.t.end();)
        it = it->first > work ? phi.t.erase(it) : std::next(it);
    XZSeries x = exact_poly(Poly{{1, Scalar(1)}}, kPosInf);
    std::map<int, XZSeries> pows;
    auto power = [&](int e) -> const XZSeries& {
        auto it = pows.find(e);
        if (it == pows.end()) it = pows.emplace(e, xz_pow(phi, e)).first;
        return it->second;
    };
    XZSeries num;
    num.hi = work;
    for (auto& [e, c] : F.num) {
        int es = slot == Slot::X1 ? e.first : e.second;
        int eo = slot == Slot::X1 ? e.second : e.first;
        for (auto& [n, q] : power(es).t)
            if (n <= work) num.add(n, poly_scaled(shift(q, eo), c));
    }
    XZSeries den = exact_poly(constant(Scalar(1)), kPosInf);
    for (auto& [c, k] : F.den) {
        XZSeries lin = slot == Slot::X1 ? xz_sum(phi, x, -c) : xz_sum(x, phi, -c);
        for (int i = 0; i < k; ++i) den = xz_mul(den, lin);
    }
    XZSeries r = F.den.empty() ? num : xz_mul(num, xz_pow(den, -1));
    XZSeries out;
    out.hi = std::min(order, r.hi);
    for (auto& [n, p] : r.t)
        if (n <= out.hi) out.add(n, p);
    return out;
}

MemberReport cphi_member(const BivarFunction& F, const Associate& a) {
    Poly2 D = den_poly(F.den);
    auto part = [&](Slot s) {
        Poly2 q = p2_sum(p2_mul(p2_derive(F.num, s), D), p2_mul(F.num, p2_derive(D, s)), Scalar(-1));
        return p2_mul(to_poly2(a.p, s), q);
    };
    Poly2 E = p2_sum(part(Slot::X1), part(Slot::X2));
    MemberReport rep;
    if (!E.empty()) {
        rep.member = false;
        rep.offending = p2_str(Poly2{*E.begin()});
    }
    return rep;
}

LaurentSeries pi_phi(const BivarFunction& F, const Associate& a, int order) {
    XZSeries s = subst_phi(F, Slot::X1, a, 1, order);
    int lo = -unit_den_order(F);
    if (order < lo) throw EmptyWindow();
    LaurentSeries out(Window{lo, s.hi}, 'z');
    for (auto& [n, p] : s.t) {
        for (auto& [e, c] : p)
            if (e != 0) throw NotXIndependent(n, e, c);
        out.set(n, p.begin()->second);
    }
    return out;
}

std::optional<std::string> pi_phi_two_variable_violation(const BivarFunction& F, const Associate& a0, int order) {
    int K1 = unit_den_order(F);
    int N = order;
    Associate a = ensure_order(a0, N + 1);
    ZZSeries phi1 = zz_from(associate_series(a, 1), 1, N), phi2 = zz_from(associate_series(a, 1), 2, N);
    std::map<int, ZZSeries> p1, p2;
    auto power = [&](std::map<int, ZZSeries>& cache, const ZZSeries& s, int e) -> const ZZSeries& {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, zz_pow(s, e)).first;
        return it->second;
    };
    ZZSeries G;
    G.N = N;
    for (auto& [e, c] : F.num) {
        ZZSeries t = zz_mul(power(p1, phi1, e.first), power(p2, phi2, e.second));
        for (auto& [ij, q] : t.t) G.add(ij.first, ij.second, poly_scaled(q, c));
    }
    for (auto& [c, k] : F.den) {
        if (c == Scalar(1)) continue;
        G = zz_mul(G, zz_pow(zz_sum(phi1, phi2, -c), -k));
    }
    if (K1 > 0) {
        // (phi(x,z1) - phi(x,z2)) / (z1 - z2)
        ZZSeries Q;
        Q.N = N;
        for (int n = 1; n <= N + 1; ++n)
            for (int i = 0; i < n; ++i) Q.add(i, n - 1 - i, a.coeff[n]);
        G = zz_mul(G, zz_pow(Q, -K1));
    }
    LaurentSeries f = pi_phi(F, a, N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) {
            int n = i + j;
            Scalar g = f.coeff(n - K1) * Scalar(binomial_int(n, i)) * Scalar(j % 2 ? -1 : 1);
            Poly expected = constant(g);
            if (G.coeff(i, j) != expected)
                return "z1^" + std::to_string(i) + " z2^" + std::to_string(j) + ": expected " + poly_str(expected) +
                       ", got " + poly_str(G.coeff(i, j));
        }
    return std::nullopt;
}

std::optional<std::string> two_sided_violation(const BivarFunction& F, const Associate& a, int order) {
    auto [n1, d1] = substitute_keep(F, Slot::X1, a, 1, order);
    auto [n2, d2] = substitute_keep(F, Slot::X2, a, -1, order);
    P2Z lhs = p2z_mul(n1, d2), rhs = p2z_mul(n2, d1);
    int hi = std::min(lhs.hi, rhs.hi);
    for (int n = 0; n <= hi; ++n) {
        Poly2 l = lhs.t.count(n) ? lhs.t[n] : Poly2{}, r = rhs.t.count(n) ? rhs.t[n] : Poly2{};
        if (l != r) return "z^" + std::to_string(n) + ": " + p2_str(l) + " vs " + p2_str(r);
    }
    return std::nullopt;
}

}  // namespace vlat
