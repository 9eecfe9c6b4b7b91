#include "vlat/scalar.hpp"

#include <map>

namespace vlat {

namespace {

struct Cyclotomic {
    int m = 2;
    // monic Phi_m, coefficients low to high; size d+1
    std::vector<mpz_class> poly{1, 1};
    int d() const { return static_cast<int>(poly.size()) - 1; }
};

Cyclotomic& ctx() {
    static Cyclotomic c;
    return c;
}

using ZPoly = std::vector<mpz_class>;

ZPoly exact_div(ZPoly num, const ZPoly& den) {
    // den is monic
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    ZPoly q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
        mpz_class c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

ZPoly cyclotomic_poly(int m) {
    static std::map<int, ZPoly> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    ZPoly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) p = exact_div(p, cyclotomic_poly(d));
    cache[m] = p;
    return p;
}

}  // namespace

Scalar::Scalar(long num, long den) {
    if (den == 0) throw DivisionByZero();
    c0_ = mpq_class(num, den);
    c0_.canonicalize();
}

void Scalar::set_order(int m) {
    if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
    ctx().m = m;
    ctx().poly = cyclotomic_poly(m);
}

int Scalar::order() { return ctx().m; }
int Scalar::degree() { return ctx().d(); }

mpq_class Scalar::coord(int k) const {
    if (k == 0) return c0_;
    if (k - 1 < static_cast<int>(hi_.size())) return hi_[k - 1];
    return 0;
}

std::vector<mpq_class> Scalar::coords() const {
    std::vector<mpq_class> c(degree(), 0);
    c[0] = c0_;
    for (size_t i = 0; i < hi_.size(); ++i) c[i + 1] = hi_[i];
    return c;
}

Scalar Scalar::from_coords(std::vector<mpq_class> c) {
    // reduce modulo Phi_m
    const auto& p = ctx().poly;
    int d = ctx().d();
    for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
        if (c[i] == 0) continue;
        mpq_class t = c[i];
        for (int j = 0; j <= d; ++j) c[i - d + j] -= t * p[j];
    }
    Scalar s;
    s.c0_ = c.empty() ? mpq_class(0) : c[0];
    for (int i = 1; i < d && i < static_cast<int>(c.size()); ++i) s.hi_.push_back(c[i]);
    s.trim();
    return s;
}

void Scalar::trim() {
    while (!hi_.empty() && hi_.back() == 0) hi_.pop_back();
}

Scalar Scalar::zeta(long k) {
    int m = ctx().m;
    long e = ((k % m) + m) % m;
    std::vector<mpq_class> c(e + 1, 0);
    c[e] = 1;
    return from_coords(std::move(c));
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.c0_ = -r.c0_;
    for (auto& x : r.hi_) x = -x;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    c0_ += o.c0_;
    if (!o.hi_.empty()) {
        if (hi_.size() < o.hi_.size()) hi_.resize(o.hi_.size(), 0);
        for (size_t i = 0; i < o.hi_.size(); ++i) hi_[i] += o.hi_[i];
        trim();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (hi_.empty() && o.hi_.empty()) {
        c0_ *= o.c0_;
        return *this;
    }
    auto a = coords(), b = o.coords();
    std::vector<mpq_class> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    *this = from_coords(std::move(c));
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (hi_.empty()) return Scalar(mpq_class(1) / c0_);
    int d = degree();
    // columns: coordinates of this * zeta^j; solve M y = e_0
    std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d + 1, 0));
    for (int j = 0; j < d; ++j) {
        Scalar col = *this * zeta(j);
        for (int i = 0; i < d; ++i) M[i][j] = col.coord(i);
    }
    M[0][d] = 1;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        while (M[piv][c] == 0) ++piv;
        std::swap(M[piv], M[c]);
        for (int r = 0; r < d; ++r) {
            if (r == c || M[r][c] == 0) continue;
            mpq_class f = M[r][c] / M[c][c];
            for (int k = c; k <= d; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::vector<mpq_class> y(d);
    for (int i = 0; i < d; ++i) y[i] = M[i][d] / M[i][i];
    return from_coords(std::move(y));
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero();
    if (hi_.empty() && o.hi_.empty()) {
        c0_ /= o.c0_;
        return *this;
    }
    return *this *= o.inverse();
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b(*this);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::string Scalar::str() const {
    if (hi_.empty()) return c0_.get_str();
    std::string out;
    auto c = coords();
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        if (c[k] == 0) continue;
        if (!out.empty()) out += " + ";
        out += c[k].get_str();
        if (k > 0) out += "·ζ^" + std::to_string(k);
    }
    return out;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Scalar parse_term(std::string t) {
    t = strip(t);
    if (t.empty()) throw std::invalid_argument("empty scalar term");
    size_t z = t.find("ζ");
    size_t zlen = 2;
    if (z == std::string::npos) {
        z = t.find("zeta");
        zlen = 4;
    }
    if (z == std::string::npos) {
        mpq_class q(t);
        if (q.get_den() == 0) throw DivisionByZero();
        q.canonicalize();
        return Scalar(q);
    }
    std::string coef = strip(t.substr(0, z));
    std::string rest = t.substr(z + zlen);
    long k = 1;
    if (!rest.empty()) {
        if (rest[0] != '^') throw std::invalid_argument("bad scalar term: " + t);
        k = std::stol(rest.substr(1));
    }
    while (!coef.empty() && (coef.back() == '*' || coef.back() == ' ')) coef.pop_back();
    if (coef.size() >= 2 && coef.substr(coef.size() - 2) == "·") coef = coef.substr(0, coef.size() - 2);
    Scalar c(1);
    if (coef == "-") c = Scalar(-1);
    else if (!coef.empty() && coef != "+") c = parse_term(coef);
    return c * Scalar::zeta(k);
}

}  // namespace

Scalar Scalar::parse(const std::string& s) {
    Scalar r;
    size_t pos = 0;
    while (true) {
        size_t nxt = s.find(" + ", pos);
        r += parse_term(s.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos));
        if (nxt == std::string::npos) break;
        pos = nxt + 3;
    }
    return r;
}

mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial_int(long n, long k) {
    if (k < 0) return 0;
    mpz_class r;
    if (n >= 0) {
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }
    // (n choose k) = (-1)^k (k-n-1 choose k)
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k - n - 1), static_cast<unsigned long>(k));
    return (k % 2) ? mpz_class(-r) : r;
}

Scalar binomial(const Scalar& top, long k) {
    if (k < 0) return Scalar(0);
    Scalar r(1);
    for (long i = 0; i < k; ++i) r *= (top - Scalar(i)) / Scalar(i + 1);
    return r;
}

}  // namespace vlat
