#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace vlat {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("DivisionByZero") {}
};

// Element of Q(zeta_m) in the power basis zeta^0 .. zeta^{phi(m)-1}.
// The order m is process-wide; set it before creating non-rational values.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : c0_(v) {}
    Scalar(int v) : c0_(v) {}
    Scalar(mpq_class v) : c0_(std::move(v)) { c0_.canonicalize(); }
    Scalar(long num, long den);

    static void set_order(int m);
    static int order();
    static int degree();  // phi(m)
    static Scalar zeta(long k);

    bool is_zero() const { return c0_ == 0 && hi_.empty(); }
    bool is_rational() const { return hi_.empty(); }
    const mpq_class& rational_part() const { return c0_; }
    mpq_class coord(int k) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c0_ == b.c0_ && a.hi_ == b.hi_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const;
    Scalar pow(long e) const;

    // "p/q" for rationals, otherwise "c·ζ^k" terms joined by " + ".
    std::string str() const;
    static Scalar parse(const std::string& s);

private:
    void trim();
    std::vector<mpq_class> coords() const;
    static Scalar from_coords(std::vector<mpq_class> c);

    mpq_class c0_ = 0;
    std::vector<mpq_class> hi_;  // coordinates 1..d-1, trailing zeros trimmed
};

Scalar binomial(const Scalar& top, long k);
mpz_class binomial_int(long n, long k);  // generalized: n may be negative
mpz_class factorial(long n);

}  // namespace vlat
