#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vlat/series.hpp"

namespace vlat {

struct ZeroP : std::invalid_argument {
    ZeroP() : std::invalid_argument("ZeroP") {}
};

struct NotXIndependent : std::runtime_error {
    NotXIndependent(int z_exp, int x_exp, Scalar value)
        : std::runtime_error("NotXIndependent: z^" + std::to_string(z_exp) + " has x^" + std::to_string(x_exp) +
                             " coefficient " + value.str()),
          z_exp(z_exp), x_exp(x_exp), value(std::move(value)) {}
    int z_exp, x_exp;
    Scalar value;
};

// phi(x, z) = sum_n z^n coeff[n](x), coeff[n] = (p d/dx)^n x / n!. Every
// coefficient is an exact Laurent polynomial because p is one.
struct Associate {
    Poly p;
    std::vector<Poly> coeff;
    int zorder() const { return static_cast<int>(coeff.size()) - 1; }
};

Associate associate_expand(const Poly& p, int zorder);
// x(1 - r z x^r)^{-1/r}, or x e^z at r = 0
Associate phi_r_closed(int r, int zorder);

// Series in one z variable with Laurent polynomial coefficients in x; exact for
// z-exponents <= hi.
struct XZSeries {
    std::map<int, Poly> t;
    int hi = 0;

    Poly coeff(int n) const;
    void add(int n, const Poly& c);
    int val() const { return t.empty() ? hi + 1 : t.begin()->first; }
};

XZSeries xz_mul(const XZSeries& a, const XZSeries& b);
// integer power; the lowest z-coefficient must be a monomial in x when k < 0
XZSeries xz_pow(const XZSeries& a, int k);
XZSeries associate_series(const Associate& a, int sign);

// Series in (z1, z2) with nonnegative exponents, exact for total degree <= N.
struct ZZSeries {
    std::map<std::pair<int, int>, Poly> t;
    int N = 0;

    Poly coeff(int i, int j) const;
    void add(int i, int j, const Poly& c);
};

ZZSeries zz_mul(const ZZSeries& a, const ZZSeries& b);
// integer power; the constant coefficient must be a monomial in x when k < 0
ZZSeries zz_pow(const ZZSeries& a, int k);

// First mismatch of phi(phi(x,y),z) = phi(x,y+z) up to total degree `order`.
std::optional<std::string> associate_law_violation(const Associate& a, int order);
std::optional<std::string> associate_mismatch(const Associate& a, const Associate& b);

// Laurent polynomial in (x1, x2)
using Poly2 = std::map<std::pair<int, int>, Scalar>;

// num(x1, x2) / prod (x1 - c x2)^k
struct BivarFunction {
    Poly2 num;
    std::vector<std::pair<Scalar, int>> den;

    static BivarFunction monomial(const Scalar& c, int e1, int e2);
    static BivarFunction inverse_power(const Scalar& c, int k);  // (x1 - c x2)^{-k}
    std::string str() const;
};

BivarFunction bivar_add(const BivarFunction& a, const BivarFunction& b);
BivarFunction bivar_mul(const BivarFunction& a, const BivarFunction& b);
BivarFunction bivar_scaled(const BivarFunction& a, const Scalar& c);
// p(x1) dF/dx1
BivarFunction bivar_p_d1(const BivarFunction& F, const Poly& p);
// F(l x1, l x2)
BivarFunction bivar_dilate(const BivarFunction& F, const Scalar& l);
// x1/x2 for r = 0, -(1/r)(x1^{-r} - x2^{-r}) otherwise
BivarFunction F_r(int r);
// e^z for r = 0, z otherwise
LaurentSeries f_r(int r, int order);

enum class Slot { X1, X2 };

// x_slot -> phi(x, sign z), the other variable -> x. Exact for z^n, n <= order.
XZSeries subst_phi(const BivarFunction& F, Slot slot, const Associate& a, int sign, int order);

struct MemberReport {
    bool member = true;
    std::string offending;  // first nonzero monomial of p1 d1 F + p2 d2 F, numerator form
};
MemberReport cphi_member(const BivarFunction& F, const Associate& a);

// F(phi(x,z), x) as a series in z; throws NotXIndependent.
LaurentSeries pi_phi(const BivarFunction& F, const Associate& a, int order);
// F(phi(x,z1), phi(x,z2)) = f(z1 - z2) with f = pi_phi(F), up to total degree order
std::optional<std::string> pi_phi_two_variable_violation(const BivarFunction& F, const Associate& a, int order);
// F(phi(x1,z), x2) = F(x1, phi(x2,-z)) up to z^order
std::optional<std::string> two_sided_violation(const BivarFunction& F, const Associate& a, int order);

}  // namespace vlat
