#include "verifier_internal.hpp"

namespace vlat::detail {

namespace {

std::optional<Mismatch> from_violation(const std::optional<std::string>& v, const std::string& what) {
    if (!v) return std::nullopt;
    return fail(what, "identity holds", *v);
}

std::optional<Mismatch> agree(const LaurentSeries& want, const LaurentSeries& got, const std::string& what) {
    if (series_agree(want, got)) return std::nullopt;
    return fail(what, want.str(), got.str());
}

}  // namespace

void associate_checks(Recs& out, const Poly& p, int N) {
    out.push_back(run_check("phi-calc", "associate law p=" + poly_str(p), [&] {
        return from_violation(associate_law_violation(associate_expand(p, N), N), "associate law");
    }));
}

void r_checks(Recs& out, int r, int N) {
    const std::string S = "phi-calc";
    const std::string tag = " r=" + std::to_string(r);
    const Associate a = phi_r_closed(r, N + 2);
    const BivarFunction F = F_r(r);
    out.push_back(run_check(S, "closed form" + tag, [&] {
        return from_violation(associate_mismatch(a, associate_expand(Poly{{r + 1, Scalar(1)}}, N + 2)), "closed form");
    }));
    out.push_back(run_check(S, "projection of F_r" + tag, [&] {
        return agree(f_r(r, N), pi_phi(F, a, N), "pi(F_r)");
    }));
    out.push_back(run_check(S, "two-variable identity" + tag, [&] {
        return from_violation(pi_phi_two_variable_violation(F, a, N - 1), "two variables");
    }));
    out.push_back(run_check(S, "two-sided substitution" + tag, [&] {
        return from_violation(two_sided_violation(F, a, N - 1), "two-sided");
    }));
    out.push_back(run_check(S, "membership" + tag, [&]() -> std::optional<Mismatch> {
        for (auto& G : {F, bivar_mul(F, F)})
            if (auto rep = cphi_member(G, a); !rep.member) return fail(G.str(), "member", rep.offending);
        BivarFunction other = F_r(r == 0 ? 1 : 0);
        if (cphi_member(other, a).member) return fail(other.str(), "not a member", "member");
        return std::nullopt;
    }));
    out.push_back(run_check(S, "differential algebra map" + tag, [&]() -> std::optional<Mismatch> {
        BivarFunction G = bivar_add(bivar_mul(F, F), bivar_scaled(F, Scalar(3)));
        LaurentSeries pF = pi_phi(F, a, N), pG = pi_phi(G, a, N);
        if (auto m = agree(series_mul(pF, pG), pi_phi(bivar_mul(F, G), a, N), "product")) return m;
        return agree(series_derive(pG, 1), pi_phi(bivar_p_d1(G, a.p), a, N - 1), "derivative");
    }));
    for (int l : {-1, 2})
        out.push_back(run_check(S, "scaling" + tag + " lambda=" + std::to_string(l), [&]() -> std::optional<Mismatch> {
            Scalar lam(l);
            for (auto& G : {F, bivar_mul(F, F)})
                if (auto m = agree(pi_phi(G, a, N).dilated(lam.pow(-r)), pi_phi(bivar_dilate(G, lam), a, N),
                                   "scaled " + G.str()))
                    return m;
            return std::nullopt;
        }));
}

Recs suite_phi(const Ctx& c) {
    Recs out;
    const int N = c.tr().zorder;
    for (auto s : {"1", "x", "x^2", "x^-1", "1+x"}) associate_checks(out, poly_parse(s), N);
    for (int r = -2; r <= 2; ++r) r_checks(out, r, N);
    return out;
}

}  // namespace vlat::detail

namespace vlat {

Report phi_report(const Poly& p, int zorder) {
    Report rep;
    detail::associate_checks(rep.checks, p, zorder);
    // p = x^{r+1} has the closed form and the F_r family
    if (p.size() == 1 && p.begin()->second == Scalar(1)) detail::r_checks(rep.checks, p.begin()->first - 1, zorder);
    return rep;
}

}  // namespace vlat
