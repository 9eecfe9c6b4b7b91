#include "doctest.h"
#include "oracle.hpp"
#include "vlat/deformation.hpp"

using namespace vlat;
namespace O = oracle;

namespace {

O::St to_o(const State& s, int r) {
    O::St out;
    for (auto& [m, c] : s.terms()) {
        REQUIRE(c.is_rational());
        O::Key k{std::vector<std::vector<int>>(r), m.beta};
        for (auto& p : m.parts) k.modes[p.idx].push_back(p.mode);
        for (auto& v : k.modes) std::sort(v.rbegin(), v.rend());
        out.add(k, c.rational_part());
    }
    return out;
}

O::Tens to_o(const Tensor& t, int r) {
    O::Tens out;
    for (auto& [k, c] : t.terms()) {
        REQUIRE(k.size() == 2);
        auto a = to_o(State(k[0]), r), b = to_o(State(k[1]), r);
        out[{a.t.begin()->first, b.t.begin()->first}] += c.rational_part();
    }
    return out;
}

// engine series against oracle series on exponents in [lo, hi]
void same_series(const SeriesState& eng, const O::Ser& ora, int lo, int hi, int r) {
    for (int e = lo; e <= hi; ++e) {
        CAPTURE(e);
        O::St want = ora.count(e) ? ora.at(e) : O::St{};
        CHECK(to_o(eng.coeff(e), r) == want);
    }
}

O::Lat lat(const IntMatrix& A) { return O::Lat{A}; }

std::map<int, O::Q> pair_poly(const O::Lat& L, const O::Vec& b, const O::Vec& a, const std::map<int, O::Q>& g) {
    // <b, a (x) g(x)>
    std::map<int, O::Q> out;
    for (auto& [e, c] : g) out[e] = c * L.pair(b, a);
    return out;
}

DeformationMap rank1_map(int exp) {
    DeformationMap f(1);
    f.F[0][0][exp] = Scalar(1);
    return f;
}

State S1(const std::string& s) { return parse_state(s, 1); }
State S2(const std::string& s) { return parse_state(s, 2); }

}  // namespace

TEST_CASE("cocycle fixtures against brute force") {
    Lattice A1(IntMatrix{{2}});
    O::Lat o1 = lat({{2}});
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            CHECK(A1.cocycle_sign({m}, {n}) == 1);
            CHECK(o1.eps({m}, {n}) == 1);
        }
    Lattice A2(IntMatrix{{2, -1}, {-1, 2}});
    O::Lat o2 = lat({{2, -1}, {-1, 2}});
    CHECK(o2.eps({0, 1}, {1, 0}) == -1);
    CHECK(A2.cocycle_sign({0, 1}, {1, 0}) == -1);
    // commutator condition and bimultiplicativity over a box
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    O::Vec x{a, b}, y{c, d};
                    long p = o2.pair(x, y);
                    int want = (p % 2) ? -1 : 1;
                    CHECK(o2.eps(x, y) * o2.eps(y, x) == want);
                    CHECK(A2.cocycle_sign(x, y) == o2.eps(x, y));
                    CHECK(A2.cocycle_sign(O::plus(x, y), x) == A2.cocycle_sign(x, x) * A2.cocycle_sign(y, x));
                }
}

TEST_CASE("oscillator fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    State v = heis_basis(L, 0, 1, S1("a1(-1)"));
    CHECK(v == S1("2"));
    CHECK(to_o(v, 1) == O::mode(o, 0, 1, to_o(S1("a1(-1)"), 1)));
    CHECK(mul_BLeps(L, S1("e[1]"), S1("e[-1]")) == S1("1"));
    CHECK(to_o(mul_BLeps(L, S1("e[1]"), S1("e[-1]")), 1) == O::e_state({0}));

    Tensor d = coproduct_BL(S1("a1(-1)^2 e[1]"));
    CHECK(to_o(d, 1) == O::coproduct(to_o(S1("a1(-1)^2 e[1]"), 1)));
    Tensor want = tensor(S1("a1(-1)^2 e[1]"), S1("e[1]")) + tensor(S1("a1(-1) e[1]"), S1("a1(-1) e[1]")).scaled(Scalar(2)) +
                  tensor(S1("e[1]"), S1("a1(-1)^2 e[1]"));
    CHECK(d == want);

    Tensor r = rho(S1("a1(-1) e[1]"));
    CHECK(to_o(r, 1) == O::coproduct(to_o(S1("a1(-1) e[1]"), 1)));
    CHECK(r == tensor(S1("a1(-1) e[1]"), S1("e[1]")) + tensor(S1("e[1]"), S1("a1(-1) e[1]")));
}

TEST_CASE("translation fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    for (auto s : {"e[1]", "a1(-1)", "a1(-2) e[-1]", "a1(-1)^2 e[2]"}) {
        CAPTURE(s);
        CHECK(to_o(D_VL(L, S1(s)), 1) == O::D(o, to_o(S1(s), 1)));
    }
    CHECK(D_VL(L, S1("e[1]")) == S1("a1(-1) e[1]"));
    CHECK(D_VL(L, S1("a1(-1)")) == S1("a1(-2)"));
    CHECK(n_product(L, S1("e[1]"), -2, S1("1"), Algebra::VL) == D_VL(L, S1("e[1]")));
}

TEST_CASE("exponential operator fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    SeriesState em = E_apply(L, -1, {-1}, S1("1"), 4);
    same_series(em, O::E_minus(o, {-1}, to_o(S1("1"), 1), 4), 0, 4, 1);
    CHECK(em.coeff(1) == S1("a1(-1)"));
    CHECK(em.coeff(2) == S1("1/2 a1(-1)^2 + 1/2 a1(-2)"));

    SeriesState ep = E_apply(L, 1, {-1}, S1("a1(-1)"), 2);
    same_series(ep, O::E_plus(o, {-1}, to_o(S1("a1(-1)"), 1)), -3, 2, 1);
    CHECK(ep.coeff(0) == S1("a1(-1)"));
    CHECK(ep.coeff(-1) == S1("-2"));
}

TEST_CASE("vertex operator fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    SeriesState y = Y_VL(L, S1("e[1]"), S1("e[-1]"), 2);
    same_series(y, O::Y(o, to_o(S1("e[1]"), 1), to_o(S1("e[-1]"), 1), 2), -4, 2, 1);
    CHECK(y.coeff(-2) == S1("1"));
    CHECK(y.coeff(-1) == S1("a1(-1)"));
    CHECK(y.coeff(0) == S1("1/2 a1(-2) + 1/2 a1(-1)^2"));

    SeriesState yy = Y_VL(L, S1("e[1]"), S1("e[1]"), 3);
    same_series(yy, O::Y(o, to_o(S1("e[1]"), 1), to_o(S1("e[1]"), 1), 3), -2, 3, 1);
    CHECK(yy.coeff(2) == S1("e[2]"));
    CHECK(yy.coeff(1).is_zero());
    CHECK(n_product(L, S1("e[1]"), -3, S1("e[1]"), Algebra::VL) == S1("e[2]"));

    SeriesState yh = Y_VL(L, S1("a1(-1)"), S1("e[1]"), 3);
    same_series(yh, O::Y(o, to_o(S1("a1(-1)"), 1), to_o(S1("e[1]"), 1), 3), -3, 3, 1);
    CHECK(yh.coeff(-1) == S1("2 e[1]"));  // a(0)e_b = <a,b>e_b
    for (int n = 1; n <= 4; ++n) CHECK(yh.coeff(n - 1) == S1("a1(-" + std::to_string(n) + ") e[1]"));
}

TEST_CASE("vertex operator agrees with the iterate-formula oracle on sampled states") {
    struct Case {
        IntMatrix A;
        std::vector<std::string> states;
    };
    std::vector<Case> cases = {
        {{{2}}, {"1", "e[1]", "e[-1]", "a1(-1)", "a1(-2) e[1]", "a1(-1)^2 e[-1]", "e[2]", "a1(-1) a1(-2)"}},
        {{{2, -1}, {-1, 2}}, {"1", "e[1,0]", "e[0,-1]", "a2(-1) e[1,1]", "a1(-1) a2(-1)", "a1(-2) e[-1,0]"}},
        {{{0, 1}, {1, 0}}, {"e[1,0]", "e[0,1]", "a1(-1) e[1,1]", "a2(-2)", "a1(-1) e[-1,0]"}},
    };
    for (auto& c : cases) {
        Lattice L(c.A);
        O::Lat o = lat(c.A);
        int r = L.rank();
        for (auto& us : c.states)
            for (auto& ws : c.states) {
                CAPTURE(us);
                CAPTURE(ws);
                State u = parse_state(us, r), w = parse_state(ws, r);
                int lo = pole_bound_VL(L, u, w);
                int hi = lo + 4;
                auto ora = O::Y(o, to_o(u, r), to_o(w, r), hi);
                if (!ora.empty()) CHECK(ora.begin()->first >= lo);
                same_series(Y_VL(L, u, w, hi), ora, lo - 2, hi, r);
            }
    }
}

TEST_CASE("deformation fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    DeformationMap f = rank1_map(1), g = rank1_map(2);

    // exp(Phi(f(a,x)))(z)e_a = e^{2z}e_a
    auto ex = expPhi_apply(L, f.value(LatticeVec{1}), S1("e[1]"), 5);
    auto want = O::exp_series(pair_poly(o, {1}, {1}, {{1, 1}}), 5);
    for (int e = 0; e <= 5; ++e) CHECK(to_o(ex.coeff(e), 1) == O::single(O::e_state({1}).t.begin()->first, want[e]));
    CHECK(ex.coeff(3) == S1("4/3 e[1]"));

    // (Ymf(f) * Ymf(g))(e^a) on e_b
    for (int b = -2; b <= 2; ++b) {
        auto conv = convolve_apply(L, ModuleStructure::ymf(f), ModuleStructure::ymf(g), S1("e[1]"),
                                   parse_state("e[" + std::to_string(b) + "]", 1), 5);
        auto fg = pair_poly(o, {b}, {1}, {{1, 1}, {2, 1}});
        auto w = O::exp_series(fg, 5);
        for (int e = 0; e <= 5; ++e) CHECK(to_o(conv.coeff(e), 1) == O::single(O::e_state({b}).t.begin()->first, w[e]));
    }

    // Y^f(e_a,x)e_a = e^{2x}Y(e_a,x)e_a
    auto yf = deformed_Y(L, f, S1("e[1]"), S1("e[1]"), 6);
    auto y = O::Y(o, to_o(S1("e[1]"), 1), to_o(S1("e[1]"), 1), 6);
    auto e2x = O::exp_series({{1, 2}}, 6);
    O::Ser prod;
    for (auto& [e, s] : y)
        for (auto& [k, c] : e2x)
            if (e + k <= 6) O::ser_add(prod, e + k, s, c);
    same_series(yf, prod, 0, 6, 1);
    CHECK(yf.coeff(3) == S1("2 e[2] + a1(-1) e[2]"));

    // Y^f(a,x)e_b = Y(a,x)e_b + <b,a>e_b
    for (int b = -2; b <= 2; ++b) {
        State eb = parse_state("e[" + std::to_string(b) + "]", 1);
        auto lhs = deformed_Y(L, f, S1("a1(-1)"), eb, 4);
        auto rhs = O::Y(o, to_o(S1("a1(-1)"), 1), to_o(eb, 1), 4);
        O::ser_add(rhs, 0, to_o(eb, 1), O::Q(2 * b));
        same_series(lhs, rhs, -3, 4, 1);
    }

    // S(x)(e_a (x) e_a) = e^{-4x} e_a (x) e_a
    auto S = S_apply(L, f, tensor(S1("e[1]"), S1("e[1]")), 6);
    auto e4 = O::exp_series({{1, -4}}, 6);
    for (int e = 0; e <= 6; ++e) CHECK(S.coeff(e) == tensor(S1("e[1]"), S1("e[1]")).scaled(Scalar(e4[e])));
    CHECK(S.coeff(2) == tensor(S1("e[1]"), S1("e[1]")).scaled(Scalar(8)));

    // smash product: (e_a (x) e^a) on (e_b (x) e^b)
    for (int b = -1; b <= 1; ++b) {
        CAPTURE(b);
        std::string eb = "e[" + std::to_string(b) + "]";
        auto sm = smash_Y(L, va_VL(L), ModuleStructure::ymf(f), tensor(S1("e[1]"), S1("e[1]")),
                          tensor(S1(eb), S1(eb)), 4);
        auto expo = O::exp_series(pair_poly(o, {b}, {1}, {{1, 1}}), 8);
        O::Ser left;
        for (auto& [k, c] : expo) {
            auto part = O::Y(o, to_o(S1("e[1]"), 1), O::single(O::e_state({b}).t.begin()->first, c), 4);
            for (auto& [e, s] : part)
                if (e + k <= 4) O::ser_add(left, e + k, s);
        }
        // Y_BL(e^a,x)e^b = exp(sum a(-n)x^n/n) e^{a+b}
        auto right = O::E_minus(o, {-1}, O::e_state({1 + b}), 8);
        std::map<int, O::Tens> want;
        for (auto& [e1, s1] : left)
            for (auto& [e2, s2] : right)
                if (e1 + e2 <= 4)
                    for (auto& [k1, c1] : s1.t)
                        for (auto& [k2, c2] : s2.t) want[e1 + e2][{k1, k2}] += c1 * c2;
        for (int e = -2; e <= 4; ++e) {
            CAPTURE(e);
            O::Tens w = want[e];
            for (auto it = w.begin(); it != w.end();) it = it->second == 0 ? w.erase(it) : std::next(it);
            CHECK(to_o(sm.coeff(e), 1) == w);
        }
    }
}

TEST_CASE("group action fixtures") {
    Lattice L(IntMatrix{{2}});
    O::Lat o = lat({{2}});
    Isometry g{IntMatrix{{-1}}, Scalar(-1)};
    State v = S1("a1(-1) e[1]");
    CHECK(R_apply(L, g, v) == S1("-a1(-1) e[-1]"));
    CHECK(to_o(R_apply(L, g, v), 1) == O::R(o, {{-1}}, -1, to_o(v, 1)));
    for (auto s : {"e[1]", "a1(-2) e[-1]", "a1(-1)^2 e[2]", "a1(-3)"}) {
        CAPTURE(s);
        CHECK(to_o(R_apply(L, g, S1(s)), 1) == O::R(o, {{-1}}, -1, to_o(S1(s), 1)));
        CHECK(to_o(R_apply(L, Isometry{IntMatrix{{-1}}, Scalar(1)}, S1(s)), 1) == O::R(o, {{-1}}, 1, to_o(S1(s), 1)));
    }

    // eta = sum_s (s (x) 1) g(s^-1 a, chi(s^-1) x) over {+1, -1}, chi = 1
    std::vector<Isometry> G{{IntMatrix{{1}}, Scalar(1)}, {IntMatrix{{-1}}, Scalar(1)}};
    DeformationMap eta = eta_average(rank1_map(1), G);
    O::Q total = 0;
    for (long s : {1L, -1L}) total += s * s;  // (s (x) 1) applied to s^-1 a
    CHECK(eta.F[0][0] == Poly{{1, Scalar(total)}});
    for (auto& s : G) CHECK(eta_equivariant(eta, s));
}

#include "oracle_fixtures.hpp"

TEST_CASE("every derived fixture matches the oracle") {
    for (auto& f : derived_fixtures()) {
        CAPTURE(f.name);
        CAPTURE(f.detail);
        CHECK(f.agree);
    }
}
