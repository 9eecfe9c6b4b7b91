#include <algorithm>
#include <set>

#include "verifier_internal.hpp"

namespace vlat::detail {

namespace {

std::string pair_name(const State& u, const State& v) { return "u=" + sname(u) + " v=" + sname(v); }
std::string triple_name(const State& u, const State& v, const State& w) {
    return pair_name(u, v) + " w=" + sname(w);
}

Tensor tensor_mul(const Tensor& a, const Tensor& b, const std::function<State(const State&, const State&)>& mul) {
    Tensor out;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            std::vector<State> parts;
            for (size_t i = 0; i < ka.size(); ++i) parts.push_back(mul(State(ka[i]), State(kb[i])));
            Tensor t(TensorKey{}, ca * cb);
            for (auto& p : parts) {
                Tensor next;
                for (auto& [k, c] : t.terms())
                    for (auto& [m, d] : p.terms()) {
                        TensorKey nk = k;
                        nk.push_back(m);
                        next.add(nk, c * d);
                    }
                t = std::move(next);
            }
            out += t;
        }
    return out;
}

Tensor rho_mono(const Monomial& m) { return rho(State(m)); }
Tensor delta_mono(const Monomial& m) { return coproduct_BL(State(m)); }

State h_state(int r, const LatticeVec& a) {
    State s;
    for (int i = 0; i < r; ++i)
        if (a[i]) s.add(Monomial({Part{i, 1}}, LatticeVec(r, 0)), Scalar(a[i]));
    return s;
}

// generator as a lattice vector together with its kind
struct Gen {
    bool is_h;
    LatticeVec v;
};
Gen gen_of(const State& g) {
    int i = heis_index(g);
    if (i >= 0) {
        LatticeVec v(g.terms().begin()->first.beta.size(), 0);
        v[i] = 1;
        return {true, v};
    }
    return {false, label(g)};
}

std::map<int, Scalar> exp_poly(const Poly& E, int order) {
    if (E.empty()) return {{0, Scalar(1)}};
    LaurentSeries p = LaurentSeries::polynomial(E);
    LaurentSeries g = series_exp(p.with_window({p.window().lo, order}));
    return g.terms();
}

// sum_k c_k (x1 - x2)^k for a polynomial in one variable
std::map<std::pair<int, int>, Scalar> in_difference(const Poly& q) {
    std::map<std::pair<int, int>, Scalar> p;
    for (auto& [k, c] : q)
        for (int i = 0; i <= k; ++i) {
            Scalar b(binomial_int(k, i));
            p[{k - i, i}] += (i % 2 ? -b : b) * c;
        }
    for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
    return p;
}

Series2State state_times_poly2(const State& w, const std::map<std::pair<int, int>, Scalar>& p, int hi1, int hi2) {
    Series2State out;
    out.hi1 = hi1, out.hi2 = hi2;
    for (auto& [k, c] : p) out.add(k.first, k.second, w, c);
    return out;
}

// group S(x)(v (x) u) by basis pair
std::map<TensorKey, std::map<int, Scalar>> twist_data(const SeriesTensor& S) {
    std::map<TensorKey, std::map<int, Scalar>> out;
    for (auto& [e, t] : S.t)
        for (auto& [k, c] : t.terms()) out[k][e] += c;
    return out;
}

template <class P>
std::vector<std::pair<P, State>> rotate(const std::vector<P>& pairs, const std::vector<State>& samples, size_t cap) {
    std::vector<std::pair<P, State>> out;
    if (pairs.empty() || samples.empty()) return out;
    size_t n = std::max(pairs.size(), std::min(cap, samples.size()));
    auto ws = stride(samples, n);
    for (size_t k = 0; k < n; ++k) out.emplace_back(pairs[k % pairs.size()], ws[k % ws.size()]);
    return out;
}

std::vector<std::pair<State, State>> all_pairs(const std::vector<State>& a) {
    std::vector<std::pair<State, State>> p;
    for (auto& x : a)
        for (auto& y : a) p.emplace_back(x, y);
    return p;
}

// two-variable series with nonnegative exponents, exact for total degree <= N
struct TotalSeries {
    std::map<std::pair<int, int>, Tensor> t;
    int N = 0;
    void add(int a, int b, const Tensor& v, const Scalar& c = Scalar(1)) {
        if (a + b > N || v.is_zero() || c.is_zero()) return;
        auto& s = t[{a, b}];
        s.add_scaled(v, c);
        if (s.is_zero()) t.erase({a, b});
    }
};

enum class Arg { X, Z, XZ };

TotalSeries apply_S(const Lattice& L, const DeformationMap& f, const TotalSeries& in, int i, int j, Arg arg) {
    TotalSeries out;
    out.N = in.N;
    for (auto& [k, t] : in.t) {
        auto [a, b] = k;
        SeriesTensor s = S_apply_slots(L, f, t, i, j, in.N - a - b);
        for (auto& [e, v] : s.t) {
            if (arg == Arg::X) out.add(a + e, b, v);
            else if (arg == Arg::Z) out.add(a, b + e, v);
            else
                for (int q = 0; q <= e; ++q) out.add(a + q, b + e - q, v, Scalar(binomial_int(e, q)));
        }
    }
    return out;
}

std::optional<Mismatch> compare_total(const TotalSeries& want, const TotalSeries& got) {
    std::set<std::pair<int, int>> keys;
    for (auto& [k, v] : want.t) keys.insert(k);
    for (auto& [k, v] : got.t) keys.insert(k);
    for (auto& k : keys) {
        auto a = want.t.count(k) ? want.t.at(k) : Tensor();
        auto b = got.t.count(k) ? got.t.at(k) : Tensor();
        if (auto m = compare_tensors(a, b, "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")"))
            return m;
    }
    return std::nullopt;
}

}  // namespace

Recs suite_comodule(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const std::string S = "comodule";
    const State one = c.vac();
    auto mulBL = [](const State& a, const State& b) { return mul_BL(a, b); };

    for (auto& v : c.samples)
        out.push_back(run_check(S, "coalgebra and comodule axioms on " + sname(v), [&]() -> std::optional<Mismatch> {
            Tensor d = coproduct_BL(v);
            if (auto m = compare_states(v, contract_counit(d, 0), "(counit x 1)Delta")) return m;
            if (auto m = compare_states(v, contract_counit(d, 1), "(1 x counit)Delta")) return m;
            if (auto m = compare_tensors(d, permute(d, {1, 0}), "cocommutativity")) return m;
            if (auto m = compare_tensors(map_slot(d, 0, delta_mono), map_slot(d, 1, delta_mono), "coassociativity"))
                return m;
            for (auto var : {Variant::BL, Variant::BLeps}) {
                State dv = derive_B(v, var);
                Tensor lhs = coproduct_BL(dv);
                Tensor rhs = map_slot_state(d, 0, [var](const Monomial& m) { return derive_B(State(m), var); });
                rhs += map_slot_state(d, 1, [var](const Monomial& m) { return derive_B(State(m), var); });
                if (auto m = compare_tensors(rhs, lhs, "Delta D")) return m;
                if (!counit_BL(dv).is_zero()) return fail("counit D", "0", counit_BL(dv).str());
            }
            for (auto& [k, cf] : d.terms())
                if (k[0].heis_weight() + k[1].heis_weight() != v.terms().begin()->first.heis_weight())
                    return fail("Delta degree", std::to_string(heis_weight(v)), tensor_str(Tensor(k, cf)));
            if (auto m = compare_states(v, mul_BL(one, v), "unit BL")) return m;
            if (auto m = compare_states(v, mul_BLeps(L, one, v), "unit BLeps")) return m;
            if (auto m = compare_states(v, mul_BLeps(L, v, one), "right unit BLeps")) return m;
            Tensor r = rho(v);
            if (auto m = compare_tensors(map_slot(r, 1, delta_mono), map_slot(r, 0, rho_mono), "(rho x 1)rho"))
                return m;
            return compare_states(v, contract_counit(r, 1), "(1 x counit)rho");
        }));

    for (auto& [a, b] : sample_pairs(c.samples, c.samples, c.tr().pairs))
        out.push_back(run_check(S, "bialgebra " + pair_name(a, b), [&]() -> std::optional<Mismatch> {
            State ab = mul_BL(a, b);
            if (auto m = compare_states(ab, mul_BL(b, a), "commutativity")) return m;
            if (auto m = compare_tensors(tensor_mul(coproduct_BL(a), coproduct_BL(b), mulBL), coproduct_BL(ab),
                                         "Delta(ab)"))
                return m;
            for (auto var : {Variant::BL, Variant::BLeps}) {
                auto mul = [&](const State& p, const State& q) {
                    return var == Variant::BL ? mul_BL(p, q) : mul_BLeps(L, p, q);
                };
                State lhs = derive_B(mul(a, b), var);
                State rhs = mul(derive_B(a, var), b) + mul(a, derive_B(b, var));
                if (auto m = compare_states(rhs, lhs, "Leibniz")) return m;
            }
            for (auto& [k, cf] : ab.terms())
                if (k.heis_weight() != heis_weight(a) + heis_weight(b))
                    return fail("degree of ab", std::to_string(heis_weight(a) + heis_weight(b)), mono_str(k));
            return std::nullopt;
        }));

    {
        size_t n = c.samples.size();
        size_t want = std::min<size_t>(n * n * n, c.tr().triples);
        for (size_t k = 0; k < want; ++k) {
            size_t idx = k * n * n * n / want;
            const State &a = c.samples[idx % n], &b = c.samples[(idx / n + k) % n], &d = c.samples[(idx / (n * n) + 2 * k) % n];
            out.push_back(run_check(S, "associativity a=" + sname(a) + " b=" + sname(b) + " c=" + sname(d),
                                    [&]() -> std::optional<Mismatch> {
                                        if (auto m = compare_states(mul_BL(mul_BL(a, b), d), mul_BL(a, mul_BL(b, d)), "BL"))
                                            return m;
                                        return compare_states(mul_BLeps(L, mul_BLeps(L, a, b), d),
                                                              mul_BLeps(L, a, mul_BLeps(L, b, d)), "BLeps");
                                    }));
        }
    }

    const VertexAlgebra VL = va_VL(L), BL = va_BL(), BE = va_BLeps(L);
    for (auto& [u, v] : sample_pairs(c.samples, c.samples, c.tr().pairs)) {
        out.push_back(run_check(S, "rho homomorphism V_L " + pair_name(u, v), [&] {
            int hi = c.hi_from(pole_bound_VL(L, u, v));
            SeriesTensor lhs = series_map<State, Tensor>(Y_VL(L, u, v, hi), [](const State& s) { return rho(s); });
            return compare_series(tensor_Y(VL, BL, rho(u), rho(v), hi), lhs, c.lo());
        }));
        out.push_back(run_check(S, "rho homomorphism B_{L,eps} " + pair_name(u, v), [&] {
            int hi = std::min(c.tr().xhi, c.tr().span);
            SeriesTensor lhs = series_map<State, Tensor>(Y_BLeps(L, u, v, hi), [](const State& s) { return rho(s); });
            return compare_series(tensor_Y(BE, BL, rho(u), rho(v), hi), lhs, c.lo());
        }));
    }
    return out;
}

Recs suite_module(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const std::string S = "module";
    const State one = c.vac();
    const int s2 = c.tr().span2;
    const int hi0 = std::min(c.tr().xhi, c.tr().span);

    for (auto& nm : c.maps) {
        const ModuleStructure M = ModuleStructure::ymf(nm.f);
        auto YM = [&](const State& a) -> Field {
            return [&L, &M, a](const State& v, int hi) { return YM_apply(L, M, a, v, hi); };
        };

        for (auto& a : c.samples)
            out.push_back(run_check(S, "vacuum f=" + nm.name + " a=" + sname(a), [&] {
                SeriesState want(0, hi0);
                want.add(0, one, counit_BL(a));
                return compare_series(want, YM_apply(L, M, a, one, hi0));
            }));

        // Y_M(Y_BL(a,z)b, x)v = Y_M(a, x+z)Y_M(b, x)v up to total degree T
        const int T = 2 * s2;
        for (auto& [ab, v] : rotate(sample_pairs(c.samples, c.samples, c.tr().pairs), c.samples, 0)) {
            auto& [a, b] = ab;
            out.push_back(run_check(S, "module axiom f=" + nm.name + " " + triple_name(a, b, v), [&] {
                Series2State lhs;
                lhs.hi1 = lhs.hi2 = T;
                State d = a;
                mpz_class fact = 1;
                for (int k = 0; k <= T; ++k) {
                    if (k) fact *= k;
                    State ck = mul_BL(d, b).scaled(Scalar(mpq_class(mpz_class(1), fact)));
                    for (auto& [j, s] : YM_apply(L, M, ck, v, T - k).t) lhs.add(k, j, s);
                    d = derive_B(d);
                }
                Series2State F = compose(YM(a), YM(b), v, T, T, true);
                Series2State rhs;
                rhs.hi1 = rhs.hi2 = T;
                for (auto& [key, s] : F.t) {
                    auto [m, n] = key;
                    for (int k = 0; k <= m; ++k)
                        if (k + m + n - k <= T) rhs.add(k, m + n - k, s, Scalar(binomial_int(m, k)));
                }
                return compare_series2(rhs, lhs);
            }));
        }

        // H-module vertex algebra axiom
        const VertexAlgebra VL = va_VL(L);
        for (auto& [hu, v] : rotate(sample_pairs(c.samples, c.samples, c.tr().pairs), c.samples, 0)) {
            auto& [h, u] = hu;
            out.push_back(run_check(S, "H-module axiom f=" + nm.name + " h=" + sname(h) + " u=" + sname(u) +
                                           " v=" + sname(v),
                                    [&] {
                                        const int P = pole_bound_VL(L, u, v);
                                        const int H1 = s2, H2 = P + s2;
                                        Series2State lhs = compose(YM(h), field(VL, u), v, H1, H2, true);
                                        Series2State rhs;
                                        rhs.val1 = lhs.val1, rhs.hi1 = H1, rhs.val2 = lhs.val2, rhs.hi2 = H2;
                                        const int Mmax = H1 + H2 - P;
                                        for (Tensor dh = coproduct_BL(h); auto& [k, ch] : dh.terms()) {
                                            SeriesState cm = YM_apply(L, M, State(k[0]), u, Mmax);
                                            SeriesState de = YM_apply(L, M, State(k[1]), v, H1);
                                            for (auto& [m, cs] : cm.t)
                                                for (auto& [e, ds] : de.t) {
                                                    SeriesState g = Y_VL(L, cs, ds, H2);
                                                    for (auto& [p, gs] : g.t)
                                                        for (int i = 0; i <= m; ++i) {
                                                            Scalar b(binomial_int(m, i));
                                                            rhs.add(m - i + e, i + p, gs, ch * (i % 2 ? -b : b));
                                                        }
                                                }
                                        }
                                        return compare_series2(rhs, lhs);
                                    }));
        }
    }
    return out;
}

Recs suite_compat(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const int hi = std::min(c.tr().xhi, c.tr().span);
    for (auto& nm : c.maps) {
        const ModuleStructure M = ModuleStructure::ymf(nm.f);
        for (auto& [h, v] : sample_pairs(c.samples, c.samples, c.tr().pairs))
            out.push_back(run_check("compat", "f=" + nm.name + " " + pair_name(h, v), [&] {
                SeriesTensor lhs = series_map<State, Tensor>(YM_apply(L, M, h, v, hi),
                                                             [](const State& s) { return rho(s); });
                SeriesTensor rhs(0, hi);
                for (Tensor r = rho(v); auto& [k, cf] : r.terms()) {
                    SeriesState right(0, hi);
                    right.add(0, State(k[1]));
                    SeriesTensor part = series_tensor(YM_apply(L, M, h, State(k[0]), hi), right);
                    for (auto& [e, t] : part.t) rhs.add(e, t, cf);
                }
                return compare_series(rhs, lhs);
            }));
    }
    return out;
}

Recs suite_convolution(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const int hi = std::min(c.tr().xhi, c.tr().span);
    const ModuleStructure E = ModuleStructure::eps();
    auto pairs = sample_pairs(c.samples, c.samples, c.tr().pairs);
    for (auto& nm : c.maps) {
        const ModuleStructure M = ModuleStructure::ymf(nm.f), Mi = ModuleStructure::inverse(nm.f);
        for (auto& [a, v] : pairs)
            out.push_back(run_check("convolution", "inverse f=" + nm.name + " " + pair_name(a, v),
                                    [&]() -> std::optional<Mismatch> {
                                        SeriesState want = YM_apply(L, E, a, v, hi);
                                        if (auto m = compare_series(want, convolve_apply(L, M, Mi, a, v, hi))) return m;
                                        if (auto m = compare_series(want, convolve_apply(L, Mi, M, a, v, hi))) return m;
                                        SeriesState y = YM_apply(L, M, a, v, hi);
                                        if (auto m = compare_series(y, convolve_apply(L, M, E, a, v, hi))) return m;
                                        return compare_series(y, convolve_apply(L, E, M, a, v, hi));
                                    }));
    }
    for (size_t i = 0; i < c.maps.size(); ++i)
        for (size_t j = i + 1; j < c.maps.size(); ++j) {
            const NamedMap &f = c.maps[i], &g = c.maps[j];
            const ModuleStructure Mf = ModuleStructure::ymf(f.f), Mg = ModuleStructure::ymf(g.f),
                                  Ms = ModuleStructure::ymf(f.f + g.f);
            for (auto& [a, v] : stride(pairs, std::max<size_t>(1, pairs.size() / 2)))
                out.push_back(run_check("convolution", "product f=" + f.name + " g=" + g.name + " " + pair_name(a, v),
                                        [&] { return compare_series(YM_apply(L, Ms, a, v, hi),
                                                                    convolve_apply(L, Mf, Mg, a, v, hi)); }));
        }
    return out;
}

Recs suite_deform(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const int r = L.rank(), s2 = c.tr().span2;
    const std::string S = "deform-thm59";
    const VertexAlgebra VL = va_VL(L);
    const size_t cap = c.tr().per_relation;
    auto pairs = sample_pairs(c.samples, c.samples, c.tr().pairs);

    std::vector<State> hs, es;
    for (int i = 0; i < r; ++i) hs.push_back(heis_generator(r, i));
    for (auto& a : c.roots) es.push_back(lattice_state(a));
    auto pairs_of = [](const std::vector<State>& a, const std::vector<State>& b) {
        std::vector<std::pair<State, State>> p;
        for (auto& x : a)
            for (auto& y : b) p.emplace_back(x, y);
        return p;
    };

    for (auto& nm : c.maps) {
        const DeformationMap& f = nm.f;
        const VertexAlgebra Yf = deformed(L, f);
        const std::string tag = " f=" + nm.name + " ";

        if (f.is_zero()) {
            auto gp = all_pairs(c.gens);
            gp.insert(gp.end(), pairs.begin(), pairs.end());
            for (auto& [u, v] : gp)
                out.push_back(run_check(S, "f=0 gives Y_VL " + pair_name(u, v), [&] {
                    int hi = c.hi_from(pole_bound_VL(L, u, v));
                    return compare_series(Y_VL(L, u, v, hi), Yf.Y(u, v, hi), c.lo());
                }));
        }

        for (auto& [g, w] : rotate(c.gens, c.samples, cap))
            out.push_back(run_check(S, "generator formula" + tag + "g=" + sname(g) + " w=" + sname(w), [&] {
                int P = pole_bound_VL(L, g, w);
                int hi = c.hi_from(P);
                Gen G = gen_of(g);
                SeriesState want;
                if (G.is_h) {
                    want = series_sum(Y_VL(L, g, w, hi), Phi_apply(L, f_derive(f, 1).value(G.v), w, hi));
                } else {
                    SeriesState ex = expPhi_apply(L, f.value(G.v), w, hi - P);
                    Field A = [&](const State& s, int h) { return Y_VL(L, g, s, h); };
                    want = apply_field(A, ex, hi, P);
                }
                return compare_series(want, Yf.Y(g, w, hi), c.lo());
            }));

        // [Y(a,x), Y(b,z)] for h-h
        for (auto& [ab, w] : rotate(pairs_of(hs, hs), c.samples, cap)) {
            auto& [a, b] = ab;
            out.push_back(run_check(S, "h-h relation" + tag + triple_name(a, b, w), [&] {
                int H1 = Yf.pole(a, w) + s2, H2 = Yf.pole(b, w) + s2;
                Series2State C = series2_sum(prod12(Yf, a, b, w, H1, H2), prod21(Yf, a, b, w, H1, H2), Scalar(-1));
                LatticeVec av = gen_of(a).v, bv = gen_of(b).v;
                DeformationMap f2 = f_derive(f, 2);
                Poly q = f_pair(L, f2, av, bv), rr = f_pair(L, f2, bv, av);
                Poly poly = poly_sum(poly_scaled(q, Scalar(-1)), poly_dilate(rr, Scalar(-1)));
                Series2State rhs = state_times_poly2(w, in_difference(poly), H1, H2);
                long g = L.pairing(av, bv);
                for (int x = std::min(C.val1, -1 - H2 - 1); x <= H1; ++x) rhs.add(x, -2 - x, w, Scalar(g * (-x - 1)));
                return compare_series2(rhs, C);
            }));
        }

        // [Y(a,x), Y(e_b,z)]; the correction term enters with a plus sign, as S(x)(e_b (x) a) dictates
        for (auto& [ae, w] : rotate(pairs_of(hs, es), c.samples, cap)) {
            auto& [a, e] = ae;
            out.push_back(run_check(S, "h-e relation" + tag + triple_name(a, e, w), [&] {
                int H1 = Yf.pole(a, w) + s2, H2 = Yf.pole(e, w) + s2;
                Series2State C = series2_sum(prod12(Yf, a, e, w, H1, H2), prod21(Yf, a, e, w, H1, H2), Scalar(-1));
                LatticeVec av = gen_of(a).v, be = label(e);
                DeformationMap f1 = f_derive(f, 1);
                Poly g = poly_sum(poly_dilate(f_pair(L, f1, be, av), Scalar(-1)), f_pair(L, f1, av, be));
                SeriesState y = Yf.Y(e, w, H1 + H2 + 1);
                Series2State rhs = delta_terms({series_scaled(y, Scalar(L.pairing(av, be)))},
                                               std::min(C.val1, y.val - H2 - 1), H1, std::min(C.val2, y.val), H2);
                for (auto& [k, cf] : in_difference(g))
                    for (auto& [m, s] : y.t) rhs.add(k.first, k.second + m, s, cf);
                return compare_series2(rhs, C);
            }));
        }

        for (auto& e : es)
            out.push_back(run_check(S, "residue identity" + tag + "e=" + sname(e), [&] {
                LatticeVec al = label(e);
                State h = h_state(r, al);
                State want = D_VL(L, e) + e.scaled(f_pair(L, f_derive(f, 1), al, al)[0]);
                return compare_states(want, Yf.Y(h, e, 0).coeff(0), "x^0");
            }));

        // e-e relation with the exponential twist
        for (auto& [ab, w] : rotate(pairs_of(es, es), c.samples, cap)) {
            auto& [a, b] = ab;
            out.push_back(run_check(S, "e-e relation" + tag + triple_name(a, b, w), [&] {
                const LatticeVec al = label(a), be = label(b);
                const int N = static_cast<int>(-L.pairing(al, be) - 1);
                const int v1 = Yf.pole(a, w), v2 = Yf.pole(b, w);
                const int T1 = v1 + s2, T2 = v2 + s2;
                int JA = T2 - v2, JB = T1 - v1;
                if (N >= 0) JA = std::min(JA, N), JB = std::min(JB, N);
                JA = std::max(JA, 0), JB = std::max(JB, 0);
                Series2State A = compose(field(Yf, a), field(Yf, b), w, T1 - N + JA, T2, true);
                Series2State B = compose(field(Yf, b), field(Yf, a), w, T2 - N + JB, T1, false);
                Poly E = poly_sum(f_pair(L, f, al, be), poly_scaled(poly_dilate(f_pair(L, f, be, al), Scalar(-1)), Scalar(-1)));
                int order = (B.hi1 - B.val1) + (B.hi2 - B.val2);
                B = series2_mul_diff_series(B, exp_poly(E, std::max(order, 0)), +1);
                Series2State lhs = series2_sum(series2_mul_binom(A, N, Direction::X1Major),
                                               series2_mul_binom(B, N, Direction::X2Major), Scalar(-1));
                lhs = restrict2(lhs, T1, T2);
                SeriesState y = series_scaled(Yf.Y(lattice_state(al + be), w, T1 + T2 + 1), L.cocycle(al, be));
                Series2State rhs = delta_terms({y}, std::min(lhs.val1, y.val - T2 - 1), T1, std::min(lhs.val2, y.val), T2);
                return compare_series2(rhs, lhs);
            }));
        }

        // twisted commutator criterion: n = 0 and n past the pole, for composite pairs
        // deep poles between composite states (norm -8 on indefinite lattices) make the iterate sum explode
        constexpr int kDeepest = -4;
        std::vector<std::pair<State, State>> shallow;
        for (auto& [u, v] : all_pairs(c.composite))
            if (Yf.pole(u, v) >= kDeepest) shallow.emplace_back(u, v);
        std::vector<State> ws;
        for (auto& w : c.samples) {
            bool ok = true;
            for (auto& u : c.composite) ok = ok && Yf.pole(u, w) >= kDeepest;
            if (ok) ws.push_back(w);
        }
        for (auto& [uv, w] : rotate(stride(shallow, c.tr().pairs), ws, 0)) {
            auto& [u, v] = uv;
            out.push_back(run_check(S, "twisted commutator" + tag + triple_name(u, v, w), [&]() -> std::optional<Mismatch> {
                const int H1 = Yf.pole(u, w) + s2, H2 = Yf.pole(v, w) + s2;
                Series2State A = prod12(Yf, u, v, w, H1, H2);
                int order = (H1 - A.val1) + (H2 - A.val2) + 4;
                Tensor vu = tensor(v, u);
                Series2State B;
                B.val1 = A.val1, B.hi1 = H1, B.val2 = A.val2, B.hi2 = H2;
                for (auto& [k, g] : twist_data(S_apply(L, f, vu, std::max(order, 0)))) {
                    Series2State Bi = prod21(Yf, State(k[1]), State(k[0]), w, H1, H2);
                    Bi.val1 = std::min(Bi.val1, A.val1), Bi.val2 = std::min(Bi.val2, A.val2);
                    B = series2_sum(B, series2_mul_diff_series(Bi, g, -1));
                }
                const int P = Yf.pole(u, v);
                for (int n : {0, std::max(0, -P)}) {
                    Series2State lhs = series2_sum(series2_mul_binom(A, n, Direction::X1Major),
                                                   series2_mul_binom(B, n, Direction::X2Major), Scalar(-1));
                    std::vector<SeriesState> ys;
                    SeriesState uvs = Yf.Y(u, v, -n - 1);
                    for (int j = 0; -n - j - 1 >= P; ++j) {
                        State prod = uvs.coeff(-n - j - 1);
                        ys.push_back(prod.is_zero() ? SeriesState(0, H1 + H2 + 1 + j) : Yf.Y(prod, w, H1 + H2 + 1 + j));
                    }
                    int lo1 = lhs.val1, lo2 = lhs.val2;
                    for (auto& y : ys) lo1 = std::min(lo1, y.val - H2 - 1);
                    Series2State rhs = delta_terms(ys, lo1, lhs.hi1, lo2, lhs.hi2);
                    if (auto m = compare_series2(rhs, lhs)) {
                        m->exponents = "n=" + std::to_string(n) + " " + m->exponents;
                        return m;
                    }
                }
                return std::nullopt;
            }));
        }

        if (!f.is_zero()) {
            // undoing the deformation with the inverse structure
            const VertexAlgebra back = va_deformed(L, Yf, ModuleStructure::inverse(f));
            for (auto& [u, v] : pairs)
                out.push_back(run_check(S, "inverse reconstruction" + tag + pair_name(u, v), [&] {
                    int hi = c.hi_from(pole_bound_VL(L, u, v));
                    return compare_series(Y_VL(L, u, v, hi), back.Y(u, v, hi), c.lo());
                }));
        }
    }

    // composition of two deformations
    std::vector<std::pair<const NamedMap*, const NamedMap*>> fg;
    for (auto& a : c.maps)
        for (auto& b : c.maps)
            if (!a.f.is_zero() && !b.f.is_zero() && &a != &b) fg.emplace_back(&a, &b);
    if (fg.empty())
        for (auto& a : c.maps)
            if (!a.f.is_zero()) fg.emplace_back(&a, &a);
    fg = stride(fg, 3);
    for (auto [pf, pg] : fg) {
        const VertexAlgebra inner = deformed(L, pg->f);
        const VertexAlgebra twice = va_deformed(L, inner, ModuleStructure::ymf(pf->f));
        const VertexAlgebra once =
            va_deformed(L, VL, ModuleStructure::conv(ModuleStructure::ymf(pf->f), ModuleStructure::ymf(pg->f)));
        const VertexAlgebra sum = deformed(L, pf->f + pg->f);
        for (auto& [u, v] : pairs)
            out.push_back(run_check(S, "composition f=" + pf->name + " g=" + pg->name + " " + pair_name(u, v),
                                    [&]() -> std::optional<Mismatch> {
                                        int hi = c.hi_from(pole_bound_VL(L, u, v));
                                        SeriesState a = twice.Y(u, v, hi);
                                        if (auto m = compare_series(once.Y(u, v, hi), a, c.lo())) return m;
                                        return compare_series(sum.Y(u, v, hi), a, c.lo());
                                    }));
    }
    return out;
}

Recs suite_s_operator(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const int r = L.rank(), s2 = c.tr().span2;
    const int hi = std::min(c.tr().xhi, c.tr().span);
    const std::string S = "s-operator";
    const State one = c.vac();

    std::vector<NamedMap> maps = c.maps;
    DeformationMap sym(r);
    for (int i = 0; i < r; ++i) sym.F[i][i][2] = Scalar(1);
    bool have = false;
    for (auto& m : maps) have = have || m.f == sym;
    if (!have) maps.push_back({"sym-x2", sym});

    auto gpairs = all_pairs(c.gens);
    auto cpairs = sample_pairs(c.composite, c.samples, c.tr().composite);
    auto D = [&](const Monomial& m) { return D_VL(L, State(m)); };

    for (auto& nm : maps) {
        const DeformationMap& f = nm.f;
        const std::string tag = " f=" + nm.name + " ";
        const bool configured = nm.name != "sym-x2" || have;

        for (auto& [v, u] : gpairs)
            out.push_back(run_check(S, "generator value" + tag + "v=" + sname(v) + " u=" + sname(u), [&] {
                Gen V = gen_of(v), U = gen_of(u);
                SeriesTensor want(0, hi);
                Tensor vu = tensor(v, u);
                auto add_poly = [&](const Tensor& t, const Poly& p) {
                    for (auto& [e, cf] : p) want.add(e, t, cf);
                };
                if (V.is_h && U.is_h) {
                    DeformationMap f2 = f_derive(f, 2);
                    add_poly(vu, Poly{{0, Scalar(1)}});
                    add_poly(tensor(one, one), poly_sum(f_pair(L, f2, V.v, U.v),
                                                        poly_scaled(poly_dilate(f_pair(L, f2, U.v, V.v), Scalar(-1)), Scalar(-1))));
                } else if (V.is_h) {
                    DeformationMap f1 = f_derive(f, 1);
                    add_poly(vu, Poly{{0, Scalar(1)}});
                    Poly p = poly_sum(poly_dilate(f_pair(L, f1, U.v, V.v), Scalar(-1)), f_pair(L, f1, V.v, U.v));
                    add_poly(tensor(one, u), poly_scaled(p, Scalar(-1)));
                } else if (U.is_h) {
                    DeformationMap f1 = f_derive(f, 1);
                    add_poly(vu, Poly{{0, Scalar(1)}});
                    Poly p = poly_sum(f_pair(L, f1, V.v, U.v), poly_dilate(f_pair(L, f1, U.v, V.v), Scalar(-1)));
                    add_poly(tensor(v, one), p);
                } else {
                    Poly E = poly_sum(poly_dilate(f_pair(L, f, U.v, V.v), Scalar(-1)),
                                      poly_scaled(f_pair(L, f, V.v, U.v), Scalar(-1)));
                    add_poly(vu, exp_poly(E, hi));
                }
                return compare_series(want, S_apply(L, f, vu, hi));
            }));

        if (is_symmetric(L, f))
            for (auto& [v, u] : gpairs)
                out.push_back(run_check(S, "symmetric map is trivial" + tag + "v=" + sname(v) + " u=" + sname(u), [&] {
                    SeriesTensor want(0, hi);
                    want.add(0, tensor(v, u));
                    return compare_series(want, S_apply(L, f, tensor(v, u), hi));
                }));
        if (!configured) continue;

        auto both = gpairs;
        both.insert(both.end(), cpairs.begin(), cpairs.end());
        for (auto& [v, u] : both) {
            out.push_back(run_check(S, "unitarity" + tag + "v=" + sname(v) + " u=" + sname(u), [&] {
                SeriesTensor first = series_dilate(S_apply(L, f, tensor(v, u), hi), Scalar(-1));
                SeriesTensor got(0, hi);
                for (auto& [e, t] : first.t)
                    for (auto& [k, s] : S_apply_slots(L, f, t, 1, 0, hi - e).t) got.add(e + k, s);
                SeriesTensor want(0, hi);
                want.add(0, tensor(v, u));
                return compare_series(want, got);
            }));
            out.push_back(run_check(S, "shift" + tag + "v=" + sname(v) + " u=" + sname(u), [&] {
                SeriesTensor s = S_apply(L, f, tensor(v, u), hi + 1);
                SeriesTensor lhs(0, hi);
                for (auto& [e, t] : s.t) lhs.add(e, map_slot_state(t, 0, D));
                for (auto& [e, t] : S_apply(L, f, tensor(D_VL(L, v), u), hi).t) lhs.add(e, t, Scalar(-1));
                return compare_series(series_scaled(series_d(s), Scalar(-1)), lhs);
            }));
        }

        // triples: all generator triples, then composite ones
        std::vector<std::tuple<State, State, State>> tri;
        for (auto& a : c.gens)
            for (auto& b : c.gens)
                for (auto& d : c.gens) tri.emplace_back(a, b, d);
        tri = stride(tri, c.tr().triples);
        for (size_t k = 0; k < cpairs.size(); ++k)
            tri.emplace_back(cpairs[k].first, cpairs[k].second, c.samples[(k * 7) % c.samples.size()]);
        const VertexAlgebra Yf = deformed(L, f);
        for (auto& [a, b, d] : tri) {
            out.push_back(run_check(S, "Yang-Baxter" + tag + "a=" + sname(a) + " b=" + sname(b) + " c=" + sname(d), [&] {
                TotalSeries t;
                t.N = s2 + 1;
                t.add(0, 0, tensor3(a, b, d));
                TotalSeries lhs = apply_S(L, f, apply_S(L, f, apply_S(L, f, t, 1, 2, Arg::Z), 0, 2, Arg::XZ), 0, 1, Arg::X);
                TotalSeries rhs = apply_S(L, f, apply_S(L, f, apply_S(L, f, t, 0, 1, Arg::X), 0, 2, Arg::XZ), 1, 2, Arg::Z);
                return compare_total(rhs, lhs);
            }));
        }
        // hexagon on a lighter set: generator pairs with a rotating third slot, plus composites
        std::vector<std::tuple<State, State, State>> hex;
        for (size_t k = 0; k < gpairs.size(); ++k)
            hex.emplace_back(gpairs[k].first, gpairs[k].second, c.gens[k % c.gens.size()]);
        for (size_t k = 0; k < cpairs.size(); ++k)
            hex.emplace_back(cpairs[k].first, cpairs[k].second, c.samples[(k * 5) % c.samples.size()]);
        for (auto& [a, b, d] : hex) {
            out.push_back(run_check(S, "hexagon" + tag + "a=" + sname(a) + " b=" + sname(b) + " c=" + sname(d), [&] {
                const int V = Yf.pole(a, b);
                const int Xhi = s2, Zhi = V + s2;
                Series2Tensor lhs;
                lhs.val1 = 0, lhs.hi1 = Xhi, lhs.val2 = V, lhs.hi2 = Zhi;
                for (auto& [e, y] : Yf.Y(a, b, Zhi).t)
                    for (auto& [k, t] : S_apply(L, f, tensor(y, d), Xhi).t) lhs.add(k, e, t);
                TotalSeries t;
                t.N = Xhi + Zhi - V;
                t.add(0, 0, tensor3(a, b, d));
                TotalSeries mid = apply_S(L, f, apply_S(L, f, t, 0, 2, Arg::XZ), 1, 2, Arg::X);
                Series2Tensor rhs;
                rhs.val1 = 0, rhs.hi1 = Xhi, rhs.val2 = V, rhs.hi2 = Zhi;
                for (auto& [key, tt] : mid.t) {
                    auto [i, j] = key;
                    if (i > Xhi || j > Zhi - V) continue;
                    for (auto& [k3, cf] : tt.terms())
                        for (auto& [e, y] : Yf.Y(State(k3[0]), State(k3[1]), Zhi - j).t)
                            rhs.add(i, j + e, tensor(y, State(k3[2])), cf);
                }
                return compare_series2(rhs, lhs);
            }));
        }
    }
    return out;
}

Recs suite_equivariance(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const std::string S = "equivariance";
    for (size_t gi = 0; gi < c.cfg.groups.size(); ++gi) {
        const auto& G = c.cfg.groups[gi];
        const std::string gname = "group " + std::to_string(gi + 1);
        for (auto& nm : c.maps) {
            const DeformationMap eta = eta_average(nm.f, G);
            const VertexAlgebra Y = deformed(L, eta);
            for (size_t k = 0; k < G.size(); ++k) {
                const Isometry& g = G[k];
                const std::string tag = gname + "." + std::to_string(k + 1) + " g=" + nm.name + " ";
                out.push_back(run_check(S, tag + "averaged map is equivariant", [&]() -> std::optional<Mismatch> {
                    if (eta_equivariant(eta, g)) return std::nullopt;
                    return fail("eta", "equivariant", "not equivariant");
                }));
                for (auto& [v, w] : rotate(c.samples, c.samples, c.tr().per_relation)) {
                    out.push_back(run_check(S, tag + "v=" + sname(v) + " w=" + sname(w), [&] {
                        int hi = c.hi_from(Y.pole(v, w));
                        SeriesState lhs = series_map<State, State>(Y.Y(v, w, hi), [&](const State& s) { return R_apply(L, g, s); });
                        SeriesState rhs = series_dilate(Y.Y(R_apply(L, g, v), R_apply(L, g, w), hi), g.chi);
                        return compare_series(rhs, lhs, c.lo());
                    }));
                }
            }
        }
    }
    return out;
}

Recs suite_bleps(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    auto pairs = all_pairs(c.gens);
    auto comp = sample_pairs(c.composite, c.samples, c.tr().pairs);
    pairs.insert(pairs.end(), comp.begin(), comp.end());
    for (auto& [u, v] : pairs)
        out.push_back(run_check("bleps-recovery", pair_name(u, v), [&] {
            int hi = c.hi_from(pole_bound_VL(L, u, v));
            return compare_series(Y_VL(L, u, v, hi), deformed_Y(L, DeformationMap(L.rank()), u, v, hi, Algebra::BLeps),
                                  c.lo());
        }));
    return out;
}

}  // namespace vlat::detail
