#include <algorithm>

#include "verifier_internal.hpp"

namespace vlat::detail {

namespace {

std::vector<LatticeVec> box_vectors(int r, int box) {
    std::vector<LatticeVec> out;
    LatticeVec v(r, -box);
    while (true) {
        out.push_back(v);
        int k = r - 1;
        while (k >= 0 && v[k] == box) v[k--] = -box;
        if (k < 0) break;
        ++v[k];
    }
    return out;
}

// (x1 - x2)^k as a polynomial
std::map<std::pair<int, int>, Scalar> diff_power(int k) {
    std::map<std::pair<int, int>, Scalar> p;
    for (int j = 0; j <= k; ++j) {
        Scalar c(binomial_int(k, j));
        p[{k - j, j}] = j % 2 ? -c : c;
    }
    return p;
}

// generator pairs x samples, every pair at least once
template <class P>
std::vector<std::pair<P, State>> rotate(const std::vector<P>& pairs, const std::vector<State>& samples, size_t cap) {
    std::vector<std::pair<P, State>> out;
    if (pairs.empty() || samples.empty()) return out;
    size_t n = std::max(pairs.size(), std::min(cap, samples.size()));
    auto ws = stride(samples, n);
    for (size_t k = 0; k < n; ++k) out.emplace_back(pairs[k % pairs.size()], ws[k % ws.size()]);
    return out;
}

std::string triple_name(const State& u, const State& v, const State& w) {
    return "u=" + sname(u) + " v=" + sname(v) + " w=" + sname(w);
}

}  // namespace

Recs suite_heisenberg(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const int r = L.rank(), B = 3;
    for (auto& v : c.samples)
        out.push_back(run_check("heisenberg", "[h(m),h'(n)] on " + sname(v), [&]() -> std::optional<Mismatch> {
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    for (int m = -B; m <= B; ++m)
                        for (int n = -B; n <= B; ++n) {
                            State lhs = heis_basis(L, i, m, heis_basis(L, j, n, v)) -
                                        heis_basis(L, j, n, heis_basis(L, i, m, v));
                            State rhs = m + n == 0 ? v.scaled(Scalar(m * L.gram_entry(i, j))) : State();
                            std::string where = "i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
                                                " m=" + std::to_string(m) + " n=" + std::to_string(n);
                            if (auto mm = compare_states(rhs, lhs, where)) return mm;
                        }
            return std::nullopt;
        }));
    for (auto& v : c.samples)
        out.push_back(run_check("heisenberg", "D vs B_L derivation on " + sname(v), [&] {
            return compare_states(derive_B(v), D_VL(L, v), "D");
        }));
    return out;
}

Recs suite_cocycle(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    auto box = box_vectors(L.rank(), 3);
    for (auto& a : box)
        out.push_back(run_check("cocycle", "2-cocycle and commutator at a=" + vec_str(a), [&]() -> std::optional<Mismatch> {
            for (auto& b : box) {
                int comm = L.cocycle_sign(a, b) * L.cocycle_sign(b, a);
                int want = L.pairing(a, b) % 2 ? -1 : 1;
                if (comm != want)
                    return fail("b=" + vec_str(b), std::to_string(want), std::to_string(comm));
                for (auto& g : box) {
                    int lhs = L.cocycle_sign(a, b + g) * L.cocycle_sign(b, g);
                    int rhs = L.cocycle_sign(a + b, g) * L.cocycle_sign(a, b);
                    if (lhs != rhs)
                        return fail("b=" + vec_str(b) + " c=" + vec_str(g), std::to_string(rhs), std::to_string(lhs));
                }
            }
            return std::nullopt;
        }));
    for (size_t gi = 0; gi < c.cfg.groups.size(); ++gi)
        for (size_t k = 0; k < c.cfg.groups[gi].size(); ++k) {
            const Isometry& g = c.cfg.groups[gi][k];
            out.push_back(run_check("cocycle", "isometry " + std::to_string(gi + 1) + "." + std::to_string(k + 1),
                                    [&]() -> std::optional<Mismatch> {
                                        for (auto& a : box)
                                            for (auto& b : box) {
                                                long p = L.pairing(a, b), q = L.pairing(g.apply(a), g.apply(b));
                                                if (p != q)
                                                    return fail(vec_str(a) + "," + vec_str(b), std::to_string(p),
                                                                std::to_string(q));
                                                int s = L.cocycle_sign(a, b), t = L.cocycle_sign(g.apply(a), g.apply(b));
                                                if (s != t)
                                                    return fail("eps " + vec_str(a) + "," + vec_str(b),
                                                                std::to_string(s), std::to_string(t));
                                            }
                                        return std::nullopt;
                                    }));
        }
    return out;
}

Recs suite_va_axioms(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const VertexAlgebra VL = va_VL(L);
    const State one = c.vac();
    const int s2 = c.tr().span2;

    for (auto& v : c.samples)
        out.push_back(run_check("va-axioms", "creation Y(v,x)1 for v=" + sname(v), [&]() -> std::optional<Mismatch> {
            int hi = std::min(c.tr().xhi, c.tr().span);
            SeriesState Y = Y_VL(L, v, one, hi);
            SeriesState want(0, hi);
            State d = v;
            mpz_class fact = 1;
            for (int n = 0; n <= hi; ++n) {
                if (n) fact *= n;
                want.add(n, d, Scalar(mpq_class(1, fact)));
                d = derive_B(d);
            }
            return compare_series(want, Y, c.lo());
        }));

    for (auto& [u, w] : sample_pairs(c.samples, c.samples, c.tr().pairs))
        out.push_back(run_check("va-axioms", "D-bracket u=" + sname(u) + " w=" + sname(w), [&]() -> std::optional<Mismatch> {
            int hi = c.hi_from(pole_bound_VL(L, u, w));
            SeriesState S = Y_VL(L, u, w, hi + 1);
            SeriesState dS = series_d(S);
            if (auto m = compare_series(dS, Y_VL(L, D_VL(L, u), w, hi), c.lo())) return m;
            SeriesState comm = series_map<State, State>(S, [&](const State& s) { return D_VL(L, s); });
            comm = series_sum(truncate(comm, hi), Y_VL(L, u, D_VL(L, w), hi), Scalar(-1));
            return compare_series(dS, comm, c.lo());
        }));

    auto skew = [&](const State& u, const State& v) -> std::optional<Mismatch> {
        int hi = c.hi_from(pole_bound_VL(L, u, v));
        SeriesState lhs = Y_VL(L, u, v, hi);
        SeriesState R = series_dilate(Y_VL(L, v, u, hi), Scalar(-1));
        SeriesState rhs(R.val, hi);
        for (auto& [e, s] : R.t) {
            State d = s;
            mpz_class fact = 1;
            for (int j = 0; e + j <= hi && !d.is_zero(); ++j) {
                if (j) fact *= j;
                rhs.add(e + j, d, Scalar(mpq_class(1, fact)));
                d = D_VL(L, d);
            }
        }
        return compare_series(rhs, lhs, c.lo());
    };
    for (auto& u : c.gens)
        for (auto& v : c.gens)
            out.push_back(run_check("va-axioms", "skew symmetry u=" + sname(u) + " v=" + sname(v), [&] { return skew(u, v); }));
    for (auto& [u, v] : sample_pairs(c.composite, c.samples, c.tr().pairs))
        out.push_back(run_check("va-axioms", "skew symmetry u=" + sname(u) + " v=" + sname(v), [&] { return skew(u, v); }));

    // locality on generator pairs with the stated order
    std::vector<std::pair<State, State>> gp;
    for (auto& a : c.gens)
        for (auto& b : c.gens) gp.emplace_back(a, b);
    for (auto& [ab, w] : rotate(gp, c.samples, c.tr().per_relation)) {
        auto& [a, b] = ab;
        int k;
        if (heis_index(a) >= 0 && heis_index(b) >= 0) k = 2;
        else if (heis_index(a) >= 0 || heis_index(b) >= 0) k = 1;
        else k = std::max<long>(0, -L.pairing(label(a), label(b)));
        out.push_back(run_check("va-axioms", "locality k=" + std::to_string(k) + " " + triple_name(a, b, w), [&] {
            int H1 = pole_bound_VL(L, a, w) + s2, H2 = pole_bound_VL(L, b, w) + s2;
            auto p = diff_power(k);
            return compare_series2(series2_mul_poly(prod21(VL, a, b, w, H1, H2), p),
                                   series2_mul_poly(prod12(VL, a, b, w, H1, H2), p));
        }));
    }
    // composite pairs: smallest k that works in-window, searched up to -pole
    for (auto& [pr, w] : rotate(sample_pairs(c.composite, c.composite, c.tr().composite), c.samples, 0)) {
        auto& [a, b] = pr;
        CheckRecord rec = run_check("va-axioms", "locality search " + triple_name(a, b, w), [&]() -> std::optional<Mismatch> {
            int kmax = std::max(0, -pole_bound_VL(L, a, b));
            int H1 = pole_bound_VL(L, a, w) + s2, H2 = pole_bound_VL(L, b, w) + s2;
            auto A = prod12(VL, a, b, w, H1, H2), B = prod21(VL, a, b, w, H1, H2);
            std::optional<Mismatch> last;
            for (int k = 0; k <= kmax; ++k) {
                last = compare_series2(series2_mul_poly(B, diff_power(k)), series2_mul_poly(A, diff_power(k)));
                if (!last) return std::nullopt;
            }
            return last;
        });
        out.push_back(rec);
    }

    // weak associativity
    std::vector<std::tuple<State, State, State>> triples;
    {
        size_t n = c.samples.size(), total = n * n * n, want = std::min<size_t>(total, c.tr().triples);
        for (size_t k = 0; k < want; ++k) {
            size_t idx = k * total / want;
            // rotate the index so that the three coordinates all move
            size_t i = idx % n, j = (idx / n + k) % n, l = (idx / (n * n) + 2 * k) % n;
            triples.emplace_back(c.samples[i], c.samples[j], c.samples[l]);
        }
    }
    for (auto& [u, v, w] : triples)
        out.push_back(run_check("va-axioms", "weak associativity " + triple_name(u, v, w), [&]() -> std::optional<Mismatch> {
            int Puw = pole_bound_VL(L, u, w);
            SeriesState yuw = Y_VL(L, u, w, std::max(Puw, -1));
            int lowest = yuw.t.empty() ? yuw.hi + 1 : yuw.t.begin()->first;
            int l = std::max(0, -lowest);
            int X0 = pole_bound_VL(L, u, v) + s2;
            int V2 = pole_bound_VL(L, v, w);
            int H2 = V2 + s2;
            int H1 = X0 - l + (H2 - V2);
            Series2State F = prod12(VL, u, v, w, H1, H2);
            Series2State lhs = series2_shift_subst(F, l);

            Series2State rhs;
            rhs.val1 = lhs.val1, rhs.hi1 = X0, rhs.val2 = lhs.val2, rhs.hi2 = H2;
            SeriesState cuv = Y_VL(L, u, v, X0);
            for (auto& [a, ca] : cuv.t) {
                SeriesState y = Y_VL(L, ca, w, H2);
                for (auto& [e, s] : y.t)
                    for (int k = 0; k <= l; ++k) rhs.add(a + k, e + l - k, s, Scalar(binomial_int(l, k)));
            }
            rhs.val1 = std::min(rhs.val1, cuv.val);
            if (auto m = compare_series2(rhs, lhs)) return m;
            return std::nullopt;
        }));
    return out;
}

Recs suite_al(const Ctx& c) {
    Recs out;
    const Lattice& L = c.L;
    const VertexAlgebra VL = va_VL(L);
    const int r = L.rank(), s2 = c.tr().span2;
    const size_t cap = c.tr().per_relation;
    const std::string S = "AL1-7";

    for (auto& w : c.samples)
        out.push_back(run_check(S, "AL1 e_0[z] on " + sname(w), [&] {
            int hi = c.tr().xhi;
            SeriesState want(0, hi);
            want.add(0, w);
            return compare_series(want, Y_VL(L, c.vac(), w, hi), c.lo());
        }));

    std::vector<State> hs, es;
    for (int i = 0; i < r; ++i) hs.push_back(heis_generator(r, i));
    for (auto& a : c.roots) es.push_back(lattice_state(a));
    auto pairs_of = [](const std::vector<State>& a, const std::vector<State>& b) {
        std::vector<std::pair<State, State>> p;
        for (auto& x : a)
            for (auto& y : b) p.emplace_back(x, y);
        return p;
    };

    // A - B for u at x1 and v at x2, exact on the box
    auto commutator = [&](const State& u, const State& v, const State& w, int& H1, int& H2) {
        H1 = pole_bound_VL(L, u, w) + s2;
        H2 = pole_bound_VL(L, v, w) + s2;
        return series2_sum(prod12(VL, u, v, w, H1, H2), prod21(VL, u, v, w, H1, H2), Scalar(-1));
    };

    for (auto& [hh, w] : rotate(pairs_of(hs, hs), c.samples, cap)) {
        auto& [h, k] = hh;
        out.push_back(run_check(S, "AL2 " + triple_name(h, k, w), [&] {
            int H1, H2;
            Series2State C = commutator(h, k, w, H1, H2);
            Series2State rhs;
            rhs.val1 = C.val1, rhs.hi1 = H1, rhs.val2 = C.val2, rhs.hi2 = H2;
            long g = L.gram_entry(heis_index(h), heis_index(k));
            for (int a = C.val1; a <= H1; ++a) rhs.add(a, -2 - a, w, Scalar(g * (-a - 1)));
            return compare_series2(rhs, C);
        }));
    }

    for (auto& [he, w] : rotate(pairs_of(hs, es), c.samples, cap)) {
        auto& [h, e] = he;
        out.push_back(run_check(S, "AL3 " + triple_name(h, e, w), [&] {
            int H1, H2;
            Series2State C = commutator(h, e, w, H1, H2);
            long g = L.pairing(L.basis(heis_index(h)), label(e));
            SeriesState y = series_scaled(Y_VL(L, e, w, H1 + H2 + 1), Scalar(g));
            return compare_series2(delta_terms({y}, std::min(C.val1, y.val - H2 - 1), H1, C.val2, H2), C);
        }));
    }

    for (auto& [ee, w] : rotate(pairs_of(es, es), c.samples, cap)) {
        auto& [a, b] = ee;
        long ab = L.pairing(label(a), label(b));
        std::string tag = ab >= 0 ? "AL4 " : "AL5 ";
        out.push_back(run_check(S, tag + triple_name(a, b, w), [&] {
            int H1, H2;
            Series2State C = commutator(a, b, w, H1, H2);
            if (ab < 0) C = series2_mul_poly(C, diff_power(static_cast<int>(-ab)));
            Series2State zero;
            zero.hi1 = C.hi1, zero.hi2 = C.hi2;
            return compare_series2(zero, C);
        }));
    }

    for (auto& [ea, w] : rotate(pairs_of(es, {c.vac()}), c.samples, cap)) {
        const State& e = ea.first;
        out.push_back(run_check(S, "AL6 e=" + sname(e) + " w=" + sname(w), [&] {
            const LatticeVec al = label(e);
            auto h = hvec(al);
            int hi = c.hi_from(pole_bound_VL(L, e, w));
            SeriesState y = Y_VL(L, e, w, hi + 1);
            SeriesState lhs = series_d(y);
            SeriesState rhs(lhs.val - heis_weight(w) - 1, hi);
            for (auto& [k, s] : y.t)
                for (int n = 1; k + n - 1 <= hi; ++n) rhs.add(k + n - 1, heis_act(L, h, -n, s));
            for (int n = 0; n <= heis_weight(w); ++n) {
                State an = heis_act(L, h, n, w);
                if (an.is_zero()) continue;
                for (auto& [k, s] : Y_VL(L, e, an, hi + n + 1).t) rhs.add(k - n - 1, s);
            }
            return compare_series(rhs, lhs, c.lo());
        }));
    }

    for (auto& [ee, w] : rotate(pairs_of(es, es), c.samples, cap)) {
        auto& [a, b] = ee;
        out.push_back(run_check(S, "AL7 residue " + triple_name(a, b, w), [&] {
            const LatticeVec al = label(a), be = label(b);
            const int N = static_cast<int>(-L.pairing(al, be) - 1);
            State eab = lattice_state(al + be);
            int T2 = pole_bound_VL(L, eab, w) + s2 + 1;
            // x^{-1} must survive the binomial expansion on both sides
            int val2A = pole_bound_VL(L, b, w), val1B = pole_bound_VL(L, a, w);
            int JA = T2 - val2A, JB = -1 - val1B;
            if (N >= 0) JA = std::min(JA, N), JB = std::min(JB, N);
            JA = std::max(JA, 0), JB = std::max(JB, 0);
            int H1A = -1 - N + JA, H2B = T2 - N + JB;
            Series2State A = compose(field(VL, a), field(VL, b), w, H1A, T2, true);
            Series2State B = compose(field(VL, b), field(VL, a), w, H2B, -1, false);
            Series2State lhs = series2_sum(series2_mul_binom(A, N, Direction::X1Major),
                                           series2_mul_binom(B, N, Direction::X2Major), Scalar(-1));
            SeriesState res = series2_row(lhs, -1);
            SeriesState want = series_scaled(Y_VL(L, eab, w, T2), L.cocycle(al, be));
            return compare_series(want, res);
        }));
    }
    return out;
}

}  // namespace vlat::detail
