#include "vlat/deformation.hpp"

#include <stdexcept>

namespace vlat {

namespace {

std::vector<Scalar> to_scalars(const LatticeVec& g) {
    std::vector<Scalar> h;
    for (int c : g) h.emplace_back(c);
    return h;
}

void add_shifted(SeriesState& out, const SeriesState& part, int shift, const Scalar& c = Scalar(1)) {
    for (auto& [k, v] : part.t) out.add(k + shift, v, c);
}

int min_exponent(const HVal& G) {
    int lo = kPosInf;
    for (auto& g : G)
        if (!g.empty()) lo = std::min(lo, g.begin()->first);
    return lo;
}

}  // namespace

bool DeformationMap::is_zero() const {
    for (auto& row : F)
        for (auto& p : row)
            if (!p.empty()) return false;
    return true;
}

bool DeformationMap::positive_support() const {
    for (auto& row : F)
        for (auto& p : row)
            if (!p.empty() && p.begin()->first <= 0) return false;
    return true;
}

HVal DeformationMap::value(const std::vector<Scalar>& h) const {
    int r = rank();
    HVal G(r);
    for (int i = 0; i < r; ++i) {
        if (h[i].is_zero()) continue;
        for (int j = 0; j < r; ++j)
            for (auto& [e, c] : F[i][j]) poly_add(G[j], e, h[i] * c);
    }
    return G;
}

HVal DeformationMap::value(const LatticeVec& h) const { return value(to_scalars(h)); }

DeformationMap DeformationMap::operator-() const {
    DeformationMap r = *this;
    for (auto& row : r.F)
        for (auto& p : row)
            for (auto& [e, c] : p) c = -c;
    return r;
}

DeformationMap operator+(const DeformationMap& a, const DeformationMap& b) {
    DeformationMap r = a;
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            for (auto& [e, c] : b.F[i][j]) poly_add(r.F[i][j], e, c);
    return r;
}

DeformationMap f_derive(const DeformationMap& f, int k) {
    DeformationMap r = f;
    for (auto& row : r.F)
        for (auto& p : row) p = poly_derive(p, k);
    return r;
}

Poly f_pair(const Lattice& L, const DeformationMap& f, const LatticeVec& a, const LatticeVec& b) {
    HVal G = f.value(a);
    Poly r;
    for (int j = 0; j < L.rank(); ++j) {
        long pj = L.pairing(L.basis(j), b);
        if (!pj) continue;
        for (auto& [e, c] : G[j]) poly_add(r, e, c * Scalar(pj));
    }
    return r;
}

bool is_symmetric(const Lattice& L, const DeformationMap& f) {
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j)
            if (f_pair(L, f, L.basis(i), L.basis(j)) != poly_dilate(f_pair(L, f, L.basis(j), L.basis(i)), Scalar(-1)))
                return false;
    return true;
}

SeriesState Phi_apply(const Lattice& L, const HVal& G, const State& v, int hi) {
    int lo = min_exponent(G);
    int top = heis_weight(v);
    SeriesState out(lo == kPosInf ? 0 : lo - top, hi);
    mpz_class fact = 1;
    for (int n = 0; n <= top; ++n) {
        if (n > 0) fact *= n;
        Scalar c(mpq_class(n % 2 ? -1 : 1, fact));
        for (int j = 0; j < static_cast<int>(G.size()); ++j) {
            if (G[j].empty()) continue;
            State s = heis_basis(L, j, n, v);
            if (s.is_zero()) continue;
            for (auto& [e, g] : poly_derive(G[j], n)) out.add(e, s, c * g);
        }
    }
    if (!out.t.empty()) out.val = std::min(out.val, out.t.begin()->first);
    return out;
}

SeriesState expPhi_apply(const Lattice& L, const HVal& G, const State& v, int hi) {
    for (auto& g : G)
        if (!g.empty() && g.begin()->first <= 0) throw NotFormallyNilpotent();
    SeriesState out(0, hi);
    SeriesState T(0, hi);
    T.add(0, v);
    out.add(0, v);
    // every application raises (exponent + lost Heisenberg weight) by at least one
    int steps = hi + heis_weight(v);
    for (int k = 1; k <= steps && !T.is_zero(); ++k) {
        SeriesState next(0, hi);
        for (auto& [e, s] : T.t) add_shifted(next, Phi_apply(L, G, s, hi - e), e, Scalar(1, k));
        T = std::move(next);
        for (auto& [e, s] : T.t) out.add(e, s);
    }
    return out;
}

Tensor rho(const State& v) { return coproduct_BL(v); }

ModuleStructure ModuleStructure::ymf(DeformationMap f) {
    if (!f.positive_support()) throw std::invalid_argument("deformation map needs zero constant term");
    ModuleStructure m;
    m.kind_ = Kind::Ymf;
    m.f_ = std::move(f);
    return m;
}

ModuleStructure ModuleStructure::inverse(DeformationMap f) {
    ModuleStructure m = ymf(std::move(f));
    m.kind_ = Kind::Ym_inverse;
    return m;
}

ModuleStructure ModuleStructure::eps() { return ModuleStructure(); }

ModuleStructure ModuleStructure::bleps() {
    ModuleStructure m;
    m.kind_ = Kind::Ym_BLeps;
    return m;
}

ModuleStructure ModuleStructure::conv(const ModuleStructure& a, const ModuleStructure& b) {
    ModuleStructure m;
    m.kind_ = Kind::Conv;
    m.l_ = std::make_shared<const ModuleStructure>(a);
    m.r_ = std::make_shared<const ModuleStructure>(b);
    return m;
}

namespace {

// Y_M^f on one monomial; the map is already negated for the inverse.
SeriesState ymf_mono(const Lattice& L, const DeformationMap& f, const Monomial& a, const State& v, int hi) {
    SeriesState s = expPhi_apply(L, f.value(a.beta), v, hi);
    for (auto& p : a.parts) {
        // a_i(-m) acts as Phi(f^{(m)}(a_i)) / (m-1)!
        HVal G = f_derive(f, p.mode).value(L.basis(p.idx));
        Scalar c(mpq_class(1, factorial(p.mode - 1)));
        SeriesState next(0, hi);
        for (auto& [e, st] : s.t) add_shifted(next, Phi_apply(L, G, st, hi - e), e, c);
        s = std::move(next);
    }
    return s;
}

// E^{+}(-g, x) x^{g(0)} and sum_n binom(-n-1, m-1) a_i(n) x^{-n-m}; finite, so
// computed in full and cut at the end
SeriesState bleps_mono(const Lattice& L, const Monomial& a, const State& v, int hi) {
    std::map<int, State> cur;
    LatticeVec neg = -a.beta;
    for (auto& [q, c] : v.terms()) {
        int e0 = static_cast<int>(L.pairing(a.beta, q.beta));
        State s(q, c);
        SeriesState P = E_apply(L, +1, neg, s, kPosInf);
        for (auto& [e, st] : P.t) cur[e0 + e] += st;
    }
    for (auto& p : a.parts) {
        std::map<int, State> next;
        for (auto& [e, s] : cur) {
            int top = heis_weight(s);
            for (int n = 0; n <= top; ++n) {
                State t = heis_basis(L, p.idx, n, s);
                if (t.is_zero()) continue;
                next[e - n - p.mode].add_scaled(t, Scalar(binomial_int(-n - 1, p.mode - 1)));
            }
        }
        cur = std::move(next);
    }
    SeriesState out(ym_pole_bound(L, ModuleStructure::bleps(), State(a), v), hi);
    for (auto& [e, s] : cur) out.add(e, s);
    return out;
}

}  // namespace

int ym_pole_bound(const Lattice& L, const ModuleStructure& M, const State& a, const State& v) {
    using K = ModuleStructure::Kind;
    switch (M.kind()) {
        case K::Ymf:
        case K::Ym_inverse:
        case K::Ym_eps: return 0;
        case K::Ym_BLeps: {
            long best = 0;
            bool any = false;
            for (auto& [am, ca] : a.terms())
                for (auto& [q, cq] : v.terms()) {
                    long b = L.pairing(am.beta, q.beta) - am.heis_weight() - q.heis_weight();
                    best = any ? std::min(best, b) : b;
                    any = true;
                }
            return static_cast<int>(best);
        }
        case K::Conv: {
            int best = kPosInf;
            for (Tensor d = coproduct_BL(a); auto& [key, c] : d.terms())
                best = std::min(best, ym_pole_bound(L, M.left(), State(key[0]), v) +
                                          ym_pole_bound(L, M.right(), State(key[1]), v));
            return best == kPosInf ? 0 : best;
        }
    }
    return 0;
}

SeriesState YM_apply(const Lattice& L, const ModuleStructure& M, const State& a, const State& v, int hi) {
    using K = ModuleStructure::Kind;
    if (M.kind() == K::Conv) return convolve_apply(L, M.left(), M.right(), a, v, hi);
    SeriesState out(ym_pole_bound(L, M, a, v), hi);
    if (M.kind() == K::Ym_eps) {
        out.add(0, v, counit_BL(a));
        return out;
    }
    DeformationMap f;
    if (M.kind() == K::Ymf) f = M.map();
    if (M.kind() == K::Ym_inverse) f = -M.map();
    for (auto& [am, c] : a.terms()) {
        SeriesState part = M.kind() == K::Ym_BLeps ? bleps_mono(L, am, v, hi) : ymf_mono(L, f, am, v, hi);
        add_shifted(out, part, 0, c);
    }
    return out;
}

SeriesState convolve_apply(const Lattice& L, const ModuleStructure& M1, const ModuleStructure& M2, const State& a,
                           const State& v, int hi) {
    SeriesState out(ym_pole_bound(L, ModuleStructure::conv(M1, M2), a, v), hi);
    for (Tensor d = coproduct_BL(a); auto& [key, c] : d.terms()) {
        State a1(key[0]), a2(key[1]);
        int V = ym_pole_bound(L, M1, a1, v);
        SeriesState s = YM_apply(L, M2, a2, v, hi - V);
        Field A = [&](const State& w, int h) { return YM_apply(L, M1, a1, w, h); };
        add_shifted(out, apply_field(A, s, hi, V), 0, c);
    }
    return out;
}

VertexAlgebra va_VL(const Lattice& L) {
    return {[L](const State& u, const State& v, int hi) { return Y_VL(L, u, v, hi); },
            [L](const State& u, const State& v) { return pole_bound_VL(L, u, v); }};
}

VertexAlgebra va_BL() {
    return {[](const State& u, const State& v, int hi) { return Y_BL(u, v, hi); },
            [](const State&, const State&) { return 0; }};
}

VertexAlgebra va_BLeps(const Lattice& L) {
    return {[L](const State& u, const State& v, int hi) { return Y_BLeps(L, u, v, hi); },
            [](const State&, const State&) { return 0; }};
}

namespace {

// rho(u) split per monomial as (u_(1), u_(2)) pairs with coefficients
std::vector<std::tuple<State, State, Scalar>> rho_terms(const State& u) {
    std::vector<std::tuple<State, State, Scalar>> out;
    for (Tensor d = rho(u); auto& [key, c] : d.terms()) out.emplace_back(State(key[0]), State(key[1]), c);
    return out;
}

}  // namespace

VertexAlgebra va_deformed(const Lattice& L, const VertexAlgebra& base, const ModuleStructure& M) {
    auto pole = [L, base, M](const State& u, const State& v) {
        int best = kPosInf;
        for (auto& [u1, u2, c] : rho_terms(u)) best = std::min(best, base.pole(u1, v) + ym_pole_bound(L, M, u2, v));
        return best == kPosInf ? 0 : best;
    };
    auto Y = [L, base, M, pole](const State& u, const State& v, int hi) {
        SeriesState out(pole(u, v), hi);
        for (auto& [u1, u2, c] : rho_terms(u)) {
            int V = base.pole(u1, v);
            SeriesState s = YM_apply(L, M, u2, v, hi - V);
            Field A = [&base, &u1](const State& w, int h) { return base.Y(u1, w, h); };
            add_shifted(out, apply_field(A, s, hi, V), 0, c);
        }
        return out;
    };
    return {Y, pole};
}

SeriesState deformed_Y(const Lattice& L, const DeformationMap& f, const State& u, const State& v, int hi,
                       Algebra base) {
    if (base == Algebra::BLeps) return va_deformed(L, va_BLeps(L), ModuleStructure::bleps()).Y(u, v, hi);
    return va_deformed(L, va_VL(L), ModuleStructure::ymf(f)).Y(u, v, hi);
}

SeriesTensor smash_Y(const Lattice& L, const VertexAlgebra& base, const ModuleStructure& M, const Tensor& uh,
                     const Tensor& vk, int hi) {
    SeriesTensor out(kPosInf, hi);
    for (auto& [a, ca] : uh.terms())
        for (auto& [b, cb] : vk.terms()) {
            State u(a[0]), h(a[1]), v(b[0]), k(b[1]);
            for (Tensor d = coproduct_BL(h); auto& [hk, ch] : d.terms()) {
                State h1(hk[0]), h2(hk[1]);
                int V = base.pole(u, v);
                SeriesState s = YM_apply(L, M, h1, v, hi - V);
                Field A = [&base, &u](const State& w, int hh) { return base.Y(u, w, hh); };
                SeriesState left = apply_field(A, s, hi, V);
                SeriesState right = Y_BL(h2, k, hi - left.val);
                SeriesTensor part = series_tensor(left, right);
                out.val = std::min(out.val, part.val);
                for (auto& [e, t] : part.t) out.add(e, t, ca * cb * ch);
            }
        }
    if (out.val == kPosInf) out.val = 0;
    return out;
}

SeriesTensor tensor_Y(const VertexAlgebra& A, const VertexAlgebra& B, const Tensor& u, const Tensor& v, int hi) {
    SeriesTensor out(kPosInf, hi);
    for (auto& [a, ca] : u.terms())
        for (auto& [b, cb] : v.terms()) {
            State u1(a[0]), u2(a[1]), v1(b[0]), v2(b[1]);
            int p1 = A.pole(u1, v1), p2 = B.pole(u2, v2);
            SeriesTensor part = series_tensor(A.Y(u1, v1, hi - p2), B.Y(u2, v2, hi - p1));
            out.val = std::min(out.val, part.val);
            for (auto& [e, t] : part.t) out.add(e, t, ca * cb);
        }
    if (out.val == kPosInf) out.val = 0;
    return out;
}

SeriesTensor S_apply(const Lattice& L, const DeformationMap& f, const Tensor& vu, int hi) {
    ModuleStructure M = ModuleStructure::ymf(f), Minv = ModuleStructure::inverse(f);
    SeriesTensor out(0, hi);
    for (auto& [key, c] : vu.terms()) {
        Tensor rv = rho(State(key[0])), ru = rho(State(key[1]));
        for (auto& [kv, cv] : rv.terms())
            for (auto& [ku, cu] : ru.terms()) {
                // Y_M(u_(2), -x) v_(1)  (x)  Y_M^{-1}(v_(2), x) u_(1)
                SeriesState left = series_dilate(YM_apply(L, M, State(ku[1]), State(kv[0]), hi), Scalar(-1));
                SeriesState right = YM_apply(L, Minv, State(kv[1]), State(ku[0]), hi);
                SeriesTensor part = series_tensor(left, right);
                for (auto& [e, t] : part.t) out.add(e, t, c * cv * cu);
            }
    }
    return out;
}

SeriesTensor S_apply_slots(const Lattice& L, const DeformationMap& f, const Tensor& t, int i, int j, int hi) {
    SeriesTensor out(0, hi);
    for (auto& [key, c] : t.terms()) {
        Tensor pair;
        pair.add(TensorKey{key[i], key[j]}, Scalar(1));
        SeriesTensor s = S_apply(L, f, pair, hi);
        for (auto& [e, res] : s.t) {
            Tensor placed;
            for (auto& [rk, rc] : res.terms()) {
                TensorKey nk = key;
                nk[i] = rk[0];
                nk[j] = rk[1];
                placed.add(nk, rc);
            }
            out.add(e, placed, c);
        }
    }
    return out;
}

Isometry isometry_inverse(const Isometry& g) {
    int n = static_cast<int>(g.g.size());
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = g.g[i][j];
        M[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int p = col;
        while (p < n && M[p][col] == 0) ++p;
        if (p == n) throw std::invalid_argument("singular isometry matrix");
        std::swap(M[p], M[col]);
        mpq_class piv = M[col][col];
        for (auto& x : M[col]) x /= piv;
        for (int r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            mpq_class k = M[r][col];
            for (int c = 0; c < 2 * n; ++c) M[r][c] -= k * M[col][c];
        }
    }
    Isometry inv;
    inv.g.assign(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (M[i][n + j].get_den() != 1) throw std::invalid_argument("isometry is not unimodular");
            inv.g[i][j] = M[i][n + j].get_num().get_si();
        }
    inv.chi = g.chi.inverse();
    return inv;
}

State R_apply(const Lattice& L, const Isometry& g, const State& v) {
    int r = L.rank();
    State out;
    for (auto& [m, c] : v.terms()) {
        State acc(Monomial(g.apply(m.beta)));
        for (auto& p : m.parts) {
            State img;
            for (int k = 0; k < r; ++k)
                if (g.g[k][p.idx]) img.add(Monomial({Part{k, p.mode}}, LatticeVec(r, 0)), Scalar(g.g[k][p.idx]));
            acc = mul_BL(acc, img);
        }
        out.add_scaled(acc, c * g.chi.pow(weight(m, L)));
    }
    return out;
}

DeformationMap eta_average(const DeformationMap& gmap, const std::vector<Isometry>& G) {
    int r = gmap.rank();
    DeformationMap eta(r);
    for (auto& s : G) {
        Isometry inv = isometry_inverse(s);
        Scalar c = s.chi.inverse();
        // (s^{-1})^T  g(c x)  s^T
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    if (!inv.g[l][i]) continue;
                    for (int j = 0; j < r; ++j) {
                        if (!s.g[k][j]) continue;
                        Scalar w = Scalar(inv.g[l][i] * s.g[k][j]);
                        for (auto& [e, a] : poly_dilate(gmap.F[l][j], c)) poly_add(eta.F[i][k], e, w * a);
                    }
                }
    }
    return eta;
}

bool eta_equivariant(const DeformationMap& eta, const Isometry& s) {
    int r = eta.rank();
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            Poly lhs, rhs;
            for (int j = 0; j < r; ++j)
                if (s.g[k][j])
                    for (auto& [e, a] : eta.F[i][j]) poly_add(lhs, e, a * Scalar(s.g[k][j]));
            for (int l = 0; l < r; ++l)
                if (s.g[l][i])
                    for (auto& [e, a] : poly_dilate(eta.F[l][k], s.chi)) poly_add(rhs, e, a * Scalar(s.g[l][i]));
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace vlat
