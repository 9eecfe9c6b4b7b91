#include "vlat/vertex.hpp"

#include <stdexcept>

namespace vlat {

namespace {

std::vector<Scalar> to_scalars(const LatticeVec& g) {
    std::vector<Scalar> h;
    h.reserve(g.size());
    for (int c : g) h.emplace_back(c);
    return h;
}

// gamma(-n)1 with the vacuum label
State creation_state(const LatticeVec& gamma, int n) {
    int r = static_cast<int>(gamma.size());
    State s;
    for (int i = 0; i < r; ++i)
        if (gamma[i]) s.add(Monomial({Part{i, n}}, LatticeVec(r, 0)), Scalar(gamma[i]));
    return s;
}

// Coefficients of E^{-}(gamma, x)1 up to x^deg. n E_n = -sum_k gamma(-k) E_{n-k}.
std::vector<State> minus_coeffs(const LatticeVec& gamma, int deg) {
    thread_local std::map<LatticeVec, std::vector<State>> cache;
    auto& E = cache[gamma];
    if (E.empty()) E.push_back(vacuum(static_cast<int>(gamma.size())));
    while (static_cast<int>(E.size()) <= deg) {
        int n = static_cast<int>(E.size());
        State acc;
        for (int k = 1; k <= n; ++k) acc += mul_BL(creation_state(gamma, k), E[n - k]);
        E.push_back(acc.scaled(Scalar(-1, n)));
    }
    return std::vector<State>(E.begin(), E.begin() + std::max(deg + 1, 0));
}

// E^{+}(gamma, x)v as pairs (N, coefficient of x^{-N}); N E_N = sum_k gamma(k) E_{N-k}.
std::vector<State> plus_coeffs(const Lattice& L, const LatticeVec& gamma, const State& v) {
    std::vector<State> E{v};
    int top = heis_weight(v);
    auto h = to_scalars(gamma);
    for (int N = 1; N <= top; ++N) {
        State acc;
        for (int k = 1; k <= N; ++k)
            if (!E[N - k].is_zero()) acc += heis_act(L, h, k, E[N - k]);
        E.push_back(acc.scaled(Scalar(1, N)));
    }
    return E;
}

// truncated product of two power series with State coefficients
std::vector<State> poly_mul(const std::vector<State>& a, const std::vector<State>& b, int deg) {
    std::vector<State> r(deg + 1);
    for (int i = 0; i <= deg && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= deg && j < static_cast<int>(b.size()); ++j)
            if (!b[j].is_zero()) r[i + j] += mul_BL(a[i], b[j]);
    }
    return r;
}

void add_to(std::map<int, State>& m, int e, const State& s, const Scalar& c = Scalar(1)) {
    if (s.is_zero() || c.is_zero()) return;
    auto& slot = m[e];
    slot.add_scaled(s, c);
    if (slot.is_zero()) m.erase(e);
}

// Normal-ordered field of one monomial applied to w.
SeriesState Y_VL_mono(const Lattice& L, const Monomial& u, const State& w, int hi, int val) {
    const int m = static_cast<int>(u.parts.size());
    const int r = L.rank();
    const LatticeVec& beta = u.beta;
    const LatticeVec neg = -beta;

    // annihilation halves (modes n >= 0) for every subset of factors
    std::vector<std::map<int, State>> R(1u << m);
    R[0][0] = w;
    for (int k = 0; k < m; ++k) {
        auto [i, nk] = u.parts[k];
        for (int mask = 0; mask < (1 << k); ++mask) {
            for (auto& [e, s] : R[mask]) {
                int top = heis_weight(s);
                for (int n = 0; n <= top; ++n) {
                    State t = heis_basis(L, i, n, s);
                    if (t.is_zero()) continue;
                    add_to(R[mask | (1 << k)], e - n - nk, t, Scalar(binomial_int(-n - 1, nk - 1)));
                }
            }
        }
    }

    SeriesState out(val, hi);
    std::map<int, std::vector<State>> creation_cache;
    for (int mask = 0; mask < (1 << m); ++mask) {
        if (R[mask].empty()) continue;
        // x^{beta} e_beta, then E^{+}(-beta, x)
        std::map<int, State> grouped;
        for (auto& [e, s] : R[mask])
            for (auto& [q, c] : s.terms()) {
                int e2 = e + static_cast<int>(L.pairing(beta, q.beta));
                add_to(grouped, e2, State(Monomial(q.parts, q.beta + beta)), c * L.cocycle(beta, q.beta));
            }
        std::map<int, State> B;
        for (auto& [e, s] : grouped) {
            auto P = plus_coeffs(L, neg, s);
            for (int N = 0; N < static_cast<int>(P.size()); ++N) add_to(B, e - N, P[N]);
        }
        if (B.empty()) continue;
        int D = hi - B.begin()->first;
        if (D < 0) continue;

        // E^{-}(-beta, x) times the creation halves of factors outside the mask
        std::vector<State> C = minus_coeffs(neg, D);
        for (int k = 0; k < m; ++k) {
            if (mask & (1 << k)) continue;
            auto [i, nk] = u.parts[k];
            std::vector<State> Ck(D + 1);
            for (int d = 0; d <= D; ++d)
                Ck[d] = State(Monomial({Part{i, d + nk}}, LatticeVec(r, 0)), Scalar(binomial_int(d + nk - 1, nk - 1)));
            C = poly_mul(C, Ck, D);
        }
        for (auto& [e, s] : B)
            for (int d = 0; e + d <= hi; ++d)
                if (!C[d].is_zero()) out.add(e + d, mul_BL(C[d], s));
    }
    return out;
}

}  // namespace

SeriesState E_apply(const Lattice& L, int sign, const LatticeVec& gamma, const State& v, int hi) {
    if (sign > 0) {
        auto P = plus_coeffs(L, gamma, v);
        SeriesState out(-heis_weight(v), hi);
        for (int N = 0; N < static_cast<int>(P.size()); ++N) out.add(-N, P[N]);
        return out;
    }
    SeriesState out(0, hi);
    auto C = minus_coeffs(gamma, hi);
    for (int n = 0; n <= hi; ++n) out.add(n, mul_BL(C[n], v));
    return out;
}

int pole_bound_VL(const Lattice& L, const State& u, const State& w) {
    long best = kPosInf;
    for (auto& [a, ca] : u.terms())
        for (auto& [b, cb] : w.terms())
            best = std::min(best, L.pairing(a.beta, b.beta) - a.heis_weight() - b.heis_weight());
    return static_cast<int>(best == kPosInf ? 0 : best);
}

SeriesState Y_VL(const Lattice& L, const State& u, const State& w, int hi) {
    int val = pole_bound_VL(L, u, w);
    SeriesState out(val, hi);
    if (hi < val) return out;
    for (auto& [um, c] : u.terms()) {
        auto part = Y_VL_mono(L, um, w, hi, val);
        for (auto& [e, s] : part.t) out.add(e, s, c);
    }
    return out;
}

namespace {

SeriesState Y_commutative(const State& a, const State& b, int hi, const std::function<State(const State&, const State&)>& mul,
                          Variant variant) {
    SeriesState out(0, hi);
    State d = a;
    mpz_class fact = 1;
    for (int k = 0; k <= hi && !d.is_zero(); ++k) {
        if (k > 0) fact *= k;
        out.add(k, mul(d, b), Scalar(mpq_class(1, fact)));
        d = derive_B(d, variant);
    }
    return out;
}

}  // namespace

SeriesState Y_BL(const State& a, const State& b, int hi) {
    return Y_commutative(a, b, hi, [](const State& p, const State& q) { return mul_BL(p, q); }, Variant::BL);
}

SeriesState Y_BLeps(const Lattice& L, const State& a, const State& b, int hi) {
    return Y_commutative(
        a, b, hi, [&L](const State& p, const State& q) { return mul_BLeps(L, p, q); }, Variant::BLeps);
}

SeriesState Y_of(const Lattice& L, Algebra alg, const State& u, const State& w, int hi) {
    switch (alg) {
        case Algebra::VL: return Y_VL(L, u, w, hi);
        case Algebra::BL: return Y_BL(u, w, hi);
        case Algebra::BLeps: return Y_BLeps(L, u, w, hi);
        default: throw std::invalid_argument("the deformed algebra needs a deformation map");
    }
}

State D_VL(const Lattice& L, const State& v) { return Y_VL(L, v, vacuum(L.rank()), 1).coeff(1); }

State n_product(const FieldMap& Y, const State& u, int n, const State& v) { return Y(u, v, -n - 1).coeff(-n - 1); }

State n_product(const Lattice& L, const State& u, int n, const State& v, Algebra alg) {
    return n_product(field_map(L, alg), u, n, v);
}

FieldMap field_map(const Lattice& L, Algebra alg) {
    if (alg == Algebra::VLf) throw std::invalid_argument("the deformed algebra needs a deformation map");
    return [L, alg](const State& u, const State& v, int hi) { return Y_of(L, alg, u, v, hi); };
}

Field field_of(const FieldMap& Y, const State& u) {
    return [Y, u](const State& v, int hi) { return Y(u, v, hi); };
}

}  // namespace vlat
