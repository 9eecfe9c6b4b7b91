#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <numeric>

#include "verifier_internal.hpp"

namespace vlat {

std::vector<LatticeVec> small_roots(const Lattice& L) {
    const int r = L.rank();
    std::vector<LatticeVec> out;
    // coordinates in {-1, 0, 1}, |<a,a>| <= 2
    LatticeVec v(r, -1);
    while (true) {
        bool nonzero = std::any_of(v.begin(), v.end(), [](int x) { return x != 0; });
        if (nonzero && std::abs(L.pairing(v, v)) <= 2) out.push_back(v);
        int k = 0;
        while (k < r && v[k] == 1) v[k++] = -1;
        if (k == r) break;
        ++v[k];
    }
    return out;
}

std::vector<State> generator_states(const Lattice& L) {
    std::vector<State> g;
    for (int i = 0; i < L.rank(); ++i) g.push_back(heis_generator(L.rank(), i));
    for (auto& a : small_roots(L)) g.push_back(lattice_state(a));
    return g;
}

}  // namespace vlat

namespace vlat::detail {

Ctx make_ctx(const SuiteConfig& cfg) {
    Ctx c{cfg, cfg.lattice, {}, {}, {}, {}, {}};
    const Lattice& L = cfg.lattice;
    const int r = L.rank();
    if (cfg.samples.empty()) {
        for (auto& m : enumerate_basis(L, cfg.trunc.max_weight, cfg.trunc.coord_box, cfg.trunc.max_heis))
            c.samples.emplace_back(m);
    } else {
        c.samples = cfg.samples;
    }

    c.roots = small_roots(L);
    c.gens = generator_states(L);

    State vac = vacuum(r);
    for (auto& s : c.samples)
        if (s != vac && std::find(c.gens.begin(), c.gens.end(), s) == c.gens.end()) c.composite.push_back(s);

    bool has_zero = false;
    for (auto& nm : cfg.deformations) has_zero = has_zero || nm.f.is_zero();
    if (!has_zero) c.maps.push_back({"zero", DeformationMap(r)});
    for (auto& nm : cfg.deformations) c.maps.push_back(nm);
    return c;
}

CheckRecord run_check(const std::string& suite, const std::string& instance,
                      const std::function<std::optional<Mismatch>()>& body) {
    CheckRecord rec{suite, instance, true, std::nullopt, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        rec.mismatch = body();
        rec.pass = !rec.mismatch;
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.note = std::string("exception: ") + e.what();
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (std::getenv("VLAT_TRACE")) std::cerr << rec.ms << " ms  " << suite << ": " << instance << "\n";
    return rec;
}

std::optional<Mismatch> fail(const std::string& where, const std::string& expected, const std::string& actual) {
    return Mismatch{where, "-", expected, actual};
}

std::vector<std::pair<State, State>> sample_pairs(const std::vector<State>& a, const std::vector<State>& b, size_t n) {
    std::vector<std::pair<State, State>> all;
    if (a.empty() || b.empty()) return all;
    size_t total = a.size() * b.size();
    if (total <= n) {
        for (auto& x : a)
            for (auto& y : b) all.emplace_back(x, y);
        return all;
    }
    for (size_t k = 0; k < n; ++k) {
        size_t idx = k * total / n;
        all.emplace_back(a[idx / b.size()], b[idx % b.size()]);
    }
    return all;
}

std::string sname(const State& v) { return state_str(v); }

bool is_e_generator(const State& v) {
    return v.size() == 1 && v.terms().begin()->first.parts.empty() && v.terms().begin()->second == Scalar(1);
}

LatticeVec label(const State& v) { return v.terms().begin()->first.beta; }

std::vector<Scalar> hvec(const LatticeVec& a) {
    std::vector<Scalar> h;
    for (int x : a) h.emplace_back(x);
    return h;
}

int heis_index(const State& h) {
    if (h.size() != 1) return -1;
    auto& [m, c] = *h.terms().begin();
    if (c != Scalar(1) || m.parts.size() != 1 || m.parts[0].mode != 1) return -1;
    for (int x : m.beta)
        if (x) return -1;
    return m.parts[0].idx;
}

Field field(const VertexAlgebra& A, const State& u) {
    return [&A, u](const State& v, int hi) { return A.Y(u, v, hi); };
}

Series2State prod12(const VertexAlgebra& A, const State& u, const State& v, const State& w, int H1, int H2) {
    return compose(field(A, u), field(A, v), w, H1, H2, true);
}

Series2State prod21(const VertexAlgebra& A, const State& u, const State& v, const State& w, int H1, int H2) {
    return compose(field(A, v), field(A, u), w, H2, H1, false);
}

Series2State delta_terms(const std::vector<SeriesState>& ys, int lo1, int hi1, int lo2, int hi2) {
    Series2State out;
    out.val1 = lo1, out.hi1 = hi1, out.val2 = lo2, out.hi2 = hi2;
    for (int j = 0; j < static_cast<int>(ys.size()); ++j)
        for (auto& [e, s] : ys[j].t)
            for (int a = lo1; a <= hi1; ++a) {
                int b = e - a - 1 - j;
                if (b < lo2 || b > hi2) continue;
                Scalar c(binomial_int(-a - 1, j));
                out.add(a, b, s, c);
            }
    return out;
}

Poly pair_poly(const Lattice& L, const DeformationMap& f, const LatticeVec& a, const LatticeVec& b) {
    return f_pair(L, f, a, b);
}

VertexAlgebra deformed(const Lattice& L, const DeformationMap& f) {
    return va_deformed(L, va_VL(L), ModuleStructure::ymf(f));
}

}  // namespace vlat::detail
