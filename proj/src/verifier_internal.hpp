#pragma once

#include <chrono>
#include <functional>

#include "vlat/phi.hpp"
#include "vlat/verifier.hpp"

namespace vlat::detail {

struct Ctx {
    const SuiteConfig& cfg;
    const Lattice& L;
    std::vector<State> samples;
    std::vector<LatticeVec> roots;  // small nonzero lattice vectors used for e-generators
    std::vector<State> gens;        // h_i(-1)1 then e_alpha
    std::vector<State> composite;   // samples that are neither generators nor the vacuum
    std::vector<NamedMap> maps;     // configured maps, with the zero map first

    const Truncation& tr() const { return cfg.trunc; }
    int hi_from(int pole) const { return std::min(cfg.trunc.xhi, pole + cfg.trunc.span); }
    int lo() const { return cfg.trunc.xlo; }
    State vac() const { return vacuum(L.rank()); }
};

Ctx make_ctx(const SuiteConfig& cfg);

using Recs = std::vector<CheckRecord>;

// Runs body and turns its result (or exception) into a record.
CheckRecord run_check(const std::string& suite, const std::string& instance,
                      const std::function<std::optional<Mismatch>()>& body);

std::optional<Mismatch> fail(const std::string& where, const std::string& expected, const std::string& actual);

template <class T>
std::vector<T> stride(const std::vector<T>& v, size_t n) {
    if (v.size() <= n) return v;
    std::vector<T> out;
    for (size_t k = 0; k < n; ++k) out.push_back(v[k * v.size() / n]);
    return out;
}

std::vector<std::pair<State, State>> sample_pairs(const std::vector<State>& a, const std::vector<State>& b, size_t n);

std::string sname(const State& v);
bool is_e_generator(const State& v);
LatticeVec label(const State& v);  // label of a single-monomial state
std::vector<Scalar> hvec(const LatticeVec& a);
int heis_index(const State& h);     // basis index of a_i(-1)1, else -1

Field field(const VertexAlgebra& A, const State& u);
// Y(u, x1) Y(v, x2) w and Y(v, x2) Y(u, x1) w, both exact on x1 <= H1, x2 <= H2
Series2State prod12(const VertexAlgebra& A, const State& u, const State& v, const State& w, int H1, int H2);
Series2State prod21(const VertexAlgebra& A, const State& u, const State& v, const State& w, int H1, int H2);
// sum_j binom(-a-1, j) ys[j]_{a+b+1+j} on the box [lo1, hi1] x [lo2, hi2]
Series2State delta_terms(const std::vector<SeriesState>& ys, int lo1, int hi1, int lo2, int hi2);
Poly pair_poly(const Lattice& L, const DeformationMap& f, const LatticeVec& a, const LatticeVec& b);

VertexAlgebra deformed(const Lattice& L, const DeformationMap& f);

Recs suite_heisenberg(const Ctx&);
Recs suite_cocycle(const Ctx&);
Recs suite_va_axioms(const Ctx&);
Recs suite_al(const Ctx&);
Recs suite_comodule(const Ctx&);
Recs suite_module(const Ctx&);
Recs suite_compat(const Ctx&);
Recs suite_convolution(const Ctx&);
Recs suite_deform(const Ctx&);
Recs suite_s_operator(const Ctx&);
Recs suite_equivariance(const Ctx&);
Recs suite_phi(const Ctx&);
void associate_checks(Recs& out, const Poly& p, int zorder);
void r_checks(Recs& out, int r, int zorder);
Recs suite_bleps(const Ctx&);

}  // namespace vlat::detail
