#pragma once

#include <memory>
#include <vector>

#include "vlat/vertex.hpp"

namespace vlat {

// sum_j a_j (x) g_j(x), one polynomial per basis vector
using HVal = std::vector<Poly>;

// f(a_i, x) = sum_j a_j (x) F[i][j](x)
struct DeformationMap {
    std::vector<std::vector<Poly>> F;

    DeformationMap() = default;
    explicit DeformationMap(int rank) : F(rank, std::vector<Poly>(rank)) {}
    int rank() const { return static_cast<int>(F.size()); }
    bool is_zero() const;
    // no terms of exponent <= 0
    bool positive_support() const;

    HVal value(const std::vector<Scalar>& h) const;
    HVal value(const LatticeVec& h) const;
    DeformationMap operator-() const;
    friend DeformationMap operator+(const DeformationMap& a, const DeformationMap& b);
    friend bool operator==(const DeformationMap&, const DeformationMap&) = default;
};

DeformationMap f_derive(const DeformationMap& f, int k);
// <f(a, x), b> as a scalar polynomial
Poly f_pair(const Lattice& L, const DeformationMap& f, const LatticeVec& a, const LatticeVec& b);
// <f(a, x), b> = <f(b, -x), a> for all basis pairs
bool is_symmetric(const Lattice& L, const DeformationMap& f);

SeriesState Phi_apply(const Lattice& L, const HVal& G, const State& v, int hi);
SeriesState expPhi_apply(const Lattice& L, const HVal& G, const State& v, int hi);

// s e_b -> Delta(s)(e_b (x) e^b); the same formula serves V_L and B_{L,eps}
Tensor rho(const State& v);

class ModuleStructure {
public:
    enum class Kind { Ymf, Ym_inverse, Ym_eps, Ym_BLeps, Conv };

    static ModuleStructure ymf(DeformationMap f);
    static ModuleStructure inverse(DeformationMap f);
    static ModuleStructure eps();
    static ModuleStructure bleps();
    static ModuleStructure conv(const ModuleStructure& a, const ModuleStructure& b);

    Kind kind() const { return kind_; }
    const DeformationMap& map() const { return f_; }
    const ModuleStructure& left() const { return *l_; }
    const ModuleStructure& right() const { return *r_; }

private:
    Kind kind_ = Kind::Ym_eps;
    DeformationMap f_;
    std::shared_ptr<const ModuleStructure> l_, r_;
};

SeriesState YM_apply(const Lattice& L, const ModuleStructure& M, const State& a, const State& v, int hi);
int ym_pole_bound(const Lattice& L, const ModuleStructure& M, const State& a, const State& v);
SeriesState convolve_apply(const Lattice& L, const ModuleStructure& M1, const ModuleStructure& M2, const State& a,
                           const State& v, int hi);

struct VertexAlgebra {
    FieldMap Y;
    // lower bound for the x-valuation of Y(u, x)v
    std::function<int(const State&, const State&)> pole;
};

VertexAlgebra va_VL(const Lattice& L);
VertexAlgebra va_BL();
VertexAlgebra va_BLeps(const Lattice& L);
// sum Y(u_(1), x) Y_M(u_(2), x) over rho(u)
VertexAlgebra va_deformed(const Lattice& L, const VertexAlgebra& base, const ModuleStructure& M);

SeriesState deformed_Y(const Lattice& L, const DeformationMap& f, const State& u, const State& v, int hi,
                       Algebra base = Algebra::VL);

// Y(u,x) Y_M(h_(1),x) v (x) Y_BL(h_(2),x) k over two-slot tensors
SeriesTensor smash_Y(const Lattice& L, const VertexAlgebra& base, const ModuleStructure& M, const Tensor& uh,
                     const Tensor& vk, int hi);
// Y(u_1,x)v_1 (x) Y(u_2,x)v_2 for two algebras
SeriesTensor tensor_Y(const VertexAlgebra& A, const VertexAlgebra& B, const Tensor& u, const Tensor& v, int hi);

SeriesTensor S_apply(const Lattice& L, const DeformationMap& f, const Tensor& vu, int hi);
// S acting on slots (i, j) of a tensor of any arity: v from slot i, u from slot j
SeriesTensor S_apply_slots(const Lattice& L, const DeformationMap& f, const Tensor& t, int i, int j, int hi);

Isometry isometry_inverse(const Isometry& g);
State R_apply(const Lattice& L, const Isometry& g, const State& v);
DeformationMap eta_average(const DeformationMap& g, const std::vector<Isometry>& G);
// (sigma (x) 1) eta(h, x) = eta(sigma h, chi(sigma) x) on the basis
bool eta_equivariant(const DeformationMap& eta, const Isometry& sigma);

}  // namespace vlat
