#pragma once

#include <string>
#include <vector>

#include "vlat/scalar.hpp"

namespace vlat {

using LatticeVec = std::vector<int>;
using IntMatrix = std::vector<std::vector<long>>;

// Even lattice given by its Gram matrix in a fixed ordered basis, together with
// a sign table eps(a_i, a_j) extended bimultiplicatively.
class Lattice {
public:
    Lattice() = default;
    // default cocycle: eps(a_i, a_j) = (-1)^{<a_i,a_j>} for i > j, else 1
    explicit Lattice(IntMatrix gram);
    Lattice(IntMatrix gram, std::vector<std::vector<int>> signs);

    int rank() const { return static_cast<int>(gram_.size()); }
    const IntMatrix& gram() const { return gram_; }
    const std::vector<std::vector<int>>& signs() const { return signs_; }

    long pairing(const LatticeVec& a, const LatticeVec& b) const;
    // <h, b> for h with scalar coordinates
    Scalar pairing(const std::vector<Scalar>& h, const LatticeVec& b) const;
    Scalar pairing(const std::vector<Scalar>& h, const std::vector<Scalar>& k) const;
    long gram_entry(int i, int j) const { return gram_[i][j]; }
    int cocycle_sign(const LatticeVec& a, const LatticeVec& b) const;
    Scalar cocycle(const LatticeVec& a, const LatticeVec& b) const { return Scalar(cocycle_sign(a, b)); }
    LatticeVec zero() const { return LatticeVec(rank(), 0); }
    LatticeVec basis(int i) const;

private:
    IntMatrix gram_;
    std::vector<std::vector<int>> signs_;
};

std::vector<std::string> validate_lattice(const Lattice& L);
mpz_class determinant(const IntMatrix& A);

struct Isometry {
    IntMatrix g;  // acts on coordinate columns: a -> g a
    Scalar chi{1};
    LatticeVec apply(const LatticeVec& a) const;
};

std::vector<std::string> isometry_validate(const Lattice& L, const Isometry& g);

LatticeVec operator+(const LatticeVec& a, const LatticeVec& b);
LatticeVec operator-(const LatticeVec& a);
std::string vec_str(const LatticeVec& a);

}  // namespace vlat
