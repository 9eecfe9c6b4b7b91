#include "vlat/lattice.hpp"

#include <stdexcept>

namespace vlat {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
    int r = rank();
    signs_.assign(r, std::vector<int>(r, 1));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j)
            if (gram_[i].size() > static_cast<size_t>(j) && (gram_[i][j] % 2 != 0)) signs_[i][j] = -1;
}

Lattice::Lattice(IntMatrix gram, std::vector<std::vector<int>> signs)
    : gram_(std::move(gram)), signs_(std::move(signs)) {}

long Lattice::pairing(const LatticeVec& a, const LatticeVec& b) const {
    long s = 0;
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < r; ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
}

Scalar Lattice::pairing(const std::vector<Scalar>& h, const LatticeVec& b) const {
    Scalar s;
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (h[i].is_zero()) continue;
        long row = 0;
        for (int j = 0; j < r; ++j) row += gram_[i][j] * b[j];
        if (row) s += h[i] * Scalar(row);
    }
    return s;
}

Scalar Lattice::pairing(const std::vector<Scalar>& h, const std::vector<Scalar>& k) const {
    Scalar s;
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (h[i].is_zero()) continue;
        for (int j = 0; j < r; ++j)
            if (gram_[i][j] && !k[j].is_zero()) s += h[i] * Scalar(gram_[i][j]) * k[j];
    }
    return s;
}

int Lattice::cocycle_sign(const LatticeVec& a, const LatticeVec& b) const {
    long odd = 0;
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < r; ++j)
            if (signs_[i][j] < 0) odd += static_cast<long>(a[i]) * b[j];
    }
    return (odd % 2 == 0) ? 1 : -1;
}

LatticeVec Lattice::basis(int i) const {
    LatticeVec v(rank(), 0);
    v[i] = 1;
    return v;
}

mpz_class determinant(const IntMatrix& A) {
    // Bareiss fraction-free elimination
    int n = static_cast<int>(A.size());
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(M[p], M[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

std::vector<std::string> validate_lattice(const Lattice& L) {
    std::vector<std::string> out;
    const auto& A = L.gram();
    int r = L.rank();
    if (r == 0) {
        out.push_back("empty Gram matrix");
        return out;
    }
    for (auto& row : A)
        if (static_cast<int>(row.size()) != r) {
            out.push_back("Gram matrix is not square");
            return out;
        }
    bool sym = true, even = true;
    for (int i = 0; i < r; ++i) {
        if (A[i][i] % 2 != 0) even = false;
        for (int j = 0; j < r; ++j)
            if (A[i][j] != A[j][i]) sym = false;
    }
    if (!sym) out.push_back("asymmetric Gram matrix");
    if (!even) out.push_back("odd diagonal");
    if (determinant(A) == 0) out.push_back("det=0");
    const auto& s = L.signs();
    bool shape = static_cast<int>(s.size()) == r;
    for (auto& row : s) shape = shape && static_cast<int>(row.size()) == r;
    if (!shape) {
        out.push_back("cocycle table has wrong shape");
        return out;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (s[i][j] != 1 && s[i][j] != -1) {
                out.push_back("cocycle entries must be +1 or -1");
                return out;
            }
        }
    if (sym && even) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j <= i; ++j) {
                int want = (A[i][j] % 2 == 0) ? 1 : -1;
                if (s[i][j] * s[j][i] != want)
                    out.push_back("cocycle commutator condition fails at (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")");
            }
    }
    return out;
}

LatticeVec Isometry::apply(const LatticeVec& a) const {
    LatticeVec r(a.size(), 0);
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i] += static_cast<int>(g[i][j]) * a[j];
    return r;
}

std::vector<std::string> isometry_validate(const Lattice& L, const Isometry& iso) {
    std::vector<std::string> out;
    int r = L.rank();
    bool shape = static_cast<int>(iso.g.size()) == r;
    for (auto& row : iso.g) shape = shape && static_cast<int>(row.size()) == r;
    if (!shape) {
        out.push_back("isometry matrix has wrong shape");
        return out;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            LatticeVec gi = iso.apply(L.basis(i)), gj = iso.apply(L.basis(j));
            if (L.pairing(gi, gj) != L.gram_entry(i, j)) {
                out.push_back("g^T A g != A");
                i = j = r;
            }
        }
    for (int i = 0; i < r && out.empty(); ++i)
        for (int j = 0; j < r; ++j) {
            LatticeVec gi = iso.apply(L.basis(i)), gj = iso.apply(L.basis(j));
            if (L.cocycle_sign(gi, gj) != L.cocycle_sign(L.basis(i), L.basis(j))) {
                out.push_back("cocycle not preserved at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                break;
            }
        }
    if (iso.chi.is_zero()) out.push_back("character value is zero");
    return out;
}

LatticeVec operator+(const LatticeVec& a, const LatticeVec& b) {
    LatticeVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

LatticeVec operator-(const LatticeVec& a) {
    LatticeVec r(a);
    for (auto& x : r) x = -x;
    return r;
}

std::string vec_str(const LatticeVec& a) {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + "]";
}

}  // namespace vlat
