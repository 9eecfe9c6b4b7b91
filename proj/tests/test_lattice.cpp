#include "doctest.h"
#include "vlat/lattice.hpp"

using namespace vlat;

namespace {

std::vector<LatticeVec> box(int rank, int r) {
    std::vector<LatticeVec> out{{}};
    for (int i = 0; i < rank; ++i) {
        std::vector<LatticeVec> next;
        for (auto& v : out)
            for (int c = -r; c <= r; ++c) {
                auto w = v;
                w.push_back(c);
                next.push_back(w);
            }
        out = next;
    }
    return out;
}

const std::vector<IntMatrix> kGrams = {{{2}}, {{2, -1}, {-1, 2}}, {{0, 1}, {1, 0}}, {{4, 1}, {1, 2}}};

}  // namespace

TEST_CASE("pairing") {
    CHECK(Lattice(IntMatrix{{2}}).pairing(LatticeVec{1}, LatticeVec{1}) == 2);
    Lattice U(IntMatrix{{0, 1}, {1, 0}});
    CHECK(U.pairing(LatticeVec{1, 0}, LatticeVec{0, 1}) == 1);
    CHECK(U.pairing(LatticeVec{1, 1}, LatticeVec{1, 1}) == 2);
    for (auto& a : box(2, 2)) CHECK(U.pairing(a, LatticeVec{0, 0}) == 0);
}

TEST_CASE("cocycle values") {
    Lattice A2(IntMatrix{{2, -1}, {-1, 2}});
    CHECK(A2.cocycle_sign({0, 1}, {1, 0}) == -1);
    CHECK(A2.cocycle_sign({1, 0}, {0, 1}) == 1);
    for (auto& a : box(2, 2)) {
        CHECK(A2.cocycle_sign(a, {0, 0}) == 1);
        CHECK(A2.cocycle_sign({0, 0}, a) == 1);
    }
}

TEST_CASE("2-cocycle identity and commutator condition on |c| <= 3") {
    for (auto& G : kGrams) {
        Lattice L(G);
        auto B = box(L.rank(), L.rank() == 1 ? 3 : 2);
        for (auto& a : B)
            for (auto& b : B) {
                long p = L.pairing(a, b);
                CHECK(L.cocycle_sign(a, b) * L.cocycle_sign(b, a) == (p % 2 ? -1 : 1));
                for (auto& c : box(L.rank(), 1))
                    CHECK(L.cocycle_sign(a, b + c) * L.cocycle_sign(b, c) ==
                          L.cocycle_sign(a + b, c) * L.cocycle_sign(a, b));
            }
    }
}

TEST_CASE("lattice validation") {
    CHECK(validate_lattice(Lattice(IntMatrix{{2}})).empty());
    CHECK(validate_lattice(Lattice(IntMatrix{{0, 1}, {1, 0}})).empty());
    auto odd = validate_lattice(Lattice(IntMatrix{{1}}));
    REQUIRE(odd.size() == 1);
    CHECK(odd[0].find("odd diagonal") != std::string::npos);
    auto both = validate_lattice(Lattice(IntMatrix{{1, 1}, {1, 1}}));
    bool has_odd = false, has_det = false;
    for (auto& v : both) {
        has_odd = has_odd || v.find("odd diagonal") != std::string::npos;
        has_det = has_det || v.find("det") != std::string::npos;
    }
    CHECK(has_odd);
    CHECK(has_det);
    CHECK(!validate_lattice(Lattice(IntMatrix{{2, 1}, {0, 2}})).empty());
    CHECK(determinant(IntMatrix{{2, -1}, {-1, 2}}) == 3);
}

TEST_CASE("isometries") {
    Lattice A1(IntMatrix{{2}});
    CHECK(isometry_validate(A1, Isometry{IntMatrix{{-1}}}).empty());
    CHECK(!isometry_validate(A1, Isometry{IntMatrix{{2}}}).empty());
    CHECK(isometry_validate(A1, Isometry{IntMatrix{{1}}}).empty());

    Lattice A2(IntMatrix{{2, -1}, {-1, 2}});
    Isometry neg{IntMatrix{{-1, 0}, {0, -1}}};
    CHECK(isometry_validate(A2, neg).empty());
    for (auto& a : box(2, 2))
        for (auto& b : box(2, 2)) CHECK(A2.pairing(neg.apply(a), neg.apply(b)) == A2.pairing(a, b));

    // the swap preserves the pairing on U but not the default sign table
    Lattice U(IntMatrix{{0, 1}, {1, 0}});
    Isometry swap{IntMatrix{{0, 1}, {1, 0}}};
    for (auto& a : box(2, 2))
        for (auto& b : box(2, 2)) CHECK(U.pairing(swap.apply(a), swap.apply(b)) == U.pairing(a, b));
    CHECK(!isometry_validate(U, swap).empty());
}
