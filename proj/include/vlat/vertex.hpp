#pragma once

#include <functional>

#include "vlat/fock.hpp"
#include "vlat/lattice.hpp"
#include "vlat/state_series.hpp"

namespace vlat {

enum class Algebra { VL, BL, BLeps, VLf };

// Y(u, x)v exact up to x^hi.
using FieldMap = std::function<SeriesState(const State& u, const State& v, int hi)>;

// E^{+}(gamma, x)v for sign > 0 (nonpositive powers, finite), E^{-}(gamma, x)v
// for sign < 0 (nonnegative powers).
SeriesState E_apply(const Lattice& L, int sign, const LatticeVec& gamma, const State& v, int hi);

SeriesState Y_VL(const Lattice& L, const State& u, const State& w, int hi);
SeriesState Y_BL(const State& a, const State& b, int hi);
SeriesState Y_BLeps(const Lattice& L, const State& a, const State& b, int hi);
SeriesState Y_of(const Lattice& L, Algebra alg, const State& u, const State& w, int hi);

// lowest power of x that Y_VL(u, x)w can contain
int pole_bound_VL(const Lattice& L, const State& u, const State& w);

State D_VL(const Lattice& L, const State& v);

State n_product(const FieldMap& Y, const State& u, int n, const State& v);
State n_product(const Lattice& L, const State& u, int n, const State& v, Algebra alg);

FieldMap field_map(const Lattice& L, Algebra alg);
Field field_of(const FieldMap& Y, const State& u);

}  // namespace vlat
