#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vlat/lattice.hpp"

namespace vlat {

// Oscillator a_idx(-mode), mode >= 1, idx 0-based.
struct Part {
    int idx;
    int mode;
    friend bool operator==(const Part&, const Part&) = default;
    // index ascending, then mode descending
    friend bool operator<(const Part& a, const Part& b) {
        return a.idx != b.idx ? a.idx < b.idx : a.mode > b.mode;
    }
};

struct Monomial {
    std::vector<Part> parts;  // sorted, repeated for multiplicity
    LatticeVec beta;

    Monomial() = default;
    Monomial(std::vector<Part> p, LatticeVec b);
    explicit Monomial(LatticeVec b) : beta(std::move(b)) {}

    int heis_weight() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.parts != b.parts) return a.parts < b.parts;
        return a.beta < b.beta;
    }
};

// Finite linear combination with no zero coefficients stored.
template <class K>
class LinComb {
public:
    using Map = std::map<K, Scalar>;

    LinComb() = default;
    LinComb(const K& k, const Scalar& c = Scalar(1)) { add(k, c); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    Scalar coeff(const K& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? Scalar(0) : it->second;
    }

    void add(const K& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    void add_scaled(const LinComb& o, const Scalar& c) {
        if (c.is_zero()) return;
        for (auto& [k, v] : o.t_) add(k, v * c);
    }
    LinComb& operator+=(const LinComb& o) {
        for (auto& [k, v] : o.t_) add(k, v);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (auto& [k, v] : o.t_) add(k, -v);
        return *this;
    }
    LinComb scaled(const Scalar& c) const {
        LinComb r;
        if (c.is_zero()) return r;
        for (auto& [k, v] : t_) r.t_.emplace(k, v * c);
        return r;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.t_ == b.t_; }

private:
    Map t_;
};

using State = LinComb<Monomial>;
using TensorKey = std::vector<Monomial>;
using Tensor = LinComb<TensorKey>;

enum class Variant { BL, BLeps };

Monomial vacuum_monomial(int rank);
State vacuum(int rank);
State lattice_state(const LatticeVec& beta);
// h(-1)1 for a basis vector, the usual image of the lattice in the state space
State heis_generator(int rank, int idx);

long weight(const Monomial& m, const Lattice& L);
int heis_weight(const State& v);  // max over monomials, 0 for zero

// a_i(n) for basis index i and any integer n
State heis_basis(const Lattice& L, int i, int n, const State& v);
State heis_act(const Lattice& L, const std::vector<Scalar>& h, int n, const State& v);
std::map<long, State> weight_decompose(const Lattice& L, const State& v);

Monomial mono_mul(const Monomial& a, const Monomial& b);
State mul_BL(const State& a, const State& b);
State mul_BLeps(const Lattice& L, const State& a, const State& b);
Tensor coproduct_BL(const State& a);
Scalar counit_BL(const State& a);
State derive_B(const State& a, Variant variant = Variant::BL);

Tensor tensor(const State& a, const State& b);
Tensor tensor3(const State& a, const State& b, const State& c);
// apply a linear map to one tensor slot; the map may widen the arity
Tensor map_slot(const Tensor& t, int slot, const std::function<Tensor(const Monomial&)>& f);
Tensor map_slot_state(const Tensor& t, int slot, const std::function<State(const Monomial&)>& f);
Tensor permute(const Tensor& t, const std::vector<int>& perm);  // new slot k takes old slot perm[k]
State contract_counit(const Tensor& t, int slot);

std::string mono_str(const Monomial& m);
std::string state_str(const State& v);
std::string tensor_str(const Tensor& t);
State parse_state(const std::string& s, int rank);

// All monomials of weight <= max_weight with label coordinates in [-box, box]
// and Heisenberg weight <= max_heis.
std::vector<Monomial> enumerate_basis(const Lattice& L, int max_weight, int box, int max_heis);
// multisets of parts of total mode exactly n over `rank` colours
std::vector<std::vector<Part>> colored_partitions(int rank, int n);

}  // namespace vlat
