#include "vlat/fock.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace vlat {

Monomial::Monomial(std::vector<Part> p, LatticeVec b) : parts(std::move(p)), beta(std::move(b)) {
    std::sort(parts.begin(), parts.end());
    for (auto& q : parts)
        if (q.mode < 1) throw std::invalid_argument("oscillator modes must be >= 1");
}

int Monomial::heis_weight() const {
    int s = 0;
    for (auto& p : parts) s += p.mode;
    return s;
}

Monomial vacuum_monomial(int rank) { return Monomial(LatticeVec(rank, 0)); }
State vacuum(int rank) { return State(vacuum_monomial(rank)); }
State lattice_state(const LatticeVec& beta) { return State(Monomial(beta)); }

State heis_generator(int rank, int idx) { return State(Monomial({Part{idx, 1}}, LatticeVec(rank, 0))); }

long weight(const Monomial& m, const Lattice& L) { return m.heis_weight() + L.pairing(m.beta, m.beta) / 2; }

int heis_weight(const State& v) {
    int w = 0;
    for (auto& [m, c] : v.terms()) w = std::max(w, m.heis_weight());
    return w;
}

namespace {

Monomial with_part(const Monomial& m, Part p) {
    Monomial r;
    r.beta = m.beta;
    r.parts.reserve(m.parts.size() + 1);
    auto pos = std::upper_bound(m.parts.begin(), m.parts.end(), p);
    r.parts.insert(r.parts.end(), m.parts.begin(), pos);
    r.parts.push_back(p);
    r.parts.insert(r.parts.end(), pos, m.parts.end());
    return r;
}

}  // namespace

State heis_basis(const Lattice& L, int i, int n, const State& v) {
    State r;
    if (n < 0) {
        for (auto& [m, c] : v.terms()) r.add(with_part(m, Part{i, -n}), c);
    } else if (n == 0) {
        for (auto& [m, c] : v.terms()) {
            long p = 0;
            for (int j = 0; j < L.rank(); ++j) p += L.gram_entry(i, j) * m.beta[j];
            if (p) r.add(m, c * Scalar(p));
        }
    } else {
        for (auto& [m, c] : v.terms()) {
            auto& ps = m.parts;
            for (size_t k = 0; k < ps.size();) {
                size_t e = k;
                while (e < ps.size() && ps[e] == ps[k]) ++e;
                if (ps[k].mode == n) {
                    long g = L.gram_entry(i, ps[k].idx);
                    if (g) {
                        Monomial q;
                        q.beta = m.beta;
                        q.parts = ps;
                        q.parts.erase(q.parts.begin() + static_cast<long>(k));
                        r.add(q, c * Scalar(static_cast<long>(n) * g * static_cast<long>(e - k)));
                    }
                }
                k = e;
            }
        }
    }
    return r;
}

State heis_act(const Lattice& L, const std::vector<Scalar>& h, int n, const State& v) {
    State r;
    for (int i = 0; i < L.rank(); ++i)
        if (!h[i].is_zero()) r.add_scaled(heis_basis(L, i, n, v), h[i]);
    return r;
}

std::map<long, State> weight_decompose(const Lattice& L, const State& v) {
    std::map<long, State> out;
    for (auto& [m, c] : v.terms()) out[weight(m, L)].add(m, c);
    return out;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.parts.resize(a.parts.size() + b.parts.size());
    std::merge(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(), r.parts.begin());
    r.beta = a.beta + b.beta;
    return r;
}

State mul_BL(const State& a, const State& b) {
    State r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) r.add(mono_mul(ma, mb), ca * cb);
    return r;
}

State mul_BLeps(const Lattice& L, const State& a, const State& b) {
    State r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            Scalar c = ca * cb;
            if (L.cocycle_sign(ma.beta, mb.beta) < 0) c = -c;
            r.add(mono_mul(ma, mb), c);
        }
    return r;
}

Tensor coproduct_BL(const State& a) {
    Tensor r;
    for (auto& [m, c] : a.terms()) {
        size_t n = m.parts.size();
        for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
            Monomial left, right;
            left.beta = right.beta = m.beta;
            for (size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? right : left).parts.push_back(m.parts[k]);
            r.add(TensorKey{std::move(left), std::move(right)}, c);
        }
    }
    return r;
}

Scalar counit_BL(const State& a) {
    Scalar s;
    for (auto& [m, c] : a.terms())
        if (m.parts.empty()) s += c;
    return s;
}

State derive_B(const State& a, Variant) {
    // the same formula holds in B_L and in the twisted algebra: e_beta is
    // sent to beta(-1) e_beta and oscillators are shifted
    State r;
    for (auto& [m, c] : a.terms()) {
        for (size_t k = 0; k < m.parts.size(); ++k) {
            if (k > 0 && m.parts[k] == m.parts[k - 1]) continue;
            size_t e = k;
            while (e < m.parts.size() && m.parts[e] == m.parts[k]) ++e;
            Part p = m.parts[k];
            Monomial q;
            q.beta = m.beta;
            q.parts = m.parts;
            q.parts.erase(q.parts.begin() + static_cast<long>(k));
            q = with_part(q, Part{p.idx, p.mode + 1});
            r.add(q, c * Scalar(static_cast<long>(p.mode) * static_cast<long>(e - k)));
        }
        for (size_t j = 0; j < m.beta.size(); ++j)
            if (m.beta[j]) r.add(with_part(m, Part{static_cast<int>(j), 1}), c * Scalar(m.beta[j]));
    }
    return r;
}

Tensor tensor(const State& a, const State& b) {
    Tensor r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) r.add(TensorKey{ma, mb}, ca * cb);
    return r;
}

Tensor tensor3(const State& a, const State& b, const State& c) {
    Tensor r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms())
            for (auto& [mc, cc] : c.terms()) r.add(TensorKey{ma, mb, mc}, ca * cb * cc);
    return r;
}

Tensor map_slot(const Tensor& t, int slot, const std::function<Tensor(const Monomial&)>& f) {
    Tensor r;
    std::map<Monomial, Tensor> memo;
    for (auto& [k, c] : t.terms()) {
        auto it = memo.find(k[slot]);
        if (it == memo.end()) it = memo.emplace(k[slot], f(k[slot])).first;
        for (auto& [img, d] : it->second.terms()) {
            TensorKey nk;
            nk.reserve(k.size() + img.size() - 1);
            nk.insert(nk.end(), k.begin(), k.begin() + slot);
            nk.insert(nk.end(), img.begin(), img.end());
            nk.insert(nk.end(), k.begin() + slot + 1, k.end());
            r.add(nk, c * d);
        }
    }
    return r;
}

Tensor map_slot_state(const Tensor& t, int slot, const std::function<State(const Monomial&)>& f) {
    return map_slot(t, slot, [&](const Monomial& m) {
        Tensor img;
        for (State fm = f(m); auto& [q, c] : fm.terms()) img.add(TensorKey{q}, c);
        return img;
    });
}

Tensor permute(const Tensor& t, const std::vector<int>& perm) {
    Tensor r;
    for (auto& [k, c] : t.terms()) {
        TensorKey nk(perm.size());
        for (size_t i = 0; i < perm.size(); ++i) nk[i] = k[perm[i]];
        r.add(nk, c);
    }
    return r;
}

State contract_counit(const Tensor& t, int slot) {
    State r;
    for (auto& [k, c] : t.terms()) {
        if (!k[slot].parts.empty()) continue;
        if (k.size() != 2) throw std::invalid_argument("contract_counit expects arity 2");
        r.add(k[1 - slot], c);
    }
    return r;
}

std::string mono_str(const Monomial& m) {
    std::string out;
    for (size_t k = 0; k < m.parts.size();) {
        size_t e = k;
        while (e < m.parts.size() && m.parts[e] == m.parts[k]) ++e;
        if (!out.empty()) out += ' ';
        out += "a" + std::to_string(m.parts[k].idx + 1) + "(-" + std::to_string(m.parts[k].mode) + ")";
        if (e - k > 1) out += "^" + std::to_string(e - k);
        k = e;
    }
    bool nonzero = std::any_of(m.beta.begin(), m.beta.end(), [](int x) { return x != 0; });
    if (nonzero) {
        if (!out.empty()) out += ' ';
        out += "e" + vec_str(m.beta);
    }
    return out.empty() ? "1" : out;
}

namespace {

std::string coeff_prefix(const Scalar& c, bool& negative) {
    negative = false;
    if (c.is_rational()) {
        mpq_class q = c.rational_part();
        if (q < 0) {
            negative = true;
            q = -q;
        }
        if (q == 1) return "";
        return q.get_str() + "*";
    }
    return "(" + c.str() + ")*";
}

template <class K, class F>
std::string lin_str(const LinComb<K>& v, F key_str) {
    if (v.is_zero()) return "0";
    std::string out;
    for (auto& [k, c] : v.terms()) {
        bool neg;
        std::string pre = coeff_prefix(c, neg);
        std::string t = pre + key_str(k);
        if (out.empty()) out = neg ? "-" + t : t;
        else out += (neg ? " - " : " + ") + t;
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Monomial parse_monomial(const std::string& s, int rank) {
    Monomial m(LatticeVec(rank, 0));
    std::vector<Part> parts;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ') {
            ++i;
            continue;
        }
        if (s[i] == '1' && (i + 1 == s.size() || s[i + 1] == ' ')) {
            ++i;
            continue;
        }
        if (s[i] == 'e') {
            size_t close = s.find(']', i);
            if (s.compare(i, 2, "e[") != 0 || close == std::string::npos) throw std::invalid_argument("bad label in: " + s);
            std::string body = s.substr(i + 2, close - i - 2);
            LatticeVec b;
            size_t p = 0;
            while (p <= body.size()) {
                size_t q = body.find(',', p);
                if (q == std::string::npos) q = body.size();
                b.push_back(std::stoi(body.substr(p, q - p)));
                p = q + 1;
            }
            if (static_cast<int>(b.size()) != rank) throw std::invalid_argument("label has wrong rank: " + s);
            m.beta = m.beta + b;
            i = close + 1;
            continue;
        }
        if (s[i] == 'a') {
            size_t open = s.find("(-", i), close = s.find(')', i);
            if (open == std::string::npos || close == std::string::npos) throw std::invalid_argument("bad oscillator in: " + s);
            int idx = std::stoi(s.substr(i + 1, open - i - 1)) - 1;
            int mode = std::stoi(s.substr(open + 2, close - open - 2));
            if (idx < 0 || idx >= rank) throw std::invalid_argument("oscillator index out of range: " + s);
            int mult = 1;
            i = close + 1;
            if (i < s.size() && s[i] == '^') {
                size_t e = s.find(' ', i);
                if (e == std::string::npos) e = s.size();
                mult = std::stoi(s.substr(i + 1, e - i - 1));
                i = e;
            }
            for (int k = 0; k < mult; ++k) parts.push_back(Part{idx, mode});
            continue;
        }
        throw std::invalid_argument("cannot parse monomial: " + s);
    }
    return Monomial(std::move(parts), m.beta);
}

}  // namespace

std::string state_str(const State& v) { return lin_str(v, mono_str); }

std::string tensor_str(const Tensor& t) {
    return lin_str(t, [](const TensorKey& k) {
        std::string s;
        for (size_t i = 0; i < k.size(); ++i) {
            if (i) s += " ⊗ ";
            s += mono_str(k[i]);
        }
        return k.size() > 1 ? "(" + s + ")" : s;
    });
}

State parse_state(const std::string& text, int rank) {
    // split on top-level + and - that separate terms
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0, sign = 1;
    std::string cur;
    std::string s = trim(text);
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        bool sep = depth == 0 && (ch == '+' || ch == '-') && trim(cur).size() > 0 && i > 0 && s[i - 1] == ' ';
        if (sep) {
            terms.emplace_back(sign, trim(cur));
            cur.clear();
            sign = ch == '-' ? -1 : 1;
            continue;
        }
        if (depth == 0 && ch == '-' && trim(cur).empty()) {
            sign = -sign;
            continue;
        }
        cur += ch;
    }
    if (!trim(cur).empty()) terms.emplace_back(sign, trim(cur));
    State r;
    for (auto& [sg, t] : terms) {
        Scalar c(sg);
        std::string mono = t;
        size_t star = std::string::npos;
        int d = 0;
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '(' || t[i] == '[') ++d;
            if (t[i] == ')' || t[i] == ']') --d;
            if (t[i] == '*' && d == 0) {
                star = i;
                break;
            }
        }
        if (star != std::string::npos) {
            std::string cs = trim(t.substr(0, star));
            if (cs.size() >= 2 && cs.front() == '(' && cs.back() == ')') cs = cs.substr(1, cs.size() - 2);
            c *= Scalar::parse(cs);
            mono = trim(t.substr(star + 1));
        } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
            // "2 e[1]", "1/2 a1(-2)" or a bare scalar
            size_t end = t.find(' ');
            std::string cs = t.substr(0, end);
            if (cs.find_first_not_of("0123456789/") == std::string::npos) {
                c *= Scalar::parse(cs);
                mono = end == std::string::npos ? "" : trim(t.substr(end));
            }
        }
        r.add(parse_monomial(mono, rank), c);
    }
    return r;
}

std::vector<std::vector<Part>> colored_partitions(int rank, int n) {
    std::vector<Part> alphabet;
    for (int i = 0; i < rank; ++i)
        for (int m = n; m >= 1; --m) alphabet.push_back(Part{i, m});
    std::vector<std::vector<Part>> out;
    std::vector<Part> cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t k = start; k < alphabet.size(); ++k) {
            if (alphabet[k].mode > left) continue;
            cur.push_back(alphabet[k]);
            rec(k, left - alphabet[k].mode);
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

std::vector<Monomial> enumerate_basis(const Lattice& L, int max_weight, int box, int max_heis) {
    int r = L.rank();
    std::vector<Monomial> out;
    LatticeVec beta(r, -box);
    while (true) {
        long w0 = L.pairing(beta, beta) / 2;
        for (long k = 0; k <= max_heis && w0 + k <= max_weight; ++k)
            for (auto& p : colored_partitions(r, static_cast<int>(k))) out.emplace_back(p, beta);
        int i = r - 1;
        while (i >= 0 && beta[i] == box) beta[i--] = -box;
        if (i < 0) break;
        ++beta[i];
    }
    std::stable_sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        long wa = weight(a, L), wb = weight(b, L);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return out;
}

}  // namespace vlat
