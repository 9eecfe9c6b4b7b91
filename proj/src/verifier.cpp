#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"
#include "verifier_internal.hpp"

namespace vlat {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

int get_int(const json& j, const char* key, int def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number_integer()) throw ConfigInvalid(std::string(key) + " must be an integer");
    return j[key].get<int>();
}

Scalar get_scalar(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) {
        try {
            return Scalar::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigInvalid(std::string("bad scalar: ") + e.what());
        }
    }
    throw ConfigInvalid("scalar must be an integer or a string");
}

IntMatrix get_matrix(const json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigInvalid(what + " must be a matrix");
    IntMatrix A;
    for (auto& row : j) {
        if (!row.is_array()) throw ConfigInvalid(what + " must be a matrix");
        std::vector<long> r;
        for (auto& x : row) {
            if (!x.is_number_integer()) throw ConfigInvalid(what + " entries must be integers");
            r.push_back(x.get<long>());
        }
        A.push_back(r);
    }
    return A;
}

DeformationMap get_map(const json& j, int r, const std::string& name) {
    DeformationMap f(r);
    if (!j.is_array()) throw ConfigInvalid("deformation " + name + " must be a list of triples");
    for (auto& e : j) {
        if (!e.is_array() || (e.size() != 3 && e.size() != 4) || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ConfigInvalid("deformation " + name + ": entries are [row, col, \"poly\"] or [row, col, exp, coeff]");
        int i = e[0].get<int>() - 1, k = e[1].get<int>() - 1;
        if (i < 0 || k < 0 || i >= r || k >= r) throw ConfigInvalid("deformation " + name + ": index out of range");
        Poly p;
        if (e.size() == 3) {
            if (!e[2].is_string()) throw ConfigInvalid("deformation " + name + ": polynomial must be a string");
            try {
                p = poly_parse(e[2].get<std::string>());
            } catch (const std::exception& ex) {
                throw ConfigInvalid("deformation " + name + ": " + ex.what());
            }
        } else {
            if (!e[2].is_number_integer()) throw ConfigInvalid("deformation " + name + ": exponent must be an integer");
            poly_add(p, e[2].get<int>(), get_scalar(e[3]));
        }
        for (auto& [x, c] : p) poly_add(f.F[i][k], x, c);
    }
    if (!f.positive_support()) throw ConfigInvalid("deformation " + name + " has a term of exponent <= 0");
    return f;
}

std::vector<Isometry> get_group(const json& j, const Lattice& L) {
    if (!j.is_array() || j.empty()) throw ConfigInvalid("group must be a nonempty list of elements");
    std::vector<Isometry> G;
    for (auto& el : j) {
        if (!el.is_object() || !el.contains("matrix")) throw ConfigInvalid("group element needs a matrix");
        Isometry g;
        g.g = get_matrix(el["matrix"], "group matrix");
        g.chi = el.contains("chi") ? get_scalar(el["chi"]) : Scalar(1);
        auto errs = isometry_validate(L, g);
        if (!errs.empty()) throw ConfigInvalid(errs.front());
        G.push_back(g);
    }
    return G;
}

}  // namespace

SuiteConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("lattice") || !j["lattice"].contains("gram"))
        throw ConfigInvalid("missing lattice.gram");
    SuiteConfig cfg;
    IntMatrix A = get_matrix(j["lattice"]["gram"], "lattice.gram");
    if (j["lattice"].contains("cocycle")) {
        IntMatrix S = get_matrix(j["lattice"]["cocycle"], "lattice.cocycle");
        std::vector<std::vector<int>> signs;
        for (auto& row : S) signs.emplace_back(row.begin(), row.end());
        cfg.lattice = Lattice(A, signs);
    } else {
        cfg.lattice = Lattice(A);
    }
    if (auto errs = validate_lattice(cfg.lattice); !errs.empty()) throw ConfigInvalid(errs.front());
    const int r = cfg.lattice.rank();

    if (j.contains("scalars")) cfg.m = get_int(j["scalars"], "m", 2);
    if (cfg.m < 1) throw ConfigInvalid("scalars.m must be positive");

    if (j.contains("deformations")) {
        if (!j["deformations"].is_object()) throw ConfigInvalid("deformations must be an object");
        for (auto& [name, val] : j["deformations"].items()) {
            cfg.deformations.push_back({name, get_map(val, r, name)});
        }
    }

    if (j.contains("groups")) {
        if (!j["groups"].is_array()) throw ConfigInvalid("groups must be a list");
        for (auto& g : j["groups"]) cfg.groups.push_back(get_group(g, cfg.lattice));
    }
    if (j.contains("group")) cfg.groups.push_back(get_group(j["group"], cfg.lattice));

    if (j.contains("truncation")) {
        const json& t = j["truncation"];
        Truncation& T = cfg.trunc;
        T.xlo = get_int(t, "xlo", T.xlo);
        T.xhi = get_int(t, "xhi", T.xhi);
        T.zorder = get_int(t, "zorder", T.zorder);
        T.max_weight = get_int(t, "maxWeight", T.max_weight);
        T.coord_box = get_int(t, "coordBox", T.coord_box);
        T.max_heis = get_int(t, "maxHeisWeight", T.max_weight);
        T.span = get_int(t, "span", T.span);
        T.span2 = get_int(t, "span2", T.span2);
        if (t.contains("caps")) {
            const json& c = t["caps"];
            T.pairs = get_int(c, "pairs", T.pairs);
            T.triples = get_int(c, "triples", T.triples);
            T.composite = get_int(c, "composite", T.composite);
            T.per_relation = get_int(c, "perRelation", T.per_relation);
        }
        if (T.xlo > T.xhi) throw ConfigInvalid("empty x-window");
        if (T.zorder < 0 || T.max_weight < 0 || T.coord_box < 0 || T.max_heis < 0) throw ConfigInvalid("negative truncation");
        if (T.span < 0 || T.span2 < 0) throw ConfigInvalid("negative span");
        if (T.pairs < 1 || T.triples < 1 || T.composite < 1 || T.per_relation < 1) throw ConfigInvalid("caps must be positive");
    }

    if (j.contains("samples")) {
        if (!j["samples"].is_array()) throw ConfigInvalid("samples must be a list of states");
        for (auto& s : j["samples"]) {
            if (!s.is_string()) throw ConfigInvalid("samples must be strings");
            try {
                State v = parse_state(s.get<std::string>(), r);
                for (auto& [m, c] : v.terms()) cfg.samples.push_back(State(m));
            } catch (const std::exception& e) {
                throw ConfigInvalid(std::string("bad sample state: ") + e.what());
            }
        }
    }

    auto known = all_suite_names();
    if (!j.contains("suites") || (j["suites"].is_string() && j["suites"] == "all")) {
        cfg.suites = known;
    } else {
        if (!j["suites"].is_array()) throw ConfigInvalid("suites must be \"all\" or a list");
        for (auto& s : j["suites"]) {
            if (!s.is_string()) throw ConfigInvalid("suite names must be strings");
            std::string n = s.get<std::string>();
            if (std::find(known.begin(), known.end(), n) == known.end()) throw ConfigInvalid("unknown suite " + n);
            cfg.suites.push_back(n);
        }
    }
    return cfg;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> reg = {
        {"heisenberg", {"commutator relation [h(m),h'(n)] = m delta <h,h'>", "D agrees with the B_L derivation"}},
        {"cocycle", {"2-cocycle identity", "commutator sign (-1)^<a,b>", "isometries preserve the pairing"}},
        {"va-axioms",
         {"vacuum and creation", "D-bracket", "skew symmetry", "locality on generators", "weak associativity"}},
        {"AL1-7", {"AL1", "AL2", "AL3", "AL4", "AL5", "AL6", "AL7 residue"}},
        {"comodule",
         {"B_L bialgebra identities", "comodule axioms", "rho is a homomorphism", "B_{L,eps} comodule analogue"}},
        {"module", {"module axiom at z != 0", "H-module vertex algebra axiom", "vacuum axiom"}},
        {"compat", {"rho is an H-module homomorphism"}},
        {"convolution", {"convolution inverse", "convolution of exponential structures"}},
        {"deform-thm59",
         {"f = 0 gives Y_VL", "generator formulas", "h-h relation", "h-e relation", "residue identity",
          "e-e relation", "twisted commutator criterion on composite pairs", "composition of deformations",
          "inverse reconstruction"}},
        {"s-operator",
         {"generator values", "symmetric f gives identity", "unitarity", "quantum Yang-Baxter", "shift", "hexagon"}},
        {"equivariance", {"averaged map is equivariant", "R(g) intertwines the deformed field"}},
        {"phi-calc",
         {"associate law", "closed forms", "projection of F_r", "two-variable identity", "membership PDE",
          "scaling lemma", "two-sided substitution", "differential algebra map"}},
        {"bleps-recovery", {"B_{L,eps} deformation equals Y_VL"}},
    };
    return reg;
}

std::vector<std::string> all_suite_names() {
    std::vector<std::string> out;
    for (auto& s : suite_registry()) out.push_back(s.name);
    return out;
}

Report run_suite(const SuiteConfig& cfg, const RunOptions& opt) {
    using namespace detail;
    Scalar::set_order(cfg.m);
    Ctx ctx = make_ctx(cfg);
    static const std::map<std::string, Recs (*)(const Ctx&)> fns = {
        {"heisenberg", suite_heisenberg}, {"cocycle", suite_cocycle},
        {"va-axioms", suite_va_axioms},   {"AL1-7", suite_al},
        {"comodule", suite_comodule},     {"module", suite_module},
        {"compat", suite_compat},         {"convolution", suite_convolution},
        {"deform-thm59", suite_deform},   {"s-operator", suite_s_operator},
        {"equivariance", suite_equivariance}, {"phi-calc", suite_phi},
        {"bleps-recovery", suite_bleps},
    };
    std::vector<std::future<Recs>> jobs;
    for (auto& name : cfg.suites) {
        auto fn = fns.at(name);
        auto launch = opt.parallel ? std::launch::async : std::launch::deferred;
        jobs.push_back(std::async(launch, [fn, &ctx] { return fn(ctx); }));
    }
    Report rep;
    for (auto& j : jobs)
        for (auto& rec : j.get()) rep.checks.push_back(std::move(rec));
    return rep;
}

std::string emit_report(const Report& r, ReportFormat fmt, bool timings) {
    if (fmt == ReportFormat::Json) {
        ojson out;
        out["version"] = 1;
        out["checks"] = ojson::array();
        for (auto& c : r.checks) {
            ojson rec;
            rec["suite"] = c.suite;
            rec["instance"] = c.instance;
            rec["status"] = c.pass ? "pass" : "fail";
            if (c.mismatch) {
                rec["exponents"] = c.mismatch->exponents;
                rec["monomial"] = c.mismatch->monomial;
                rec["expected"] = c.mismatch->expected;
                rec["actual"] = c.mismatch->actual;
            }
            if (!c.note.empty()) rec["note"] = c.note;
            if (timings) rec["ms"] = c.ms;
            out["checks"].push_back(rec);
        }
        return out.dump();
    }
    std::ostringstream os;
    size_t failed = 0;
    for (auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.suite << "  " << c.instance;
        if (!c.note.empty()) os << "  [" << c.note << "]";
        if (timings) os << "  (" << c.ms << " ms)";
        os << "\n";
        if (c.mismatch)
            os << "    at " << c.mismatch->exponents << " on " << c.mismatch->monomial << ": expected "
               << c.mismatch->expected << ", got " << c.mismatch->actual << "\n";
        failed += !c.pass;
    }
    os << r.checks.size() << " checks, " << failed << " failed\n";
    return os.str();
}

}  // namespace vlat
