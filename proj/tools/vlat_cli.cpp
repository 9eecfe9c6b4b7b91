#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "vlat/phi.hpp"
#include "vlat/verifier.hpp"

using namespace vlat;

namespace {

constexpr int kPass = 0, kFail = 1, kConfig = 2;

std::pair<int, int> parse_window(const std::string& s) {
    static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ConfigInvalid("window must look like lo..hi, got " + s);
    int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
    if (lo > hi) throw ConfigInvalid("empty window " + s);
    return {lo, hi};
}

const DeformationMap& find_map(const SuiteConfig& cfg, const std::string& name) {
    for (auto& nm : cfg.deformations)
        if (nm.name == name) return nm.f;
    throw ConfigInvalid("no deformation named " + name);
}

void print_series(const SeriesState& s, int lo, int hi) {
    for (auto& [e, v] : s.t)
        if (e >= lo && e <= hi) std::cout << "x^" << e << ": " << state_str(v) << "\n";
}

int cmd_verify(const std::string& path, const std::string& format, const std::string& out, bool timings,
               const std::vector<std::string>& only, bool serial) {
    SuiteConfig cfg = load_config(path);
    if (!only.empty()) {
        auto known = all_suite_names();
        for (auto& s : only)
            if (std::find(known.begin(), known.end(), s) == known.end()) throw ConfigInvalid("unknown suite " + s);
        cfg.suites = only;
    }
    Report r = run_suite(cfg, RunOptions{!serial});
    std::string text = emit_report(r, format == "json" ? ReportFormat::Json : ReportFormat::Text, timings);
    if (out.empty() || out == "-") {
        std::cout << text;
        if (format == "json") std::cout << "\n";
    } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
        if (!f) throw std::runtime_error("cannot write " + out);
        size_t failed = std::count_if(r.checks.begin(), r.checks.end(), [](auto& c) { return !c.pass; });
        std::cerr << r.checks.size() << " checks, " << failed << " failed\n";
    }
    return r.passed() ? kPass : kFail;
}

int cmd_ope(const std::string& path, const std::string& left, const std::string& right, const std::string& fname,
            const std::string& window) {
    SuiteConfig cfg = load_config(path);
    Scalar::set_order(cfg.m);
    const Lattice& L = cfg.lattice;
    auto [lo, hi] = parse_window(window);
    State u, v;
    try {
        u = parse_state(left, L.rank());
        v = parse_state(right, L.rank());
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("bad state: ") + e.what());
    }
    SeriesState s = fname.empty() ? Y_VL(L, u, v, hi) : deformed_Y(L, find_map(cfg, fname), u, v, hi);
    print_series(s, lo, hi);
    return kPass;
}

int cmd_smatrix(const std::string& path, const std::string& pairs, const std::string& fname, int order) {
    if (pairs != "generators") throw ConfigInvalid("--pairs supports only 'generators'");
    SuiteConfig cfg = load_config(path);
    Scalar::set_order(cfg.m);
    const Lattice& L = cfg.lattice;
    auto gens = generator_states(L);
    for (auto& nm : cfg.deformations) {
        if (!fname.empty() && nm.name != fname) continue;
        std::cout << "f = " << nm.name << "\n";
        for (auto& v : gens)
            for (auto& u : gens) {
                SeriesTensor s = S_apply(L, nm.f, tensor(v, u), order);
                std::cout << "  S(x)(" << state_str(v) << " (x) " << state_str(u) << ")\n";
                for (auto& [e, t] : s.t) std::cout << "    x^" << e << ": " << tensor_str(t) << "\n";
            }
    }
    return kPass;
}

int cmd_phi(const std::string& p, std::optional<int> r, const std::string& check, int zorder) {
    if (check != "all") throw ConfigInvalid("--check supports only 'all'");
    if (p.empty() == !r) throw ConfigInvalid("give exactly one of --p and --r");
    Poly poly;
    if (r) {
        poly = Poly{{*r + 1, Scalar(1)}};
    } else {
        try {
            poly = poly_parse(p);
        } catch (const std::exception& e) {
            throw ConfigInvalid(std::string("bad series: ") + e.what());
        }
    }
    Associate a = associate_expand(poly, zorder);
    std::cout << "p = " << poly_str(poly) << "\n";
    for (int n = 0; n <= std::min(zorder, 4); ++n) std::cout << "phi z^" << n << ": " << poly_str(a.coeff[n]) << "\n";
    if (poly.size() == 1 && poly.begin()->second == Scalar(1)) {
        int rr = poly.begin()->first - 1;
        LaurentSeries pi = pi_phi(F_r(rr), phi_r_closed(rr, zorder + 2), zorder);
        std::cout << "pi(F_" << rr << ") = ";
        if (series_agree(pi, f_r(rr, zorder))) std::cout << (rr == 0 ? "e^z" : "z") << "  [" << pi.str() << "]\n";
        else std::cout << pi.str() << "\n";
    }
    Report rep = phi_report(poly, zorder);
    std::cout << emit_report(rep, ReportFormat::Text);
    return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice vertex algebra deformation verifier"};
    app.require_subcommand(1);

    std::string config, format = "text", out, left, right, fname, window = "-8..8", pairs = "generators", p,
                check = "all";
    bool timings = false, serial = false;
    std::vector<std::string> only;
    int order = 4, zorder = 6;
    std::optional<int> r;

    auto* verify = app.add_subcommand("verify", "run the configured identity suites");
    verify->add_option("config", config, "config JSON")->required();
    verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("-o,--out", out, "write the report here instead of stdout");
    verify->add_flag("--timings", timings, "include per-check timings");
    verify->add_option("--suite", only, "run only these suites");
    verify->add_flag("--serial", serial, "run suites one after another");

    auto* ope = app.add_subcommand("ope", "print Y(u,x)v or Y^f(u,x)v coefficients");
    ope->add_option("config", config, "config JSON")->required();
    ope->add_option("--left", left, "state u")->required();
    ope->add_option("--right", right, "state v")->required();
    ope->add_option("--deformed", fname, "deformation map name");
    ope->add_option("--window", window, "exponent window lo..hi");

    auto* sm = app.add_subcommand("smatrix", "print S(x) on generator pairs");
    sm->add_option("config", config, "config JSON")->required();
    sm->add_option("--pairs", pairs, "which pairs")->check(CLI::IsMember({"generators"}));
    sm->add_option("--deformed", fname, "only this deformation map");
    sm->add_option("--order", order, "highest power of x");

    auto* phi = app.add_subcommand("phi", "phi-calculus checks for one associate");
    phi->add_option("--p", p, "p(x) as a Laurent polynomial");
    phi->add_option("--r", r, "use p = x^{r+1}");
    phi->add_option("--check", check, "which checks")->check(CLI::IsMember({"all"}));
    phi->add_option("--zorder", zorder, "z truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }

    try {
        if (*verify) return cmd_verify(config, format, out, timings, only, serial);
        if (*ope) return cmd_ope(config, left, right, fname, window);
        if (*sm) return cmd_smatrix(config, pairs, fname, order);
        if (*phi) return cmd_phi(p, r, check, zorder);
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.why << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}
