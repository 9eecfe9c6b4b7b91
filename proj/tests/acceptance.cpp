// Runs the acceptance criteria against the example configs and prints one
// line per criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "oracle_fixtures.hpp"
#include "vlat/verifier.hpp"

using namespace vlat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    size_t checks = 0;
    std::string why;
};

struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0: no time limit
    std::function<Outcome()> run;
};

std::string dir;

SuiteConfig config(const std::string& name, std::vector<std::string> suites) {
    SuiteConfig cfg = load_config(dir + "/" + name + ".json");
    cfg.suites = std::move(suites);
    return cfg;
}

size_t count(const Report& r, const std::string& needle) {
    size_t n = 0;
    for (auto& c : r.checks) n += c.instance.find(needle) != std::string::npos;
    return n;
}

void absorb(Outcome& o, const std::string& lat, const Report& r) {
    o.checks += r.checks.size();
    for (auto& c : r.checks)
        if (!c.pass) {
            if (o.pass) o.why = lat + ": " + c.suite + " " + c.instance;
            o.pass = false;
        }
}

void need(Outcome& o, const std::string& lat, const Report& r, const std::string& needle, size_t min) {
    size_t n = count(r, needle);
    if (n >= min) return;
    if (o.pass) o.why = lat + ": only " + std::to_string(n) + " '" + needle + "' checks, want " + std::to_string(min);
    o.pass = false;
}

const std::vector<std::string> kLattices = {"a1", "a2", "u"};

// run suites on every example lattice; extra(lattice, cfg, report, outcome) adds coverage requirements
Outcome on_all(std::vector<std::string> suites,
               const std::function<void(const std::string&, const SuiteConfig&, const Report&, Outcome&)>& extra = {}) {
    Outcome o;
    for (auto& lat : kLattices) {
        SuiteConfig cfg = config(lat, suites);
        Report r = run_suite(cfg);
        absorb(o, lat, r);
        if (extra) extra(lat, cfg, r, o);
    }
    return o;
}

size_t gen_pairs(const SuiteConfig& cfg) {
    size_t g = generator_states(cfg.lattice).size();
    return g * g;
}

}  // namespace

int main(int argc, char** argv) {
    dir = argc > 1 ? argv[1] : "examples";

    std::vector<Criterion> crit = {
        {1, "Heisenberg and cocycle identities", 5, [] { return on_all({"heisenberg", "cocycle"}); }},
        {2, "V_L axioms", 60,
         [] {
             return on_all({"va-axioms"}, [](auto& lat, auto&, auto& r, auto& o) {
                 need(o, lat, r, "weak associativity", 50);
                 need(o, lat, r, "locality", 1);
                 need(o, lat, r, "skew symmetry", 1);
                 need(o, lat, r, "D-bracket", 1);
             });
         }},
        {3, "lattice algebra relations AL1-AL7", 60,
         [] {
             return on_all({"AL1-7"}, [](auto& lat, auto&, auto& r, auto& o) {
                 for (int k = 1; k <= 7; ++k) need(o, lat, r, "AL" + std::to_string(k), 1);
             });
         }},
        {4, "bialgebra and comodule identities", 30, [] { return on_all({"comodule"}); }},
        {5, "module structures, compatibility, convolution", 120,
         [] {
             return on_all({"module", "compat", "convolution"}, [](auto& lat, auto& cfg, auto& r, auto& o) {
                 for (auto& nm : cfg.deformations) {
                     need(o, lat, r, "module axiom f=" + nm.name + " ", 1);
                     need(o, lat, r, "inverse f=" + nm.name + " ", 1);
                 }
             });
         }},
        {6, "deformed vertex algebra relations", 300,
         [] {
             return on_all({"deform-thm59"}, [](auto& lat, auto& cfg, auto& r, auto& o) {
                 need(o, lat, r, "f=0 gives Y_VL", 1);
                 need(o, lat, r, "composition", 20);
                 for (auto& nm : cfg.deformations) {
                     need(o, lat, r, "twisted commutator f=" + nm.name + " ", 20);
                     need(o, lat, r, "e-e relation f=" + nm.name + " ", 1);
                     if (!nm.f.is_zero()) need(o, lat, r, "inverse reconstruction f=" + nm.name + " ", 20);
                 }
             });
         }},
        {7, "S-operator identities", 300,
         [] {
             return on_all({"s-operator"}, [](auto& lat, auto& cfg, auto& r, auto& o) {
                 need(o, lat, r, "generator value", 1);
                 need(o, lat, r, "symmetric map", 1);
                 need(o, lat, r, "Yang-Baxter", 1);
                 for (auto& nm : cfg.deformations) {
                     need(o, lat, r, "unitarity f=" + nm.name + " ", gen_pairs(cfg) + 10);
                     need(o, lat, r, "hexagon f=" + nm.name + " ", 1);
                     need(o, lat, r, "shift f=" + nm.name + " ", 1);
                 }
             });
         }},
        {8, "B_{L,eps} recovers V_L", 60,
         [] {
             return on_all({"bleps-recovery"},
                           [](auto& lat, auto& cfg, auto& r, auto& o) { need(o, lat, r, "u=", gen_pairs(cfg) + 20); });
         }},
        {9, "equivariance on A1 with chi(-1) = +1, -1", 60,
         [] {
             Outcome o;
             SuiteConfig cfg = config("a1", {"equivariance"});
             Report r = run_suite(cfg);
             absorb(o, "a1", r);
             if (cfg.groups.size() < 2) o.pass = false, o.why = "a1 needs both characters";
             need(o, "a1", r, "averaged map is equivariant", 1);
             return o;
         }},
        {10, "phi-calculus", 30,
         [] {
             Outcome o;
             Report r = run_suite(config("a1", {"phi-calc"}));
             absorb(o, "a1", r);
             for (auto s : {"associate law", "closed form", "projection", "two-variable", "membership", "scaling"})
                 need(o, "a1", r, s, 1);
             return o;
         }},
        {11, "engine agrees with the brute-force oracle", 0,
         [] {
             Outcome o;
             for (auto& f : derived_fixtures()) {
                 ++o.checks;
                 if (!f.agree && o.pass) o.why = f.name + (f.detail.empty() ? "" : ": " + f.detail);
                 o.pass = o.pass && f.agree;
             }
             return o;
         }},
        {12, "two verify runs give identical reports", 0,
         [] {
             Outcome o;
             for (auto& lat : {"a1", "a2"}) {
                 SuiteConfig cfg = load_config(dir + "/" + lat + ".json");
                 std::string a = emit_report(run_suite(cfg), ReportFormat::Json);
                 std::string b = emit_report(run_suite(cfg), ReportFormat::Json);
                 ++o.checks;
                 if (a != b) o.pass = false, o.why = std::string(lat) + " reports differ";
             }
             return o;
         }},
    };

    bool all = true;
    for (auto& c : crit) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.why = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        bool in_time = c.limit_s == 0 || s < c.limit_s;
        bool ok = o.pass && in_time;
        all = all && ok;
        char line[256];
        if (c.limit_s > 0)
            std::snprintf(line, sizeof line, "%s %2d %-48s %6zu checks %8.2f s (limit %g s)", ok ? "PASS" : "FAIL", c.id,
                          c.title.c_str(), o.checks, s, c.limit_s);
        else
            std::snprintf(line, sizeof line, "%s %2d %-48s %6zu checks %8.2f s", ok ? "PASS" : "FAIL", c.id,
                          c.title.c_str(), o.checks, s);
        std::cout << line;
        if (!o.pass) std::cout << "  [" << o.why << "]";
        else if (!in_time) std::cout << "  [over time]";
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
