#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlat/deformation.hpp"

namespace vlat {

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& why) : std::runtime_error("ConfigInvalid: " + why), why(why) {}
    std::string why;
};

struct Truncation {
    int xlo = -8, xhi = 8;
    int zorder = 6;
    int max_weight = 4;
    int coord_box = 2;
    int max_heis = 4;
    // one-variable checks use [pole, pole + span] inside [xlo, xhi]; two- and
    // three-variable checks use span2 per variable
    int span = 6;
    int span2 = 2;
    int pairs = 24;
    int triples = 50;
    int composite = 10;
    int per_relation = 40;  // sampled (generator pair, state) instances per relation
};

struct NamedMap {
    std::string name;
    DeformationMap f;
};

struct SuiteConfig {
    Lattice lattice;
    int m = 2;
    std::vector<NamedMap> deformations;
    std::vector<std::vector<Isometry>> groups;
    Truncation trunc;
    std::vector<State> samples;  // empty: every basis state inside the truncation box
    std::vector<std::string> suites;
};

SuiteConfig parse_config(const std::string& json_text);
SuiteConfig load_config(const std::string& path);

struct CheckRecord {
    std::string suite;
    std::string instance;
    bool pass = true;
    std::optional<Mismatch> mismatch;
    std::string note;
    double ms = 0;
};

struct Report {
    std::vector<CheckRecord> checks;
    bool passed() const;
};

// nonzero vectors with coordinates in {-1, 0, 1} and |<a,a>| <= 2
std::vector<LatticeVec> small_roots(const Lattice& L);
// h_i(-1)1 for each basis index, then e_a for the small roots
std::vector<State> generator_states(const Lattice& L);

struct SuiteInfo {
    std::string name;
    std::vector<std::string> invariants;
};
const std::vector<SuiteInfo>& suite_registry();
std::vector<std::string> all_suite_names();

struct RunOptions {
    bool parallel = true;
};

Report run_suite(const SuiteConfig& cfg, const RunOptions& opt = {});

// phi-calculus checks for one associate; the F_r family is added when p = x^{r+1}
Report phi_report(const Poly& p, int zorder);

enum class ReportFormat { Json, Text };
// timings are left out unless asked for, so repeated runs give identical bytes
std::string emit_report(const Report& r, ReportFormat fmt, bool timings = false);

}  // namespace vlat
