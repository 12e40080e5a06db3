// Randomized and matrix-level verification suites. Each suite returns a
// machine-readable report with one item per identity; failures carry a
// counterexample dump.
#pragma once

#include "khx/algebra.hpp"
#include "khx/diagram.hpp"

#include <cstdint>
#include <vector>

namespace khx {

struct VerifyOptions {
    uint64_t seed = 42;
    long samples = 10000;
    std::string pd;           // diagram-bound suites
    std::string theory = "";  // optional override
    std::string field = "";   // optional override
    std::string corpus_path;  // corpus-wide suites
};

struct VerifyItem {
    std::string name;
    bool pass = false;
    long samples = 0;
    std::string detail;  // counterexample or note
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyItem> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

// Props sigma-ops, hsigma-ops, hnu-formula, hnu-and-A, nu-and-sigma (char 2),
// hat-sigma-and-dual-ops, the u1xu1 and su2sqrt analogues, eigen-structure,
// specializations of nu-hat, and base-change path compatibility.
VerifyReport verify_frobenius_suite(const VerifyOptions& opt);

struct CorpusEntry {
    std::string name;
    std::string pd;
};
std::vector<CorpusEntry> load_corpus(const std::string& path);

BaseRing parse_base_ring(const std::string& s);  // "z", "q", "f<p>"

// Reidemeister-move variants for the invariance regression suite; the results
// are re-validated (planarity, orientation) on construction.
LinkDiagram r1_variant(const LinkDiagram& d, bool positive);
LinkDiagram r2_variant(const LinkDiagram& d);

// Chain-level suites (declared here, implemented with the complex module).
VerifyReport verify_matrix_identities(const VerifyOptions& opt);  // one diagram
VerifyReport verify_splitting(const VerifyOptions& opt);          // one diagram
VerifyReport verify_nu_acyclic(const VerifyOptions& opt);         // one diagram
VerifyReport verify_su2(const VerifyOptions& opt);                // one diagram
VerifyReport verify_duality(const VerifyOptions& opt);            // mirror iso, one diagram
VerifyReport verify_invariance(const VerifyOptions& opt);         // corpus-wide

}  // namespace khx
