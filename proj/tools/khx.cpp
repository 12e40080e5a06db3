// khx: equivariant Khovanov homology calculator.
//
//   khx homology --pd "PD[X[1,4,2,5],...]" --theory u1 --field f2 [--reduced]
//   khx s        --pd ... --field q   (or --file batch.txt)
//   khx verify   --suite frobenius|matrix-identities|splitting|nu-acyclic|
//                        su2|duality|invariance|all  [--pd ...] [--seed n]
//
// Exit codes: 0 success, 2 parse error, 3 unsupported scope, 4 verification
// failure, 1 internal error.

#include "CLI11.hpp"

#include "khx/homology.hpp"
#include "khx/lee.hpp"
#include "khx/serialize.hpp"
#include "khx/verify.hpp"

#include <future>
#include <iostream>
#include <thread>

using namespace khx;

namespace {

constexpr int EXIT_PARSE = 2, EXIT_SCOPE = 3, EXIT_VERIFY = 4;

int thread_budget() {
    if (const char* env = std::getenv("KHX_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

struct JobSpec {
    std::string command;
    std::string pd, file;
    std::string theory = "u1";
    std::string field = "q";
    bool reduced = false;
    int basepoint = 0;
    std::string format = "table";
    std::string suite = "all";
    uint64_t seed = 42;
    long samples = 10000;

    bool json() const { return format == "json"; }
    void check() const {
        if (!pd.empty() && !file.empty()) throw ParseError("give --pd or --file, not both");
        if (pd.empty() && file.empty() && command != "verify")
            throw ParseError("an input diagram is required: --pd or --file");
    }
};

std::vector<CorpusEntry> inputs_of(const JobSpec& spec) {
    if (!spec.pd.empty()) return {{"", spec.pd}};
    return load_corpus(spec.file);
}

LinkDiagram prepare(const JobSpec& spec, const std::string& pd) {
    LinkDiagram d = parse_pd(pd);
    if (spec.basepoint > 0) d = with_basepoint(d, spec.basepoint);
    return d;
}

std::string run_homology_one(const JobSpec& spec, const CorpusEntry& entry) {
    LinkDiagram d = prepare(spec, entry.pd);
    BaseRing base = parse_base_ring(spec.field);
    const Theory* th = Theory::get(theory_tag_parse(spec.theory), base);
    ReducedMode mode = ReducedMode::None;
    if (spec.reduced) {
        if (!d.basepoint) d = with_basepoint(d, d.arc_labels.empty() ? d.loops.front()
                                                                     : d.arc_labels.front());
        if (th->has_roots) {
            LeeLabeling lab = lee_labeling(d);
            mode = lab.pointed_is_root1 ? ReducedMode::Root1 : ReducedMode::Root2;
        } else {
            mode = ReducedMode::Root1;  // build_complex reports the scope error
        }
    }
    GradedModule m = homology(build_complex(d, th, mode)).module();
    std::ostringstream os;
    if (spec.json()) {
        nlohmann::json j = m.to_json();
        j["pd"] = d.to_pd();
        j["theory"] = th->name();
        j["reduced"] = spec.reduced;
        if (!entry.name.empty()) j["name"] = entry.name;
        os << j.dump() << "\n";
    } else {
        if (!entry.name.empty()) os << "# " << entry.name << "\n";
        os << m.table();
    }
    return os.str();
}

std::string run_s_one(const JobSpec& spec, const CorpusEntry& entry) {
    LinkDiagram d = prepare(spec, entry.pd);
    SInvariantReport rep = s_invariant(d, parse_base_ring(spec.field));
    rep.name = entry.name;
    std::ostringstream os;
    if (spec.json()) {
        os << rep.to_json().dump() << "\n";
    } else {
        os << (entry.name.empty() ? std::string("s") : entry.name) << ": s^" << rep.field << " = "
           << rep.s << "  (d_h = " << rep.d_h << ", w = " << rep.writhe << ", r = "
           << rep.seifert_circles << ", q(zeta) = " << rep.q_zeta
           << ", q(zeta~) = " << rep.q_zeta_tilde << ")\n";
    }
    return os.str();
}

int run_batch(const JobSpec& spec, const std::function<std::string(const CorpusEntry&)>& one) {
    std::vector<CorpusEntry> entries = inputs_of(spec);
    if (entries.size() == 1) {
        std::cout << one(entries[0]);
        return 0;
    }
    // fan out, but print in input order
    std::vector<std::string> outputs(entries.size());
    std::vector<std::string> errors(entries.size());
    std::vector<int> error_code(entries.size(), 0);
    size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        while (true) {
            size_t k;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= entries.size()) return;
                k = next++;
            }
            try {
                outputs[k] = one(entries[k]);
            } catch (const ParseError& e) {
                errors[k] = e.what();
                error_code[k] = EXIT_PARSE;
            } catch (const ScopeError& e) {
                errors[k] = e.what();
                error_code[k] = EXIT_SCOPE;
            } catch (const CheckError& e) {
                errors[k] = e.what();
                error_code[k] = EXIT_VERIFY;
            } catch (const std::exception& e) {
                errors[k] = e.what();
                error_code[k] = 1;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(thread_budget(), (int)entries.size()); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int code = 0;
    for (size_t k = 0; k < entries.size(); ++k) {
        if (!errors[k].empty()) {
            std::cerr << "error: " << (entries[k].name.empty() ? entries[k].pd : entries[k].name)
                      << ": " << errors[k] << "\n";
            if (!code) code = error_code[k];
        } else {
            std::cout << outputs[k];
        }
    }
    return code;
}

VerifyReport run_suite(const JobSpec& spec, const std::string& suite) {
    VerifyOptions opt;
    opt.seed = spec.seed;
    opt.samples = spec.samples;
    opt.pd = spec.pd;
    opt.theory = spec.theory == "u1" ? "" : spec.theory;
    opt.field = spec.field == "q" ? "" : spec.field;
    opt.corpus_path = spec.file;
    if (suite == "frobenius") return verify_frobenius_suite(opt);
    if (suite == "matrix-identities") return verify_matrix_identities(opt);
    if (suite == "splitting") return verify_splitting(opt);
    if (suite == "nu-acyclic") return verify_nu_acyclic(opt);
    if (suite == "su2") return verify_su2(opt);
    if (suite == "duality") return verify_duality(opt);
    if (suite == "invariance") return verify_invariance(opt);
    throw ParseError("unknown suite: " + suite);
}

int run_verify(const JobSpec& spec) {
    std::vector<std::string> suites;
    if (spec.suite == "all") {
        suites = {"frobenius"};
        if (!spec.pd.empty()) {
            suites.insert(suites.end(),
                          {"matrix-identities", "splitting", "nu-acyclic", "duality"});
            if (parse_pd(spec.pd).n_components == 1) suites.push_back("su2");
        }
        if (!spec.file.empty()) suites.push_back("invariance");
    } else {
        suites = {spec.suite};
    }
    bool all_pass = true;
    nlohmann::json jreports = nlohmann::json::array();
    for (const auto& s : suites) {
        VerifyReport rep = run_suite(spec, s);
        all_pass &= rep.all_pass();
        if (spec.json()) {
            nlohmann::json j{{"suite", rep.suite}, {"all_pass", rep.all_pass()}};
            nlohmann::json items = nlohmann::json::array();
            for (const auto& it : rep.items)
                items.push_back({{"name", it.name},
                                 {"pass", it.pass},
                                 {"samples", it.samples},
                                 {"detail", it.detail}});
            j["items"] = items;
            jreports.push_back(j);
        } else {
            for (const auto& it : rep.items) {
                std::cout << (it.pass ? "PASS" : "FAIL") << "  " << rep.suite << "." << it.name;
                if (it.samples > 1) std::cout << "  (" << it.samples << " samples)";
                if (!it.pass) std::cout << "  " << it.detail;
                std::cout << "\n";
            }
        }
    }
    if (spec.json())
        std::cout << nlohmann::json{{"schema", "khx.verify/1"},
                                    {"seed", spec.seed},
                                    {"reports", jreports}}
                         .dump()
                  << "\n";
    return all_pass ? 0 : EXIT_VERIFY;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivariant Khovanov homology calculator"};
    app.require_subcommand(1);
    JobSpec spec;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--pd", spec.pd, "inline PD code, PD[X[a,b,c,d],...] or JSON [[a,b,c,d],...]");
        cmd->add_option("--file", spec.file, "batch file: one 'name PD' per line, # comments");
        cmd->add_option("--theory", spec.theory, "u2|u1|u1xu1|su2|su2sqrt|plain")
            ->default_val("u1");
        cmd->add_option("--field", spec.field, "z|q|f<p>")->default_val("q");
        cmd->add_option("--basepoint", spec.basepoint, "basepoint arc label");
        cmd->add_option("--format", spec.format, "table|json")->default_val("table");
    };

    CLI::App* hom = app.add_subcommand("homology", "bigraded homology table");
    add_common(hom);
    hom->add_flag("--reduced", spec.reduced, "reduced complex at the basepoint");

    CLI::App* sinv = app.add_subcommand("s", "Rasmussen s-invariant report");
    add_common(sinv);

    CLI::App* ver = app.add_subcommand("verify", "property verification suites");
    add_common(ver);
    ver->add_option("--suite", spec.suite,
                    "frobenius|matrix-identities|splitting|nu-acyclic|su2|duality|invariance|all")
        ->default_val("all");
    ver->add_option("--seed", spec.seed, "PRNG seed")->default_val(42);
    ver->add_option("--samples", spec.samples, "samples per randomized identity")
        ->default_val(10000);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(ver)) return run_verify(spec);
        spec.check();
        if (app.got_subcommand(hom)) {
            spec.command = "homology";
            return run_batch(spec, [&](const CorpusEntry& e) { return run_homology_one(spec, e); });
        }
        spec.command = "s";
        return run_batch(spec, [&](const CorpusEntry& e) { return run_s_one(spec, e); });
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const ScopeError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return EXIT_SCOPE;
    } catch (const CheckError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return EXIT_VERIFY;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
