// Command-line front end: bound queries, improvement scans, family checks,
// oracle runs, ingestion and cache management.
//
// Exit codes: 0 success, 1 assertion/verification failure, 2 usage error.

#include <cstdlib>
#include <memory>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "coverbound/families.hpp"
#include "coverbound/oracle.hpp"
#include "coverbound/pipeline.hpp"

using namespace coverbound;

namespace {

struct RunConfig {
    RuleSet rules;
    std::vector<std::string> disabled;
    std::vector<std::string> external_paths;
    std::string exact_path;
    std::string cache_path;
    std::string format = "text";
    std::uint64_t budget = 10'000'000;
    int threads = 0;
    long sqrt_scale_exp = 40;

    Int sqrt_scale() const {
        Int s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(sqrt_scale_exp));
        return s;
    }

    TableFormat table_format() const {
        if (format == "csv") return TableFormat::Csv;
        if (format == "json") return TableFormat::Json;
        return TableFormat::Text;
    }
};

std::unique_ptr<BoundEngine> make_engine(RunConfig& cfg) {
    for (const auto& name : cfg.disabled)
        if (!cfg.rules.disable(name)) throw CLI::ValidationError("--disable", "unknown rule " + name);
    auto engine = std::make_unique<BoundEngine>(cfg.rules, cfg.sqrt_scale());
    for (const auto& p : cfg.external_paths) engine->store().ingest_external(p);
    if (!cfg.exact_path.empty()) engine->store().exact.load_csv(cfg.exact_path);
    if (!cfg.cache_path.empty()) load_cache(cfg.cache_path, *engine);
    return engine;
}

void finish_engine(const RunConfig& cfg, const BoundEngine& engine) {
    if (!cfg.cache_path.empty()) save_cache(cfg.cache_path, engine);
}

bool parse_range(const std::string& text, long& lo, long& hi) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stol(text);
        } else {
            lo = std::stol(text.substr(0, dots));
            hi = std::stol(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        return false;
    }
    return lo <= hi;
}

int cmd_bound(RunConfig& cfg, long v, long k, long t, long lambda) {
    auto engine = make_engine(cfg);
    BoundRecord rec = engine->best_bound({v, k, t, lambda});
    auto chain = engine->chain(rec.key);
    if (cfg.format == "json") {
        std::cout << "{\"v\": " << v << ", \"k\": " << k << ", \"t\": " << t
                  << ", \"lambda\": " << lambda << ", \"value\": \"" << rec.value.get_str()
                  << "\", \"rule\": \"" << rec.rule.label() << "\", \"chain\": [";
        for (std::size_t i = 0; i < chain.size(); ++i)
            std::cout << (i ? ", " : "") << "{\"key\": \"" << to_string(chain[i].key)
                      << "\", \"value\": \"" << chain[i].value.get_str() << "\", \"rule\": \""
                      << chain[i].rule.label() << "\"}";
        std::cout << "]}\n";
    } else {
        std::cout << "C_" << lambda << "(" << v << "," << k << "," << t << ") >= " << rec.value
                  << "  [" << rec.rule.label() << "]\n";
        std::cout << "chain:\n";
        for (const auto& r : chain)
            std::cout << "  " << to_string(r.key) << " = " << r.value << "  [" << r.rule.label()
                      << "]\n";
    }
    finish_engine(cfg, *engine);
    return 0;
}

int cmd_scan(RunConfig& cfg, long t, long lambda, long kmin, long kmax, long vmax) {
    auto engine = make_engine(cfg);
    std::optional<long> cap;
    if (vmax > 0) cap = vmax;
    auto entries = scan_improvements(t, lambda, kmin, kmax, *engine, cap, cfg.threads);
    std::cout << emit_table(entries, cfg.table_format());
    finish_engine(cfg, *engine);
    return 0;
}

int cmd_family_inffam(const std::string& mrange) {
    long lo = 0, hi = 0;
    if (!parse_range(mrange, lo, hi) || lo < 6) {
        std::cerr << "error: --m expects M or M1..M2 with M >= 6\n";
        return 2;
    }
    bool all_ok = true;
    for (long m = lo; m <= hi; ++m) {
        InfFamReport r = inffam_check(m);
        std::cout << "m=" << m << " v=" << r.params.v << " k=" << r.params.k
                  << " L=" << r.schonheim_value << " bound=" << r.theorem_bound
                  << " promised=" << r.promised << (r.ok ? " PASS" : " FAIL") << "\n";
        all_ok = all_ok && r.ok;
    }
    return all_ok ? 0 : 1;
}

int cmd_family_affine(long q, long m, long t, const std::string& table_path) {
    FieldTable ft;
    const FieldTable* ftp = nullptr;
    if (!table_path.empty()) {
        ft = FieldTable::load(table_path);
        ftp = &ft;
    }
    ExactTh2Report r = exactth2(m, q, t, ftp, true);
    bool ok = r.lower_ok && r.witness_ok && r.lower_bound == r.exact_value;
    std::cout << "q=" << q << " m=" << m << " t=" << t << ": z=" << r.z << " v_min=" << r.v_min
              << " exact=" << r.exact_value << " lower=" << r.lower_bound
              << " witness_blocks=" << r.witness_blocks << (ok ? " PASS" : " FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_oracle_exact(RunConfig& cfg, long v, long k, long t, long lambda,
                     const std::string& witness_path) {
    Covering w;
    SearchStats st;
    auto val = exact_cover_number(v, k, t, lambda, cfg.budget, &w, &st);
    if (!val) {
        std::cout << "C_" << lambda << "(" << v << "," << k << "," << t << ") = unknown (budget)\n";
        return 0;
    }
    std::cout << "C_" << lambda << "(" << v << "," << k << "," << t << ") = " << *val << "\n";
    if (!witness_path.empty()) {
        std::ofstream out(witness_path);
        write_witness_json(out, w, k, t, lambda);
    }
    return 0;
}

int verify_fail(const char* what) {
    std::cout << what << ": FAIL\n";
    return 1;
}

// Seeded identity suites: the multinomial identity, gram/decomposition
// checks, positive definiteness on V0, and the Caro--Tuza bound.
int cmd_oracle_verify(unsigned seed, int count) {
    const BoundProvider provider = [](const Params& p) { return schonheim(p); };

    for (long ell = 0; ell <= 12; ++ell)
        for (long i = 0; i <= ell; ++i)
            if (alt_binom_sum(i, ell) != (i == ell ? 1 : 0)) return verify_fail("multinomial identity");
    std::cout << "multinomial identity (i <= ell <= 12): PASS\n";

    std::mt19937 rng(seed);
    int pd_checked = 0;
    for (int i = 0; i < count; ++i) {
        long t = std::uniform_int_distribution<long>(2, 4)(rng);
        long k = std::uniform_int_distribution<long>(t + 1, 5)(rng);
        long v = std::uniform_int_distribution<long>(k + 1, 10)(rng);
        long lambda = std::uniform_int_distribution<long>(1, 2)(rng);
        long smax = std::min(2L, t / 2);
        long s = std::uniform_int_distribution<long>(1, smax)(rng);
        if (k - 2 * s < 1) continue;
        Covering c = random_covering(v, k, t, lambda, rng);
        if (!is_covering(c, t, lambda)) return verify_fail("random covering generation");
        if (!gram_check(c, s)) return verify_fail("gram identity");
        SpectralContext ctx = build_context({v, k, t, lambda}, s, provider);
        auto rep = decomposition_check(c, ctx);
        if (!rep.ok) {
            std::cout << "decomposition: FAIL (" << rep.detail << ")\n";
            return 1;
        }
        if (ctx.hypotheses_ok() && ctx.d < ctx.a_s()) {
            auto subs = subsets_of_size(v, s);
            IntMatrix g = matmul_transpose(s_incidence(c, s));
            std::vector<long> v0;
            for (std::size_t x = 0; x < subs.size(); ++x)
                if (count_blocks_containing(c, subs[x]) == ctx.b_at(s))
                    v0.push_back(static_cast<long>(x));
            if (!pd_check(principal_submatrix(g, v0))) return verify_fail("V0 positive definiteness");
            ++pd_checked;
        }
    }
    std::cout << "gram + decomposition identities (" << count << " seeded coverings): PASS\n";
    std::cout << "V0 positive definiteness (" << pd_checked << " engaged): PASS\n";

    for (int i = 0; i < count; ++i) {
        int n = std::uniform_int_distribution<int>(1, 9)(rng);
        Multigraph g(n);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                g.set_edge(x, y, std::uniform_int_distribution<int>(0, 3)(rng));
        for (long nd = 1; nd <= 4; ++nd)
            if (!caro_tuza_check(g, nd).ok) return verify_fail("caro-tuza bound");
    }
    std::cout << "caro-tuza bound (" << count << " seeded multigraphs): PASS\n";
    return 0;
}

int cmd_ingest(const std::string& path) {
    BoundStore store;
    std::size_t n = store.ingest_external(path);
    std::cout << "ingested " << n << " records\n";
    return 0;
}

int cmd_cache_clear(const RunConfig& cfg) {
    if (cfg.cache_path.empty()) {
        std::cerr << "error: no cache path (--cache or COVERBOUND_CACHE)\n";
        return 2;
    }
    std::remove(cfg.cache_path.c_str());
    std::cout << "cleared " << cfg.cache_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lower bounds on covering numbers C_lambda(v,k,t)"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--disable", cfg.disabled,
                   "disable a rule: base, schonheim-step, mm-special, mm-general, main, dbig, "
                   "smalld, external")
        ->take_all();
    app.add_option("--s-max", cfg.rules.s_max, "cap the rank parameter s");
    app.add_flag("--no-external-inputs", [&cfg](std::int64_t) { cfg.rules.externals_as_inputs = false; },
                 "use external bounds as final values only, not as theorem inputs");
    app.add_option("--external", cfg.external_paths, "external lower-bound CSV (repeatable)")
        ->take_all();
    app.add_option("--exact", cfg.exact_path, "exact-value CSV gating Mills--Mullin");
    app.add_option("--cache", cfg.cache_path, "bound cache file")->envname("COVERBOUND_CACHE");
    app.add_option("--format", cfg.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--budget", cfg.budget, "oracle search node budget");
    app.add_option("--threads", cfg.threads, "scan worker threads (0 = auto)");
    app.add_option("--sqrt-scale-exp", cfg.sqrt_scale_exp, "sqrt under-approximation scale 10^N")
        ->check(CLI::Range(1L, 10000L));

    // bound v k t [lambda]
    long v = 0, k = 0, t = 0, lambda = 1;
    auto* bound = app.add_subcommand("bound", "best certified lower bound for one parameter set");
    bound->add_option("v", v)->required();
    bound->add_option("k", k)->required();
    bound->add_option("t", t)->required();
    bound->add_option("lambda", lambda);

    // scan
    long scan_t = 0, scan_lambda = 1, kmin = 0, kmax = 0, vmax = 0;
    auto* scan = app.add_subcommand("scan", "improvement table over a k range");
    scan->add_option("--t", scan_t)->required();
    scan->add_option("--lambda", scan_lambda);
    scan->add_option("--kmin", kmin)->required();
    scan->add_option("--kmax", kmax)->required();
    scan->add_option("--vmax", vmax, "cap the scanned v range");

    // family inffam | affine
    auto* family = app.add_subcommand("family", "closed-form family checks");
    family->require_subcommand(1);
    std::string mrange;
    auto* inffam = family->add_subcommand("inffam", "t=5 improvement family");
    inffam->add_option("--m", mrange, "m or m1..m2")->required();
    long aff_q = 0, aff_m = 0, aff_t = 0;
    std::string field_table;
    auto* affine = family->add_subcommand("affine", "affine blow-up exact values");
    affine->add_option("--q", aff_q)->required();
    affine->add_option("--m", aff_m)->required();
    affine->add_option("--t", aff_t)->required();
    affine->add_option("--field-table", field_table, "field tables for prime-power q");

    // oracle exact | verify
    auto* oracle = app.add_subcommand("oracle", "ground-truth computations");
    oracle->require_subcommand(1);
    long ov = 0, ok_ = 0, ot = 0, olambda = 1;
    std::string witness_path;
    auto* oexact = oracle->add_subcommand("exact", "exact covering number by branch and bound");
    oexact->add_option("v", ov)->required();
    oexact->add_option("k", ok_)->required();
    oexact->add_option("t", ot)->required();
    oexact->add_option("lambda", olambda);
    oexact->add_option("--witness", witness_path, "write an optimal covering as JSON");
    unsigned seed = 1;
    int verify_count = 100;
    auto* overify = oracle->add_subcommand("verify", "run the seeded identity suites");
    overify->add_option("--seed", seed);
    overify->add_option("--count", verify_count);

    // ingest
    std::string ingest_path;
    auto* ingest = app.add_subcommand("ingest", "validate and count an external CSV");
    ingest->add_option("csv", ingest_path)->required();

    // cache clear
    auto* cache = app.add_subcommand("cache", "cache management");
    cache->require_subcommand(1);
    auto* clear = cache->add_subcommand("clear", "delete the cache file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bound->parsed()) return cmd_bound(cfg, v, k, t, lambda);
        if (scan->parsed()) return cmd_scan(cfg, scan_t, scan_lambda, kmin, kmax, vmax);
        if (family->parsed()) {
            if (inffam->parsed()) return cmd_family_inffam(mrange);
            if (affine->parsed()) return cmd_family_affine(aff_q, aff_m, aff_t, field_table);
        }
        if (oracle->parsed()) {
            if (oexact->parsed()) return cmd_oracle_exact(cfg, ov, ok_, ot, olambda, witness_path);
            if (overify->parsed()) return cmd_oracle_verify(seed, verify_count);
        }
        if (ingest->parsed()) return cmd_ingest(ingest_path);
        if (cache->parsed() && clear->parsed()) return cmd_cache_clear(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
