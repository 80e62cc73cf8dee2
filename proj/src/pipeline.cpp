#include "coverbound/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace coverbound {

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

std::string Rule::label() const {
    switch (kind) {
        case RuleKind::None: return "None";
        case RuleKind::Base: return "Base";
        case RuleKind::SchonheimStep: return "SchonheimStep";
        case RuleKind::MillsMullinSpecial: return "MillsMullinSpecial";
        case RuleKind::MillsMullinGeneral: return "MillsMullinGeneral";
        case RuleKind::TheoremMain: return "TheoremMain(s=" + std::to_string(s) + ")";
        case RuleKind::TheoremDBig: return "TheoremDBig(s=" + std::to_string(s) + ")";
        case RuleKind::TheoremSmallD:
            return "TheoremSmallD(s=" + std::to_string(s) + ",case=" + to_char(c) + ")";
        case RuleKind::External: return "External(" + source + ")";
    }
    return "None";
}

Rule Rule::parse(const std::string& label) {
    Rule r;
    auto starts = [&](const char* p) { return label.rfind(p, 0) == 0; };
    auto s_of = [&]() {
        auto eq = label.find("s=");
        return eq == std::string::npos ? 0L : std::stol(label.substr(eq + 2));
    };
    if (label == "Base")
        r.kind = RuleKind::Base;
    else if (label == "SchonheimStep")
        r.kind = RuleKind::SchonheimStep;
    else if (label == "MillsMullinSpecial")
        r.kind = RuleKind::MillsMullinSpecial;
    else if (label == "MillsMullinGeneral")
        r.kind = RuleKind::MillsMullinGeneral;
    else if (starts("TheoremMain")) {
        r.kind = RuleKind::TheoremMain;
        r.s = s_of();
    } else if (starts("TheoremDBig")) {
        r.kind = RuleKind::TheoremDBig;
        r.s = s_of();
    } else if (starts("TheoremSmallD")) {
        r.kind = RuleKind::TheoremSmallD;
        r.s = s_of();
        auto cpos = label.find("case=");
        if (cpos != std::string::npos) {
            char c = label[cpos + 5];
            r.c = c == 'b' ? SmallDCase::B : (c == 'c' ? SmallDCase::C : SmallDCase::A);
        }
    } else if (starts("External(")) {
        r.kind = RuleKind::External;
        r.source = label.substr(9, label.size() - 10);
    }
    return r;
}

bool RuleSet::disable(const std::string& name) {
    if (name == "base") base = false;
    else if (name == "schonheim-step") schonheim_step = false;
    else if (name == "mm-special") mm_special = false;
    else if (name == "mm-general") mm_general = false;
    else if (name == "main") thm_main = false;
    else if (name == "dbig") thm_dbig = false;
    else if (name == "smalld") thm_smalld = false;
    else if (name == "external") external = false;
    else return false;
    return true;
}

std::string RuleSet::describe() const {
    std::ostringstream os;
    os << "base=" << base << ",step=" << schonheim_step << ",mms=" << mm_special
       << ",mmg=" << mm_general << ",main=" << thm_main << ",dbig=" << thm_dbig
       << ",smalld=" << thm_smalld << ",ext=" << external << ",smax=" << s_max
       << ",extb=" << externals_as_inputs;
    return os.str();
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

void BoundStore::add_external(const Params& p, const Int& value, const std::string& source) {
    auto it = ext_.find(p);
    if (it == ext_.end())
        ext_.emplace(p, std::make_pair(value, source));
    else if (value > it->second.first)
        it->second = {value, source};
}

std::optional<std::pair<Int, std::string>> BoundStore::external(const Params& p) const {
    auto it = ext_.find(p);
    if (it == ext_.end()) return std::nullopt;
    return it->second;
}

std::size_t BoundStore::ingest_external(const std::string& path) {
    std::size_t n = 0;
    for_each_bound_csv_row(path,
                           [&](std::size_t, const Params& p, const Int& value, const std::string& src) {
                               add_external(p, value, src);
                               ++n;
                           });
    return n;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

std::optional<Int> RuleEvaluation::best_classical() const {
    std::optional<Int> best;
    auto offer = [&](const std::optional<Int>& v) {
        if (v && (!best || *v > *best)) best = v;
    };
    offer(base);
    offer(step);
    offer(mm_special);
    offer(mm_general);
    if (ext) offer(ext->first);
    return best;
}

std::optional<Int> RuleEvaluation::best_main() const {
    std::optional<Int> best;
    for (const auto& th : thms)
        if (th.main && (!best || *th.main > *best)) best = th.main;
    return best;
}

std::optional<Int> RuleEvaluation::best_dbig() const {
    std::optional<Int> best;
    for (const auto& th : thms)
        if (th.dbig && (!best || *th.dbig > *best)) best = th.dbig;
    return best;
}

std::optional<Int> RuleEvaluation::best_smalld() const {
    std::optional<Int> best;
    for (const auto& th : thms)
        if (th.smalld && (!best || th.smalld->value > *best)) best = th.smalld->value;
    return best;
}

BoundEngine::BoundEngine(RuleSet rules, Int sqrt_scale)
    : rules_(rules), sqrt_scale_(std::move(sqrt_scale)) {}

const BoundRecord& BoundEngine::memo_get(const Params& key, bool inputs_mode) {
    auto& memo = inputs_mode ? memo_inputs_ : memo_;
    {
        std::shared_lock lk(mx_);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    // Theorem inputs live in the separate memo when externals are excluded
    // from b_i; make sure that chain exists first.
    if (!inputs_mode && !rules_.externals_as_inputs) memo_get(key, true);
    for (long j = 0; j <= key.t; ++j) {
        Params sub{key.v - key.t + j, key.k - key.t + j, j, key.lambda};
        {
            std::shared_lock lk(mx_);
            if (memo.find(sub) != memo.end()) continue;
        }
        BoundRecord rec = compute_record(sub, inputs_mode);
        std::unique_lock lk(mx_);
        memo.emplace(sub, std::move(rec));
    }
    std::shared_lock lk(mx_);
    return memo.at(key);
}

RuleEvaluation BoundEngine::evaluate(const Params& key, bool inputs_mode) {
    RuleEvaluation rv;
    if (rules_.base) rv.base = base_bound(key);
    if (key.t >= 1 && rules_.schonheim_step) {
        const BoundRecord& prev = memo_get({key.v - 1, key.k - 1, key.t - 1, key.lambda}, inputs_mode);
        rv.step = schonheim_step(Int(key.v), Int(key.k), prev.value);
    }
    if (key.t == 2 && rules_.mm_special)
        rv.mm_special = mills_mullin_special(key, schonheim(key));
    if (key.t >= 2 && rules_.mm_general && !store_.exact.empty()) {
        for (long r = 2; r <= key.t; ++r) {
            auto m = mills_mullin_general(key, r, store_.exact);
            if (m && (!rv.mm_general || *m > *rv.mm_general)) rv.mm_general = m;
        }
    }
    if (key.t >= 2 && key.t < key.k && key.k < key.v &&
        (rules_.thm_main || rules_.thm_dbig || rules_.thm_smalld)) {
        long scap = key.t / 2;
        if (rules_.s_max > 0) scap = std::min(scap, rules_.s_max);
        const bool theorem_mode = rules_.externals_as_inputs ? inputs_mode : true;
        BoundProvider provider = [&](const Params& q) { return memo_get(q, theorem_mode).value; };
        for (long s = 1; s <= scap; ++s) {
            SpectralContext ctx = build_context(key, s, provider);
            RuleEvaluation::Theorems th{s, {}, {}, {}};
            if (rules_.thm_main) th.main = theorem_main(ctx);
            if (rules_.thm_dbig) th.dbig = theorem_dbig(ctx);
            if (rules_.thm_smalld) th.smalld = theorem_smalld(ctx, sqrt_scale_);
            rv.thms.push_back(std::move(th));
        }
    }
    if (!inputs_mode && rules_.external) rv.ext = store_.external(key);
    return rv;
}

BoundRecord BoundEngine::compute_record(const Params& key, bool inputs_mode) {
    RuleEvaluation rv = evaluate(key, inputs_mode);
    BoundRecord rec;
    rec.key = key;
    rec.value = 0;
    bool have = false;
    auto offer = [&](const std::optional<Int>& val, Rule rule,
                     std::vector<std::pair<Params, Int>> inputs) {
        if (!val) return;
        if (!have || *val > rec.value) {
            rec.value = *val;
            rec.rule = std::move(rule);
            rec.inputs = std::move(inputs);
            have = true;
        }
    };

    offer(rv.base, Rule{RuleKind::Base}, {});
    if (rv.step) {
        Params pred{key.v - 1, key.k - 1, key.t - 1, key.lambda};
        offer(rv.step, Rule{RuleKind::SchonheimStep},
              {{pred, memo_get(pred, inputs_mode).value}});
    }
    offer(rv.mm_special, Rule{RuleKind::MillsMullinSpecial}, {});
    offer(rv.mm_general, Rule{RuleKind::MillsMullinGeneral}, {});
    const bool theorem_mode = rules_.externals_as_inputs ? inputs_mode : true;
    auto theorem_inputs = [&](long s) {
        std::vector<std::pair<Params, Int>> in;
        for (long i = s; i <= 2 * s; ++i) {
            Params q{key.v - i, key.k - i, key.t - i, key.lambda};
            in.emplace_back(q, memo_get(q, theorem_mode).value);
        }
        return in;
    };
    for (const auto& th : rv.thms) {
        offer(th.main, Rule{RuleKind::TheoremMain, th.s}, theorem_inputs(th.s));
        offer(th.dbig, Rule{RuleKind::TheoremDBig, th.s}, theorem_inputs(th.s));
        if (th.smalld)
            offer(th.smalld->value, Rule{RuleKind::TheoremSmallD, th.s, th.smalld->winner},
                  theorem_inputs(th.s));
    }
    if (rv.ext)
        offer(rv.ext->first, Rule{RuleKind::External, 0, SmallDCase::A, rv.ext->second}, {});
    return rec;
}

BoundRecord BoundEngine::best_bound(const Params& key) {
    if (!valid(key)) throw std::invalid_argument("invalid parameters " + to_string(key));
    return memo_get(key, false);
}

RuleEvaluation BoundEngine::evaluate_rules(const Params& key) {
    if (!valid(key)) throw std::invalid_argument("invalid parameters " + to_string(key));
    memo_get(key, false);  // materialize the chain
    return evaluate(key, false);
}

std::optional<ImprovementEntry> BoundEngine::improvement_for(const Params& key) {
    if (key.t < 2 || !(key.t < key.k && key.k < key.v)) return std::nullopt;
    RuleEvaluation rv = evaluate_rules(key);
    Int classical = rv.best_classical().value_or(Int(0));
    auto main_v = rv.best_main();
    auto dbig_v = rv.best_dbig();
    auto smalld_v = rv.best_smalld();
    std::optional<Int> spectral;
    for (const auto& cand : {main_v, dbig_v, smalld_v})
        if (cand && (!spectral || *cand > *spectral)) spectral = cand;
    if (!spectral || *spectral <= classical) return std::nullopt;

    ImprovementEntry e;
    e.params = key;
    e.new_bound = *spectral;
    e.comparison_bound = classical;
    for (const auto& th : rv.thms) {
        if ((th.main && *th.main == *spectral) || (th.dbig && *th.dbig == *spectral) ||
            (th.smalld && th.smalld->value == *spectral)) {
            e.s = th.s;
            break;
        }
    }
    // Marker: dbig/smalld must strictly exceed the value main provided; when
    // main is inapplicable its comparison value is the best of the other rules.
    Int main_cmp = main_v.value_or(classical);
    bool bold = smalld_v && *smalld_v > main_cmp && (!dbig_v || *smalld_v >= *dbig_v);
    bool italic = !bold && dbig_v && *dbig_v > main_cmp;
    e.marker = bold ? Marker::BoldSmallD : (italic ? Marker::ItalicDBig : Marker::Plain);
    return e;
}

std::vector<BoundRecord> BoundEngine::chain(const Params& key) {
    std::vector<BoundRecord> out;
    for (long j = 0; j <= key.t; ++j)
        out.push_back(memo_get({key.v - key.t + j, key.k - key.t + j, j, key.lambda}, false));
    return out;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string BoundEngine::fingerprint() const {
    std::ostringstream os;
    os << rules_.describe() << "|scale=" << sqrt_scale_.get_str() << "|ext:";
    for (const auto& [p, val] : store_.externals())
        os << to_string(p) << "=" << val.first.get_str() << "@" << val.second << ";";
    os << "|exact:";
    for (const auto& [p, val] : store_.exact.entries())
        os << to_string(p) << "=" << val.first.get_str() << ";";
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

void BoundEngine::seed_record(const BoundRecord& rec) {
    std::unique_lock lk(mx_);
    memo_.emplace(rec.key, rec);
}

std::vector<BoundRecord> BoundEngine::all_records() const {
    std::shared_lock lk(mx_);
    std::vector<BoundRecord> out;
    out.reserve(memo_.size());
    for (const auto& [k, rec] : memo_) out.push_back(rec);
    return out;
}

void BoundEngine::clear_memo() {
    std::unique_lock lk(mx_);
    memo_.clear();
    memo_inputs_.clear();
}

// ---------------------------------------------------------------------------
// Scanning
// ---------------------------------------------------------------------------

long uselessness_vmax(long k, long t, long lambda, long s_cap) {
    long smax = t / 2;
    if (s_cap > 0) smax = std::min(smax, s_cap);
    Int best = 0;
    for (long s = 1; s <= smax; ++s) {
        Int p;  // k^t
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(t));
        Int q = lambda;
        for (long i = 2; i <= s; ++i) q *= i;
        long n = t - s;
        // Smallest r with r^n >= p/q.
        Int f = p / q;
        Int r;
        mpz_root(r.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(n));
        auto pw = [&](const Int& base) {
            Int out;
            mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
            return out;
        };
        while (pw(r) * q < p) ++r;
        if (r > best) best = r;
    }
    return best.get_si();
}

std::vector<ImprovementEntry> scan_improvements(long t, long lambda, long k_min, long k_max,
                                                BoundEngine& engine, std::optional<long> v_cap,
                                                int threads) {
    std::vector<Params> cells;
    for (long k = std::max(k_min, t + 1); k <= k_max; ++k) {
        long vmax = uselessness_vmax(k, t, lambda, engine.rules().s_max);
        if (v_cap) vmax = std::min(vmax, *v_cap);
        for (long v = k + 1; v <= vmax; ++v) cells.push_back({v, k, t, lambda});
    }
    std::vector<std::optional<ImprovementEntry>> results(cells.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, 8);

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
            results[i] = engine.improvement_for(cells[i]);
    };
    if (threads == 1 || cells.size() < 2) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    std::vector<ImprovementEntry> out;
    for (auto& r : results)
        if (r) out.push_back(std::move(*r));
    return out;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

std::string to_string(Marker m) {
    switch (m) {
        case Marker::Plain: return "plain";
        case Marker::ItalicDBig: return "italic_dbig";
        case Marker::BoldSmallD: return "bold_smalld";
    }
    return "plain";
}

std::optional<Marker> marker_from_string(const std::string& s) {
    if (s == "plain") return Marker::Plain;
    if (s == "italic_dbig") return Marker::ItalicDBig;
    if (s == "bold_smalld") return Marker::BoldSmallD;
    return std::nullopt;
}

namespace {

const char* marker_suffix(Marker m) {
    switch (m) {
        case Marker::ItalicDBig: return "*";
        case Marker::BoldSmallD: return "!";
        default: return "";
    }
}

}  // namespace

std::string emit_table(const std::vector<ImprovementEntry>& entries, TableFormat fmt) {
    if (fmt == TableFormat::Text) {
        std::map<long, std::vector<const ImprovementEntry*>> byk;
        for (const auto& e : entries) byk[e.params.k].push_back(&e);
        std::ostringstream os;
        for (auto& [k, row] : byk) {
            std::sort(row.begin(), row.end(),
                      [](const ImprovementEntry* a, const ImprovementEntry* b) {
                          return a->params.v < b->params.v;
                      });
            os << k << ": ";
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << row[i]->params.v << marker_suffix(row[i]->marker);
            os << "\n";
        }
        return os.str();
    }
    if (fmt == TableFormat::Csv) {
        std::ostringstream os;
        os << "v,k,t,lambda,s,new_bound,comparison_bound,marker\n";
        for (const auto& e : entries)
            os << e.params.v << "," << e.params.k << "," << e.params.t << "," << e.params.lambda
               << "," << e.s << "," << e.new_bound.get_str() << "," << e.comparison_bound.get_str()
               << "," << to_string(e.marker) << "\n";
        return os.str();
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json o;
        o["v"] = e.params.v;
        o["k"] = e.params.k;
        o["t"] = e.params.t;
        o["lambda"] = e.params.lambda;
        o["s"] = e.s;
        o["new_bound"] = e.new_bound.get_str();
        o["comparison_bound"] = e.comparison_bound.get_str();
        o["marker"] = to_string(e.marker);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::vector<ImprovementEntry> parse_table(const std::string& text, TableFormat fmt) {
    std::vector<ImprovementEntry> out;
    if (fmt == TableFormat::Csv) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) return out;
        if (line != "v,k,t,lambda,s,new_bound,comparison_bound,marker")
            throw std::runtime_error("bad table header");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, ',')) f.push_back(tok);
            if (f.size() != 8) throw std::runtime_error("bad table row");
            ImprovementEntry e;
            e.params = {std::stol(f[0]), std::stol(f[1]), std::stol(f[2]), std::stol(f[3])};
            e.s = std::stol(f[4]);
            e.new_bound = Int(f[5]);
            e.comparison_bound = Int(f[6]);
            auto m = marker_from_string(f[7]);
            if (!m) throw std::runtime_error("bad marker");
            e.marker = *m;
            out.push_back(std::move(e));
        }
        return out;
    }
    if (fmt == TableFormat::Json) {
        auto arr = nlohmann::json::parse(text);
        for (const auto& o : arr) {
            ImprovementEntry e;
            e.params = {o.at("v").get<long>(), o.at("k").get<long>(), o.at("t").get<long>(),
                        o.at("lambda").get<long>()};
            e.s = o.at("s").get<long>();
            e.new_bound = Int(o.at("new_bound").get<std::string>());
            e.comparison_bound = Int(o.at("comparison_bound").get<std::string>());
            auto m = marker_from_string(o.at("marker").get<std::string>());
            if (!m) throw std::runtime_error("bad marker");
            e.marker = *m;
            out.push_back(std::move(e));
        }
        return out;
    }
    throw std::runtime_error("text tables are write-only");
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

std::size_t load_cache(const std::string& path, BoundEngine& engine) {
    std::ifstream in(path);
    if (!in) return 0;
    const std::string fp = engine.fingerprint();
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json o = nlohmann::json::parse(line, nullptr, false);
        if (o.is_discarded() || !o.contains("ruleset_fingerprint") ||
            o["ruleset_fingerprint"].get<std::string>() != fp)
            continue;
        BoundRecord rec;
        const auto& key = o.at("key");
        rec.key = {key.at("v").get<long>(), key.at("k").get<long>(), key.at("t").get<long>(),
                   key.at("lambda").get<long>()};
        rec.value = Int(o.at("value").get<std::string>());
        rec.rule = Rule::parse(o.at("rule").get<std::string>());
        for (const auto& inp : o.at("inputs")) {
            Params q{inp.at(0).get<long>(), inp.at(1).get<long>(), inp.at(2).get<long>(),
                     inp.at(3).get<long>()};
            rec.inputs.emplace_back(q, Int(inp.at(4).get<std::string>()));
        }
        engine.seed_record(rec);
        ++n;
    }
    return n;
}

void save_cache(const std::string& path, const BoundEngine& engine) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache " + path);
    const std::string fp = engine.fingerprint();
    for (const auto& rec : engine.all_records()) {
        nlohmann::ordered_json o;
        o["key"] = {{"v", rec.key.v}, {"k", rec.key.k}, {"t", rec.key.t}, {"lambda", rec.key.lambda}};
        o["value"] = rec.value.get_str();
        o["rule"] = rec.rule.label();
        nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
        for (const auto& [q, val] : rec.inputs)
            inputs.push_back({q.v, q.k, q.t, q.lambda, val.get_str()});
        o["inputs"] = std::move(inputs);
        o["ruleset_fingerprint"] = fp;
        out << o.dump() << "\n";
    }
}

}  // namespace coverbound
