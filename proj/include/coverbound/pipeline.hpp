#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "coverbound/spectral.hpp"

// Best-known bound evaluation along the diagonal chain, external-bound
// ingestion, improvement scanning and table emission.

namespace coverbound {

enum class RuleKind {
    None,
    Base,
    SchonheimStep,
    MillsMullinSpecial,
    MillsMullinGeneral,
    TheoremMain,
    TheoremDBig,
    TheoremSmallD,
    External,
};

struct Rule {
    RuleKind kind = RuleKind::None;
    long s = 0;                       // theorem rules
    SmallDCase c = SmallDCase::A;     // TheoremSmallD
    std::string source;               // External

    std::string label() const;
    static Rule parse(const std::string& label);
};

/// A certified bound value together with the rule that produced it and the
/// sub-bounds it consumed.
struct BoundRecord {
    Params key;
    Int value;
    Rule rule;
    std::vector<std::pair<Params, Int>> inputs;
};

/// Rule toggles. Disabled rules never influence any emitted bound.
struct RuleSet {
    bool base = true;
    bool schonheim_step = true;
    bool mm_special = true;
    bool mm_general = true;
    bool thm_main = true;
    bool thm_dbig = true;
    bool thm_smalld = true;
    bool external = true;
    long s_max = 0;                  // 0: no override, use floor(t/2)
    bool externals_as_inputs = true; // externals also feed the b_i of theorems

    bool disable(const std::string& name);  // by CLI rule name; false if unknown
    std::string describe() const;
};

/// External lower bounds plus the exact-value table gating Mills--Mullin.
class BoundStore {
public:
    /// Adds an external record, keeping the maximum on duplicate keys.
    void add_external(const Params& p, const Int& value, const std::string& source);
    std::optional<std::pair<Int, std::string>> external(const Params& p) const;
    const std::map<Params, std::pair<Int, std::string>>& externals() const { return ext_; }

    /// Load externals from CSV (`v,k,t,lambda,value,source`); returns the
    /// number of records loaded. Malformed input throws with a row number.
    std::size_t ingest_external(const std::string& path);

    ExactValueTable exact;

private:
    std::map<Params, std::pair<Int, std::string>> ext_;
};

/// Per-rule values at one key; used for record selection and table markers.
struct RuleEvaluation {
    std::optional<Int> base, step, mm_special, mm_general;
    struct Theorems {
        long s;
        std::optional<Int> main, dbig;
        std::optional<SmallDResult> smalld;
    };
    std::vector<Theorems> thms;
    std::optional<std::pair<Int, std::string>> ext;

    std::optional<Int> best_classical() const;
    std::optional<Int> best_main() const;
    std::optional<Int> best_dbig() const;
    std::optional<Int> best_smalld() const;
};

enum class Marker { Plain, ItalicDBig, BoldSmallD };
std::string to_string(Marker m);
std::optional<Marker> marker_from_string(const std::string& s);

/// One table cell: a spectral-theorem value strictly above every other rule.
struct ImprovementEntry {
    Params params;
    long s = 0;
    Int new_bound;
    Int comparison_bound;  // best over all non-spectral rules
    Marker marker = Marker::Plain;

    bool operator==(const ImprovementEntry&) const = default;
};

/// Memoizing bound engine. best_bound is deterministic per key: the record
/// is a pure function of the ruleset and ingested data, independent of
/// query order or concurrency.
class BoundEngine {
public:
    explicit BoundEngine(RuleSet rules = {}, Int sqrt_scale = default_sqrt_scale());

    BoundStore& store() { return store_; }
    const BoundStore& store() const { return store_; }
    const RuleSet& rules() const { return rules_; }

    BoundRecord best_bound(const Params& key);

    /// Per-rule values at key (chain sub-bounds get memoized on the way).
    RuleEvaluation evaluate_rules(const Params& key);

    /// The scan predicate for one cell; nothing when no spectral theorem
    /// strictly exceeds the best of the other rules.
    std::optional<ImprovementEntry> improvement_for(const Params& key);

    /// The chain of records (v-t,k-t,0)..(v,k,t) feeding best_bound(key).
    std::vector<BoundRecord> chain(const Params& key);

    /// Fingerprint of ruleset + ingested data; cache records carry it.
    std::string fingerprint() const;

    void seed_record(const BoundRecord& rec);  // cache load
    std::vector<BoundRecord> all_records() const;
    void clear_memo();

private:
    const BoundRecord& memo_get(const Params& key, bool inputs_mode);
    BoundRecord compute_record(const Params& key, bool inputs_mode);
    RuleEvaluation evaluate(const Params& key, bool inputs_mode);

    RuleSet rules_;
    Int sqrt_scale_;
    BoundStore store_;
    std::map<Params, BoundRecord> memo_;         // full ruleset
    std::map<Params, BoundRecord> memo_inputs_;  // used when !externals_as_inputs
    mutable std::shared_mutex mx_;
};

/// Largest v that can possibly yield an improvement:
/// max over s <= floor(t/2) of ceil((k^t / (s! lambda))^(1/(t-s))).
long uselessness_vmax(long k, long t, long lambda, long s_cap = 0);

/// Scans v in (k, vmax] for each k in [k_min, k_max]; cells may be evaluated
/// in parallel, output order is deterministic.
std::vector<ImprovementEntry> scan_improvements(long t, long lambda, long k_min, long k_max,
                                                BoundEngine& engine,
                                                std::optional<long> v_cap = std::nullopt,
                                                int threads = 0);

enum class TableFormat { Text, Csv, Json };

/// Text groups by k (`k: v1,v2*,v3!`; * = dbig-italic, ! = smalld-bold);
/// csv/json carry all fields explicitly.
std::string emit_table(const std::vector<ImprovementEntry>& entries, TableFormat fmt);

/// Inverse of emit_table for csv/json.
std::vector<ImprovementEntry> parse_table(const std::string& text, TableFormat fmt);

/// Line-oriented JSON bound cache. Only records whose fingerprint matches
/// the engine's are loaded. Returns the number of records loaded.
std::size_t load_cache(const std::string& path, BoundEngine& engine);
void save_cache(const std::string& path, const BoundEngine& engine);

}  // namespace coverbound
