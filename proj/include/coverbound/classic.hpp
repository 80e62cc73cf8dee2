#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "coverbound/exactmath.hpp"

// Classical covering-number lower bounds: base cases, the Schonheim bound,
// the one-step recursion and the Mills--Mullin refinement.

namespace coverbound {

/// Parameter set (v, k, t, lambda) of a covering number C_lambda(v,k,t).
/// t = 0 is allowed (C_lambda(v,k,0) = lambda by convention); it appears as
/// the foot of every diagonal chain.
struct Params {
    long v = 0;
    long k = 0;
    long t = 0;
    long lambda = 1;

    auto operator<=>(const Params&) const = default;
};

bool valid(const Params& p);  // 0 <= t <= k <= v, v >= 1, lambda >= 1
std::string to_string(const Params& p);

/// Schonheim bound L_lambda(v,k,t), evaluated innermost-first.
/// L_lambda(v,k,0) = lambda.
Int schonheim(const Params& p);

/// One step of the recursion: ceil(v * sub_bound / k).
Int schonheim_step(const Int& v, const Int& k, const Int& sub_bound);

/// t = 0 -> lambda, t = 1 -> ceil(lambda*v/k), t >= 2 -> nothing.
std::optional<Int> base_bound(const Params& p);

/// Mills--Mullin in the r = t = 2 case: returns schonheim_value + 1 when
/// lambda(v-1) = 0 mod (k-1) and lambda*v(v-1) = 1 mod k; nothing otherwise
/// (and always nothing for t != 2).
std::optional<Int> mills_mullin_special(const Params& p, const Int& schonheim_value);

/// Known exact covering numbers, keyed by Params. Entries are trusted input;
/// they gate the general Mills--Mullin rule, whose side conditions refer to
/// true covering numbers rather than bounds.
class ExactValueTable {
public:
    std::optional<Int> lookup(const Params& p) const;
    const std::string* source(const Params& p) const;

    /// Insert an entry. Conflicting duplicate values throw.
    void insert(const Params& p, const Int& value, const std::string& source);

    /// Load from CSV with header `v,k,t,lambda,value,source`.
    /// Returns the number of rows loaded.
    std::size_t load_csv(const std::string& path);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<Params, std::pair<Int, std::string>>& entries() const { return entries_; }

private:
    std::map<Params, std::pair<Int, std::string>> entries_;
};

/// General Mills--Mullin rule for a given r in {2,...,t}. Fires only when
/// both side conditions are verifiable from the exact-value table and the
/// result strictly exceeds the plain Schonheim step; nothing otherwise.
std::optional<Int> mills_mullin_general(const Params& p, long r, const ExactValueTable& exact);

/// Reads a `v,k,t,lambda,value,source` CSV, calling fn(row, params, value,
/// source) per data row (rows are 1-based). Malformed rows throw
/// "malformed row N"; parameter sets violating v >= k >= t throw
/// "invalid parameter row N".
void for_each_bound_csv_row(
    const std::string& path,
    const std::function<void(std::size_t, const Params&, const Int&, const std::string&)>& fn);

}  // namespace coverbound
