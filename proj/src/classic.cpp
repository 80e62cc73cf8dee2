#include "coverbound/classic.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace coverbound {

bool valid(const Params& p) {
    return p.v >= 1 && p.lambda >= 1 && p.t >= 0 && p.t <= p.k && p.k <= p.v;
}

std::string to_string(const Params& p) {
    std::ostringstream os;
    os << "(" << p.v << "," << p.k << "," << p.t << ";" << p.lambda << ")";
    return os.str();
}

Int schonheim(const Params& p) {
    if (p.t == 0) return Int(p.lambda);
    Int x = ceil_div(Int(p.lambda) * (p.v - p.t + 1), Int(p.k - p.t + 1));
    for (long j = p.t - 2; j >= 0; --j) x = ceil_div(Int(p.v - j) * x, Int(p.k - j));
    return x;
}

Int schonheim_step(const Int& v, const Int& k, const Int& sub_bound) {
    return ceil_div(v * sub_bound, k);
}

std::optional<Int> base_bound(const Params& p) {
    if (p.t == 0) return Int(p.lambda);
    if (p.t == 1) return ceil_div(Int(p.lambda) * p.v, Int(p.k));
    return std::nullopt;
}

std::optional<Int> mills_mullin_special(const Params& p, const Int& schonheim_value) {
    if (p.t != 2) return std::nullopt;
    Int lam(p.lambda);
    if (lam * (p.v - 1) % (p.k - 1) != 0) return std::nullopt;
    if (lam * p.v * (p.v - 1) % p.k != 1) return std::nullopt;
    return schonheim_value + 1;
}

std::optional<Int> ExactValueTable::lookup(const Params& p) const {
    auto it = entries_.find(p);
    if (it == entries_.end()) return std::nullopt;
    return it->second.first;
}

const std::string* ExactValueTable::source(const Params& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? nullptr : &it->second.second;
}

void ExactValueTable::insert(const Params& p, const Int& value, const std::string& source) {
    auto it = entries_.find(p);
    if (it != entries_.end()) {
        if (it->second.first != value)
            throw std::runtime_error("conflicting exact values for " + to_string(p));
        return;
    }
    entries_.emplace(p, std::make_pair(value, source));
}

void for_each_bound_csv_row(
    const std::string& path,
    const std::function<void(std::size_t, const Params&, const Int&, const std::string&)>& sink) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) return;  // empty file: no header, no rows
    // Tolerate an optional UTF-8 BOM on the header.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (line != "v,k,t,lambda,value,source")
        throw std::runtime_error("malformed row 0 (bad header)");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 6) throw std::runtime_error("malformed row " + std::to_string(row));
        Params p;
        Int value;
        try {
            p.v = std::stol(fields[0]);
            p.k = std::stol(fields[1]);
            p.t = std::stol(fields[2]);
            p.lambda = std::stol(fields[3]);
            value = Int(fields[4]);
        } catch (const std::exception&) {
            throw std::runtime_error("malformed row " + std::to_string(row));
        }
        if (!valid(p) || value < 0)
            throw std::runtime_error("invalid parameter row " + std::to_string(row));
        sink(row, p, value, fields[5]);
    }
}

std::size_t ExactValueTable::load_csv(const std::string& path) {
    std::size_t n = 0;
    for_each_bound_csv_row(path,
                           [&](std::size_t, const Params& p, const Int& value, const std::string& src) {
                               insert(p, value, src);
                               ++n;
                           });
    return n;
}

std::optional<Int> mills_mullin_general(const Params& p, long r, const ExactValueTable& exact) {
    if (r < 2 || r > p.t) throw std::invalid_argument("mills_mullin_general: r out of range");
    auto c1 = exact.lookup({p.v - 1, p.k - 1, p.t - 1, p.lambda});
    if (!c1) return std::nullopt;
    auto cr = exact.lookup({p.v - r, p.k - r, p.t - r, p.lambda});
    if (!cr) return std::nullopt;
    // Divisibility condition: v * C(v-1,k-1,t-1) != 0 (mod k).
    if (Int(p.v) * *c1 % p.k == 0) return std::nullopt;
    // Ratio condition: C(v-1,k-1,t-1) = (binom(v-1,r-1)/binom(k-1,r-1)) * C(v-r,k-r,t-r).
    if (*c1 * binom(p.k - 1, r - 1) != binom(p.v - 1, r - 1) * *cr) return std::nullopt;
    Int step = ceil_div(Int(p.v) * *c1, Int(p.k));
    Int value = ceil_div(Int(p.v) * *c1 + r, Int(p.k));
    if (value <= step) return std::nullopt;
    return value;
}

}  // namespace coverbound
