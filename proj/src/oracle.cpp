#include "coverbound/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>

namespace coverbound {

namespace {

// Advance a lexicographic combination of size s over 0..v-1. Returns false
// after the last one.
bool next_combination(std::vector<int>& c, long v) {
    long s = static_cast<long>(c.size());
    for (long i = s - 1; i >= 0; --i) {
        if (c[i] < v - (s - i)) {
            ++c[i];
            for (long j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(long s) {
    std::vector<int> c(static_cast<std::size_t>(s));
    std::iota(c.begin(), c.end(), 0);
    return c;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

long intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    long n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            ++n, ++i, ++j;
    }
    return n;
}

// Fast path for lambda = 1: every t-subset {S, z} with |S| = t-1 is covered
// iff the union of the blocks containing S reaches every point outside S.
bool is_covering_l1(const Covering& c, long t) {
    const long v = c.v;
    const long words = (v + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(c.blocks.size(),
                                                 std::vector<std::uint64_t>(words, 0));
    std::vector<std::vector<int>> at_point(static_cast<std::size_t>(v));
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        for (int p : c.blocks[b]) {
            bits[b][p >> 6] |= std::uint64_t(1) << (p & 63);
            at_point[static_cast<std::size_t>(p)].push_back(static_cast<int>(b));
        }
    }
    std::vector<std::uint64_t> full(words, ~std::uint64_t(0));
    if (v % 64) full[words - 1] = (std::uint64_t(1) << (v % 64)) - 1;

    if (v < t) return true;
    std::vector<std::uint64_t> acc(words);
    std::vector<int> cand, tmp;
    std::vector<int> s = first_combination(t - 1);
    if (t - 1 > v) return true;
    do {
        // Blocks containing all of S.
        if (t == 1) {
            cand.resize(c.blocks.size());
            std::iota(cand.begin(), cand.end(), 0);
        } else {
            cand = at_point[static_cast<std::size_t>(s[0])];
            for (long i = 1; i < t - 1 && !cand.empty(); ++i) {
                tmp.clear();
                const auto& other = at_point[static_cast<std::size_t>(s[i])];
                std::set_intersection(cand.begin(), cand.end(), other.begin(), other.end(),
                                      std::back_inserter(tmp));
                cand.swap(tmp);
            }
        }
        std::fill(acc.begin(), acc.end(), 0);
        for (int b : cand)
            for (long w = 0; w < words; ++w) acc[w] |= bits[static_cast<std::size_t>(b)][w];
        for (int p : s) acc[p >> 6] |= std::uint64_t(1) << (p & 63);
        for (long w = 0; w < words; ++w)
            if (acc[w] != full[w]) return false;
    } while (t > 1 && next_combination(s, v));
    return true;
}

}  // namespace

bool is_covering(const Covering& c, long t, long lambda) {
    if (t == 0) return static_cast<long>(c.blocks.size()) >= lambda;
    if (c.v < t) return true;
    if (lambda == 1) return is_covering_l1(c, t);
    std::vector<int> tset = first_combination(t);
    do {
        long cnt = 0;
        for (const auto& b : c.blocks) {
            if (subset_of(tset, b) && ++cnt >= lambda) break;
        }
        if (cnt < lambda) return false;
    } while (next_combination(tset, c.v));
    return true;
}

Int count_blocks_containing(const Covering& c, const std::vector<int>& x) {
    Int n = 0;
    for (const auto& b : c.blocks)
        if (subset_of(x, b)) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Exact covering numbers
// ---------------------------------------------------------------------------

namespace {

// Local iterated-ceiling lower bound; deliberately separate from the classic
// module so the search does not share code with the bounds it certifies.
long iterated_ceiling_lb(long v, long k, long t, long lambda) {
    if (t == 0) return lambda;
    auto cdiv = [](long a, long b) { return (a + b - 1) / b; };
    long x = cdiv(lambda * (v - t + 1), k - t + 1);
    for (long j = t - 2; j >= 0; --j) {
        // Values stay far below overflow on oracle-sized parameters.
        x = cdiv((v - j) * x, k - j);
    }
    return x;
}

struct CoverSearch {
    long v, k, t, lambda;
    std::uint64_t budget;
    SearchStats stats;
    long cap;  // t-subsets covered per block: C(k,t)
    bool lex_prune;

    std::vector<std::vector<long>> ch;       // small Pascal table for ranking
    std::vector<int> cov;                    // coverage count per t-subset rank
    long deficit = 0;                        // sum of max(0, lambda - cov)
    std::vector<long> units;                 // per-point deficiency units
    long capx = 1;                           // units one block can close per point: C(k-1,t-1)
    std::vector<std::vector<int>> current;   // partial block multiset
    std::vector<std::vector<int>> best;

    enum class Res { Found, Refuted, Budget };

    CoverSearch(long v_, long k_, long t_, long l_, std::uint64_t budget_, bool lex_prune_)
        : v(v_), k(k_), t(t_), lambda(l_), budget(budget_), lex_prune(lex_prune_) {
        ch.assign(static_cast<std::size_t>(v) + 1, std::vector<long>(static_cast<std::size_t>(t) + 1, 0));
        for (long n = 0; n <= v; ++n) {
            ch[n][0] = 1;
            for (long r = 1; r <= t && r <= n; ++r)
                ch[n][r] = ch[n - 1][r - 1] + (n - 1 >= r ? ch[n - 1][r] : 0);
        }
        cov.assign(static_cast<std::size_t>(ch[v][t]), 0);
        deficit = lambda * ch[v][t];
        cap = binom(k, t).get_si();
        capx = binom(k - 1, t - 1).get_si();
        // every point lies in C(v-1,t-1) of the t-subsets
        units.assign(static_cast<std::size_t>(v), lambda * binom(v - 1, t - 1).get_si());
    }

    long rank(const std::vector<int>& tset) const {
        long r = 0;
        for (long i = 0; i < t; ++i) r += ch[tset[static_cast<std::size_t>(i)]][i + 1];
        return r;
    }

    void apply_block(const std::vector<int>& b, int dir) {
        std::vector<int> tset(static_cast<std::size_t>(t));
        std::vector<int> idx = first_combination(t);
        do {
            for (long i = 0; i < t; ++i) tset[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            long r = rank(tset);
            int& cv = cov[static_cast<std::size_t>(r)];
            if (dir > 0) {
                if (cv < lambda) {
                    --deficit;
                    for (int p : tset) --units[static_cast<std::size_t>(p)];
                }
                ++cv;
            } else {
                --cv;
                if (cv < lambda) {
                    ++deficit;
                    for (int p : tset) ++units[static_cast<std::size_t>(p)];
                }
            }
        } while (next_combination(idx, k));
    }

    // Blocks still required: each remaining block closes at most C(k-1,t-1)
    // deficiency units at each of its k points.
    long residual_lb() const {
        long total = 0;
        for (long x = 0; x < v; ++x) total += (units[static_cast<std::size_t>(x)] + capx - 1) / capx;
        return (total + k - 1) / k;
    }

    // Lexicographically first deficient t-subset. A set before it in lex
    // order can never become deficient again, so the branch target is stable
    // until fully covered.
    bool pick_branch(std::vector<int>& out, int& cov_out) const {
        std::vector<int> tset = first_combination(t);
        do {
            int cv = cov[static_cast<std::size_t>(rank(tset))];
            if (cv < lambda) {
                out = tset;
                cov_out = cv;
                return true;
            }
        } while (next_combination(tset, v));
        return false;
    }

    Res dfs(long limit, long last_rank, const std::vector<int>& last_block) {
        if (++stats.nodes > budget) {
            stats.budget_exhausted = true;
            return Res::Budget;
        }
        std::vector<int> branch;
        int branch_cov = 0;
        if (!pick_branch(branch, branch_cov)) {
            best = current;
            return Res::Found;
        }
        long used = static_cast<long>(current.size());
        long need = std::max({(deficit + cap - 1) / cap, static_cast<long>(lambda - branch_cov),
                              residual_lb()});
        if (used + need > limit) return Res::Refuted;

        long branch_rank = rank(branch);
        // Blocks added consecutively for the same still-deficient target are
        // interchangeable; forcing them non-decreasing is a pure symmetry cut.
        const bool ordered = lex_prune && branch_rank == last_rank;

        // Candidate blocks: branch-set plus a (k-t)-subset of the other points.
        std::vector<int> others;
        others.reserve(static_cast<std::size_t>(v - t));
        for (int p = 0; p < v; ++p)
            if (!std::binary_search(branch.begin(), branch.end(), p)) others.push_back(p);
        if (k - t > static_cast<long>(others.size())) return Res::Refuted;
        std::vector<int> block(static_cast<std::size_t>(k));
        std::vector<int> chosen(static_cast<std::size_t>(k - t));
        std::vector<int> pick = first_combination(k - t);
        do {
            for (long i = 0; i < k - t; ++i)
                chosen[static_cast<std::size_t>(i)] = others[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            std::merge(branch.begin(), branch.end(), chosen.begin(), chosen.end(), block.begin());
            if (ordered && block < last_block) continue;
            current.push_back(block);
            apply_block(block, +1);
            Res r = dfs(limit, branch_rank, block);
            apply_block(block, -1);
            current.pop_back();
            if (r != Res::Refuted) return r;
        } while (k > t && next_combination(pick, static_cast<long>(others.size())));
        return Res::Refuted;
    }
};

// Round-robin construction for t = 1: ceil(lambda v / k) blocks.
Covering replication_witness(long v, long k, long lambda) {
    long blocks = (lambda * v + k - 1) / k;
    Covering c;
    c.v = v;
    long pos = 0;
    for (long i = 0; i < blocks; ++i) {
        std::vector<int> b(static_cast<std::size_t>(k));
        for (long j = 0; j < k; ++j) b[static_cast<std::size_t>(j)] = static_cast<int>((pos + j) % v);
        pos = (pos + k) % v;
        std::sort(b.begin(), b.end());
        c.blocks.push_back(std::move(b));
    }
    return c;
}

}  // namespace

std::optional<Int> exact_cover_number(long v, long k, long t, long lambda,
                                      std::uint64_t node_budget, Covering* witness,
                                      SearchStats* stats) {
    if (!(1 <= lambda && 0 <= t && t <= k && k <= v))
        throw std::invalid_argument("exact_cover_number: invalid parameters");
    auto emit = [&](const Covering& c, const Int& value) -> std::optional<Int> {
        if (witness) *witness = c;
        return value;
    };
    if (t == 0 || k == v) {
        Covering c;
        c.v = v;
        std::vector<int> full(static_cast<std::size_t>(k));
        std::iota(full.begin(), full.end(), 0);
        for (long i = 0; i < lambda; ++i) c.blocks.push_back(full);
        return emit(c, Int(lambda));
    }
    if (t == 1) {
        Covering c = replication_witness(v, k, lambda);
        if (!is_covering(c, 1, lambda)) throw std::logic_error("replication witness invalid");
        return emit(c, Int(c.blocks.size()));
    }

    if (binom(v, t) > 2'000'000) {
        if (stats) stats->budget_exhausted = true;
        return std::nullopt;
    }

    // A global >=-last-block restriction would lose optimal multiset
    // coverings (it reports 12 for C_2(6,3,2) whose true value is 10); only
    // the consecutive-same-target ordering is applied.
    CoverSearch search(v, k, t, lambda, node_budget, /*lex_prune=*/true);

    // Greedy upper bound: take a block through the first deficient t-subset,
    // filling with points scored by the deficiency of the t-set they would
    // form with the branch prefix.
    Covering greedy;
    greedy.v = v;
    {
        std::vector<int> branch;
        int bc = 0;
        while (search.pick_branch(branch, bc)) {
            std::vector<int> block = branch;
            std::vector<int> rest;
            for (int p = 0; p < static_cast<int>(v); ++p)
                if (!std::binary_search(branch.begin(), branch.end(), p)) rest.push_back(p);
            while (static_cast<long>(block.size()) < k && !rest.empty()) {
                long best_score = -1;
                std::size_t best_i = 0;
                for (std::size_t i = 0; i < rest.size(); ++i) {
                    std::vector<int> probe(branch.begin(), branch.end() - 1);
                    probe.push_back(rest[i]);
                    std::sort(probe.begin(), probe.end());
                    long score = search.lambda - search.cov[static_cast<std::size_t>(search.rank(probe))];
                    if (score > best_score) {
                        best_score = score;
                        best_i = i;
                    }
                }
                block.push_back(rest[best_i]);
                rest.erase(rest.begin() + static_cast<long>(best_i));
                std::sort(block.begin(), block.end());
            }
            std::sort(block.begin(), block.end());
            search.current.push_back(block);
            search.apply_block(block, +1);
            greedy.blocks.push_back(block);
        }
        // reset search state
        for (const auto& b : greedy.blocks) search.apply_block(b, -1);
        search.current.clear();
    }
    long ub = static_cast<long>(greedy.blocks.size());
    long lb = std::max(static_cast<long>(rat_ceil(make_rat(lambda * binom(v, t), binom(k, t))).get_si()),
                       iterated_ceiling_lb(v, k, t, lambda));

    Covering found = greedy;
    for (long limit = lb; limit <= ub; ++limit) {
        if (limit == ub) break;  // greedy already witnesses ub
        CoverSearch::Res r = search.dfs(limit, -1, {});
        if (stats) *stats = search.stats;
        if (r == CoverSearch::Res::Budget) return std::nullopt;
        if (r == CoverSearch::Res::Found) {
            found.blocks = search.best;
            if (stats) *stats = search.stats;
            return emit(found, Int(limit));
        }
    }
    if (stats) *stats = search.stats;
    return emit(found, Int(ub));
}

// ---------------------------------------------------------------------------
// Exact linear algebra
// ---------------------------------------------------------------------------

bool IntMatrix::symmetric() const {
    if (rows != cols) return false;
    for (long i = 0; i < rows; ++i)
        for (long j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

IntMatrix matmul_transpose(const IntMatrix& a) {
    IntMatrix g(a.rows, a.rows);
    for (long i = 0; i < a.rows; ++i)
        for (long j = i; j < a.rows; ++j) {
            Int s = 0;
            for (long c = 0; c < a.cols; ++c) s += a.at(i, c) * a.at(j, c);
            g.at(i, j) = s;
            g.at(j, i) = s;
        }
    return g;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    IntMatrix p(a.rows, b.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long c = 0; c < a.cols; ++c) {
            if (a.at(i, c) == 0) continue;
            for (long j = 0; j < b.cols; ++j) p.at(i, j) += a.at(i, c) * b.at(c, j);
        }
    return p;
}

std::vector<std::vector<int>> subsets_of_size(long v, long s) {
    std::vector<std::vector<int>> out;
    if (s < 0 || s > v) return out;
    if (s == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> c = first_combination(s);
    do {
        out.push_back(c);
    } while (next_combination(c, v));
    return out;
}

IntMatrix s_incidence(const Covering& c, long s) {
    auto rows = subsets_of_size(c.v, s);
    IntMatrix a(static_cast<long>(rows.size()), static_cast<long>(c.blocks.size()));
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j)
            a.at(i, j) = subset_of(rows[static_cast<std::size_t>(i)], c.blocks[static_cast<std::size_t>(j)]) ? 1 : 0;
    return a;
}

bool gram_check(const Covering& c, long s) {
    auto rows = subsets_of_size(c.v, s);
    IntMatrix g = matmul_transpose(s_incidence(c, s));
    std::vector<int> u;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
            u.clear();
            std::set_union(rows[i].begin(), rows[i].end(), rows[j].begin(), rows[j].end(),
                           std::back_inserter(u));
            if (g.at(static_cast<long>(i), static_cast<long>(j)) != count_blocks_containing(c, u))
                return false;
        }
    return true;
}

CheckReport decomposition_check(const Covering& c, const SpectralContext& ctx) {
    const Params& p = ctx.params;
    if (c.v != p.v) throw std::invalid_argument("context/covering mismatch");
    for (const auto& b : c.blocks)
        if (static_cast<long>(b.size()) != p.k) throw std::invalid_argument("context/covering mismatch");

    const long s = ctx.s;
    auto subs = subsets_of_size(c.v, s);
    const long n = static_cast<long>(subs.size());
    IntMatrix gram = matmul_transpose(s_incidence(c, s));

    std::vector<Int> bx(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) bx[static_cast<std::size_t>(i)] = count_blocks_containing(c, subs[static_cast<std::size_t>(i)]);

    const Int& bs = ctx.b_at(s);
    const Int& as = ctx.a_s();

    // P + M = A A^T, with P and M as the setUp lemma defines them.
    std::vector<int> u;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Int pij, mij;
            if (i == j) {
                pij = bs - as;
                mij = as + bx[static_cast<std::size_t>(i)] - bs;
            } else {
                u.clear();
                std::set_union(subs[static_cast<std::size_t>(i)].begin(), subs[static_cast<std::size_t>(i)].end(),
                               subs[static_cast<std::size_t>(j)].begin(), subs[static_cast<std::size_t>(j)].end(),
                               std::back_inserter(u));
                const Int& bu = ctx.b_at(static_cast<long>(u.size()));
                pij = bu;
                mij = count_blocks_containing(c, u) - bu;
            }
            if (gram.at(i, j) != pij + mij)
                return {false, "identity (1): (AA^T)[X,Y] != P+M at (" + std::to_string(i) + "," + std::to_string(j) + ")"};
        }

    // Q_j products: entries C(|X n Y|, j), and sum_j a_j Q_j^T Q_j = b_{|X u Y|}.
    std::vector<IntMatrix> qprod;
    for (long j = 0; j <= s; ++j) {
        auto jsubs = subsets_of_size(c.v, j);
        IntMatrix qj(static_cast<long>(jsubs.size()), n);
        for (long r = 0; r < qj.rows; ++r)
            for (long col = 0; col < n; ++col)
                qj.at(r, col) = subset_of(jsubs[static_cast<std::size_t>(r)], subs[static_cast<std::size_t>(col)]) ? 1 : 0;
        IntMatrix prod(n, n);
        for (long x = 0; x < n; ++x)
            for (long y = 0; y < n; ++y) {
                Int sum = 0;
                for (long r = 0; r < qj.rows; ++r) sum += qj.at(r, x) * qj.at(r, y);
                prod.at(x, y) = sum;
            }
        for (long x = 0; x < n; ++x)
            for (long y = 0; y < n; ++y) {
                long inter = intersection_size(subs[static_cast<std::size_t>(x)], subs[static_cast<std::size_t>(y)]);
                if (prod.at(x, y) != binom(inter, j))
                    return {false, "identity (3): (Q_j^T Q_j)[X,Y] != C(|XnY|,j) for j=" + std::to_string(j)};
            }
        qprod.push_back(std::move(prod));
    }
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
            Int sum = 0;
            for (long j = 0; j <= s; ++j) sum += ctx.a[static_cast<std::size_t>(j)] * qprod[static_cast<std::size_t>(j)].at(x, y);
            long inter = intersection_size(subs[static_cast<std::size_t>(x)], subs[static_cast<std::size_t>(y)]);
            if (sum != ctx.b_at(2 * s - inter))
                return {false, "identity (2): sum_j a_j Q_j^T Q_j != b_{|XuY|} at (" + std::to_string(x) + "," + std::to_string(y) + ")"};
        }

    // Off-diagonal row sums of M.
    for (long x = 0; x < n; ++x) {
        Int rowsum = 0;
        for (long y = 0; y < n; ++y) {
            if (x == y) continue;
            u.clear();
            std::set_union(subs[static_cast<std::size_t>(x)].begin(), subs[static_cast<std::size_t>(x)].end(),
                           subs[static_cast<std::size_t>(y)].begin(), subs[static_cast<std::size_t>(y)].end(),
                           std::back_inserter(u));
            rowsum += count_blocks_containing(c, u) - ctx.b_at(static_cast<long>(u.size()));
        }
        Int expect = (bx[static_cast<std::size_t>(x)] - bs) * (ctx.binom_ks - 1) + ctx.d;
        if (rowsum != expect)
            return {false, "identity (4): M row sum mismatch at row " + std::to_string(x)};
    }
    return {true, ""};
}

bool pd_check(const IntMatrix& m) {
    if (!m.symmetric()) throw std::invalid_argument("pd_check: matrix not symmetric");
    const long n = m.rows;
    if (n == 0) return true;
    IntMatrix a = m;
    Int prev = 1;
    for (long k = 0; k < n; ++k) {
        // After k elimination steps, a[k][k] is the (k+1)-st leading
        // principal minor (Bareiss).
        if (a.at(k, k) <= 0) return false;
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return true;
}

long exact_rank(const IntMatrix& m) {
    IntMatrix a = m;
    const long rows = a.rows, cols = a.cols;
    long r = 0;
    Int prev = 1;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pivot = -1;
        for (long i = r; i < rows; ++i)
            if (a.at(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (long j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(r, j));
        for (long i = r + 1; i < rows; ++i) {
            for (long j = c + 1; j < cols; ++j) {
                Int num = a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, c) = 0;
        }
        prev = a.at(r, c);
        ++r;
    }
    return r;
}

IntMatrix principal_submatrix(const IntMatrix& m, const std::vector<long>& idx) {
    IntMatrix out(static_cast<long>(idx.size()), static_cast<long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            out.at(static_cast<long>(i), static_cast<long>(j)) = m.at(idx[i], idx[j]);
    return out;
}

// ---------------------------------------------------------------------------
// Multigraphs and the Caro--Tuza bound
// ---------------------------------------------------------------------------

void Multigraph::set_edge(int x, int y, int m) {
    if (x == y) throw std::invalid_argument("multigraph: no loops");
    mu[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = m;
    mu[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = m;
}

long Multigraph::degree(int x) const {
    long d = 0;
    for (int y = 0; y < n; ++y) d += mu[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    return d;
}

Rat caro_tuza_f(long n, long x) {
    if (x <= n) return make_rat(Int(2 * n - x), Int(2 * n));
    return make_rat(Int(n + 1), Int(2 * (x + 1)));
}

CaroTuzaReport caro_tuza_check(const Multigraph& g, long n) {
    if (g.n > 10) throw std::runtime_error("vertex budget exceeded");
    CaroTuzaReport rep;
    for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
        bool ok = true;
        for (int u = 0; u < g.n && ok; ++u) {
            if (!(mask >> u & 1)) continue;
            long deg = 0;
            for (int w = 0; w < g.n; ++w)
                if (mask >> w & 1) deg += g.mu[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)];
            if (deg >= n) ok = false;
        }
        if (ok) rep.max_independent = std::max(rep.max_independent, static_cast<long>(__builtin_popcount(mask)));
    }
    Rat sum = 0;
    for (int u = 0; u < g.n; ++u) sum += caro_tuza_f(n, g.degree(u));
    rep.bound = rat_ceil(sum);
    rep.ok = rep.max_independent >= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------------
// Generators and output
// ---------------------------------------------------------------------------

Covering all_k_subsets(long v, long k) {
    Covering c;
    c.v = v;
    c.blocks = subsets_of_size(v, k);
    return c;
}

Covering random_covering(long v, long k, long t, long lambda, std::mt19937& rng) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0 && binom(v - t, k - t) >= lambda)
        return all_k_subsets(v, k);

    Covering c;
    c.v = v;
    std::vector<int> pts(static_cast<std::size_t>(v));
    std::iota(pts.begin(), pts.end(), 0);
    long seed_blocks = std::uniform_int_distribution<long>(0, 2 * v / k + 2)(rng);
    for (long i = 0; i < seed_blocks; ++i) {
        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<int> b(pts.begin(), pts.begin() + k);
        std::sort(b.begin(), b.end());
        c.blocks.push_back(std::move(b));
    }
    // Greedy repair: cover a deficient t-subset with a random completion.
    auto tsets = subsets_of_size(v, t);
    for (bool repaired = true; repaired;) {
        repaired = false;
        for (const auto& ts : tsets) {
            Int cnt = count_blocks_containing(c, ts);
            while (cnt < lambda) {
                std::shuffle(pts.begin(), pts.end(), rng);
                std::vector<int> b = ts;
                for (int p : pts) {
                    if (static_cast<long>(b.size()) == k) break;
                    if (!std::binary_search(ts.begin(), ts.end(), p)) b.push_back(p);
                }
                std::sort(b.begin(), b.end());
                c.blocks.push_back(std::move(b));
                ++cnt;
                repaired = true;
            }
        }
    }
    return c;
}

void write_witness_json(std::ostream& os, const Covering& c, long k, long t, long lambda) {
    os << "{\"v\": " << c.v << ", \"k\": " << k << ", \"t\": " << t
       << ", \"lambda\": " << lambda << ", \"blocks\": [";
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c.blocks[i].size(); ++j)
            os << (j ? ", " : "") << c.blocks[i][j] + 1;
        os << "]";
    }
    os << "]}\n";
}

}  // namespace coverbound
