#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coverbound/spectral.hpp"

// Ground truth: explicit incidence structures, a branch-and-bound search for
// exact covering numbers on tiny parameters, exact integer linear algebra,
// and checks of the decomposition identities and the Caro--Tuza bound.

namespace coverbound {

/// Incidence structure: points 0..v-1, blocks as sorted point lists.
/// Blocks form a multiset; sizes are uniform when constructed as a covering
/// but may be ragged (e.g. blow-up witnesses after point deletion).
struct Covering {
    long v = 0;
    std::vector<std::vector<int>> blocks;
};

/// True iff every t-subset of the points lies in at least lambda blocks.
bool is_covering(const Covering& c, long t, long lambda);

/// Number of blocks containing X.
Int count_blocks_containing(const Covering& c, const std::vector<int>& x);

struct SearchStats {
    std::uint64_t nodes = 0;
    bool budget_exhausted = false;
};

/// Exact C_lambda(v,k,t) by branch-and-bound over block multisets, or
/// nothing when the node budget runs out before the value is certified.
/// Branches on a least-covered t-set and only adds blocks containing it;
/// prunes on the counting bound of the residual deficiency.
std::optional<Int> exact_cover_number(long v, long k, long t, long lambda,
                                      std::uint64_t node_budget = 10'000'000,
                                      Covering* witness = nullptr, SearchStats* stats = nullptr);

/// Dense exact-integer matrix.
struct IntMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<Int> e;

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}
    Int& at(long i, long j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
    bool symmetric() const;
};

IntMatrix matmul_transpose(const IntMatrix& a);  // A * A^T
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

/// All s-subsets of 0..v-1 in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(long v, long s);

/// s-incidence matrix: rows = s-subsets of the points (lex order),
/// columns = blocks, entry 1 iff the subset lies in the block.
IntMatrix s_incidence(const Covering& c, long s);

/// Checks (A A^T)[X,Y] == b(X u Y) for all s-subsets X, Y.
bool gram_check(const Covering& c, long s);

struct CheckReport {
    bool ok = true;
    std::string detail;  // first violation when !ok
};

/// Verifies the four decomposition identities of the setUp lemma against an
/// explicit covering: (1) A A^T = P + M entrywise; (2) sum_j a_j Q_j^T Q_j has
/// (X,Y) entry b_{|X u Y|}; (3) (Q_j^T Q_j)[X,Y] = C(|X n Y|, j); (4) the
/// off-diagonal row sums of M equal (b(X)-b_s)(C(k,s)-1)+d.
/// Throws std::invalid_argument("context/covering mismatch") when the
/// covering does not match ctx.params.
CheckReport decomposition_check(const Covering& c, const SpectralContext& ctx);

/// True iff all leading principal minors are positive (exact fraction-free
/// elimination; Sylvester's criterion). Throws on non-symmetric input.
bool pd_check(const IntMatrix& m);

/// Exact rank over the rationals.
long exact_rank(const IntMatrix& m);

/// Principal submatrix on the given row/column indices.
IntMatrix principal_submatrix(const IntMatrix& m, const std::vector<long>& idx);

/// Multigraph with symmetric edge multiplicities and zero diagonal.
struct Multigraph {
    int n = 0;
    std::vector<std::vector<int>> mu;

    explicit Multigraph(int n_ = 0) : n(n_), mu(n_, std::vector<int>(n_, 0)) {}
    void set_edge(int x, int y, int m);
    long degree(int x) const;
};

/// f_n(x) of the Caro--Tuza theorem: 1 - x/(2n) for x <= n,
/// (n+1)/(2(x+1)) for x >= n.
Rat caro_tuza_f(long n, long x);

struct CaroTuzaReport {
    long max_independent = 0;  // exhaustive maximum n-independent set size
    Int bound;                 // ceil(sum_u f_n(deg u))
    bool ok = false;           // max_independent >= bound
};

/// Exhaustively verifies the Caro--Tuza bound; at most 10 vertices.
CaroTuzaReport caro_tuza_check(const Multigraph& g, long n);

/// The complete design: all k-subsets of a v-set.
Covering all_k_subsets(long v, long k);

/// Seeded random t-(v,k,lambda) covering: either the complete design or
/// random blocks plus greedy repair to coveringness.
Covering random_covering(long v, long k, long t, long lambda, std::mt19937& rng);

/// Witness as JSON {v, k, t, lambda, blocks: [[...], ...]} (1-based points).
void write_witness_json(std::ostream& os, const Covering& c, long k, long t, long lambda);

}  // namespace coverbound
