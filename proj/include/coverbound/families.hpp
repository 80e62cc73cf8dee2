#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coverbound/oracle.hpp"
#include "coverbound/spectral.hpp"

// Closed-form infinite families: the t=5 improvement family and the affine
// blow-up exact-value family.

namespace coverbound {

/// Finite field arithmetic on {0,...,q-1}. Prime q is built natively; prime
/// powers require a user-supplied table file.
struct FieldTable {
    long q = 0;
    std::vector<std::vector<long>> mul, add;

    long times(long a, long b) const { return mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    long plus(long a, long b) const { return add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

    static bool is_prime(long q);
    static FieldTable prime_field(long q);

    /// File format: first token q, then the q*q multiplication table and the
    /// q*q addition table as integer grids (row-major).
    static FieldTable load(const std::string& path);
};

/// The t=5 family: v = m^2(m-2)+4, k = m(m-1)+2, improvement m(m-4)-10 over
/// the Schonheim bound via the basic theorem at s=2.
struct InfFamReport {
    long m = 0;
    Params params;
    Int l4, l3, l2;       // the b_i of the natural choice
    Int a0, a1, a2, d;
    Int schonheim_value;  // L(v,k,5)
    Int theorem_bound;    // basic theorem at s=2
    Int promised;         // L + m(m-4) - 10
    bool ok = false;      // theorem_bound >= promised
};

/// Throws std::invalid_argument("out of family range") for m < 6.
InfFamReport inffam_check(long m);

/// The t-(q^t, q^{t-1}, 1) covering formed by the (t-1)-flats of AG(t,q):
/// blocks are the solution sets of a.x = c with a ranging over one
/// representative per scalar class (first nonzero coordinate 1). Throws
/// std::runtime_error("field unavailable") for non-prime q without a table.
Covering affine_flats(long q, long t, const FieldTable* field = nullptr);

/// Blow-up: each point of affine_flats(q,t) becomes m copies, then the
/// lexicographically last m*q^t - v points are deleted from all blocks.
/// Throws std::invalid_argument("out of range") when v > m*q^t.
Covering blowup(long q, long t, long m, long v, const FieldTable* field = nullptr);

/// Closed forms for ell_i = L(v-i, m q^{t-1} - i, t-i) under the lemma's
/// hypotheses: (q^{t-i+1}-1)/(q-1) for i >= 2 and explicit case splits for
/// i in {0,1}. Throws std::invalid_argument("closed form out of range")
/// outside the hypothesis window.
Int exactlem2_ell(long v, long m, long q, long t, long i);

/// Exact covering numbers from the affine family:
/// C(v, m q^{t-1}, t) = q(q^t-1)/(q-1) for v in [v_min, m q^t].
struct ExactTh2Report {
    long z = 0;
    long v_min = 0;
    Int exact_value;          // q(q^t-1)/(q-1)
    Int lower_bound;          // basic theorem at s=1 evaluated at v_min
    bool lower_ok = false;    // lower_bound >= exact_value
    std::size_t witness_blocks = 0;
    bool witness_ok = false;  // blow-up witnesses pass is_covering
};

/// Throws std::invalid_argument("family inapplicable") when m < 2q+2 or
/// t violates 2 <= t < m q^{t-1}; field errors as in affine_flats.
ExactTh2Report exactth2(long m, long q, long t, const FieldTable* field = nullptr,
                        bool check_witness = true);

}  // namespace coverbound
