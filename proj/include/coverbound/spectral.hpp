#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "coverbound/classic.hpp"
#include "coverbound/exactmath.hpp"

// The higher-incidence-matrix machinery: the setUp context (b_i, a_j, d, d')
// with its hypothesis flags, the CB(alpha,beta) bound form, and the three
// theorems evaluated through it.

namespace coverbound {

/// Supplies a certified lower bound on C_lambda(v,k,t) for a sub-parameter set.
using BoundProvider = std::function<Int(const Params&)>;

/// All quantities of the setUp lemma for one (params, s):
/// b_s..b_{2s}, a_0..a_s, d, d' = d + C(k,s) - 1, and the hypothesis flags.
struct SpectralContext {
    Params params;
    long s = 0;

    std::vector<Int> b;  // b[i - s] = b_i for i in [s, 2s]
    std::vector<Int> a;  // a[j] for j in [0, s]
    Int d;
    Int d_prime;
    Int binom_vs;  // C(v, s)
    Int binom_ks;  // C(k, s)

    bool hyp_shape = false;  // t < k < v and 1 <= s <= floor(t/2)
    bool hyp_ii = false;     // chain inequalities (lower halves of (i)/(ii))
    bool hyp_iii = false;    // a_j >= 0 for all j
    bool b_s_small = false;  // b_s < C(k, s)

    bool hypotheses_ok() const { return hyp_shape && hyp_ii && hyp_iii; }

    const Int& b_at(long i) const { return b.at(static_cast<std::size_t>(i - s)); }
    const Int& a_s() const { return a.back(); }
};

/// Weight pair of the CB bound form. beta_is_under_approx marks a beta that
/// was rounded down (case (c)); such a pair is only sound with alpha = 1 and
/// b_s < C(k,s), where CB is nondecreasing in beta.
struct CBParams {
    Rat alpha;
    Rat beta;
    bool beta_is_under_approx = false;
};

/// Build the context with b_i := provider(v-i, k-i, t-i, lambda) for
/// i in {s,...,2s} (the natural choice). All hypothesis flags are evaluated
/// explicitly, including condition (iii) even when v >= s*k makes it
/// automatic. Throws std::invalid_argument("context inapplicable") when
/// s is out of range or t < k < v fails.
SpectralContext build_context(const Params& p, long s, const BoundProvider& provider);

/// ceil( (b_s(alpha-beta)C(v,s) + alpha C(v,s)) / ((alpha-beta)C(k,s) + 1) ),
/// computed in exact rationals. Throws std::invalid_argument("CB inapplicable")
/// when alpha < 2*beta, or when beta_is_under_approx without alpha = 1 and
/// b_s < C(k,s).
Int cb_bound(const SpectralContext& ctx, const CBParams& cb);

/// Basic bound: CB(1, 0) when all hypotheses hold and d < a_s.
std::optional<Int> theorem_main(const SpectralContext& ctx);

/// d >= a_s case: CB((a_s+1)/(2(d+1)), (a_s+1)/(2(d+C(k,s)))) when the
/// hypotheses hold, b_s < C(k,s) and d >= a_s >= 1. Also requires the
/// CB precondition alpha >= 2 beta, i.e. C(k,s) >= d + 2; the pair is
/// otherwise not a valid CB instance and nothing is returned.
std::optional<Int> theorem_dbig(const SpectralContext& ctx);

enum class SmallDCase { A, B, C };
char to_char(SmallDCase c);

struct SmallDResult {
    Int value;          // max over the applicable cases
    SmallDCase winner;  // first case attaining the max
    std::optional<Int> case_a, case_b, case_c;
};

/// d < a_s improvements, cases (a)-(c). Case (c)'s irrational beta is
/// replaced by a certified under-approximation via sqrt_lower (clamped at 0):
/// with alpha = 1 and b_s < C(k,s), CB is nondecreasing in beta, so rounding
/// beta down only weakens the bound and never invalidates it.
std::optional<SmallDResult> theorem_smalld(const SpectralContext& ctx,
                                           const Int& sqrt_scale = default_sqrt_scale());

}  // namespace coverbound
