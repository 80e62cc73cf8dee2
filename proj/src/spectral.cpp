#include "coverbound/spectral.hpp"

namespace coverbound {

SpectralContext build_context(const Params& p, long s, const BoundProvider& provider) {
    if (s < 1 || s > p.t / 2 || !(p.t < p.k && p.k < p.v))
        throw std::invalid_argument("context inapplicable");

    SpectralContext ctx;
    ctx.params = p;
    ctx.s = s;
    ctx.hyp_shape = true;
    ctx.binom_vs = binom(p.v, s);
    ctx.binom_ks = binom(p.k, s);

    ctx.b.reserve(static_cast<std::size_t>(s) + 1);
    for (long i = s; i <= 2 * s; ++i)
        ctx.b.push_back(provider({p.v - i, p.k - i, p.t - i, p.lambda}));

    // a_j = sum_{i=0}^{j} (-1)^{i+j} C(j,i) b_{2s-i}
    ctx.a.resize(static_cast<std::size_t>(s) + 1);
    for (long j = 0; j <= s; ++j) {
        Int aj = 0;
        for (long i = 0; i <= j; ++i) {
            Int term = binom(j, i) * ctx.b_at(2 * s - i);
            if ((i + j) % 2 == 0)
                aj += term;
            else
                aj -= term;
        }
        ctx.a[static_cast<std::size_t>(j)] = aj;
    }

    // d = b_s(C(k,s)-1) - sum_{i=0}^{s-1} C(s,i) C(v-s,s-i) b_{2s-i}
    Int sum = 0;
    for (long i = 0; i < s; ++i) sum += binom(s, i) * binom(p.v - s, s - i) * ctx.b_at(2 * s - i);
    ctx.d = ctx.b_at(s) * (ctx.binom_ks - 1) - sum;
    ctx.d_prime = ctx.d + ctx.binom_ks - 1;

    // (i) lower half: L <= b_{2s}; (ii) lower halves: ceil((v-i)/(k-i) b_{i+1}) <= b_i.
    // The upper halves reference true covering numbers and are treated as
    // satisfied whenever every b_i is a valid lower bound.
    bool ii = ctx.b_at(2 * s) >= schonheim({p.v - 2 * s, p.k - 2 * s, p.t - 2 * s, p.lambda});
    for (long i = s; i < 2 * s && ii; ++i) {
        if (ctx.b_at(i) < ceil_div(Int(p.v - i) * ctx.b_at(i + 1), Int(p.k - i))) ii = false;
    }
    for (const Int& bi : ctx.b)
        if (bi < 1) ii = false;
    ctx.hyp_ii = ii;

    ctx.hyp_iii = true;
    for (const Int& aj : ctx.a)
        if (aj < 0) ctx.hyp_iii = false;

    ctx.b_s_small = ctx.b_at(s) < ctx.binom_ks;
    return ctx;
}

Int cb_bound(const SpectralContext& ctx, const CBParams& cb) {
    if (cb.alpha < 2 * cb.beta) throw std::invalid_argument("CB inapplicable");
    if (cb.beta_is_under_approx && !(cb.alpha == 1 && ctx.b_s_small))
        throw std::invalid_argument("CB inapplicable");
    Rat gamma = cb.alpha - cb.beta;
    Rat num = Rat(ctx.b_at(ctx.s)) * gamma * Rat(ctx.binom_vs) + cb.alpha * Rat(ctx.binom_vs);
    Rat den = gamma * Rat(ctx.binom_ks) + 1;
    return rat_ceil(num / den);
}

std::optional<Int> theorem_main(const SpectralContext& ctx) {
    if (!ctx.hypotheses_ok() || !(ctx.d < ctx.a_s())) return std::nullopt;
    return cb_bound(ctx, CBParams{Rat(1), Rat(0)});
}

std::optional<Int> theorem_dbig(const SpectralContext& ctx) {
    if (!ctx.hypotheses_ok() || !ctx.b_s_small) return std::nullopt;
    if (!(ctx.d >= ctx.a_s() && ctx.a_s() >= 1)) return std::nullopt;
    CBParams cb;
    cb.alpha = make_rat(ctx.a_s() + 1, 2 * (ctx.d + 1));
    cb.beta = make_rat(ctx.a_s() + 1, 2 * (ctx.d + ctx.binom_ks));
    // CB requires alpha >= 2 beta, i.e. C(k,s) >= d + 2; the theorem's pair
    // is not a valid CB instance otherwise.
    if (cb.alpha < 2 * cb.beta) return std::nullopt;
    return cb_bound(ctx, cb);
}

char to_char(SmallDCase c) {
    switch (c) {
        case SmallDCase::A: return 'a';
        case SmallDCase::B: return 'b';
        case SmallDCase::C: return 'c';
    }
    return '?';
}

std::optional<SmallDResult> theorem_smalld(const SpectralContext& ctx, const Int& sqrt_scale) {
    if (!ctx.hypotheses_ok() || !ctx.b_s_small) return std::nullopt;
    const Int& as = ctx.a_s();
    const Int& d = ctx.d;
    const Int& dp = ctx.d_prime;
    if (!(d < as)) return std::nullopt;

    SmallDResult res;
    bool have = false;
    auto consider = [&](const std::optional<Int>& val, SmallDCase c) {
        if (!val) return;
        if (!have || *val > res.value) {
            res.value = *val;
            res.winner = c;
            have = true;
        }
    };

    // (a) always applicable.
    {
        CBParams cb;
        cb.alpha = Rat(1) - make_rat(d * d, 2 * as * (as + 1));
        cb.beta = make_rat(as + 2, 2 * (dp + 1));
        res.case_a = cb_bound(ctx, cb);
        consider(res.case_a, SmallDCase::A);
    }
    // (b) d >= a_s/2 and d d' < a_s(a_s+1).
    if (2 * d >= as && d * dp < as * (as + 1)) {
        CBParams cb;
        cb.alpha = Rat(1);
        cb.beta = Rat(1) - make_rat(d * dp, as * (as + 1));
        res.case_b = cb_bound(ctx, cb);
        consider(res.case_b, SmallDCase::B);
    }
    // (c) d < a_s/2 and d(d'+1)^2 < 4(a_s+1)(a_s+2)(a_s-d). The square root
    // is under-approximated, which can only lower the resulting bound.
    if (2 * d < as && d * (dp + 1) * (dp + 1) < 4 * (as + 1) * (as + 2) * (as - d)) {
        Rat radicand = make_rat(d * (as + 2), (as + 1) * (as - d));
        Rat beta = sqrt_lower(radicand, sqrt_scale) - make_rat(d * (dp + 1), 2 * (as + 1) * (as - d));
        bool approx = d > 0;
        if (beta < 0) beta = 0;  // still a sound (weaker) choice
        CBParams cb;
        cb.alpha = Rat(1);
        cb.beta = beta;
        cb.beta_is_under_approx = approx;
        res.case_c = cb_bound(ctx, cb);
        consider(res.case_c, SmallDCase::C);
    }
    if (!have) return std::nullopt;
    return res;
}

}  // namespace coverbound
