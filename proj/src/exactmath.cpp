#include "coverbound/exactmath.hpp"

namespace coverbound {

Int binom(const Int& n, const Int& r) {
    if (r < 0 || r > n) return 0;
    // Work with the smaller cofactor; r fits an unsigned long whenever the
    // coefficient is computable at all in this artifact's parameter ranges.
    Int rr = (r * 2 > n) ? Int(n - r) : r;
    if (!rr.fits_ulong_p()) throw std::overflow_error("binom: r too large");
    Int out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), rr.get_ui());
    return out;
}

Int binom(long n, long r) { return binom(Int(n), Int(r)); }

Int ceil_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("division by zero");
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int alt_binom_sum(long i, long ell) {
    if (i < 0 || i > ell) throw std::domain_error("invalid range");
    Int sum = 0;
    for (long j = i; j <= ell; ++j) {
        Int term = binom(ell, j) * binom(j, i);
        if ((i + j) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

Int isqrt_floor(const Int& x) {
    if (x < 0) throw std::domain_error("negative radicand");
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Rat sqrt_lower(const Rat& x, const Int& scale) {
    if (x < 0) throw std::domain_error("negative radicand");
    if (scale < 1) throw std::domain_error("scale must be >= 1");
    // sqrt(p/q) = sqrt(p*q)/q, and floor(floor(y)/q) == floor(y/q), so
    // z = floor(scale * sqrt(x)) is exactly floor(isqrt(p*q*scale^2) / q).
    Int p = x.get_num() * scale * scale;
    const Int& q = x.get_den();
    Int z = isqrt_floor(p * q) / q;
    return make_rat(z, scale);
}

const Int& default_sqrt_scale() {
    static const Int scale = [] {
        Int s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, 40);
        return s;
    }();
    return scale;
}

Int rat_ceil(const Rat& x) { return ceil_div(x.get_num(), x.get_den()); }

Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("division by zero");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace coverbound
