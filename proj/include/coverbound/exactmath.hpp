#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

// Exact integer and rational arithmetic used by every bound computation.
// All values that appear on a certification path are mpz/mpq; no floating
// point is used anywhere in the library.

namespace coverbound {

using Int = mpz_class;
using Rat = mpq_class;

/// C(n, r). Returns 0 when r > n or r < 0.
Int binom(const Int& n, const Int& r);
Int binom(long n, long r);

/// ceil(a / b) for b >= 1. Throws std::domain_error("division by zero") on b == 0.
Int ceil_div(const Int& a, const Int& b);

/// sum_{j=i}^{ell} (-1)^{i+j} C(ell,j) C(j,i).
/// Equals 1 when i == ell and 0 when i < ell.
/// Throws std::domain_error("invalid range") when i > ell or i < 0.
Int alt_binom_sum(long i, long ell);

/// floor(sqrt(x)) for x >= 0.
Int isqrt_floor(const Int& x);

/// Certified under-approximation of sqrt(x): the largest multiple r of
/// 1/scale with r <= sqrt(x), so sqrt(x) - r <= 1/scale. Requires scale >= 1.
/// Throws std::domain_error("negative radicand") when x < 0.
Rat sqrt_lower(const Rat& x, const Int& scale);

/// Default scale for sqrt_lower: 10^40.
const Int& default_sqrt_scale();

Int rat_ceil(const Rat& x);
Int rat_floor(const Rat& x);

/// num/den as a canonicalized rational; den must be nonzero.
Rat make_rat(const Int& num, const Int& den);

}  // namespace coverbound
