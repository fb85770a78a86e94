// High-precision constants and analytic functions: Bernoulli numbers,
// Euler's constant, zeta and zeta' on the real line and in the critical
// strip, and the envelope functions used when reporting error terms.
#pragma once

#include "gcdsum/numeric.hpp"

namespace gcdsum::special {

/// Exact Bernoulli number B_n = B_n(0), so B_1 = -1/2. Odd n > 1 give 0.
/// Computed once by the recurrence sum_{j<=n} C(n+1, j) B_j = 0 and cached.
Rational bernoulli(int n);

/// Binomial coefficient C(n, k) as an exact integer.
Integer binomial(int n, int k);

/// pi to ctx.digits.
Real pi(const PrecisionContext& ctx);

/// Euler's constant, from Euler-Maclaurin applied to the harmonic numbers.
/// Memoized per precision.
Real euler_gamma(const PrecisionContext& ctx);

/// zeta(s) and zeta'(s) for real s > 1; s <= 1 throws std::domain_error.
Real zeta_real(const Real& s, const PrecisionContext& ctx);
Real zeta_prime_real(const Real& s, const PrecisionContext& ctx);

/// Memoized zeta(k), zeta'(k) for integers k >= 2.
Real zeta_int(int k, const PrecisionContext& ctx);
Real zeta_prime_int(int k, const PrecisionContext& ctx);

/// A complex zeta value plus a flag raised outside the validated region
/// (0 < Re s < 2, |Im s| <= 5000).
struct FlaggedComplex {
  Complex value;
  bool low_confidence = false;
};

struct ZetaWithDerivative {
  Complex zeta;
  Complex zeta_prime;
  bool low_confidence = false;
};

/// Analytic continuation by Euler-Maclaurin with roughly |Im s|/3 direct
/// terms; zeta' uses the term-wise differentiated expansion. s = 1 throws.
FlaggedComplex zeta_complex(const Complex& s, const PrecisionContext& ctx);
FlaggedComplex zeta_prime_complex(const Complex& s, const PrecisionContext& ctx);
ZetaWithDerivative zeta_and_derivative(const Complex& s, const PrecisionContext& ctx);

/// delta(x) = exp(-C (log x)^{3/5} / (log log x)^{1/5}); x <= 5 throws.
Real delta_envelope(const Real& x, const Real& c, const PrecisionContext& ctx);

/// log eta(x) = (log x)^{1/2} (log log x)^{14}. eta itself overflows every
/// float format at desk scale, so only its logarithm is exposed.
Real log_eta_envelope(const Real& x, const PrecisionContext& ctx);

}  // namespace gcdsum::special
