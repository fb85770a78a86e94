// Exact rational evaluation of the gcd-sum averages
//
//   M_r(x; f) = sum_{k <= x} k^{-(r+1)} sum_{j=1}^{k} j^r f(gcd(j, k))
//
// both by the defining double sum and by its divisor-sum expansion
//
//   1/2 sum_{n<=x} f(n)/n + 1/(r+1) sum_{dl<=x} (mu*f)(d)/d
//     + 1/(r+1) sum_{m=1}^{[r/2]} C(r+1,2m) B_2m sum_{dl<=x} (mu*f)(d)/(d l^2m).
//
// The two routes must agree exactly; everything downstream treats them as
// ground truth.
#pragma once

#include "gcdsum/arith_core.hpp"
#include "gcdsum/numeric.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace gcdsum::exactsum {

enum class GcdFunction { id, phi, psi };

GcdFunction parse_gcd_function(std::string_view name);
std::string_view name_of(GcdFunction f);

/// x >= 1 (exact rational), r >= 1, and which f.
struct EvalPoint {
  Rational x;
  int r = 1;
  GcdFunction f = GcdFunction::id;
};

/// Throws std::invalid_argument when x < 1 or r < 1.
void validate(const EvalPoint& p);

/// f on 1..limit.
arith::ArithTable function_table(GcdFunction f, std::int64_t limit);

/// mu*f on 1..limit: phi for f = id, mu*phi, mu*psi otherwise.
arith::ArithTable mobius_convolution_table(GcdFunction f, std::int64_t limit);

/// Tables for one f, shared read-only by any number of evaluations.
struct GcdSumTables {
  GcdSumTables(GcdFunction f, std::int64_t limit);

  GcdFunction function;
  arith::ArithTable values;
  arith::ArithTable mobius_values;
};

/// Pillai's function P(n) = sum_{k<=n} gcd(k, n).
std::int64_t pillai(std::int64_t n);

/// The defining double sum, O(x^2). Tables must reach floor(x).
Rational m_r_naive(const EvalPoint& p, const arith::ArithTable& f);

/// The divisor-sum expansion, O(x) big-integer operations.
Rational m_r_identity(const EvalPoint& p, const arith::ArithTable& f, const arith::ArithTable& mobius_f);

Rational m_r_naive(const EvalPoint& p, const GcdSumTables& tables);
Rational m_r_identity(const EvalPoint& p, const GcdSumTables& tables);

/// M_r(n; f) for n = 1..n_max by the defining double sum, accumulated
/// once. Entry n-1 holds M_r(n; f).
std::vector<Rational> m_r_naive_series(int r, const arith::ArithTable& f, std::int64_t n_max);

/// M_r(n; f) for n = 1..n_max by the divisor-sum expansion, adding the
/// hyperbola points dl = n one n at a time.
std::vector<Rational> m_r_identity_series(int r, const arith::ArithTable& f, const arith::ArithTable& mobius_f,
                                          std::int64_t n_max);

/// C(r+1, 2m) B_2m for m = 1..[r/2] (index 0 is m = 1).
std::vector<Rational> bernoulli_weights(int r);

}  // namespace gcdsum::exactsum
