// Summatory functions of tau and sigma_{-2m}, the divisor-problem error
// terms Delta(x) and Delta_{-2m}(x), Moebius-type partial sums, and the
// coefficient-weighted sums sum_{d<=x} c(d)/d Delta(x/d).
#pragma once

#include "gcdsum/arith_core.hpp"
#include "gcdsum/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace gcdsum::error_terms {

// ---------------------------------------------------------------------------
// Divisor sums
// ---------------------------------------------------------------------------

/// sum_{n<=x} tau(n) = 2 sum_{d<=sqrt x} [x/d] - [sqrt x]^2. x >= 1.
std::int64_t tau_summatory(std::int64_t x);
std::int64_t tau_summatory(const Rational& x);

/// Delta(x) = sum_{n<=x} tau(n) - x log x - (2 gamma - 1) x.
Real delta(const Rational& x, const PrecisionContext& ctx);

/// sum_{n<=x} sigma_{-2m}(n) = sum_{d<=x} d^{-2m} [x/d], exactly.
Rational sigma_summatory(int m, const Rational& x);

/// Delta_{-2m}(x) = sum_{n<=x} sigma_{-2m}(n) - zeta(1+2m) x + zeta(2m)/2.
Real delta_minus(int m, const Rational& x, const PrecisionContext& ctx);

/// Exact sigma_{-2m} summatory values for every n <= limit, as integer
/// numerators over the common denominator lcm(1..limit)^{2m}.
///
/// Stores the numerators of H(n) = sum_{l<=n} l^{-2m}; each summatory value
/// then costs O(sqrt n) big-integer additions via the hyperbola split.
class SigmaSummatory {
 public:
  SigmaSummatory(int m, std::int64_t limit);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] std::int64_t limit() const { return limit_; }
  [[nodiscard]] const Integer& denominator() const { return denominator_; }

  /// sum_{k<=n} sigma_{-2m}(k) times denominator().
  [[nodiscard]] Integer numerator(std::int64_t n) const;
  [[nodiscard]] Rational value(std::int64_t n) const;

  /// sum_{l<=n} l^{-2m} times denominator().
  [[nodiscard]] const Integer& harmonic_numerator(std::int64_t n) const;

 private:
  int m_;
  std::int64_t limit_;
  Integer denominator_;
  std::vector<Integer> harmonic_;  // index n holds H(n) * denominator_
};

// ---------------------------------------------------------------------------
// Moebius-type partial sums
// ---------------------------------------------------------------------------

/// Weights w(n) in sum_{n<=x} c(n) w(n).
enum class Weight { inv, inv_square, inv_square_log, unit };

Weight parse_weight(std::string_view name);

/// Exact sum_{n<=x} c(n) w(n) for the rational weights (not inv_square_log,
/// which throws std::invalid_argument). c must be integer valued.
Rational partial_sum_exact(const arith::ArithTable& c, Weight w, const Rational& x);

/// The same sum in working precision; all weights allowed.
Real partial_sum(const arith::ArithTable& c, Weight w, const Rational& x, const PrecisionContext& ctx);

/// Running values sum_{n<=N} c(n) w(n) for N = 1..n_max (entry N-1).
std::vector<Real> partial_sum_series(const arith::ArithTable& c, Weight w, std::int64_t n_max,
                                     const PrecisionContext& ctx);

/// Mertens function M(x) = sum_{n<=x} mu(n).
std::int64_t mertens(const arith::ArithTable& mu, const Rational& x);

enum class Convolved { mu_mu, mu_absmu };

Convolved parse_convolved(std::string_view name);

/// mu*mu or mu*|mu| on 1..limit.
arith::ArithTable convolved_table(Convolved kind, std::int64_t limit);

/// Limit of sum_n c(n) w(n) as x grows, for the combinations that converge:
/// mu*mu with inv_square (1/zeta(2)^2) and inv_square_log (2 zeta'(2)/zeta(2)^3);
/// mu*|mu| with inv_square (1/zeta(4)), inv_square_log (2 zeta'(4)/zeta(4)^2)
/// and inv (1/zeta(2)). Anything else throws std::invalid_argument.
Real convolved_limit(Convolved kind, Weight w, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// sum phi(n)/n and sum psi(n)/n against their asymptotic main parts
// ---------------------------------------------------------------------------

enum class RatioFunction { totient, dedekind };

RatioFunction parse_ratio_function(std::string_view name);

struct RatioReport {
  Real sum;       // sum_{n<=x} f(n)/n
  Real main;      // x/zeta(2), or zeta(2) x/zeta(4) - log x/(2 zeta(2))
  Real residual;  // sum - main
  Real envelope;  // (log x)^{2/3} (log log x)^{1/3}, or (log x)^{2/3}
  Real ratio;     // |residual| / envelope
};

/// f must be phi (totient) or psi (dedekind) on a table reaching [x]. x >= 10.
RatioReport ratio_summatory(RatioFunction which, const arith::ArithTable& f, const Rational& x,
                            const PrecisionContext& ctx);

/// sum_{l<=x} mu(l)/l theta(x/l) with theta(t) = t - [t] - 1/2.
Real theta_sum(const arith::ArithTable& mu, const Rational& x, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Coefficient-weighted error terms
// ---------------------------------------------------------------------------

/// m = 0 selects Delta, m >= 1 selects Delta_{-2m}.
///
/// sum_{d<=x} c(d)/d Delta(x/d), each Delta(x/d) evaluated on its own by the
/// hyperbola formula. O(x^{3/2}) overall; the reference path.
Real weighted_delta_sum(const arith::ArithTable& coeffs, const Rational& x, int m, const PrecisionContext& ctx);

/// Prefix tables shared by every coefficient sequence: sum tau and the
/// sum sigma_{-2m} for m = 1..max_m, all up to limit.
class SummatoryPrefix {
 public:
  SummatoryPrefix(std::int64_t limit, int max_m, const PrecisionContext& ctx);

  [[nodiscard]] std::int64_t limit() const { return static_cast<std::int64_t>(tau_.size()) - 1; }
  [[nodiscard]] int max_m() const { return static_cast<int>(sigma_.size()); }
  [[nodiscard]] std::int64_t tau(std::int64_t n) const { return tau_[static_cast<std::size_t>(n)]; }
  [[nodiscard]] const Real& sigma(int m, std::int64_t n) const;

 private:
  std::vector<std::int64_t> tau_;
  std::vector<std::vector<Real>> sigma_;
};

/// Grouped evaluation of sum_{d<=x} c(d)/d Delta(x/d) and the Delta_{-2m}
/// variants in O(sqrt x) per point, from prefix sums of c(d)/d, c(d)/d^2
/// and c(d) log d / d^2 over blocks of constant [x/d].
class WeightedDeltaEngine {
 public:
  WeightedDeltaEngine(const arith::ArithTable& coeffs, std::shared_ptr<const SummatoryPrefix> prefix,
                      const PrecisionContext& ctx);

  [[nodiscard]] std::int64_t limit() const { return prefix_->limit(); }
  [[nodiscard]] Real sum(const Rational& x, int m) const;

 private:
  PrecisionContext ctx_;
  std::shared_ptr<const SummatoryPrefix> prefix_;
  std::vector<Real> w1_;   // sum c(d)/d
  std::vector<Real> w2_;   // sum c(d)/d^2
  std::vector<Real> wl_;   // sum c(d) log d / d^2
};

// ---------------------------------------------------------------------------
// Exact convolution identities
// ---------------------------------------------------------------------------

/// The coefficient / left-hand function pairs
///   totient:       c = mu,       g = phi
///   mobius_mobius: c = mu*mu,    g = mu*phi
///   mobius_abs:    c = mu*|mu|,  g = mu*psi
/// for which (g/id) * K = (c/id) * tau_K with K = 1 (tau) or K = l^{-2m}
/// (sigma_{-2m}). Summed to x this reads
///   sum_{n<=x} ((g/id) * K)(n) = sum_{d<=x} c(d)/d S_K(x/d).
enum class IdentityFamily { totient, mobius_mobius, mobius_abs };

IdentityFamily parse_identity_family(std::string_view name);
std::string_view name_of(IdentityFamily family);

struct IdentityCheck {
  Rational lhs;
  Rational rhs;
  [[nodiscard]] bool equal() const { return lhs == rhs; }
};

/// Both sides of the identity at x, each computed from scratch. m = 0 uses
/// the divisor function, m >= 1 uses sigma_{-2m}.
IdentityCheck check_identity(IdentityFamily family, int m, const Rational& x);

/// Verifies the identity at every integer n <= x_max, streaming the left
/// side as a prefix sum and evaluating the right side by blocks of [n/d].
/// Returns the first n where the sides differ, or nullopt.
std::optional<std::int64_t> verify_identity_range(IdentityFamily family, int m, std::int64_t x_max);

}  // namespace gcdsum::error_terms
