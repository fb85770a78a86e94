// Asymptotic main terms of M_r(x; f) for f = id, phi, psi, the residuals
// (exact value minus main term) and their refined divisor-problem
// expressions, plus grid scans comparing the two.
#pragma once

#include "gcdsum/error_terms.hpp"
#include "gcdsum/exactsum.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace gcdsum::expansions {

using exactsum::GcdFunction;

/// Above this floor(x) the exact value is evaluated in working precision
/// from prefix tables instead of as a rational.
inline constexpr std::int64_t kExactCeiling = 2000;

/// sum_{m=1}^{[r/2]} C(r+1, 2m) B_2m zeta(2m+1), and the same with zeta(2m).
Real c_odd(int r, const PrecisionContext& ctx);
Real c_even(int r, const PrecisionContext& ctx);

/// The displayed main part of M_r(x; f). x >= 2.
Real main_term(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx);

/// The weight w with M_r(x; f) - main ~ sum_d w(d)/d Delta(x/d) + ...:
/// mu for id, mu*mu for phi, mu*|mu| for psi.
arith::ArithTable delta_weights(GcdFunction f, std::int64_t limit);

/// M_r(x; id) rewritten as [x]/2 plus Moebius-weighted tau and sigma_{-2m}
/// summatory functions, exactly.
Rational m_r_id_regrouped(const Rational& x, int r);

struct Envelopes {
  Real log_x;
  Real log_loglog;  // (log x)^{2/3} (log log x)^{1/3}
  Real delta_log;   // delta(x) log x
};

struct ExpansionReport {
  Rational x;
  int r = 1;
  GcdFunction f = GcdFunction::id;
  std::optional<Rational> exact_rational;  // set when [x] <= kExactCeiling
  Real exact;
  Real main;
  Real residual;
  Real theorem_side;
  Real gap;  // residual - theorem_side
  Envelopes envelopes;
  int precision = 0;  // working digits
};

struct ExpanderOptions {
  PrecisionContext ctx;
  Real delta_c = 1;  // the constant C in delta(x)
};

/// Tables for one f up to a limit, shared by every evaluation point. Any
/// number of threads may call the const members concurrently, provided they
/// all run at the expander's precision.
class Expander {
 public:
  Expander(GcdFunction f, std::int64_t limit, int max_r, ExpanderOptions options = {});

  [[nodiscard]] GcdFunction function() const { return f_; }
  [[nodiscard]] std::int64_t limit() const { return limit_; }
  [[nodiscard]] int max_r() const { return max_r_; }
  [[nodiscard]] const PrecisionContext& context() const { return options_.ctx; }

  /// M_r(x; f) from the prefix tables, for any [x] <= limit.
  [[nodiscard]] Real exact_real(const Rational& x, int r) const;

  /// M_r(x; f) as a rational when [x] <= kExactCeiling.
  [[nodiscard]] std::optional<Rational> exact_rational(const Rational& x, int r) const;

  [[nodiscard]] Real main(const Rational& x, int r) const;
  [[nodiscard]] Real residual(const Rational& x, int r) const;

  /// The refined expression for the residual. With bernoulli_block = false
  /// the Delta_{-2m} sums are left out.
  [[nodiscard]] Real theorem_side(const Rational& x, int r, bool bernoulli_block = true) const;

  [[nodiscard]] Real weighted_delta(const Rational& x, int m) const;

  [[nodiscard]] ExpansionReport report(const Rational& x, int r) const;

 private:
  void check(const Rational& x, int r) const;

  GcdFunction f_;
  std::int64_t limit_;
  int max_r_;
  ExpanderOptions options_;
  exactsum::GcdSumTables tables_;
  std::unique_ptr<error_terms::WeightedDeltaEngine> engine_;
  std::vector<Real> f_over_n_;             // prefix sum f(n)/n
  std::vector<Real> c_over_d_;             // prefix sum (mu*f)(d)/d
  std::vector<std::vector<Real>> harmonic_;  // harmonic_[m-1][q] = sum_{l<=q} l^{-2m}
};

/// Stand-alone versions; each builds an expander sized to [x].
Real residual(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx);
Real theorem_side(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx);

/// Log-spaced points from xmin to xmax inclusive. With half_integers each
/// point is moved to [x] + 1/2; duplicates are dropped.
std::vector<Rational> log_grid(const Rational& xmin, const Rational& xmax, int points, bool half_integers);

/// Point count for a log grid with the given density per decade.
int points_for_density(const Rational& xmin, const Rational& xmax, int per_decade);

/// One report per grid point, in grid order whatever the thread count.
std::vector<ExpansionReport> scan(const Expander& expander, int r, const std::vector<Rational>& grid,
                                  unsigned threads = 1);

/// Header `x,r,f,exact,main,residual,theorem_side,gap,log_x,env_loglog,env_delta,precision`.
void write_csv(std::ostream& out, const std::vector<ExpansionReport>& rows, int digits);
void write_json(std::ostream& out, const std::vector<ExpansionReport>& rows, int digits);

}  // namespace gcdsum::expansions
