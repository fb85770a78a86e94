// Nontrivial zeta zeros: loading and validating ordinate tables, sums over
// zeros of the form sum_rho x^{rho-a} / ((rho-b)^p zeta'(rho)), the explicit
// formulas for Moebius partial sums built from them, and the moments
// J_{-lambda}(T) = sum_{0<gamma<=T} |zeta'(rho)|^{-2 lambda}.
//
// Zeros are stored by ordinate with real part 1/2.
#pragma once

#include "gcdsum/expansions.hpp"
#include "gcdsum/numeric.hpp"

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcdsum::zeros {

struct ZeroEntry {
  Real ordinate;     // gamma > 0
  Complex zeta_prime;  // zeta'(1/2 + i gamma)
};

class ZeroTable {
 public:
  ZeroTable() = default;
  explicit ZeroTable(std::vector<ZeroEntry> entries);

  [[nodiscard]] const std::vector<ZeroEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  /// Largest ordinate, 0 for an empty table.
  [[nodiscard]] Real t_max() const;

  /// The first n entries (all of them when n >= size()).
  [[nodiscard]] ZeroTable first(std::size_t n) const;

  /// Entries with ordinate <= t.
  [[nodiscard]] ZeroTable up_to(const Real& t) const;

 private:
  std::vector<ZeroEntry> entries_;
};

enum class LoadErrorKind { io, malformed, non_increasing, not_a_zero, zero_derivative, derivative_mismatch, sanity };

class LoadError : public std::runtime_error {
 public:
  LoadError(LoadErrorKind kind, std::size_t where, const std::string& message);

  [[nodiscard]] LoadErrorKind kind() const { return kind_; }
  /// 1-based line number for malformed input, otherwise 1-based entry index.
  [[nodiscard]] std::size_t where() const { return where_; }

 private:
  LoadErrorKind kind_;
  std::size_t where_;
};

struct LoadOptions {
  PrecisionContext ctx{30};
  bool recompute_zeta_prime = false;  // ignore file derivatives
  bool verify = true;                 // recompute zeta and zeta' at every entry
  double zeta_tolerance = 1e-6;       // |zeta(rho)| must be below this
  double mismatch_tolerance = 1e-6;   // relative file/recomputed zeta' disagreement
};

/// Format: `#` comments and blank lines ignored; each data line holds
/// `gamma` or `gamma re_zeta' im_zeta'`, ordinates strictly increasing.
/// A missing derivative is always computed. Throws LoadError.
ZeroTable parse_zeros(std::istream& in, const LoadOptions& options = {});
ZeroTable load_zeros(const std::string& path, const LoadOptions& options = {});

/// sum over loaded zeros of x^{rho-a} / ((rho-b)^p zeta'(rho)), both members
/// of each conjugate pair included, hence real.
Real zero_sum(const Rational& x, int a, int b, int p, const ZeroTable& table, const PrecisionContext& ctx);

/// Same sum with the conjugate pairs summed separately; the imaginary part is
/// zero up to rounding. For checking.
Complex zero_sum_unpaired(const Rational& x, int a, int b, int p, const ZeroTable& table,
                          const PrecisionContext& ctx);

/// inv: sum mu(n)/n; inv_square: sum mu(n)/n^2;
/// inv_square_log: sum mu(n)/n^2 log(x/n); all over n <= x.
enum class MobiusSum { inv, inv_square, inv_square_log };

MobiusSum parse_mobius_sum(std::string_view name);

struct ExplicitSum {
  Real value;       // main + zero_sum + correction
  Real main;        // 0, 1/zeta(2), or (log x - zeta'(2)/zeta(2))/zeta(2)
  Real zero_sum;
  Real correction;  // the trivial-zero term in x^{-3} or x^{-4}
  bool empty_table = false;
  Real t_max;
};

ExplicitSum explicit_mobius_sum(MobiusSum which, const Rational& x, const ZeroTable& table,
                                const PrecisionContext& ctx);

/// The residual of M_r(x; id) expressed through the weighted Delta sums and
/// three sums over zeros. x must be a half-integer. An empty table gives the
/// value of expander.theorem_side(x, r) unchanged.
Real theorem13_k(const Rational& x, int r, const ZeroTable& table, const expansions::Expander& expander);
Real theorem13_k(const Rational& x, int r, const ZeroTable& table, const PrecisionContext& ctx);

/// J_{-lambda}(T) = sum_{0<gamma<=T} |zeta'(rho)|^{-2 lambda}. An empty table
/// gives 0; otherwise T beyond t_max throws std::out_of_range. lambda < 3/2.
Real j_minus_lambda(const Real& t, const Real& lambda, const ZeroTable& table, const PrecisionContext& ctx);

/// J_{-lambda}(T) / (T (log T)^{(lambda-1)^2}).
Real gonek_hejhal_ratio(const Real& t, const Real& lambda, const ZeroTable& table, const PrecisionContext& ctx);

}  // namespace gcdsum::zeros
