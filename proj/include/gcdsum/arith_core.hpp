// Sieved arithmetic functions on 1..N and Dirichlet convolution.
#pragma once

#include "gcdsum/numeric.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcdsum::arith {

/// An arithmetic function sampled on 1..limit, immutable once built.
///
/// Integer-valued functions keep 64-bit storage; anything else is stored as
/// exact rationals. value(n) is 1-based in both cases.
class ArithTable {
 public:
  static ArithTable integral(std::string label, std::vector<std::int64_t> values);
  static ArithTable rational(std::string label, std::vector<Rational> values);

  [[nodiscard]] std::int64_t limit() const { return limit_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] bool is_integral() const { return integral_; }

  [[nodiscard]] Rational value(std::int64_t n) const;

  /// Integer entry; throws std::logic_error on rational-valued tables.
  [[nodiscard]] std::int64_t integer(std::int64_t n) const;

  /// Integer storage, index 0 holds n = 1. Empty for rational tables.
  [[nodiscard]] std::span<const std::int64_t> integers() const { return ints_; }
  [[nodiscard]] std::span<const Rational> rationals() const { return rats_; }

  /// `n,value` rows with a header line; rationals rendered as p/q.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const ArithTable& a, const ArithTable& b);

 private:
  ArithTable() = default;
  void check_index(std::int64_t n) const;

  std::string label_;
  std::int64_t limit_ = 0;
  bool integral_ = true;
  std::vector<std::int64_t> ints_;
  std::vector<Rational> rats_;
};

/// Smallest-prime-factor table from a linear sieve; the factorization
/// backbone of every named table.
class FactorSieve {
 public:
  explicit FactorSieve(std::int64_t limit);

  [[nodiscard]] std::int64_t limit() const { return limit_; }
  [[nodiscard]] std::uint32_t smallest_prime_factor(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  [[nodiscard]] std::span<const std::uint32_t> primes() const { return primes_; }

  struct PrimePower {
    std::uint32_t prime;
    int exponent;
    std::int64_t power;  // prime^exponent
  };

  /// Factorization of n > 1 in ascending prime order.
  [[nodiscard]] std::vector<PrimePower> factor(std::int64_t n) const;

  /// Builds a multiplicative function from its values at prime powers.
  [[nodiscard]] std::vector<std::int64_t> multiplicative(
      const std::function<std::int64_t(const PrimePower&)>& at_prime_power) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

enum class NamedFunction { totient, dedekind, tau, abs_mobius };

/// Parses "totient"/"phi", "dedekind"/"psi", "tau", "abs_mobius"/"abs_mu".
NamedFunction parse_named_function(std::string_view name);

ArithTable sieve_mobius(std::int64_t limit);
ArithTable sieve_named(NamedFunction fn, std::int64_t limit);
ArithTable sieve_named(std::string_view name, std::int64_t limit);

/// (f*g)(n) = sum over d | n of f(d) g(n/d), by iterating d and its multiples.
ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g);

/// sigma_{-2m}(n) = sum over d | n of d^(-2m), exact.
ArithTable sigma_minus_table(int m, std::int64_t limit);

ArithTable ones_table(std::int64_t limit);
ArithTable unit_table(std::int64_t limit);
ArithTable identity_table(std::int64_t limit);

/// id_u(n) = n^u for any integer u (rational for u < 0).
ArithTable power_table(int u, std::int64_t limit);

/// Entrywise f(n)/n.
ArithTable divide_by_identity(const ArithTable& f);

/// Entrywise a f(n) + b g(n) for tables of equal limit.
ArithTable linear_combination(std::int64_t a, const ArithTable& f, std::int64_t b, const ArithTable& g);

}  // namespace gcdsum::arith
