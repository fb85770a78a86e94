// Number types shared by every module: exact integers and rationals (GMP),
// variable-precision reals (MPFR through Boost.Multiprecision) and a small
// complex type over those reals.
#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace gcdsum {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

/// Decimal working precision for every high-precision computation.
struct PrecisionContext {
  int digits = 50;

  PrecisionContext() = default;
  explicit PrecisionContext(int d);
};

/// Sets the MPFR default precision for the lifetime of the guard.
///
/// Real values created while the guard is alive carry `digits` decimal
/// digits. The previous precision is restored on destruction. The default
/// precision is process-wide, so concurrent workers must all run under the
/// same context; the guard does not write when the precision already matches.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(const PrecisionContext& ctx);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
};

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Parses "p", "p/q" or a finite decimal "a.b" into a reduced rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Renders as "p" or "p/q".
std::string to_string(const Rational& q);

/// floor(q) as a 64-bit integer; throws std::out_of_range if it does not fit.
std::int64_t floor_to_int64(const Rational& q);

/// True when q = floor(q) + 1/2.
bool is_half_integer(const Rational& q);

/// Accumulates rationals whose denominators all divide a fixed D, as
/// integer numerators over D. Reduction happens once, in value().
class FixedDenominatorSum {
 public:
  explicit FixedDenominatorSum(Integer denominator);

  void add(const Integer& numerator, const Integer& denominator);
  void add(const Rational& q);
  void add_integer_over(std::int64_t numerator, std::uint64_t denominator);

  [[nodiscard]] const Integer& denominator() const { return denominator_; }
  [[nodiscard]] const Integer& numerator() const { return numerator_; }
  [[nodiscard]] Rational value() const;

 private:
  Integer denominator_;
  Integer numerator_ = 0;
  Integer scratch_;
};

/// lcm(1, 2, ..., n).
Integer lcm_up_to(std::int64_t n);

// ---------------------------------------------------------------------------
// Reals
// ---------------------------------------------------------------------------

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real to_real(std::int64_t v);

/// Parses a decimal literal at the current default precision.
Real parse_real(std::string_view text);

/// Fixed-notation rendering with `digits` significant digits.
std::string to_string(const Real& v, int digits);

/// log10|v|, or -infinity for zero.
double log10_abs(const Real& v);

// ---------------------------------------------------------------------------
// Complex
// ---------------------------------------------------------------------------

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator-(const Complex& a);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);

/// base^s for real base > 0.
Complex pow(const Real& base, const Complex& s);

}  // namespace gcdsum
