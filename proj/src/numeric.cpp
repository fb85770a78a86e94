#include "gcdsum/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gcdsum {

PrecisionContext::PrecisionContext(int d) : digits(d) {
  if (d < 15) {
    throw std::invalid_argument("precision must be at least 15 digits, got " + std::to_string(d));
  }
}

ScopedPrecision::ScopedPrecision(const PrecisionContext& ctx)
    : previous_(Real::default_precision()) {
  if (previous_ != static_cast<unsigned>(ctx.digits)) {
    Real::default_precision(static_cast<unsigned>(ctx.digits));
  }
}

ScopedPrecision::~ScopedPrecision() {
  if (Real::default_precision() != previous_) {
    Real::default_precision(previous_);
  }
}

// ---------------------------------------------------------------------------

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::int64_t floor_to_int64(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!mpz_fits_slong_p(f.get_mpz_t())) throw std::out_of_range("floor does not fit 64 bits: " + to_string(q));
  return f.get_si();
}

bool is_half_integer(const Rational& q) { return q.get_den() == 2; }

// ---------------------------------------------------------------------------

FixedDenominatorSum::FixedDenominatorSum(Integer denominator) : denominator_(std::move(denominator)) {
  if (denominator_ <= 0) throw std::invalid_argument("FixedDenominatorSum: denominator must be positive");
}

void FixedDenominatorSum::add(const Integer& numerator, const Integer& denominator) {
  mpz_divexact(scratch_.get_mpz_t(), denominator_.get_mpz_t(), denominator.get_mpz_t());
  mpz_addmul(numerator_.get_mpz_t(), scratch_.get_mpz_t(), numerator.get_mpz_t());
}

void FixedDenominatorSum::add(const Rational& q) { add(q.get_num(), q.get_den()); }

void FixedDenominatorSum::add_integer_over(std::int64_t numerator, std::uint64_t denominator) {
  if (numerator == 0) return;
  mpz_divexact_ui(scratch_.get_mpz_t(), denominator_.get_mpz_t(), denominator);
  if (numerator > 0) {
    mpz_addmul_ui(numerator_.get_mpz_t(), scratch_.get_mpz_t(), static_cast<unsigned long>(numerator));
  } else {
    mpz_submul_ui(numerator_.get_mpz_t(), scratch_.get_mpz_t(), static_cast<unsigned long>(-numerator));
  }
}

Rational FixedDenominatorSum::value() const {
  Rational q(numerator_, denominator_);
  q.canonicalize();
  return q;
}

Integer lcm_up_to(std::int64_t n) {
  Integer l = 1;
  for (std::int64_t k = 2; k <= n; ++k) {
    mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(k));
  }
  return l;
}

// ---------------------------------------------------------------------------

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(std::int64_t v) {
  Real r;
  mpfr_set_si(r.backend().data(), static_cast<long>(v), MPFR_RNDN);
  return r;
}

Real parse_real(std::string_view text) { return Real(std::string(text)); }

std::string to_string(const Real& v, int digits) { return v.str(digits); }

double log10_abs(const Real& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(boost::multiprecision::log10(boost::multiprecision::abs(v)));
}

// ---------------------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real den = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / den;
  Real i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator-(const Complex& a) { return Complex(Real(-a.re), Real(-a.im)); }

Complex conj(const Complex& z) { return Complex(z.re, Real(-z.im)); }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  Real s;
  Real c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), z.im.backend().data(), MPFR_RNDN);
  return Complex(Real(m * c), Real(m * s));
}

Complex log(const Complex& z) {
  return Complex(Real(boost::multiprecision::log(abs(z))), Real(boost::multiprecision::atan2(z.im, z.re)));
}

Complex pow(const Real& base, const Complex& s) {
  Real lb = boost::multiprecision::log(base);
  return exp(Complex(Real(s.re * lb), Real(s.im * lb)));
}

}  // namespace gcdsum
