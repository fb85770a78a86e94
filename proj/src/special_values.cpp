#include "gcdsum/special_values.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace gcdsum::special {

namespace mp = boost::multiprecision;

namespace {

// Guard digits carried inside every analytic routine.
constexpr int kGuardDigits = 10;

// Above this height the Euler-Maclaurin evaluation is not validated.
constexpr double kValidatedHeight = 5000.0;

std::mutex& bernoulli_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Rational>& bernoulli_cache() {
  static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
  return cache;
}

enum class ConstantKind { euler_gamma, zeta, zeta_prime, pi };

std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::tuple<ConstantKind, int, int>, Real>& memo() {
  static std::map<std::tuple<ConstantKind, int, int>, Real> table;
  return table;
}

template <class Compute>
Real memoized(ConstantKind kind, int arg, const PrecisionContext& ctx, Compute compute) {
  const auto key = std::make_tuple(kind, arg, ctx.digits);
  {
    std::lock_guard lock(memo_mutex());
    if (auto it = memo().find(key); it != memo().end()) return it->second;
  }
  Real value = compute();
  std::lock_guard lock(memo_mutex());
  return memo().emplace(key, value).first->second;
}

Real epsilon_for(int digits) { return mp::pow(Real(10), -(digits + 5)); }

}  // namespace

// ---------------------------------------------------------------------------

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  if (n > 1 && n % 2 == 1) return Rational(0);
  std::lock_guard lock(bernoulli_mutex());
  auto& cache = bernoulli_cache();
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    if (m % 2 == 1) {
      cache.emplace_back(0);
      continue;
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc = 0;
    Integer c = 1;  // C(m+1, 0)
    for (int j = 0; j < m; ++j) {
      if (j == 1 || j % 2 == 0) acc += Rational(c) * cache[static_cast<std::size_t>(j)];
      c = c * (m + 1 - j) / (j + 1);
    }
    Rational b = -acc / Rational(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[static_cast<std::size_t>(n)];
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Real pi(const PrecisionContext& ctx) {
  return memoized(ConstantKind::pi, 0, ctx, [&] {
    ScopedPrecision guard(ctx);
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
  });
}

Real euler_gamma(const PrecisionContext& ctx) {
  return memoized(ConstantKind::euler_gamma, 0, ctx, [&] {
    Real result;
    {
      ScopedPrecision guard(PrecisionContext(ctx.digits + kGuardDigits));
      const int n = ctx.digits + 10;
      Rational harmonic = 0;
      for (int k = 1; k <= n; ++k) harmonic += Rational(1, k);
      const Real big_n = to_real(std::int64_t{n});
      Real g = to_real(harmonic) - mp::log(big_n) - 1 / (2 * big_n);
      const Real eps = epsilon_for(ctx.digits);
      const Real inv_n2 = 1 / (big_n * big_n);
      Real power = inv_n2;
      // gamma = H_n - log n - 1/(2n) + sum_k B_2k / (2k n^2k); stop on the
      // first term below eps, which also bounds the remainder.
      for (int k = 1; k < 4 * n; ++k) {
        Real term = to_real(bernoulli(2 * k)) * power / (2 * k);
        g += term;
        if (mp::abs(term) < eps) break;
        power *= inv_n2;
      }
      result = g;
    }
    ScopedPrecision guard(ctx);
    return Real(result);
  });
}

// ---------------------------------------------------------------------------

ZetaWithDerivative zeta_and_derivative(const Complex& s, const PrecisionContext& ctx) {
  if (s.re == 1 && s.im == 0) throw std::domain_error("zeta has a pole at s = 1");
  const double height = std::fabs(static_cast<double>(s.im));
  ZetaWithDerivative out;
  out.low_confidence = height > kValidatedHeight;

  const int extra = static_cast<int>(std::ceil(std::log10(height + 10.0)));
  Complex zeta;
  Complex zeta_prime;
  {
    ScopedPrecision guard(PrecisionContext(ctx.digits + kGuardDigits + extra));
    const std::int64_t n_terms = static_cast<std::int64_t>(std::ceil(height / 3.0)) + ctx.digits + 10;

    const Real sigma = s.re;
    const Real t = s.im;
    Real sum_re = 0;
    Real sum_im = 0;
    Real dsum_re = 0;
    Real dsum_im = 0;
    Real sn;
    Real cs;
    for (std::int64_t n = 2; n < n_terms; ++n) {
      const Real ln = mp::log(to_real(n));
      const Real mag = mp::exp(-sigma * ln);
      const Real arg = t * ln;
      mpfr_sin_cos(sn.backend().data(), cs.backend().data(), arg.backend().data(), MPFR_RNDN);
      // n^{-s} = mag (cos(t ln) - i sin(t ln))
      const Real re = mag * cs;
      const Real im = -mag * sn;
      sum_re += re;
      sum_im += im;
      dsum_re -= ln * re;
      dsum_im -= ln * im;
    }
    Complex partial(Real(sum_re + 1), sum_im);
    Complex dpartial(dsum_re, dsum_im);

    const Real big_n = to_real(n_terms);
    const Real log_n = mp::log(big_n);
    const Complex n_pow = pow(big_n, -s);  // N^{-s}
    const Complex s_minus_1 = s - Complex(Real(1));

    // N^{1-s}/(s-1) and N^{-s}/2
    const Complex head = Complex(big_n) * n_pow / s_minus_1;
    const Complex dhead = -(Complex(log_n) * head) - head / s_minus_1;
    const Complex half = n_pow * Complex(Real(0.5));
    const Complex dhalf = -(Complex(log_n) * half);

    zeta = partial + head + half;
    zeta_prime = dpartial + dhead + dhalf;

    // Tail: T_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    const Real eps = epsilon_for(ctx.digits);
    const int max_k = 4 * (ctx.digits + 10);
    Integer factorial = 1;  // (2k)!
    Complex rising = s;                              // s(s+1)...(s+2k-2)
    Complex log_deriv = Complex(Real(1)) / s;        // sum 1/(s+j)
    Real n_power = 1 / big_n;                        // N^{1-2k}
    const Real inv_n2 = 1 / (big_n * big_n);
    Real previous = -1;
    bool converged = false;
    for (int k = 1; k <= max_k; ++k) {
      factorial *= (2 * k - 1) * (2 * k);
      const Real coeff = to_real(bernoulli(2 * k)) / to_real(factorial);
      const Complex term = Complex(Real(coeff * n_power)) * rising * n_pow;
      const Complex dterm = term * (log_deriv - Complex(log_n));
      zeta += term;
      zeta_prime += dterm;
      const Real size = abs(term) + abs(dterm);
      if (size < eps) {
        converged = true;
        break;
      }
      if (previous >= 0 && size > previous) break;  // asymptotic series turned around
      previous = size;

      const Complex a = s + Complex(to_real(std::int64_t{2 * k - 1}));
      const Complex b = s + Complex(to_real(std::int64_t{2 * k}));
      rising *= a;
      rising *= b;
      log_deriv += Complex(Real(1)) / a;
      log_deriv += Complex(Real(1)) / b;
      n_power *= inv_n2;
    }
    if (!converged) out.low_confidence = true;
  }
  ScopedPrecision guard(ctx);
  out.zeta = Complex(Real(zeta.re), Real(zeta.im));
  out.zeta_prime = Complex(Real(zeta_prime.re), Real(zeta_prime.im));
  return out;
}

FlaggedComplex zeta_complex(const Complex& s, const PrecisionContext& ctx) {
  auto both = zeta_and_derivative(s, ctx);
  return {both.zeta, both.low_confidence};
}

FlaggedComplex zeta_prime_complex(const Complex& s, const PrecisionContext& ctx) {
  auto both = zeta_and_derivative(s, ctx);
  return {both.zeta_prime, both.low_confidence};
}

Real zeta_real(const Real& s, const PrecisionContext& ctx) {
  if (s <= 1) throw std::domain_error("zeta_real requires s > 1");
  return zeta_and_derivative(Complex(s), ctx).zeta.re;
}

Real zeta_prime_real(const Real& s, const PrecisionContext& ctx) {
  if (s <= 1) throw std::domain_error("zeta_prime_real requires s > 1");
  return zeta_and_derivative(Complex(s), ctx).zeta_prime.re;
}

Real zeta_int(int k, const PrecisionContext& ctx) {
  if (k < 2) throw std::domain_error("zeta_int requires k >= 2");
  return memoized(ConstantKind::zeta, k, ctx, [&] {
    ScopedPrecision guard(ctx);
    return zeta_real(to_real(std::int64_t{k}), ctx);
  });
}

Real zeta_prime_int(int k, const PrecisionContext& ctx) {
  if (k < 2) throw std::domain_error("zeta_prime_int requires k >= 2");
  return memoized(ConstantKind::zeta_prime, k, ctx, [&] {
    ScopedPrecision guard(ctx);
    return zeta_prime_real(to_real(std::int64_t{k}), ctx);
  });
}

// ---------------------------------------------------------------------------

Real delta_envelope(const Real& x, const Real& c, const PrecisionContext& ctx) {
  if (x <= 5) throw std::domain_error("delta_envelope requires x > 5");
  ScopedPrecision guard(ctx);
  const Real lx = mp::log(x);
  const Real llx = mp::log(lx);
  return mp::exp(-c * mp::pow(lx, Real(3) / 5) / mp::pow(llx, Real(1) / 5));
}

Real log_eta_envelope(const Real& x, const PrecisionContext& ctx) {
  if (x <= 5) throw std::domain_error("log_eta_envelope requires x > 5");
  ScopedPrecision guard(ctx);
  const Real lx = mp::log(x);
  const Real llx = mp::log(lx);
  return mp::sqrt(lx) * mp::pow(llx, 14);
}

}  // namespace gcdsum::special
