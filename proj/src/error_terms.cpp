#include "gcdsum/error_terms.hpp"

#include "gcdsum/special_values.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcdsum::error_terms {

namespace mp = boost::multiprecision;

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

std::int64_t floor_at_least_one(const Rational& x) {
  if (x < 1) throw std::invalid_argument("x must be at least 1, got " + to_string(x));
  return floor_to_int64(x);
}

void require_m(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
}

Integer as_integer(std::int64_t v) {
  Integer out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

Integer pow_ui(std::int64_t base, int e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

void require_limit(const arith::ArithTable& t, std::int64_t n) {
  if (n > t.limit()) {
    throw std::out_of_range("[x] = " + std::to_string(n) + " exceeds table limit " + std::to_string(t.limit()));
  }
}

Real coefficient_real(const arith::ArithTable& c, std::int64_t d) {
  return c.is_integral() ? to_real(c.integer(d)) : to_real(c.value(d));
}

// sum_{k<=y} sigma_{-2m}(k) = sum_{d<=y} [y/d] d^{-2m}, directly in working precision.
Real sigma_summatory_direct(int m, std::int64_t y) {
  Real s = 0;
  for (std::int64_t d = 1; d <= y; ++d) s += to_real(y / d) / mp::pow(to_real(d), 2 * m);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

std::int64_t tau_summatory(std::int64_t x) {
  if (x < 1) throw std::invalid_argument("tau_summatory requires x >= 1");
  const std::int64_t s = isqrt(x);
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= s; ++d) total += x / d;
  return 2 * total - s * s;
}

std::int64_t tau_summatory(const Rational& x) { return tau_summatory(floor_at_least_one(x)); }

Real delta(const Rational& x, const PrecisionContext& ctx) {
  const std::int64_t t = tau_summatory(x);
  ScopedPrecision guard(ctx);
  const Real xr = to_real(x);
  return to_real(t) - xr * mp::log(xr) - (2 * special::euler_gamma(ctx) - 1) * xr;
}

Rational sigma_summatory(int m, const Rational& x) {
  require_m(m);
  const std::int64_t n = floor_at_least_one(x);
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), lcm_up_to(n).get_mpz_t(), static_cast<unsigned long>(2 * m));
  Integer num = 0;
  Integer scratch;
  for (std::int64_t d = 1; d <= n; ++d) {
    mpz_divexact(scratch.get_mpz_t(), den.get_mpz_t(), pow_ui(d, 2 * m).get_mpz_t());
    mpz_addmul_ui(num.get_mpz_t(), scratch.get_mpz_t(), static_cast<unsigned long>(n / d));
  }
  return fraction(num, den);
}

Real delta_minus(int m, const Rational& x, const PrecisionContext& ctx) {
  const Rational s = sigma_summatory(m, x);
  ScopedPrecision guard(ctx);
  return to_real(s) - special::zeta_int(1 + 2 * m, ctx) * to_real(x) + special::zeta_int(2 * m, ctx) / 2;
}

SigmaSummatory::SigmaSummatory(int m, std::int64_t limit) : m_(m), limit_(limit) {
  require_m(m);
  if (limit < 1) throw std::invalid_argument("limit must be at least 1");
  mpz_pow_ui(denominator_.get_mpz_t(), lcm_up_to(limit).get_mpz_t(), static_cast<unsigned long>(2 * m));
  harmonic_.resize(static_cast<std::size_t>(limit) + 1);
  harmonic_[0] = 0;
  Integer term;
  for (std::int64_t n = 1; n <= limit; ++n) {
    mpz_divexact(term.get_mpz_t(), denominator_.get_mpz_t(), pow_ui(n, 2 * m).get_mpz_t());
    harmonic_[static_cast<std::size_t>(n)] = harmonic_[static_cast<std::size_t>(n - 1)] + term;
  }
}

const Integer& SigmaSummatory::harmonic_numerator(std::int64_t n) const {
  if (n < 0 || n > limit_) throw std::out_of_range("SigmaSummatory index out of range");
  return harmonic_[static_cast<std::size_t>(n)];
}

Integer SigmaSummatory::numerator(std::int64_t n) const {
  if (n < 1 || n > limit_) throw std::out_of_range("SigmaSummatory index out of range");
  // sum_{dl<=n} d^{-2m} = sum_{d<=s} d^{-2m} [n/d] + sum_{l<=s} H([n/l]) - s H(s)
  const std::int64_t s = isqrt(n);
  Integer acc = 0;
  Integer term;
  for (std::int64_t d = 1; d <= s; ++d) {
    const auto i = static_cast<std::size_t>(d);
    term = harmonic_[i] - harmonic_[i - 1];
    mpz_addmul_ui(acc.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n / d));
    acc += harmonic_[static_cast<std::size_t>(n / d)];
  }
  mpz_submul_ui(acc.get_mpz_t(), harmonic_[static_cast<std::size_t>(s)].get_mpz_t(), static_cast<unsigned long>(s));
  return acc;
}

Rational SigmaSummatory::value(std::int64_t n) const { return fraction(numerator(n), denominator_); }

// ---------------------------------------------------------------------------

Weight parse_weight(std::string_view name) {
  if (name == "inv" || name == "1/n") return Weight::inv;
  if (name == "inv_square" || name == "1/n^2") return Weight::inv_square;
  if (name == "inv_square_log" || name == "log/n^2") return Weight::inv_square_log;
  if (name == "unit" || name == "mertens") return Weight::unit;
  throw std::invalid_argument("unknown weight '" + std::string(name) + "'");
}

Rational partial_sum_exact(const arith::ArithTable& c, Weight w, const Rational& x) {
  if (w == Weight::inv_square_log) throw std::invalid_argument("the log weight has no exact value");
  const std::int64_t n = floor_at_least_one(x);
  require_limit(c, n);
  Integer den = 1;
  if (w == Weight::inv) den = lcm_up_to(n);
  if (w == Weight::inv_square) den = lcm_up_to(n) * lcm_up_to(n);
  FixedDenominatorSum sum(den);
  for (std::int64_t k = 1; k <= n; ++k) {
    const std::int64_t v = c.integer(k);
    if (v == 0) continue;
    const auto uk = static_cast<std::uint64_t>(k);
    switch (w) {
      case Weight::inv:
        sum.add_integer_over(v, uk);
        break;
      case Weight::inv_square:
        sum.add_integer_over(v, uk * uk);
        break;
      default:
        sum.add_integer_over(v, 1);
        break;
    }
  }
  return sum.value();
}

namespace {

// Calls visit(n, running sum) for n = 1..n_max.
template <class Visit>
void accumulate_weighted(const arith::ArithTable& c, Weight w, std::int64_t n_max, const PrecisionContext& ctx,
                         Visit visit) {
  require_limit(c, n_max);
  ScopedPrecision guard(ctx);
  Real s = 0;
  for (std::int64_t k = 1; k <= n_max; ++k) {
    const Real v = coefficient_real(c, k);
    if (v != 0) {
      const Real rk = to_real(k);
      switch (w) {
        case Weight::inv:
          s += v / rk;
          break;
        case Weight::inv_square:
          s += v / (rk * rk);
          break;
        case Weight::inv_square_log:
          s += v * mp::log(rk) / (rk * rk);
          break;
        case Weight::unit:
          s += v;
          break;
      }
    }
    visit(k, s);
  }
}

}  // namespace

std::vector<Real> partial_sum_series(const arith::ArithTable& c, Weight w, std::int64_t n_max,
                                     const PrecisionContext& ctx) {
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
  accumulate_weighted(c, w, n_max, ctx, [&](std::int64_t, const Real& s) { out.push_back(s); });
  return out;
}

Real partial_sum(const arith::ArithTable& c, Weight w, const Rational& x, const PrecisionContext& ctx) {
  const std::int64_t n = floor_at_least_one(x);
  Real out;
  accumulate_weighted(c, w, n, ctx, [&](std::int64_t k, const Real& s) {
    if (k == n) out = s;
  });
  return out;
}

std::int64_t mertens(const arith::ArithTable& mu, const Rational& x) {
  const std::int64_t n = floor_at_least_one(x);
  require_limit(mu, n);
  std::int64_t s = 0;
  for (std::int64_t k = 1; k <= n; ++k) s += mu.integer(k);
  return s;
}

Convolved parse_convolved(std::string_view name) {
  if (name == "mu_mu") return Convolved::mu_mu;
  if (name == "mu_absmu") return Convolved::mu_absmu;
  throw std::invalid_argument("unknown convolution '" + std::string(name) + "' (expected mu_mu or mu_absmu)");
}

arith::ArithTable convolved_table(Convolved kind, std::int64_t limit) {
  const auto mu = arith::sieve_mobius(limit);
  if (kind == Convolved::mu_mu) return arith::dirichlet_convolve(mu, mu);
  return arith::dirichlet_convolve(mu, arith::sieve_named(arith::NamedFunction::abs_mobius, limit));
}

Real convolved_limit(Convolved kind, Weight w, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  const Real z2 = special::zeta_int(2, ctx);
  const Real z4 = special::zeta_int(4, ctx);
  if (kind == Convolved::mu_mu) {
    if (w == Weight::inv_square) return 1 / (z2 * z2);
    if (w == Weight::inv_square_log) return 2 * special::zeta_prime_int(2, ctx) / (z2 * z2 * z2);
  } else {
    if (w == Weight::inv_square) return 1 / z4;
    if (w == Weight::inv_square_log) return 2 * special::zeta_prime_int(4, ctx) / (z4 * z4);
    if (w == Weight::inv) return 1 / z2;
  }
  throw std::invalid_argument("no known limit for this convolution and weight");
}

// ---------------------------------------------------------------------------

RatioFunction parse_ratio_function(std::string_view name) {
  if (name == "totient" || name == "phi") return RatioFunction::totient;
  if (name == "dedekind" || name == "psi") return RatioFunction::dedekind;
  throw std::invalid_argument("unknown function '" + std::string(name) + "' (expected totient or dedekind)");
}

RatioReport ratio_summatory(RatioFunction which, const arith::ArithTable& f, const Rational& x,
                            const PrecisionContext& ctx) {
  if (x < 10) throw std::invalid_argument("ratio_summatory requires x >= 10");
  const std::int64_t n = floor_to_int64(x);
  require_limit(f, n);
  ScopedPrecision guard(ctx);
  RatioReport out;
  out.sum = 0;
  for (std::int64_t k = 1; k <= n; ++k) out.sum += coefficient_real(f, k) / to_real(k);
  const Real xr = to_real(x);
  const Real lx = mp::log(xr);
  const Real z2 = special::zeta_int(2, ctx);
  if (which == RatioFunction::totient) {
    out.main = xr / z2;
    out.envelope = mp::pow(lx, Real(2) / 3) * mp::pow(mp::log(lx), Real(1) / 3);
  } else {
    out.main = z2 * xr / special::zeta_int(4, ctx) - lx / (2 * z2);
    out.envelope = mp::pow(lx, Real(2) / 3);
  }
  out.residual = out.sum - out.main;
  out.ratio = mp::abs(out.residual) / out.envelope;
  return out;
}

Real theta_sum(const arith::ArithTable& mu, const Rational& x, const PrecisionContext& ctx) {
  const std::int64_t n = floor_at_least_one(x);
  require_limit(mu, n);
  ScopedPrecision guard(ctx);
  Real s = 0;
  for (std::int64_t l = 1; l <= n; ++l) {
    const std::int64_t v = mu.integer(l);
    if (v == 0) continue;
    Rational t = x / Rational(static_cast<long>(l));
    Rational theta = t - Rational(floor_to_int64(t)) - Rational(1, 2);
    s += to_real(v) / to_real(l) * to_real(theta);
  }
  return s;
}

// ---------------------------------------------------------------------------

Real weighted_delta_sum(const arith::ArithTable& coeffs, const Rational& x, int m, const PrecisionContext& ctx) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  const std::int64_t n = floor_at_least_one(x);
  require_limit(coeffs, n);
  ScopedPrecision guard(ctx);
  const Real g = special::euler_gamma(ctx);
  Real zeta_odd = 0;
  Real zeta_even = 0;
  if (m > 0) {
    zeta_odd = special::zeta_int(1 + 2 * m, ctx);
    zeta_even = special::zeta_int(2 * m, ctx);
  }
  Real total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    const Real c = coefficient_real(coeffs, d);
    if (c == 0) continue;
    Rational y = x / Rational(static_cast<long>(d));
    y.canonicalize();
    const std::int64_t fy = floor_to_int64(y);
    const Real yr = to_real(y);
    Real err;
    if (m == 0) {
      err = to_real(tau_summatory(fy)) - yr * mp::log(yr) - (2 * g - 1) * yr;
    } else {
      err = sigma_summatory_direct(m, fy) - zeta_odd * yr + zeta_even / 2;
    }
    total += c / to_real(d) * err;
  }
  return total;
}

SummatoryPrefix::SummatoryPrefix(std::int64_t limit, int max_m, const PrecisionContext& ctx) {
  if (limit < 1) throw std::invalid_argument("limit must be at least 1");
  if (max_m < 0) throw std::invalid_argument("max_m must be nonnegative");
  const auto size = static_cast<std::size_t>(limit) + 1;
  std::vector<std::int64_t> tau(size, 0);
  for (std::int64_t d = 1; d <= limit; ++d) {
    for (std::int64_t k = d; k <= limit; k += d) ++tau[static_cast<std::size_t>(k)];
  }
  tau_.assign(size, 0);
  for (std::size_t n = 1; n < size; ++n) tau_[n] = tau_[n - 1] + tau[n];

  ScopedPrecision guard(ctx);
  for (int m = 1; m <= max_m; ++m) {
    std::vector<Real> sigma(size, Real(0));
    for (std::int64_t d = 1; d <= limit; ++d) {
      const Real w = 1 / mp::pow(to_real(d), 2 * m);
      for (std::int64_t k = d; k <= limit; k += d) sigma[static_cast<std::size_t>(k)] += w;
    }
    for (std::size_t n = 1; n < size; ++n) sigma[n] += sigma[n - 1];
    sigma_.push_back(std::move(sigma));
  }
}

const Real& SummatoryPrefix::sigma(int m, std::int64_t n) const {
  if (m < 1 || m > max_m()) throw std::out_of_range("sigma prefix for m = " + std::to_string(m) + " not built");
  return sigma_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n)];
}

WeightedDeltaEngine::WeightedDeltaEngine(const arith::ArithTable& coeffs, std::shared_ptr<const SummatoryPrefix> prefix,
                                         const PrecisionContext& ctx)
    : ctx_(ctx), prefix_(std::move(prefix)) {
  const std::int64_t limit = prefix_->limit();
  require_limit(coeffs, limit);
  ScopedPrecision guard(ctx_);
  const auto size = static_cast<std::size_t>(limit) + 1;
  w1_.assign(size, Real(0));
  w2_.assign(size, Real(0));
  wl_.assign(size, Real(0));
  for (std::int64_t d = 1; d <= limit; ++d) {
    const auto i = static_cast<std::size_t>(d);
    const Real c = coefficient_real(coeffs, d);
    w1_[i] = w1_[i - 1];
    w2_[i] = w2_[i - 1];
    wl_[i] = wl_[i - 1];
    if (c == 0) continue;
    const Real rd = to_real(d);
    const Real c1 = c / rd;
    const Real c2 = c1 / rd;
    w1_[i] += c1;
    w2_[i] += c2;
    wl_[i] += c2 * mp::log(rd);
  }
}

Real WeightedDeltaEngine::sum(const Rational& x, int m) const {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  const std::int64_t n = floor_at_least_one(x);
  if (n > limit()) {
    throw std::out_of_range("[x] = " + std::to_string(n) + " exceeds engine limit " + std::to_string(limit()));
  }
  ScopedPrecision guard(ctx_);
  Real acc = 0;
  for (std::int64_t lo = 1; lo <= n;) {
    const std::int64_t q = n / lo;
    const std::int64_t hi = n / q;
    const Real block = w1_[static_cast<std::size_t>(hi)] - w1_[static_cast<std::size_t>(lo - 1)];
    if (m == 0) {
      acc += to_real(prefix_->tau(q)) * block;
    } else {
      acc += prefix_->sigma(m, q) * block;
    }
    lo = hi + 1;
  }
  const Real xr = to_real(x);
  const auto top = static_cast<std::size_t>(n);
  if (m == 0) {
    const Real g = special::euler_gamma(ctx_);
    return acc - xr * mp::log(xr) * w2_[top] + xr * wl_[top] - (2 * g - 1) * xr * w2_[top];
  }
  return acc - special::zeta_int(1 + 2 * m, ctx_) * xr * w2_[top] + special::zeta_int(2 * m, ctx_) / 2 * w1_[top];
}

// ---------------------------------------------------------------------------

namespace {

struct FamilyTables {
  arith::ArithTable coeffs;  // c
  arith::ArithTable lhs;     // (g/id) * K
};

FamilyTables family_tables(IdentityFamily family, int m, std::int64_t limit) {
  const auto mu = arith::sieve_mobius(limit);
  arith::ArithTable c = mu;
  arith::ArithTable g = arith::sieve_named(arith::NamedFunction::totient, limit);
  if (family == IdentityFamily::mobius_mobius) {
    c = arith::dirichlet_convolve(mu, mu);
    g = arith::dirichlet_convolve(mu, g);
  } else if (family == IdentityFamily::mobius_abs) {
    c = arith::dirichlet_convolve(mu, arith::sieve_named(arith::NamedFunction::abs_mobius, limit));
    g = arith::dirichlet_convolve(mu, arith::sieve_named(arith::NamedFunction::dedekind, limit));
  }
  const auto kernel = m == 0 ? arith::ones_table(limit) : arith::power_table(-2 * m, limit);
  return {std::move(c), arith::dirichlet_convolve(arith::divide_by_identity(g), kernel)};
}

Integer common_denominator(int m, std::int64_t limit) {
  Integer d;
  mpz_pow_ui(d.get_mpz_t(), lcm_up_to(limit).get_mpz_t(), static_cast<unsigned long>(2 * m + 1));
  return d;
}

}  // namespace

IdentityFamily parse_identity_family(std::string_view name) {
  if (name == "totient") return IdentityFamily::totient;
  if (name == "mobius_mobius") return IdentityFamily::mobius_mobius;
  if (name == "mobius_abs") return IdentityFamily::mobius_abs;
  throw std::invalid_argument("unknown identity family '" + std::string(name) + "'");
}

std::string_view name_of(IdentityFamily family) {
  switch (family) {
    case IdentityFamily::totient:
      return "totient";
    case IdentityFamily::mobius_mobius:
      return "mobius_mobius";
    case IdentityFamily::mobius_abs:
      return "mobius_abs";
  }
  return "?";
}

IdentityCheck check_identity(IdentityFamily family, int m, const Rational& x) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  const std::int64_t n = floor_at_least_one(x);
  const auto tables = family_tables(family, m, n);

  FixedDenominatorSum lhs(common_denominator(m, n));
  for (std::int64_t k = 1; k <= n; ++k) lhs.add(tables.lhs.value(k));

  Rational rhs = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    const std::int64_t c = tables.coeffs.integer(d);
    if (c == 0) continue;
    Rational y = x / Rational(static_cast<long>(d));
    y.canonicalize();
    const Rational inner = m == 0 ? Rational(static_cast<long>(tau_summatory(y))) : sigma_summatory(m, y);
    rhs += fraction(as_integer(c), as_integer(d)) * inner;
  }
  return {lhs.value(), rhs};
}

std::optional<std::int64_t> verify_identity_range(IdentityFamily family, int m, std::int64_t x_max) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  if (x_max < 1) throw std::invalid_argument("x_max must be at least 1");
  const auto tables = family_tables(family, m, x_max);
  const Integer lcm = lcm_up_to(x_max);
  const Integer big_d = common_denominator(m, x_max);
  const auto size = static_cast<std::size_t>(x_max) + 1;

  // Prefix numerators of c(d)/d over lcm.
  std::vector<Integer> c_prefix(size);
  c_prefix[0] = 0;
  Integer scratch;
  for (std::int64_t d = 1; d <= x_max; ++d) {
    const auto i = static_cast<std::size_t>(d);
    c_prefix[i] = c_prefix[i - 1];
    const std::int64_t c = tables.coeffs.integer(d);
    if (c == 0) continue;
    mpz_divexact_ui(scratch.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(d));
    c_prefix[i] += scratch * as_integer(c);
  }

  // Summatory values of the inner function over lcm^{2m}.
  std::vector<Integer> inner(size);
  if (m == 0) {
    for (std::int64_t q = 1; q <= x_max; ++q) inner[static_cast<std::size_t>(q)] = as_integer(tau_summatory(q));
  } else {
    const SigmaSummatory sigma(m, x_max);
    for (std::int64_t q = 1; q <= x_max; ++q) inner[static_cast<std::size_t>(q)] = sigma.numerator(q);
  }

  Integer lhs = 0;
  Integer rhs;
  for (std::int64_t n = 1; n <= x_max; ++n) {
    const Rational v = tables.lhs.value(n);
    mpz_divexact(scratch.get_mpz_t(), big_d.get_mpz_t(), v.get_den_mpz_t());
    lhs += scratch * v.get_num();

    rhs = 0;
    for (std::int64_t lo = 1; lo <= n;) {
      const std::int64_t q = n / lo;
      const std::int64_t hi = n / q;
      scratch = c_prefix[static_cast<std::size_t>(hi)] - c_prefix[static_cast<std::size_t>(lo - 1)];
      if (scratch != 0) rhs += scratch * inner[static_cast<std::size_t>(q)];
      lo = hi + 1;
    }
    if (lhs != rhs) return n;
  }
  return std::nullopt;
}

}  // namespace gcdsum::error_terms
