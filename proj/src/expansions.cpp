#include "gcdsum/expansions.hpp"

#include "gcdsum/special_values.hpp"

#include "json.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace gcdsum::expansions {

namespace mp = boost::multiprecision;

namespace {

Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Real weighted_zeta_sum(int r, int shift, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  const auto w = exactsum::bernoulli_weights(r);
  Real s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int two_m = 2 * static_cast<int>(i + 1);
    s += to_real(w[i]) * special::zeta_int(two_m + shift, ctx);
  }
  return s;
}

}  // namespace

Real c_odd(int r, const PrecisionContext& ctx) { return weighted_zeta_sum(r, 1, ctx); }
Real c_even(int r, const PrecisionContext& ctx) { return weighted_zeta_sum(r, 0, ctx); }

Real main_term(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx) {
  if (x < 2) throw std::invalid_argument("main_term requires x >= 2, got " + to_string(x));
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  ScopedPrecision guard(ctx);
  const Real xr = to_real(x);
  const Real lx = mp::log(xr);
  const Real g = special::euler_gamma(ctx);
  const Real co = c_odd(r, ctx);
  const Real z2 = special::zeta_int(2, ctx);
  const int r1 = r + 1;
  switch (f) {
    case GcdFunction::id: {
      const Real k = r1 * z2;
      return xr * lx / k + xr / 2 + xr * (2 * g - 1 - special::zeta_prime_int(2, ctx) / z2 + co) / k;
    }
    case GcdFunction::phi: {
      const Real k = r1 * z2 * z2;
      return xr * lx / k + xr / (2 * z2) + xr * (2 * g - 1 - 2 * special::zeta_prime_int(2, ctx) / z2 + co) / k;
    }
    case GcdFunction::psi: {
      const Real z4 = special::zeta_int(4, ctx);
      const Real k = r1 * z4;
      return xr * lx / k + z2 * xr / (2 * z4) + xr * (2 * g - 1 - 2 * special::zeta_prime_int(4, ctx) / z4 + co) / k;
    }
  }
  throw std::invalid_argument("unknown function");
}

arith::ArithTable delta_weights(GcdFunction f, std::int64_t limit) {
  switch (f) {
    case GcdFunction::id:
      return arith::sieve_mobius(limit);
    case GcdFunction::phi:
      return error_terms::convolved_table(error_terms::Convolved::mu_mu, limit);
    case GcdFunction::psi:
      return error_terms::convolved_table(error_terms::Convolved::mu_absmu, limit);
  }
  throw std::invalid_argument("unknown function");
}

Rational m_r_id_regrouped(const Rational& x, int r) {
  exactsum::validate({x, r, GcdFunction::id});
  const std::int64_t n = floor_to_int64(x);
  const auto mu = arith::sieve_mobius(n);
  const Integer lcm = lcm_up_to(n);

  // sum_a mu(a)/a T(n/a) over lcm.
  Integer tau_part = 0;
  Integer scale;
  std::vector<Integer> mu_scaled(static_cast<std::size_t>(n) + 1);
  for (std::int64_t a = 1; a <= n; ++a) {
    const std::int64_t m = mu.integer(a);
    if (m == 0) continue;
    mpz_divexact_ui(scale.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(a));
    mu_scaled[static_cast<std::size_t>(a)] = m > 0 ? scale : Integer(-scale);
    tau_part += mu_scaled[static_cast<std::size_t>(a)] * error_terms::tau_summatory(n / a);
  }
  Rational total = Rational(static_cast<long>(n), 2) + fraction(tau_part, lcm * (r + 1));

  const auto w = exactsum::bernoulli_weights(r);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const error_terms::SigmaSummatory sigma(static_cast<int>(i + 1), n);
    Integer acc = 0;
    for (std::int64_t a = 1; a <= n; ++a) {
      if (mu.integer(a) == 0) continue;
      acc += mu_scaled[static_cast<std::size_t>(a)] * sigma.numerator(n / a);
    }
    total += w[i] * fraction(acc, lcm * sigma.denominator() * (r + 1));
  }
  return total;
}

// ---------------------------------------------------------------------------

Expander::Expander(GcdFunction f, std::int64_t limit, int max_r, ExpanderOptions options)
    : f_(f), limit_(limit), max_r_(max_r), options_(std::move(options)), tables_(f, limit) {
  if (max_r < 1) throw std::invalid_argument("max_r must be at least 1");
  const PrecisionContext& ctx = options_.ctx;
  const int max_m = max_r / 2;
  auto prefix = std::make_shared<const error_terms::SummatoryPrefix>(limit, max_m, ctx);
  engine_ = std::make_unique<error_terms::WeightedDeltaEngine>(delta_weights(f, limit), prefix, ctx);

  ScopedPrecision guard(ctx);
  const auto size = static_cast<std::size_t>(limit) + 1;
  f_over_n_.assign(size, Real(0));
  c_over_d_.assign(size, Real(0));
  for (std::int64_t n = 1; n <= limit; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const Real rn = to_real(n);
    f_over_n_[i] = f_over_n_[i - 1] + to_real(tables_.values.integer(n)) / rn;
    c_over_d_[i] = c_over_d_[i - 1] + to_real(tables_.mobius_values.integer(n)) / rn;
  }
  for (int m = 1; m <= max_m; ++m) {
    std::vector<Real> h(size, Real(0));
    for (std::int64_t n = 1; n <= limit; ++n) {
      h[static_cast<std::size_t>(n)] = h[static_cast<std::size_t>(n - 1)] + 1 / mp::pow(to_real(n), 2 * m);
    }
    harmonic_.push_back(std::move(h));
  }

  // Fill the shared constant caches before any concurrent use.
  (void)special::euler_gamma(ctx);
  (void)special::zeta_prime_int(2, ctx);
  (void)special::zeta_prime_int(4, ctx);
  for (int k = 2; k <= 2 * max_m + 1 || k <= 4; ++k) (void)special::zeta_int(k, ctx);
  (void)exactsum::bernoulli_weights(max_r);
}

void Expander::check(const Rational& x, int r) const {
  if (r < 1 || r > max_r_) {
    throw std::out_of_range("r = " + std::to_string(r) + " outside 1.." + std::to_string(max_r_));
  }
  if (x < 2) throw std::invalid_argument("x must be at least 2, got " + to_string(x));
  const std::int64_t n = floor_to_int64(x);
  if (n > limit_) {
    throw std::out_of_range("[x] = " + std::to_string(n) + " exceeds table limit " + std::to_string(limit_));
  }
}

Real Expander::exact_real(const Rational& x, int r) const {
  check(x, r);
  const std::int64_t n = floor_to_int64(x);
  ScopedPrecision guard(options_.ctx);
  const auto w = exactsum::bernoulli_weights(r);
  Real b = 0;
  std::vector<Real> c(w.size(), Real(0));
  for (std::int64_t lo = 1; lo <= n;) {
    const std::int64_t q = n / lo;
    const std::int64_t hi = n / q;
    const Real block = c_over_d_[static_cast<std::size_t>(hi)] - c_over_d_[static_cast<std::size_t>(lo - 1)];
    b += to_real(q) * block;
    for (std::size_t i = 0; i < w.size(); ++i) c[i] += harmonic_[i][static_cast<std::size_t>(q)] * block;
    lo = hi + 1;
  }
  Real total = f_over_n_[static_cast<std::size_t>(n)] / 2 + b / (r + 1);
  for (std::size_t i = 0; i < w.size(); ++i) total += to_real(w[i]) * c[i] / (r + 1);
  return total;
}

std::optional<Rational> Expander::exact_rational(const Rational& x, int r) const {
  check(x, r);
  if (floor_to_int64(x) > kExactCeiling) return std::nullopt;
  return exactsum::m_r_identity({x, r, f_}, tables_);
}

Real Expander::main(const Rational& x, int r) const {
  check(x, r);
  return main_term(f_, x, r, options_.ctx);
}

Real Expander::residual(const Rational& x, int r) const {
  const auto q = exact_rational(x, r);
  ScopedPrecision guard(options_.ctx);
  const Real exact = q ? to_real(*q) : exact_real(x, r);
  return exact - main(x, r);
}

Real Expander::weighted_delta(const Rational& x, int m) const { return engine_->sum(x, m); }

Real Expander::theorem_side(const Rational& x, int r, bool bernoulli_block) const {
  check(x, r);
  const PrecisionContext& ctx = options_.ctx;
  ScopedPrecision guard(ctx);
  Real total = engine_->sum(x, 0);
  if (bernoulli_block) {
    const auto w = exactsum::bernoulli_weights(r);
    for (std::size_t i = 0; i < w.size(); ++i) total += to_real(w[i]) * engine_->sum(x, static_cast<int>(i + 1));
  }
  total /= (r + 1);
  if (f_ == GcdFunction::psi) total -= mp::log(to_real(x)) / (4 * special::zeta_int(2, ctx));
  return total;
}

ExpansionReport Expander::report(const Rational& x, int r) const {
  check(x, r);
  const PrecisionContext& ctx = options_.ctx;
  ExpansionReport out;
  out.x = x;
  out.r = r;
  out.f = f_;
  out.precision = ctx.digits;
  out.exact_rational = exact_rational(x, r);
  ScopedPrecision guard(ctx);
  out.exact = out.exact_rational ? to_real(*out.exact_rational) : exact_real(x, r);
  out.main = main(x, r);
  out.residual = out.exact - out.main;
  out.theorem_side = theorem_side(x, r);
  out.gap = out.residual - out.theorem_side;
  const Real xr = to_real(x);
  out.envelopes.log_x = mp::log(xr);
  if (xr > 5) {
    const Real llx = mp::log(out.envelopes.log_x);
    out.envelopes.log_loglog = mp::pow(out.envelopes.log_x, Real(2) / 3) * mp::pow(llx, Real(1) / 3);
    out.envelopes.delta_log = special::delta_envelope(xr, options_.delta_c, ctx) * out.envelopes.log_x;
  } else {
    out.envelopes.log_loglog = 0;
    out.envelopes.delta_log = 0;
  }
  return out;
}

Real residual(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx) {
  if (x < 2) throw std::invalid_argument("x must be at least 2");
  return Expander(f, floor_to_int64(x), r, {ctx}).residual(x, r);
}

Real theorem_side(GcdFunction f, const Rational& x, int r, const PrecisionContext& ctx) {
  if (x < 2) throw std::invalid_argument("x must be at least 2");
  return Expander(f, floor_to_int64(x), r, {ctx}).theorem_side(x, r);
}

// ---------------------------------------------------------------------------

std::vector<Rational> log_grid(const Rational& xmin, const Rational& xmax, int points, bool half_integers) {
  if (points < 1) throw std::invalid_argument("points must be positive");
  if (xmin < 1 || xmax < xmin) throw std::invalid_argument("need 1 <= xmin <= xmax");
  const double a = std::log(xmin.get_d());
  const double b = std::log(xmax.get_d());
  std::vector<Rational> out;
  for (int k = 0; k < points; ++k) {
    Rational p;
    if (k == 0 && !half_integers) {
      p = xmin;
    } else if (k == points - 1 && points > 1 && !half_integers) {
      p = xmax;
    } else {
      const double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
      const double v = std::exp(a + t * (b - a));
      if (half_integers) {
        p = Rational(static_cast<long>(std::floor(v))) + Rational(1, 2);
        if (p < xmin) p += 1;
        if (p > xmax) p -= 1;
      } else {
        p = Rational(static_cast<long>(std::llround(v)));
        if (p < xmin) p = xmin;
        if (p > xmax) p = xmax;
      }
    }
    if (p < xmin || p > xmax) continue;
    if (!out.empty() && p <= out.back()) continue;
    out.push_back(p);
  }
  return out;
}

int points_for_density(const Rational& xmin, const Rational& xmax, int per_decade) {
  const double decades = std::log10(xmax.get_d() / xmin.get_d());
  return static_cast<int>(std::ceil(decades * per_decade)) + 1;
}

std::vector<ExpansionReport> scan(const Expander& expander, int r, const std::vector<Rational>& grid, unsigned threads) {
  std::vector<ExpansionReport> out(grid.size());
  if (grid.empty()) return out;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  ScopedPrecision guard(expander.context());
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = expander.report(grid[i], r);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    ScopedPrecision inner(expander.context());
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        out[i] = expander.report(grid[i], r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

std::string exact_text(const ExpansionReport& row, int digits) {
  return row.exact_rational ? to_string(*row.exact_rational) : to_string(row.exact, digits);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExpansionReport>& rows, int digits) {
  out << "x,r,f,exact,main,residual,theorem_side,gap,log_x,env_loglog,env_delta,precision\n";
  for (const auto& row : rows) {
    out << to_string(row.x) << ',' << row.r << ',' << exactsum::name_of(row.f) << ',' << exact_text(row, digits)
        << ',' << to_string(row.main, digits) << ',' << to_string(row.residual, digits) << ','
        << to_string(row.theorem_side, digits) << ',' << to_string(row.gap, digits) << ','
        << to_string(row.envelopes.log_x, digits) << ',' << to_string(row.envelopes.log_loglog, digits) << ','
        << to_string(row.envelopes.delta_log, digits) << ',' << row.precision << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ExpansionReport>& rows, int digits) {
  auto array = nlohmann::json::array();
  for (const auto& row : rows) {
    array.push_back({{"x", to_string(row.x)},
                     {"r", row.r},
                     {"f", std::string(exactsum::name_of(row.f))},
                     {"exact", exact_text(row, digits)},
                     {"main", to_string(row.main, digits)},
                     {"residual", to_string(row.residual, digits)},
                     {"theorem_side", to_string(row.theorem_side, digits)},
                     {"gap", to_string(row.gap, digits)},
                     {"log_x", to_string(row.envelopes.log_x, digits)},
                     {"env_loglog", to_string(row.envelopes.log_loglog, digits)},
                     {"env_delta", to_string(row.envelopes.delta_log, digits)},
                     {"precision", row.precision}});
  }
  out << array.dump(2) << '\n';
}

}  // namespace gcdsum::expansions
