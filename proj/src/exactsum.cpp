#include "gcdsum/exactsum.hpp"

#include "gcdsum/special_values.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gcdsum::exactsum {

namespace {

std::int64_t checked_floor(const EvalPoint& p, const arith::ArithTable& table) {
  validate(p);
  const std::int64_t n = floor_to_int64(p.x);
  if (n > table.limit()) {
    throw std::out_of_range("floor(x) = " + std::to_string(n) + " exceeds table limit " +
                            std::to_string(table.limit()));
  }
  return n;
}

Integer power(std::int64_t base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer as_integer(std::int64_t v) {
  Integer out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

// inner(k) = sum_{j<=k} j^r f(gcd(j,k)), with j^r taken from `powers`.
Integer inner_gcd_sum(std::int64_t k, const std::vector<Integer>& powers, std::span<const std::int64_t> f) {
  Integer inner = 0;
  for (std::int64_t j = 1; j <= k; ++j) {
    const std::int64_t g = std::gcd(j, k);
    mpz_addmul_ui(inner.get_mpz_t(), powers[static_cast<std::size_t>(j)].get_mpz_t(),
                  static_cast<unsigned long>(f[static_cast<std::size_t>(g - 1)]));
  }
  return inner;
}

std::vector<Integer> powers_up_to(std::int64_t n, int r) {
  std::vector<Integer> powers(static_cast<std::size_t>(n) + 1);
  for (std::int64_t j = 1; j <= n; ++j) powers[static_cast<std::size_t>(j)] = power(j, static_cast<unsigned long>(r));
  return powers;
}

void require_integral_nonnegative(const arith::ArithTable& f) {
  if (!f.is_integral()) throw std::invalid_argument("naive evaluation needs an integer-valued f");
  for (std::int64_t v : f.integers()) {
    if (v < 0) throw std::invalid_argument("naive evaluation needs a nonnegative f");
  }
}

}  // namespace

GcdFunction parse_gcd_function(std::string_view name) {
  if (name == "id") return GcdFunction::id;
  if (name == "phi" || name == "totient") return GcdFunction::phi;
  if (name == "psi" || name == "dedekind") return GcdFunction::psi;
  throw std::invalid_argument("unknown function '" + std::string(name) + "' (expected id, phi or psi)");
}

std::string_view name_of(GcdFunction f) {
  switch (f) {
    case GcdFunction::id:
      return "id";
    case GcdFunction::phi:
      return "phi";
    case GcdFunction::psi:
      return "psi";
  }
  return "?";
}

void validate(const EvalPoint& p) {
  if (p.x < 1) throw std::invalid_argument("x must be at least 1, got " + to_string(p.x));
  if (p.r < 1) throw std::invalid_argument("r must be at least 1, got " + std::to_string(p.r));
}

arith::ArithTable function_table(GcdFunction f, std::int64_t limit) {
  switch (f) {
    case GcdFunction::id:
      return arith::identity_table(limit);
    case GcdFunction::phi:
      return arith::sieve_named(arith::NamedFunction::totient, limit);
    case GcdFunction::psi:
      return arith::sieve_named(arith::NamedFunction::dedekind, limit);
  }
  throw std::invalid_argument("unknown function");
}

arith::ArithTable mobius_convolution_table(GcdFunction f, std::int64_t limit) {
  return arith::dirichlet_convolve(arith::sieve_mobius(limit), function_table(f, limit));
}

GcdSumTables::GcdSumTables(GcdFunction f, std::int64_t limit)
    : function(f), values(function_table(f, limit)), mobius_values(mobius_convolution_table(f, limit)) {}

std::int64_t pillai(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("pillai requires n >= 1");
  // P is multiplicative with P(p^a) = (a+1) p^a - a p^(a-1).
  std::int64_t out = 1;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    std::int64_t a = 0;
    std::int64_t pa = 1;
    while (m % p == 0) {
      m /= p;
      pa *= p;
      ++a;
    }
    out *= (a + 1) * pa - a * (pa / p);
  }
  if (m > 1) out *= 2 * m - 1;
  return out;
}

std::vector<Rational> bernoulli_weights(int r) {
  std::vector<Rational> w;
  for (int m = 1; m <= r / 2; ++m) {
    Rational v = Rational(special::binomial(r + 1, 2 * m)) * special::bernoulli(2 * m);
    v.canonicalize();
    w.push_back(v);
  }
  return w;
}

// ---------------------------------------------------------------------------

Rational m_r_naive(const EvalPoint& p, const arith::ArithTable& f) {
  const std::int64_t n = checked_floor(p, f);
  require_integral_nonnegative(f);
  const auto powers = powers_up_to(n, p.r);
  const auto e = static_cast<unsigned long>(p.r + 1);
  Integer lcm = lcm_up_to(n);
  Integer big_d;
  mpz_pow_ui(big_d.get_mpz_t(), lcm.get_mpz_t(), e);
  FixedDenominatorSum sum(big_d);
  for (std::int64_t k = 1; k <= n; ++k) sum.add(inner_gcd_sum(k, powers, f.integers()), power(k, e));
  return sum.value();
}

Rational m_r_identity(const EvalPoint& p, const arith::ArithTable& f, const arith::ArithTable& mobius_f) {
  const std::int64_t x = checked_floor(p, f);
  if (mobius_f.limit() < x) throw std::out_of_range("mu*f table is shorter than floor(x)");

  const Integer d_lcm = lcm_up_to(x);
  std::vector<Integer> d_over(static_cast<std::size_t>(x) + 1);  // lcm / n
  for (std::int64_t n = 1; n <= x; ++n) {
    mpz_divexact_ui(d_over[static_cast<std::size_t>(n)].get_mpz_t(), d_lcm.get_mpz_t(), static_cast<unsigned long>(n));
  }

  // sum_{n<=x} f(n)/n and sum_{d<=x} c(d)/d [x/d], both over lcm.
  Integer a_num = 0;
  Integer b_num = 0;
  for (std::int64_t n = 1; n <= x; ++n) {
    const auto& scale = d_over[static_cast<std::size_t>(n)];
    a_num += scale * as_integer(f.integer(n));
    b_num += scale * as_integer(mobius_f.integer(n)) * as_integer(x / n);
  }
  Rational total = fraction(a_num, d_lcm * 2) + fraction(b_num, d_lcm * (p.r + 1));

  const auto weights = bernoulli_weights(p.r);
  if (!weights.empty()) {
    // Blocks [lo, hi] of d sharing q = [x/d], with sum c(d) lcm/d per block.
    struct Block {
      std::int64_t q;
      Integer c_sum;
    };
    std::vector<Block> blocks;
    for (std::int64_t lo = 1; lo <= x;) {
      const std::int64_t q = x / lo;
      const std::int64_t hi = x / q;
      Integer s = 0;
      for (std::int64_t d = lo; d <= hi; ++d) {
        const std::int64_t c = mobius_f.integer(d);
        if (c != 0) s += d_over[static_cast<std::size_t>(d)] * as_integer(c);
      }
      blocks.push_back({q, std::move(s)});
      lo = hi + 1;
    }
    // blocks[i].q decreases with i; walk them backwards to stream H(q).
    for (std::size_t mi = 0; mi < weights.size(); ++mi) {
      const auto two_m = static_cast<unsigned long>(2 * (mi + 1));
      Integer big_l;  // lcm^{2m}; H_{2m}(q) * big_l is an integer for q <= x
      mpz_pow_ui(big_l.get_mpz_t(), d_lcm.get_mpz_t(), two_m);
      Integer h = 0;
      std::int64_t ell = 0;
      Integer acc = 0;
      Integer term;
      for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        while (ell < it->q) {
          ++ell;
          mpz_pow_ui(term.get_mpz_t(), d_over[static_cast<std::size_t>(ell)].get_mpz_t(), two_m);
          h += term;
        }
        acc += it->c_sum * h;
      }
      total += weights[mi] * fraction(acc, d_lcm * big_l * (p.r + 1));
    }
  }
  return total;
}

Rational m_r_naive(const EvalPoint& p, const GcdSumTables& tables) { return m_r_naive(p, tables.values); }

Rational m_r_identity(const EvalPoint& p, const GcdSumTables& tables) {
  return m_r_identity(p, tables.values, tables.mobius_values);
}

// ---------------------------------------------------------------------------

std::vector<Rational> m_r_naive_series(int r, const arith::ArithTable& f, std::int64_t n_max) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (n_max < 1) return {};
  if (n_max > f.limit()) throw std::out_of_range("n_max exceeds table limit");
  require_integral_nonnegative(f);
  const auto powers = powers_up_to(n_max, r);
  const auto e = static_cast<unsigned long>(r + 1);
  Integer big_d;
  mpz_pow_ui(big_d.get_mpz_t(), lcm_up_to(n_max).get_mpz_t(), e);
  FixedDenominatorSum sum(big_d);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t k = 1; k <= n_max; ++k) {
    sum.add(inner_gcd_sum(k, powers, f.integers()), power(k, e));
    out.push_back(sum.value());
  }
  return out;
}

std::vector<Rational> m_r_identity_series(int r, const arith::ArithTable& f, const arith::ArithTable& mobius_f,
                                          std::int64_t n_max) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (n_max < 1) return {};
  if (n_max > f.limit() || n_max > mobius_f.limit()) throw std::out_of_range("n_max exceeds table limit");

  const auto weights = bernoulli_weights(r);
  Rational a = 0;  // sum f(n)/n
  Rational b = 0;  // sum_{dl<=n} c(d)/d
  std::vector<Rational> c(weights.size(), Rational(0));
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    a += f.value(n) / Rational(static_cast<long>(n));
    // Points (d, l) with d l = n.
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      for (std::int64_t dd : {d, n / d}) {
        const std::int64_t ell = n / dd;
        const std::int64_t cv = mobius_f.integer(dd);
        if (cv != 0) {
          Rational base(static_cast<long>(cv), static_cast<unsigned long>(dd));
          base.canonicalize();
          b += base;
          for (std::size_t mi = 0; mi < weights.size(); ++mi) {
            c[mi] += base / Rational(power(ell, static_cast<unsigned long>(2 * (mi + 1))));
          }
        }
        if (d * d == n) break;
      }
    }
    Rational v = a / 2 + b / (r + 1);
    for (std::size_t mi = 0; mi < weights.size(); ++mi) v += weights[mi] * c[mi] / (r + 1);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

}  // namespace gcdsum::exactsum
