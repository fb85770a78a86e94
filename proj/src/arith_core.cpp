#include "gcdsum/arith_core.hpp"

#include <ostream>
#include <stdexcept>

namespace gcdsum::arith {

namespace {

void check_limit(std::int64_t limit) {
  if (limit < 1) throw std::invalid_argument("table limit must be >= 1, got " + std::to_string(limit));
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow in table arithmetic");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow in table arithmetic");
  return out;
}

std::size_t idx(std::int64_t n) { return static_cast<std::size_t>(n - 1); }

}  // namespace

// ---------------------------------------------------------------------------
// ArithTable
// ---------------------------------------------------------------------------

ArithTable ArithTable::integral(std::string label, std::vector<std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("empty arithmetic table");
  ArithTable t;
  t.label_ = std::move(label);
  t.limit_ = static_cast<std::int64_t>(values.size());
  t.integral_ = true;
  t.ints_ = std::move(values);
  return t;
}

ArithTable ArithTable::rational(std::string label, std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("empty arithmetic table");
  ArithTable t;
  t.label_ = std::move(label);
  t.limit_ = static_cast<std::int64_t>(values.size());
  t.integral_ = false;
  t.rats_ = std::move(values);
  for (auto& q : t.rats_) q.canonicalize();
  return t;
}

void ArithTable::check_index(std::int64_t n) const {
  if (n < 1 || n > limit_) {
    throw std::out_of_range("index " + std::to_string(n) + " outside table '" + label_ + "' of limit " +
                            std::to_string(limit_));
  }
}

Rational ArithTable::value(std::int64_t n) const {
  check_index(n);
  if (integral_) return Rational(static_cast<long>(ints_[idx(n)]));
  return rats_[idx(n)];
}

std::int64_t ArithTable::integer(std::int64_t n) const {
  check_index(n);
  if (!integral_) throw std::logic_error("table '" + label_ + "' is rational-valued");
  return ints_[idx(n)];
}

void ArithTable::write_csv(std::ostream& out) const {
  out << "n,value\n";
  for (std::int64_t n = 1; n <= limit_; ++n) {
    out << n << ',';
    if (integral_) {
      out << ints_[idx(n)];
    } else {
      out << to_string(rats_[idx(n)]);
    }
    out << '\n';
  }
}

bool operator==(const ArithTable& a, const ArithTable& b) {
  if (a.limit_ != b.limit_) return false;
  if (a.integral_ && b.integral_) return a.ints_ == b.ints_;
  for (std::int64_t n = 1; n <= a.limit_; ++n) {
    if (a.value(n) != b.value(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FactorSieve
// ---------------------------------------------------------------------------

FactorSieve::FactorSieve(std::int64_t limit) : limit_(limit) {
  check_limit(limit);
  if (limit > 4'000'000'000LL) throw std::invalid_argument("sieve limit beyond 32-bit factor storage");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (spf_[static_cast<std::size_t>(n)] == 0) {
      spf_[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(n);
      primes_.push_back(static_cast<std::uint32_t>(n));
    }
    const std::uint32_t pn = spf_[static_cast<std::size_t>(n)];
    for (std::uint32_t p : primes_) {
      if (p > pn || static_cast<std::int64_t>(p) * n > limit) break;
      spf_[static_cast<std::size_t>(p * n)] = p;
    }
  }
}

std::vector<FactorSieve::PrimePower> FactorSieve::factor(std::int64_t n) const {
  if (n < 1 || n > limit_) throw std::out_of_range("factor: n outside sieve");
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[static_cast<std::size_t>(n)];
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.power *= p;
    }
    out.push_back(pp);
  }
  return out;
}

std::vector<std::int64_t> FactorSieve::multiplicative(
    const std::function<std::int64_t(const PrimePower&)>& at_prime_power) const {
  std::vector<std::int64_t> values(static_cast<std::size_t>(limit_));
  values[0] = 1;
  for (std::int64_t n = 2; n <= limit_; ++n) {
    const std::uint32_t p = spf_[static_cast<std::size_t>(n)];
    PrimePower pp{p, 0, 1};
    std::int64_t rest = n;
    while (rest % p == 0) {
      rest /= p;
      ++pp.exponent;
      pp.power *= p;
    }
    values[idx(n)] = checked_mul(values[idx(rest)], at_prime_power(pp));
  }
  return values;
}

// ---------------------------------------------------------------------------
// Named tables
// ---------------------------------------------------------------------------

NamedFunction parse_named_function(std::string_view name) {
  if (name == "totient" || name == "phi") return NamedFunction::totient;
  if (name == "dedekind" || name == "psi") return NamedFunction::dedekind;
  if (name == "tau") return NamedFunction::tau;
  if (name == "abs_mobius" || name == "abs_mu") return NamedFunction::abs_mobius;
  throw std::invalid_argument("unknown arithmetic function '" + std::string(name) + "'");
}

ArithTable sieve_mobius(std::int64_t limit) {
  FactorSieve sieve(limit);
  return ArithTable::integral("mu", sieve.multiplicative([](const FactorSieve::PrimePower& pp) -> std::int64_t {
    return pp.exponent == 1 ? -1 : 0;
  }));
}

ArithTable sieve_named(NamedFunction fn, std::int64_t limit) {
  FactorSieve sieve(limit);
  switch (fn) {
    case NamedFunction::totient:
      return ArithTable::integral("phi", sieve.multiplicative([](const FactorSieve::PrimePower& pp) {
        return pp.power - pp.power / pp.prime;
      }));
    case NamedFunction::dedekind:
      return ArithTable::integral("psi", sieve.multiplicative([](const FactorSieve::PrimePower& pp) {
        return pp.power + pp.power / pp.prime;
      }));
    case NamedFunction::tau:
      return ArithTable::integral("tau", sieve.multiplicative([](const FactorSieve::PrimePower& pp) {
        return static_cast<std::int64_t>(pp.exponent + 1);
      }));
    case NamedFunction::abs_mobius:
      return ArithTable::integral("abs_mu", sieve.multiplicative([](const FactorSieve::PrimePower& pp) {
        return static_cast<std::int64_t>(pp.exponent == 1 ? 1 : 0);
      }));
  }
  throw std::invalid_argument("unknown arithmetic function");
}

ArithTable sieve_named(std::string_view name, std::int64_t limit) {
  return sieve_named(parse_named_function(name), limit);
}

ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g) {
  if (f.limit() != g.limit()) {
    throw std::invalid_argument("dirichlet_convolve: limits differ (" + std::to_string(f.limit()) + " vs " +
                                std::to_string(g.limit()) + ")");
  }
  const std::int64_t n_max = f.limit();
  std::string label = "(" + f.label() + "*" + g.label() + ")";

  if (f.is_integral() && g.is_integral()) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(n_max), 0);
    auto fv = f.integers();
    auto gv = g.integers();
    for (std::int64_t d = 1; d <= n_max; ++d) {
      const std::int64_t fd = fv[idx(d)];
      if (fd == 0) continue;
      for (std::int64_t k = 1, n = d; n <= n_max; ++k, n += d) {
        const std::int64_t gk = gv[idx(k)];
        if (gk != 0) out[idx(n)] = checked_add(out[idx(n)], checked_mul(fd, gk));
      }
    }
    return ArithTable::integral(std::move(label), std::move(out));
  }

  std::vector<Rational> out(static_cast<std::size_t>(n_max));
  Rational term;
  for (std::int64_t d = 1; d <= n_max; ++d) {
    const Rational fd = f.value(d);
    if (fd == 0) continue;
    for (std::int64_t k = 1, n = d; n <= n_max; ++k, n += d) {
      if (g.is_integral()) {
        const std::int64_t gk = g.integers()[idx(k)];
        if (gk == 0) continue;
        term = fd * Rational(static_cast<long>(gk));
      } else {
        const Rational& gk = g.rationals()[idx(k)];
        if (gk == 0) continue;
        term = fd * gk;
      }
      out[idx(n)] += term;
    }
  }
  return ArithTable::rational(std::move(label), std::move(out));
}

ArithTable sigma_minus_table(int m, std::int64_t limit) {
  if (m < 1) throw std::invalid_argument("sigma_minus_table: m must be >= 1");
  FactorSieve sieve(limit);
  const unsigned long two_m = 2UL * static_cast<unsigned long>(m);

  // sigma_{-2m}(n) = sigma_{2m}(n) / n^{2m}; the numerator is multiplicative.
  std::vector<Integer> numer(static_cast<std::size_t>(limit));
  numer[0] = 1;
  Integer pk_pow;
  Integer local;
  for (std::int64_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = sieve.smallest_prime_factor(n);
    std::int64_t rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // 1 + p^{2m} + ... + p^{2me}
    local = 1;
    pk_pow = 1;
    for (int i = 1; i <= e; ++i) {
      Integer step;
      mpz_ui_pow_ui(step.get_mpz_t(), p, two_m);
      pk_pow *= step;
      local += pk_pow;
    }
    numer[idx(n)] = numer[idx(rest)] * local;
  }

  std::vector<Rational> out(static_cast<std::size_t>(limit));
  Integer den;
  for (std::int64_t n = 1; n <= limit; ++n) {
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n), two_m);
    out[idx(n)] = Rational(numer[idx(n)], den);
  }
  return ArithTable::rational("sigma_-" + std::to_string(two_m), std::move(out));
}

ArithTable ones_table(std::int64_t limit) {
  check_limit(limit);
  return ArithTable::integral("one", std::vector<std::int64_t>(static_cast<std::size_t>(limit), 1));
}

ArithTable unit_table(std::int64_t limit) {
  check_limit(limit);
  std::vector<std::int64_t> v(static_cast<std::size_t>(limit), 0);
  v[0] = 1;
  return ArithTable::integral("unit", std::move(v));
}

ArithTable identity_table(std::int64_t limit) {
  check_limit(limit);
  std::vector<std::int64_t> v(static_cast<std::size_t>(limit));
  for (std::int64_t n = 1; n <= limit; ++n) v[idx(n)] = n;
  return ArithTable::integral("id", std::move(v));
}

ArithTable power_table(int u, std::int64_t limit) {
  check_limit(limit);
  std::string label = "id_" + std::to_string(u);
  if (u >= 0) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(limit));
    for (std::int64_t n = 1; n <= limit; ++n) {
      std::int64_t p = 1;
      for (int i = 0; i < u; ++i) p = checked_mul(p, n);
      v[idx(n)] = p;
    }
    return ArithTable::integral(std::move(label), std::move(v));
  }
  std::vector<Rational> v(static_cast<std::size_t>(limit));
  Integer den;
  for (std::int64_t n = 1; n <= limit; ++n) {
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(-u));
    v[idx(n)] = Rational(Integer(1), den);
  }
  return ArithTable::rational(std::move(label), std::move(v));
}

ArithTable divide_by_identity(const ArithTable& f) {
  std::vector<Rational> v(static_cast<std::size_t>(f.limit()));
  for (std::int64_t n = 1; n <= f.limit(); ++n) v[idx(n)] = f.value(n) / Rational(static_cast<long>(n));
  return ArithTable::rational(f.label() + "/id", std::move(v));
}

ArithTable linear_combination(std::int64_t a, const ArithTable& f, std::int64_t b, const ArithTable& g) {
  if (f.limit() != g.limit()) throw std::invalid_argument("linear_combination: limits differ");
  std::string label = std::to_string(a) + f.label() + "+" + std::to_string(b) + g.label();
  if (f.is_integral() && g.is_integral()) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(f.limit()));
    for (std::int64_t n = 1; n <= f.limit(); ++n) {
      v[idx(n)] = checked_add(checked_mul(a, f.integers()[idx(n)]), checked_mul(b, g.integers()[idx(n)]));
    }
    return ArithTable::integral(std::move(label), std::move(v));
  }
  std::vector<Rational> v(static_cast<std::size_t>(f.limit()));
  for (std::int64_t n = 1; n <= f.limit(); ++n) {
    v[idx(n)] = Rational(static_cast<long>(a)) * f.value(n) + Rational(static_cast<long>(b)) * g.value(n);
  }
  return ArithTable::rational(std::move(label), std::move(v));
}

}  // namespace gcdsum::arith
