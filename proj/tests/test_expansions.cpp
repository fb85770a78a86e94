#include "doctest.h"

#include "gcdsum/expansions.hpp"
#include "gcdsum/special_values.hpp"

#include <sstream>

using namespace gcdsum;
using namespace gcdsum::expansions;
namespace mp = boost::multiprecision;

namespace {

bool close(const Real& a, const Real& b, const char* tol) { return mp::abs(a - b) < Real(tol); }

}  // namespace

TEST_CASE("bernoulli-weighted zeta constants") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  CHECK(c_odd(1, ctx) == 0);
  CHECK(c_even(1, ctx) == 0);
  CHECK(close(c_odd(2, ctx), special::zeta_int(3, ctx) / 2, "1e-35"));
  CHECK(static_cast<double>(c_odd(2, ctx)) == doctest::Approx(0.601028).epsilon(1e-6));
  CHECK(close(c_even(2, ctx), special::zeta_int(2, ctx) / 2, "1e-35"));
  CHECK(static_cast<double>(c_even(2, ctx)) == doctest::Approx(0.822467).epsilon(1e-6));
  // r = 4: C(5,2) B_2 zeta(3) + C(5,4) B_4 zeta(5)
  CHECK(close(c_odd(4, ctx), Real(10) / 6 * special::zeta_int(3, ctx) - Real(5) / 30 * special::zeta_int(5, ctx),
              "1e-35"));
}

TEST_CASE("main terms") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  const Real z2 = special::zeta_int(2, ctx);
  const Real g = special::euler_gamma(ctx);
  const Real x = 1000000;
  const Real lx = mp::log(x);
  const Real expected = x * lx / (2 * z2) + x / 2 + x * (2 * g - 1 - special::zeta_prime_int(2, ctx) / z2) / (2 * z2);
  CHECK(close(main_term(GcdFunction::id, Rational(1000000), 1, ctx), expected, "1e-25"));

  // Leading coefficient read off as (M(2x) - 2 M(x)) / (2x log 2).
  for (auto [f, r, coeff] : {std::tuple{GcdFunction::psi, 2, Real(1) / (3 * special::zeta_int(4, ctx))},
                             std::tuple{GcdFunction::phi, 3, Real(1) / (4 * z2 * z2)},
                             std::tuple{GcdFunction::id, 5, Real(1) / (6 * z2)}}) {
    const Rational xq(10000);
    const Real lead = (main_term(f, 2 * xq, r, ctx) - 2 * main_term(f, xq, r, ctx)) / (20000 * mp::log(Real(2)));
    CHECK(close(lead, coeff, "1e-30"));
  }
  CHECK_THROWS_AS(main_term(GcdFunction::id, Rational(3, 2), 1, ctx), std::invalid_argument);
}

TEST_CASE("residual is exact minus main") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  CHECK(close(residual(GcdFunction::id, Rational(2), 1, ctx),
              to_real(Rational(9, 4)) - main_term(GcdFunction::id, Rational(2), 1, ctx), "1e-35"));

  // Only the main term moves while [x] is fixed.
  const Rational x(1001, 2);
  const Rational y = x + Rational(1, 1000000000);
  Expander e(GcdFunction::phi, 600, 2, {ctx});
  CHECK(close(e.residual(y, 2) - e.residual(x, 2), -(e.main(y, 2) - e.main(x, 2)), "1e-30"));
  CHECK(mp::abs(e.residual(x, 2)) < 20);
}

TEST_CASE("prefix-table route matches the exact rationals") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  for (auto f : {GcdFunction::id, GcdFunction::phi, GcdFunction::psi}) {
    Expander e(f, 1500, 6, {ctx});
    for (int r = 1; r <= 6; ++r) {
      for (const char* xs : {"2", "5/2", "97", "1001/2", "1500"}) {
        const Rational x = parse_rational(xs);
        CHECK(close(e.exact_real(x, r), to_real(*e.exact_rational(x, r)), "1e-33"));
      }
    }
  }
}

TEST_CASE("regrouped form of M_r(x; id)") {
  exactsum::GcdSumTables tables(GcdFunction::id, 400);
  for (int r = 1; r <= 6; ++r) {
    for (const char* xs : {"1", "2", "7/2", "100", "801/2"}) {
      const Rational x = parse_rational(xs);
      CHECK(m_r_id_regrouped(x, r) == exactsum::m_r_identity({x, r, GcdFunction::id}, tables));
    }
  }
}

TEST_CASE("theorem side against the reference loops") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  const Rational x(201, 2);
  const auto mu = arith::sieve_mobius(100);
  const Real d0 = error_terms::weighted_delta_sum(mu, x, 0, ctx);
  const Real d1 = error_terms::weighted_delta_sum(mu, x, 1, ctx);
  CHECK(close(theorem_side(GcdFunction::id, x, 1, ctx), d0 / 2, "1e-30"));
  // r = 2: C(3,2) B_2 = 1/2
  CHECK(close(theorem_side(GcdFunction::id, x, 2, ctx), (d0 + d1 / 2) / 3, "1e-30"));

  const auto absmu = expansions::delta_weights(GcdFunction::psi, 100);
  const Real p0 = error_terms::weighted_delta_sum(absmu, x, 0, ctx);
  CHECK(close(theorem_side(GcdFunction::psi, x, 1, ctx),
              p0 / 2 - mp::log(to_real(x)) / (4 * special::zeta_int(2, ctx)), "1e-30"));

  Expander e(GcdFunction::id, 100, 2, {ctx});
  CHECK(close(e.theorem_side(x, 2, false), d0 / 3, "1e-30"));
}

TEST_CASE("gap depends on r only through the bernoulli block") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  const Rational x(601, 2);
  const Real xr = to_real(x);
  const std::int64_t n = 300;
  const auto phi = arith::sieve_named("phi", n);
  const Real z2 = special::zeta_int(2, ctx);
  Expander e(GcdFunction::id, n, 6, {ctx});

  // G_m = sum_{dl<=x} phi(d)/(d l^2m) - zeta(2m+1) x/zeta(2) - sum mu(d)/d Delta_{-2m}(x/d)
  std::vector<Real> g;
  for (int m = 1; m <= 3; ++m) {
    Real c = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      for (std::int64_t l = 1; d * l <= n; ++l) c += to_real(phi.integer(d)) / (to_real(d) * mp::pow(to_real(l), 2 * m));
    }
    g.push_back(c - special::zeta_int(2 * m + 1, ctx) * xr / z2 - e.weighted_delta(x, m));
  }
  std::vector<Real> reduced;
  for (int r = 1; r <= 6; ++r) {
    const auto rep = e.report(x, r);
    Real v = (r + 1) * (rep.gap - (to_real(Rational(n)) - xr) / 2);
    const auto w = exactsum::bernoulli_weights(r);
    for (std::size_t i = 0; i < w.size(); ++i) v -= to_real(w[i]) * g[i];
    reduced.push_back(v);
  }
  for (std::size_t i = 1; i < reduced.size(); ++i) CHECK(close(reduced[i], reduced[0], "1e-28"));
}

TEST_CASE("id route and totient route agree") {
  const auto via_convolution = exactsum::mobius_convolution_table(GcdFunction::id, 5000);
  CHECK(via_convolution == arith::sieve_named("phi", 5000));
}

TEST_CASE("grids") {
  const auto g = log_grid(Rational(1000), Rational(100000), points_for_density(Rational(1000), Rational(100000), 50),
                          true);
  CHECK(points_for_density(Rational(1000), Rational(100000), 50) == 101);
  REQUIRE(g.size() > 90);
  CHECK(g.front() == Rational(2001, 2));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(is_half_integer(g[i]));
    CHECK(g[i] <= 100000);
    if (i > 0) CHECK(g[i - 1] < g[i]);
  }
  const auto plain = log_grid(Rational(10), Rational(1000), 3, false);
  REQUIRE(plain.size() == 3);
  CHECK(plain[1] == 100);
  CHECK(log_grid(Rational(5), Rational(5), 1, false) == std::vector<Rational>{Rational(5)});
}

TEST_CASE("scan is deterministic and matches scalar reports") {
  PrecisionContext ctx(30);
  ScopedPrecision guard(ctx);
  Expander e(GcdFunction::psi, 5000, 3, {ctx});
  const auto grid = log_grid(Rational(10), Rational(5000), 12, true);
  const auto one = scan(e, 3, grid, 1);
  const auto many = scan(e, 3, grid, 3);
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, one, 25);
  write_csv(b, many, 25);
  CHECK(a.str() == b.str());

  const auto single = scan(e, 3, {grid[4]}, 1);
  const auto direct = e.report(grid[4], 3);
  CHECK(single[0].gap == direct.gap);
  CHECK(single[0].theorem_side == direct.theorem_side);
  CHECK(single[0].residual == e.residual(grid[4], 3));

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,r,f,exact,main,residual,theorem_side,gap,log_x,env_loglog,env_delta,precision");
  CHECK(a.str().find(",30\n") != std::string::npos);
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("21/2,3,psi,", 0) == 0);

  std::ostringstream j;
  write_json(j, std::vector<ExpansionReport>(one.begin(), one.begin() + 2), 20);
  CHECK(j.str().find("\"env_delta\"") != std::string::npos);
  CHECK_THROWS_AS(scan(e, 3, {Rational(5001)}, 1), std::out_of_range);
}
