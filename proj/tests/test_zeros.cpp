#include "doctest.h"

#include "gcdsum/error_terms.hpp"
#include "gcdsum/special_values.hpp"
#include "gcdsum/zeros.hpp"

#include <fstream>
#include <sstream>

using namespace gcdsum;
using namespace gcdsum::zeros;
namespace mp = boost::multiprecision;

namespace {

ZeroTable parse(const std::string& text, LoadOptions opts = {}) {
  std::istringstream in(text);
  return parse_zeros(in, opts);
}

LoadErrorKind kind_of(const std::string& text, std::size_t* where = nullptr) {
  try {
    parse(text);
  } catch (const LoadError& e) {
    if (where) *where = e.where();
    return e.kind();
  }
  FAIL("no error");
  return LoadErrorKind::io;
}

const ZeroTable& shipped() {
  static const ZeroTable table = [] {
    LoadOptions opts;
    opts.verify = false;
    return load_zeros(std::string(GCDSUM_DATA_DIR) + "/zeros_2000.txt", opts);
  }();
  return table;
}

}  // namespace

TEST_CASE("ordinate-only line gets a computed derivative") {
  const auto t = parse("14.134725142\n");
  REQUIRE(t.size() == 1);
  CHECK(static_cast<double>(abs(t.entries()[0].zeta_prime)) == doctest::Approx(0.79316).epsilon(1e-4));
}

TEST_CASE("empty and comment-only input") {
  CHECK(parse("").empty());
  CHECK(parse("# nothing\n\n   \n").empty());
  CHECK(parse("").t_max() == 0);
}

TEST_CASE("load errors") {
  std::size_t where = 0;
  CHECK(kind_of("14.134725142\n14.1\n", &where) == LoadErrorKind::non_increasing);
  CHECK(where == 2);
  CHECK(kind_of("# header\n14.134725142\n21.0220396 abc 1\n", &where) == LoadErrorKind::malformed);
  CHECK(where == 3);
  CHECK(kind_of("14.134725142 1\n", &where) == LoadErrorKind::malformed);
  CHECK(where == 1);
  CHECK(kind_of("15.5\n") == LoadErrorKind::not_a_zero);
  CHECK(kind_of("14.134725142 0.5 0.1\n", &where) == LoadErrorKind::derivative_mismatch);
  CHECK(where == 1);
  CHECK(kind_of("21.022039639\n") == LoadErrorKind::sanity);
  CHECK(kind_of("14.134725142 0 0\n") == LoadErrorKind::derivative_mismatch);

  LoadOptions lax;
  lax.verify = false;
  CHECK_THROWS_AS(parse("14.134725142 0 0\n", lax), LoadError);
  CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), LoadError);
}

TEST_CASE("file derivatives match recomputation") {
  LoadOptions opts;
  opts.ctx = PrecisionContext(30);
  std::ostringstream head;
  std::istringstream all([] {
    std::ifstream f(std::string(GCDSUM_DATA_DIR) + "/zeros_2000.txt");
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }());
  std::string line;
  for (int i = 0; i < 25 && std::getline(all, line); ++i) head << line << '\n';
  const auto t = parse(head.str(), opts);
  CHECK(t.size() == 23);
  opts.recompute_zeta_prime = true;
  const auto r = parse(head.str(), opts);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(abs(t.entries()[i].zeta_prime - r.entries()[i].zeta_prime) < Real("1e-20"));
  }
}

TEST_CASE("paired and unpaired zero sums agree") {
  PrecisionContext ctx(40);
  ScopedPrecision guard(ctx);
  const auto table = shipped().first(200);
  for (auto [a, b, p] : {std::tuple{1, 1, 1}, std::tuple{2, 2, 2}, std::tuple{1, 2, 2}}) {
    const Rational x(2001, 2);
    const Complex u = zero_sum_unpaired(x, a, b, p, table, ctx);
    CHECK(mp::abs(u.im) < Real("1e-30"));
    CHECK(mp::abs(u.re - zero_sum(x, a, b, p, table, ctx)) < Real("1e-30"));
  }
}

TEST_CASE("explicit formulas track the Moebius sums") {
  PrecisionContext ctx(30);
  ScopedPrecision guard(ctx);
  const auto table = shipped().up_to(Real(500));
  const Rational x(2001, 2);
  const auto mu = arith::sieve_mobius(1000);
  Real inv = 0;
  Real sq = 0;
  Real sqlog = 0;
  for (std::int64_t n = 1; n <= 1000; ++n) {
    const Real m = to_real(mu.integer(n));
    const Real nr = n;
    inv += m / nr;
    sq += m / (nr * nr);
    sqlog += m / (nr * nr) * mp::log(to_real(x) / nr);
  }
  CHECK(mp::abs(explicit_mobius_sum(MobiusSum::inv, x, table, ctx).value - inv) < Real("0.1"));
  CHECK(mp::abs(explicit_mobius_sum(MobiusSum::inv_square, x, table, ctx).value - sq) < Real("1e-3"));
  CHECK(mp::abs(explicit_mobius_sum(MobiusSum::inv_square_log, x, table, ctx).value - sqlog) < Real("1e-3"));

  const auto empty = explicit_mobius_sum(MobiusSum::inv_square, x, ZeroTable{}, ctx);
  CHECK(empty.empty_table);
  CHECK(empty.zero_sum == 0);
  CHECK(parse_mobius_sum("inv_square_log") == MobiusSum::inv_square_log);
  CHECK_THROWS_AS(parse_mobius_sum("square"), std::invalid_argument);
}

TEST_CASE("zero-corrected residual of M_r(x; id)") {
  PrecisionContext ctx(30);
  ScopedPrecision guard(ctx);
  const Rational x(20001, 2);
  expansions::Expander e(exactsum::GcdFunction::id, 10000, 3, {ctx});
  for (int r = 1; r <= 3; ++r) {
    CHECK(theorem13_k(x, r, ZeroTable{}, e) == e.theorem_side(x, r));
    const Real full = theorem13_k(x, r, shipped(), e);
    const Real target = e.residual(x, r) + Real(1) / 4;
    CHECK(mp::abs(full - target) < mp::abs(e.theorem_side(x, r) - target));
  }
  CHECK_THROWS_AS(theorem13_k(Rational(100), 1, shipped(), e), std::invalid_argument);
}

TEST_CASE("moments over zeros") {
  PrecisionContext ctx(30);
  ScopedPrecision guard(ctx);
  const auto& table = shipped();
  CHECK(j_minus_lambda(Real(100), Real(0), table, ctx) == 29);
  CHECK(j_minus_lambda(Real(1000), Real(0), table, ctx) == 649);
  CHECK(static_cast<double>(j_minus_lambda(Real(15), Real("0.5"), table, ctx)) ==
        doctest::Approx(1 / 0.79316).epsilon(1e-4));
  Real prev = 0;
  for (int t = 20; t <= 2500; t += 40) {
    const Real j = j_minus_lambda(Real(t), Real("0.5"), table, ctx);
    CHECK(j >= prev);
    prev = j;
  }
  CHECK(j_minus_lambda(Real(1e6), Real("0.5"), ZeroTable{}, ctx) == 0);
  CHECK_THROWS_AS(j_minus_lambda(Real(3000), Real("0.5"), table, ctx), std::out_of_range);
  CHECK_THROWS_AS(j_minus_lambda(Real(100), Real("1.5"), table, ctx), std::invalid_argument);
  const Real ratio = gonek_hejhal_ratio(Real(1000), Real("0.5"), table, ctx);
  CHECK(ratio > 0);
  CHECK(ratio == j_minus_lambda(Real(1000), Real("0.5"), table, ctx) / (1000 * mp::pow(mp::log(Real(1000)), Real("0.25"))));
}
