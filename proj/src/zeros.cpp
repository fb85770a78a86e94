#include "gcdsum/zeros.hpp"

#include "gcdsum/special_values.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace gcdsum::zeros {

namespace mp = boost::multiprecision;

namespace {

bool is_decimal(const std::string& token) {
  static const std::regex pattern(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  return std::regex_match(token, pattern);
}

std::string describe_entry(std::size_t index, const Real& gamma) {
  return "entry " + std::to_string(index) + " (gamma = " + to_string(gamma, 20) + ")";
}

}  // namespace

ZeroTable::ZeroTable(std::vector<ZeroEntry> entries) : entries_(std::move(entries)) {}

Real ZeroTable::t_max() const { return entries_.empty() ? Real(0) : entries_.back().ordinate; }

ZeroTable ZeroTable::first(std::size_t n) const {
  n = std::min(n, entries_.size());
  return ZeroTable(std::vector<ZeroEntry>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

ZeroTable ZeroTable::up_to(const Real& t) const {
  std::vector<ZeroEntry> kept;
  for (const auto& e : entries_) {
    if (e.ordinate > t) break;
    kept.push_back(e);
  }
  return ZeroTable(std::move(kept));
}

LoadError::LoadError(LoadErrorKind kind, std::size_t where, const std::string& message)
    : std::runtime_error(message), kind_(kind), where_(where) {}

ZeroTable parse_zeros(std::istream& in, const LoadOptions& options) {
  const PrecisionContext& ctx = options.ctx;
  ScopedPrecision guard(ctx);
  std::vector<ZeroEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 1 && tokens.size() != 3) {
      throw LoadError(LoadErrorKind::malformed, line_no,
                      "line " + std::to_string(line_no) + ": expected 1 or 3 fields, found " +
                          std::to_string(tokens.size()));
    }
    for (const auto& t : tokens) {
      if (!is_decimal(t)) {
        throw LoadError(LoadErrorKind::malformed, line_no,
                        "line " + std::to_string(line_no) + ": not a decimal number: '" + t + "'");
      }
    }
    ZeroEntry e;
    e.ordinate = parse_real(tokens[0]);
    if (e.ordinate <= 0) {
      throw LoadError(LoadErrorKind::malformed, line_no,
                      "line " + std::to_string(line_no) + ": ordinate must be positive");
    }
    const std::size_t index = entries.size() + 1;
    if (!entries.empty() && e.ordinate <= entries.back().ordinate) {
      throw LoadError(LoadErrorKind::non_increasing, index,
                      describe_entry(index, e.ordinate) + " does not exceed the previous ordinate");
    }
    const bool from_file = tokens.size() == 3;
    if (from_file) e.zeta_prime = Complex(parse_real(tokens[1]), parse_real(tokens[2]));

    if (options.verify || !from_file || options.recompute_zeta_prime) {
      const auto z = special::zeta_and_derivative(Complex(Real(0.5), e.ordinate), ctx);
      if (options.verify && !(abs(z.zeta) < Real(options.zeta_tolerance))) {
        throw LoadError(LoadErrorKind::not_a_zero, index,
                        describe_entry(index, e.ordinate) + ": |zeta(rho)| = " + to_string(abs(z.zeta), 6) +
                            " is not below " + std::to_string(options.zeta_tolerance));
      }
      if (from_file && options.verify && !options.recompute_zeta_prime) {
        const Real scale = abs(z.zeta_prime);
        if (scale > 0 && abs(e.zeta_prime - z.zeta_prime) > Real(options.mismatch_tolerance) * scale) {
          throw LoadError(LoadErrorKind::derivative_mismatch, index,
                          describe_entry(index, e.ordinate) + ": file zeta' disagrees with the recomputed value");
        }
      }
      if (!from_file || options.recompute_zeta_prime) e.zeta_prime = z.zeta_prime;
    }
    if (abs(e.zeta_prime) == 0) {
      throw LoadError(LoadErrorKind::zero_derivative, index,
                      describe_entry(index, e.ordinate) + ": zeta'(rho) = 0, zero is not simple");
    }
    entries.push_back(std::move(e));
  }
  if (!entries.empty() && (entries.front().ordinate < Real("14.1") || entries.front().ordinate > Real("14.2"))) {
    throw LoadError(LoadErrorKind::sanity, 1, "first ordinate " + to_string(entries.front().ordinate, 12) +
                                                  " is not the first zero (expected 14.1..14.2)");
  }
  return ZeroTable(std::move(entries));
}

ZeroTable load_zeros(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw LoadError(LoadErrorKind::io, 0, "cannot open zero file '" + path + "'");
  return parse_zeros(in, options);
}

// ---------------------------------------------------------------------------

namespace {

Complex zero_term(const Real& xr, const Real& gamma, const Complex& zeta_prime, int a, int b, int p) {
  const Complex num = pow(xr, Complex(Real(0.5) - a, gamma));
  Complex den = zeta_prime;
  const Complex base(Real(0.5) - b, gamma);
  for (int i = 0; i < p; ++i) den *= base;
  return num / den;
}

}  // namespace

Real zero_sum(const Rational& x, int a, int b, int p, const ZeroTable& table, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  const Real xr = to_real(x);
  Real s = 0;
  for (const auto& e : table.entries()) s += 2 * zero_term(xr, e.ordinate, e.zeta_prime, a, b, p).re;
  return s;
}

Complex zero_sum_unpaired(const Rational& x, int a, int b, int p, const ZeroTable& table,
                          const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  const Real xr = to_real(x);
  Complex s;
  for (const auto& e : table.entries()) {
    s += zero_term(xr, e.ordinate, e.zeta_prime, a, b, p);
    s += zero_term(xr, -e.ordinate, conj(e.zeta_prime), a, b, p);
  }
  return s;
}

MobiusSum parse_mobius_sum(std::string_view name) {
  if (name == "inv") return MobiusSum::inv;
  if (name == "inv_square") return MobiusSum::inv_square;
  if (name == "inv_square_log") return MobiusSum::inv_square_log;
  throw std::invalid_argument("unknown sum '" + std::string(name) + "' (expected inv, inv_square, inv_square_log)");
}

ExplicitSum explicit_mobius_sum(MobiusSum which, const Rational& x, const ZeroTable& table,
                                const PrecisionContext& ctx) {
  if (x < 1) throw std::invalid_argument("x must be at least 1");
  ScopedPrecision guard(ctx);
  const Real xr = to_real(x);
  const Real pi2 = mp::pow(special::pi(ctx), 2);
  const Real z2 = special::zeta_int(2, ctx);
  const Real z3 = special::zeta_int(3, ctx);
  ExplicitSum out;
  out.empty_table = table.empty();
  out.t_max = table.t_max();
  switch (which) {
    case MobiusSum::inv:
      out.main = 0;
      out.zero_sum = zero_sum(x, 1, 1, 1, table, ctx);
      out.correction = 4 * pi2 / (3 * z3) / mp::pow(xr, 3);
      break;
    case MobiusSum::inv_square:
      out.main = 1 / z2;
      out.zero_sum = zero_sum(x, 2, 2, 1, table, ctx);
      out.correction = pi2 / z3 / mp::pow(xr, 4);
      break;
    case MobiusSum::inv_square_log:
      out.main = (mp::log(xr) - special::zeta_prime_int(2, ctx) / z2) / z2;
      out.zero_sum = zero_sum(x, 2, 2, 2, table, ctx);
      out.correction = -pi2 / (4 * z3) / mp::pow(xr, 4);
      break;
  }
  out.value = out.main + out.zero_sum + out.correction;
  return out;
}

// ---------------------------------------------------------------------------

Real theorem13_k(const Rational& x, int r, const ZeroTable& table, const expansions::Expander& expander) {
  if (!is_half_integer(x)) throw std::invalid_argument("x must be a half-integer, got " + to_string(x));
  if (expander.function() != exactsum::GcdFunction::id) throw std::invalid_argument("expander must be for f = id");
  Real base = expander.theorem_side(x, r);
  if (table.empty()) return base;
  const PrecisionContext& ctx = expander.context();
  ScopedPrecision guard(ctx);
  const Real g = special::euler_gamma(ctx);
  const Real r1 = r + 1;
  base += (2 * g + expansions::c_odd(r, ctx) - 1) / r1 * zero_sum(x, 1, 2, 1, table, ctx);
  base -= expansions::c_even(r, ctx) / (2 * r1) * zero_sum(x, 1, 1, 1, table, ctx);
  base += zero_sum(x, 1, 2, 2, table, ctx) / r1;
  return base;
}

Real theorem13_k(const Rational& x, int r, const ZeroTable& table, const PrecisionContext& ctx) {
  if (!is_half_integer(x)) throw std::invalid_argument("x must be a half-integer, got " + to_string(x));
  if (x < 2) throw std::invalid_argument("x must be at least 2");
  const expansions::Expander expander(exactsum::GcdFunction::id, floor_to_int64(x), r, {ctx});
  return theorem13_k(x, r, table, expander);
}

// ---------------------------------------------------------------------------

Real j_minus_lambda(const Real& t, const Real& lambda, const ZeroTable& table, const PrecisionContext& ctx) {
  if (lambda >= Real(1.5)) throw std::invalid_argument("lambda must be below 3/2");
  if (t <= 0) throw std::invalid_argument("T must be positive");
  ScopedPrecision guard(ctx);
  if (table.empty()) return Real(0);
  if (t > table.t_max()) {
    throw std::out_of_range("T = " + to_string(t, 12) + " exceeds table coverage t_max = " +
                            to_string(table.t_max(), 12));
  }
  Real s = 0;
  for (const auto& e : table.entries()) {
    if (e.ordinate > t) break;
    s += lambda == 0 ? Real(1) : mp::pow(norm(e.zeta_prime), -lambda);
  }
  return s;
}

Real gonek_hejhal_ratio(const Real& t, const Real& lambda, const ZeroTable& table, const PrecisionContext& ctx) {
  if (t <= mp::exp(Real(1))) throw std::invalid_argument("T must exceed e");
  const Real j = j_minus_lambda(t, lambda, table, ctx);
  ScopedPrecision guard(ctx);
  return j / (t * mp::pow(mp::log(t), (lambda - 1) * (lambda - 1)));
}

}  // namespace gcdsum::zeros
