// Command-line driver for the gcd-sum experiments.
//
// Exit codes: 0 success, 1 usage, 2 validation failure, 3 numeric-contract failure.

#include "CLI11.hpp"
#include "json.hpp"

#include "gcdsum/error_terms.hpp"
#include "gcdsum/exactsum.hpp"
#include "gcdsum/expansions.hpp"
#include "gcdsum/regression.hpp"
#include "gcdsum/special_values.hpp"
#include "gcdsum/zeros.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace gcdsum;
namespace mp = boost::multiprecision;

namespace {

constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kNumeric = 3;

/// A failed equality or other broken numeric contract.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  int digits = 50;
  double delta_c = 1.0;
  std::int64_t limit = 1000000;
  std::string format = "csv";
  std::string out;
  int output_digits = 20;
};

PrecisionContext context(const Global& g) { return PrecisionContext(g.digits); }

/// Writes to --out when given, otherwise stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void check_limit(const Global& g, const Rational& x) {
  if (floor_to_int64(x) > g.limit) {
    throw std::invalid_argument("[x] = " + std::to_string(floor_to_int64(x)) + " exceeds the table limit " +
                                std::to_string(g.limit) + " (raise --limit)");
  }
}

// ---------------------------------------------------------------------------

struct ExactArgs {
  std::string x;
  int r = 1;
  std::string f = "id";
  std::string method = "identity";
};

void run_exact(const Global& g, const ExactArgs& a) {
  const exactsum::EvalPoint p{parse_rational(a.x), a.r, exactsum::parse_gcd_function(a.f)};
  exactsum::validate(p);
  check_limit(g, p.x);
  const exactsum::GcdSumTables tables(p.f, std::max<std::int64_t>(1, floor_to_int64(p.x)));
  if (a.method == "naive") {
    std::cout << to_string(exactsum::m_r_naive(p, tables)) << '\n';
  } else if (a.method == "identity") {
    std::cout << to_string(exactsum::m_r_identity(p, tables)) << '\n';
  } else {
    const Rational n = exactsum::m_r_naive(p, tables);
    const Rational i = exactsum::m_r_identity(p, tables);
    std::cout << to_string(n) << ", " << to_string(i) << ", " << (n == i ? "EQUAL" : "DIFFER") << '\n';
    if (n != i) throw NumericFailure("naive and identity values differ");
  }
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  std::string f = "id";
  int r = 1;
  std::string xmin = "1000";
  std::string xmax = "100000";
  int points = 0;
  int density = 50;
  bool half_integers = false;
  unsigned threads = 1;
};

void run_scan(const Global& g, const ScanArgs& a) {
  const auto f = exactsum::parse_gcd_function(a.f);
  const Rational lo = parse_rational(a.xmin);
  const Rational hi = parse_rational(a.xmax);
  if (lo < 2 || hi < lo) throw std::invalid_argument("need 2 <= xmin <= xmax");
  if (a.r < 1) throw std::invalid_argument("r must be positive");
  check_limit(g, hi);
  const int points = a.points > 0 ? a.points : expansions::points_for_density(lo, hi, a.density);
  const auto grid = expansions::log_grid(lo, hi, points, a.half_integers);
  Output out(g.out);  // fail on an unwritable path before the long part
  const expansions::Expander e(f, floor_to_int64(hi), a.r, {context(g), Real(g.delta_c)});
  const auto rows = expansions::scan(e, a.r, grid, std::max(1U, a.threads));
  if (g.format == "json") {
    expansions::write_json(out.stream(), rows, g.output_digits);
  } else {
    expansions::write_csv(out.stream(), rows, g.output_digits);
  }
  ScopedPrecision guard(e.context());
  Real worst = 0;
  for (const auto& row : rows) worst = mp::max(worst, mp::abs(row.gap) / row.envelopes.log_x);
  std::cerr << rows.size() << " rows, max |gap|/log x = " << to_string(worst, 6) << '\n';
}

// ---------------------------------------------------------------------------

struct LemmaArgs {
  std::string which;
  std::string x = "1000";
};

const std::map<std::string, std::string>& lemma_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"20", "totient-ratio"},      {"21", "mobius-sums"},         {"201", "dedekind-ratio"},
      {"211", "mobius-mobius-sums"}, {"211s", "mobius-abs-sums"},  {"22", "totient-identity"},
      {"23", "mobius-mobius-identity"}, {"23q", "mobius-abs-identity"}};
  return aliases;
}

void print_value(const std::string& key, const Real& v, int digits) {
  std::cout << key << " = " << to_string(v, digits) << '\n';
}

void run_lemma(const Global& g, const LemmaArgs& a) {
  std::string which = a.which;
  if (auto it = lemma_aliases().find(which); it != lemma_aliases().end()) which = it->second;
  const Rational x = parse_rational(a.x);
  if (x < 1) throw std::invalid_argument("x must be at least 1");
  check_limit(g, x);
  const std::int64_t n = floor_to_int64(x);
  const int d = g.output_digits;

  const std::map<std::string, error_terms::IdentityFamily> identities = {
      {"totient-identity", error_terms::IdentityFamily::totient},
      {"mobius-mobius-identity", error_terms::IdentityFamily::mobius_mobius},
      {"mobius-abs-identity", error_terms::IdentityFamily::mobius_abs}};
  if (auto it = identities.find(which); it != identities.end()) {
    bool all = true;
    for (int m = 0; m <= 2; ++m) {
      const auto check = error_terms::check_identity(it->second, m, x);
      ScopedPrecision guard(context(g));
      std::cout << (m == 0 ? "tau" : "sigma_-" + std::to_string(2 * m)) << ": lhs = " << to_string(to_real(check.lhs), d)
                << ", rhs = " << to_string(to_real(check.rhs), d) << ", exact rationals "
                << (check.equal() ? "equal" : "differ") << '\n';
      all = all && check.equal();
    }
    std::cout << (all ? "EXACT-EQUAL" : "EXACT-DIFFER") << '\n';
    if (!all) throw NumericFailure("identity sides differ");
    return;
  }

  const PrecisionContext ctx = context(g);
  ScopedPrecision guard(ctx);
  if (which == "mobius-sums") {
    const auto mu = arith::sieve_mobius(n);
    const Real z2 = special::zeta_int(2, ctx);
    std::cout << "M(x) = " << error_terms::mertens(mu, x) << '\n';
    print_value("sum mu(n)/n", error_terms::partial_sum(mu, error_terms::Weight::inv, x, ctx), d);
    print_value("sum mu(n)/n^2 - 1/zeta(2)", error_terms::partial_sum(mu, error_terms::Weight::inv_square, x, ctx) - 1 / z2, d);
    print_value("1/[x]", Real(1) / n, d);
    print_value("sum mu(n) log n/n^2", error_terms::partial_sum(mu, error_terms::Weight::inv_square_log, x, ctx), d);
    if (x > 5) {
      print_value("delta(x)", special::delta_envelope(to_real(x), Real(g.delta_c), ctx), d);
      print_value("log eta(x)", special::log_eta_envelope(to_real(x), ctx), d);
    }
    return;
  }
  if (which == "totient-ratio" || which == "dedekind-ratio") {
    const bool totient = which == "totient-ratio";
    const auto table = arith::sieve_named(totient ? "phi" : "psi", n);
    const auto rep = error_terms::ratio_summatory(
        totient ? error_terms::RatioFunction::totient : error_terms::RatioFunction::dedekind, table, x, ctx);
    print_value("sum", rep.sum, d);
    print_value("main", rep.main, d);
    print_value("residual", rep.residual, d);
    print_value("envelope", rep.envelope, d);
    print_value("ratio", rep.ratio, d);
    if (totient) print_value("theta sum", error_terms::theta_sum(arith::sieve_mobius(n), x, ctx), d);
    return;
  }
  if (which == "mobius-mobius-sums" || which == "mobius-abs-sums") {
    const auto kind = which == "mobius-mobius-sums" ? error_terms::Convolved::mu_mu : error_terms::Convolved::mu_absmu;
    const auto table = error_terms::convolved_table(kind, n);
    std::vector<std::pair<std::string, error_terms::Weight>> weights = {
        {"1/n^2", error_terms::Weight::inv_square}, {"log n/n^2", error_terms::Weight::inv_square_log}};
    if (kind == error_terms::Convolved::mu_absmu) weights.emplace_back("1/n", error_terms::Weight::inv);
    for (const auto& [label, w] : weights) {
      const Real s = error_terms::partial_sum(table, w, x, ctx);
      const Real limit = error_terms::convolved_limit(kind, w, ctx);
      std::cout << label << ": sum = " << to_string(s, d) << ", limit = " << to_string(limit, d)
                << ", difference = " << to_string(s - limit, 6) << '\n';
    }
    return;
  }
  throw std::invalid_argument("unknown lemma '" + a.which + "'");
}

// ---------------------------------------------------------------------------

struct ZerosArgs {
  std::string file;
  std::string x = "201/2";
  int r = 1;
  std::size_t count = 0;
  std::string sum;
  bool no_verify = false;
};

zeros::ZeroTable load_table(const Global& g, const std::string& path, bool verify) {
  zeros::LoadOptions opts;
  opts.ctx = context(g);
  opts.verify = verify;
  return zeros::load_zeros(path, opts);
}

void run_zeros(const Global& g, const ZerosArgs& a) {
  const Rational x = parse_rational(a.x);
  check_limit(g, x);
  auto table = load_table(g, a.file, !a.no_verify);
  if (a.count > 0) table = table.first(a.count);
  const PrecisionContext ctx = context(g);
  ScopedPrecision guard(ctx);
  const int d = g.output_digits;
  std::cout << "zeros = " << table.size() << ", t_max = " << to_string(table.t_max(), 12)
            << " (zero sums truncated at t_max)\n";
  if (!a.sum.empty()) {
    const auto which = zeros::parse_mobius_sum(a.sum);
    const auto ex = zeros::explicit_mobius_sum(which, x, table, ctx);
    const std::int64_t n = floor_to_int64(x);
    const auto mu = arith::sieve_mobius(n);
    Real exact = 0;
    if (which == zeros::MobiusSum::inv_square_log) {
      for (std::int64_t k = 1; k <= n; ++k) {
        if (mu.integer(k) != 0) exact += mu.integer(k) * mp::log(to_real(x) / k) / (Real(k) * k);
      }
    } else {
      exact = error_terms::partial_sum(
          mu, which == zeros::MobiusSum::inv ? error_terms::Weight::inv : error_terms::Weight::inv_square, x, ctx);
    }
    print_value("explicit", ex.value, d);
    print_value("  main", ex.main, d);
    print_value("  zero sum", ex.zero_sum, d);
    print_value("  correction", ex.correction, d);
    print_value("exact", exact, d);
    print_value("difference", ex.value - exact, 6);
    return;
  }
  if (!is_half_integer(x)) throw std::invalid_argument("x must be a half-integer n/2 with n odd");
  const expansions::Expander e(exactsum::GcdFunction::id, floor_to_int64(x), a.r, {ctx, Real(g.delta_c)});
  const Real k = zeros::theorem13_k(x, a.r, table, e);
  const Real res = e.residual(x, a.r);
  const Real jump = to_real(Rational(floor_to_int64(x)) - x) / 2;
  print_value("theorem13_k", k, d);
  print_value("theorem_side", e.theorem_side(x, a.r), d);
  print_value("residual", res, d);
  print_value("residual - theorem13_k", res - k, 6);
  print_value("([x]-x)/2", jump, 6);
  print_value("residual - theorem13_k - ([x]-x)/2", res - k - jump, 6);
}

// ---------------------------------------------------------------------------

struct JsumArgs {
  std::string file;
  std::string lambda = "0.5";
  std::string tgrid = "100,200,500,1000";
  bool no_verify = false;
};

void run_jsum(const Global& g, const JsumArgs& a) {
  const auto table = load_table(g, a.file, !a.no_verify);
  const PrecisionContext ctx = context(g);
  ScopedPrecision guard(ctx);
  const Real lambda = parse_real(a.lambda);
  std::vector<Real> ts;
  std::stringstream list(a.tgrid);
  for (std::string item; std::getline(list, item, ',');) ts.push_back(parse_real(item));
  if (ts.empty()) throw std::invalid_argument("empty --tgrid");

  Output out(g.out);
  auto& os = out.stream();
  auto rows = nlohmann::json::array();
  if (g.format == "csv") os << "T,lambda,J,ratio,zeros,precision\n";
  for (const Real& t : ts) {
    const Real j = zeros::j_minus_lambda(t, lambda, table, ctx);
    const Real ratio = t > mp::exp(Real(1)) ? j / (t * mp::pow(mp::log(t), (lambda - 1) * (lambda - 1))) : Real(0);
    const Real count = table.empty() ? Real(0) : zeros::j_minus_lambda(t, Real(0), table, ctx);
    const int d = g.output_digits;
    if (g.format == "csv") {
      os << to_string(t, d) << ',' << to_string(lambda, d) << ',' << to_string(j, d) << ',' << to_string(ratio, d)
         << ',' << to_string(count, d) << ',' << g.digits << '\n';
    } else {
      rows.push_back({{"T", to_string(t, d)},
                      {"lambda", to_string(lambda, d)},
                      {"J", to_string(j, d)},
                      {"ratio", to_string(ratio, d)},
                      {"zeros", to_string(count, d)},
                      {"precision", g.digits}});
    }
  }
  if (g.format == "json") os << rows.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct TableArgs {
  std::string name;
  int m = 1;
};

void run_table(const Global& g, const TableArgs& a) {
  Output out(g.out);
  const std::int64_t n = g.limit;
  if (a.name == "mu" || a.name == "mobius") {
    arith::sieve_mobius(n).write_csv(out.stream());
  } else if (a.name == "mu_mu" || a.name == "mu_absmu") {
    error_terms::convolved_table(error_terms::parse_convolved(a.name), n).write_csv(out.stream());
  } else if (a.name == "sigma") {
    arith::sigma_minus_table(a.m, n).write_csv(out.stream());
  } else if (a.name == "pillai") {
    std::vector<std::int64_t> values(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t k = 1; k <= n; ++k) values[static_cast<std::size_t>(k)] = exactsum::pillai(k);
    arith::ArithTable::integral("pillai", std::move(values)).write_csv(out.stream());
  } else {
    arith::sieve_named(a.name, n).write_csv(out.stream());
  }
}

void run_regression() {
  const std::string path = regression::default_path();
  const auto file = regression::RegressionFile::load(path);
  std::cout << "# " << path << '\n';
  for (const auto& [k, v] : file.values()) std::cout << k << " = " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact values, asymptotic residuals and zero sums for the gcd-sum averages M_r(x; f)"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Global g;
  app.add_option("--precision", g.digits, "working precision in decimal digits (>= 15)")->capture_default_str();
  app.add_option("--delta-c", g.delta_c, "constant C in the delta(x) envelope")->capture_default_str();
  app.add_option("--limit", g.limit, "largest [x] any table may reach")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--digits", g.output_digits, "digits printed per value")->capture_default_str();

  ExactArgs exact;
  auto* c_exact = app.add_subcommand("exact", "M_r(x; f) as an exact rational");
  c_exact->add_option("--x", exact.x, "x as p/q")->required();
  c_exact->add_option("--r", exact.r)->capture_default_str();
  c_exact->add_option("--f", exact.f, "id, phi or psi")->capture_default_str();
  c_exact->add_option("--method", exact.method)
      ->check(CLI::IsMember({"naive", "identity", "both"}))
      ->capture_default_str();

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "residual against its refined expression on a log grid");
  c_scan->add_option("--f", scan.f)->capture_default_str();
  c_scan->add_option("--r", scan.r)->capture_default_str();
  c_scan->add_option("--xmin", scan.xmin)->capture_default_str();
  c_scan->add_option("--xmax", scan.xmax)->capture_default_str();
  c_scan->add_option("--points", scan.points, "grid points (overrides --density)");
  c_scan->add_option("--density", scan.density, "points per decade")->capture_default_str();
  c_scan->add_flag("--half-integers", scan.half_integers, "move points to [x] + 1/2");
  c_scan->add_option("--threads", scan.threads)->capture_default_str();

  LemmaArgs lemma;
  auto* c_lemma = app.add_subcommand("lemmas", "exact identity checks and partial-sum reports");
  std::vector<std::string> names;
  for (const auto& [alias, name] : lemma_aliases()) {
    names.push_back(alias);
    names.push_back(name);
  }
  c_lemma->add_option("--which", lemma.which)->required()->check(CLI::IsMember(names));
  c_lemma->add_option("--x", lemma.x)->capture_default_str();

  ZerosArgs zargs;
  auto* c_zeros = app.add_subcommand("zeros", "zero-sum form of the id residual, or explicit Moebius sums");
  c_zeros->add_option("--file", zargs.file)->required();
  c_zeros->add_option("--x", zargs.x)->capture_default_str();
  c_zeros->add_option("--r", zargs.r)->capture_default_str();
  c_zeros->add_option("--count", zargs.count, "use only the first N zeros");
  c_zeros->add_option("--sum", zargs.sum, "inv, inv_square or inv_square_log");
  c_zeros->add_flag("--no-verify", zargs.no_verify, "skip recomputing zeta at each zero");

  JsumArgs jargs;
  auto* c_jsum = app.add_subcommand("jsum", "J_{-lambda}(T) over a T grid");
  c_jsum->add_option("--file", jargs.file)->required();
  c_jsum->add_option("--lambda", jargs.lambda)->capture_default_str();
  c_jsum->add_option("--tgrid", jargs.tgrid, "comma-separated T values")->capture_default_str();
  c_jsum->add_flag("--no-verify", jargs.no_verify);

  TableArgs targs;
  auto* c_table = app.add_subcommand("table", "arithmetic function table up to --limit as CSV");
  c_table->add_option("--name", targs.name, "mu, phi, psi, tau, abs_mu, mu_mu, mu_absmu, sigma, pillai")->required();
  c_table->add_option("--m", targs.m, "sigma_{-2m}")->capture_default_str();

  auto* c_regression = app.add_subcommand("regression", "show the frozen regression constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (g.digits < 15) throw std::invalid_argument("--precision must be at least 15");
    if (*c_exact) run_exact(g, exact);
    if (*c_scan) run_scan(g, scan);
    if (*c_lemma) run_lemma(g, lemma);
    if (*c_zeros) run_zeros(g, zargs);
    if (*c_jsum) run_jsum(g, jargs);
    if (*c_table) run_table(g, targs);
    if (*c_regression) run_regression();
  } catch (const NumericFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const zeros::LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return 0;
}
