#include "sqmod/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sqmod/buchstab.hpp"
#include "sqmod/expsum.hpp"
#include "sqmod/integrator.hpp"
#include "sqmod/kernels/kernels.hpp"
#include "sqmod/moduli.hpp"
#include "sqmod/params.hpp"
#include "sqmod/rational.hpp"
#include "sqmod/sieve.hpp"
#include "sqmod/suites.hpp"

namespace sqmod::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return fmt_double(d); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

std::vector<std::pair<std::string, std::string>> echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> e = {
      {"subcommand", c.subcommand}, {"sigma", c.sigma}, {"varpi", c.varpi}, {"delta", c.delta}, {"eta", c.eta},
      {"seed", std::to_string(c.seed)}, {"format", c.format}};
  if (c.subcommand == "deficiency") {
    e.insert(e.end(), {{"samples", std::to_string(c.samples)},
                       {"replicates", std::to_string(c.replicates)},
                       {"omega", c.omega},
                       {"sampling", c.sampling},
                       {"strict_gap", c.strict_gap ? "true" : "false"}});
  } else if (c.subcommand == "expsum") {
    e.insert(e.end(), {{"corpus", c.corpus},
                       {"cases", std::to_string(c.cases)},
                       {"scale", c.scale},
                       {"smooth_delta", c.smooth_delta}});
  } else if (c.subcommand == "primes") {
    e.insert(e.end(), {{"x", std::to_string(c.x)},
                       {"k", std::to_string(c.k)},
                       {"a", std::to_string(c.a)},
                       {"max_members", std::to_string(c.max_members)}});
  } else if (c.subcommand == "selftest") {
    e.insert(e.end(), {{"samples", std::to_string(c.samples)}, {"replicates", std::to_string(c.replicates)}});
  }
  return e;
}

void write_machine_output(const RunConfig& config, const Table& table) {
  if (config.output.empty()) return;
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + config.output);
  if (config.format == "json") {
    nlohmann::ordered_json doc;
    for (const auto& [k, v] : echo(config)) doc["config"][k] = v;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json r;
      for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
      doc["rows"].push_back(r);
    }
    for (const auto& [k, v] : table.summary) doc["summary"][k] = cell_json(v);
    file << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : echo(config)) file << "# " << k << '=' << v << '\n';
  for (const auto& [k, v] : table.summary) file << "# summary." << k << '=' << cell_text(v) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) file << (i ? "," : "") << table.columns[i];
  file << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) file << (i ? "," : "") << cell_text(row[i]);
    file << '\n';
  }
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--" + name + ": " + e.what());
  }
}

SieveParameters resolve_params(const RunConfig& c) {
  const Rational sigma = rational_flag("sigma", c.sigma);
  const Rational varpi = rational_flag("varpi", c.varpi);
  const Rational delta = rational_flag("delta", c.delta);
  const Rational eta = rational_flag("eta", c.eta);
  try {
    return derive_parameters(sigma, varpi, delta, eta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------- constraints

bool run_constraints(const RunConfig& config, Table& table, std::ostream& out) {
  const SieveParameters params = resolve_params(config);
  const ConstraintReport report = check_constraints(params);
  const AdmissibleDelta best = max_admissible_delta(params.sigma, params.varpi);

  table.columns = {"name", "value", "bound", "margin", "ok"};
  out << "constraint                value                bound                margin        ok\n";
  for (const auto& e : report.entries) {
    table.rows.push_back({e.name, to_string(e.value), to_string(e.bound), to_string(e.margin), e.satisfied});
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %-20.12g %-20.12g %-13.6g %s\n", e.name.c_str(), to_double(e.value),
                  to_double(e.bound), to_double(e.margin), e.satisfied ? "yes" : "NO");
    out << line;
  }
  const bool delta_ok = best.value > 0 && params.delta < best.value;
  out << "max admissible delta = " << to_string(best.value) << " ~ " << fmt_double(to_double(best.value))
      << " (binding: " << best.binding << ")\n";

  const FactorizationWindows w = factorization_windows(params, params.gamma.value_or(params.sigma));
  out << "R window  [" << to_string(w.r_window.lo) << ", " << to_string(w.r_window.hi) << "]\n"
      << "Q window  [" << to_string(w.q_window.lo) << ", " << to_string(w.q_window.hi) << "]\n"
      << "Type I Q  [" << to_string(w.type_i_q_window.lo) << ", " << to_string(w.type_i_q_window.hi) << "]\n"
      << "W exp     " << to_string(w.w_exp) << '\n';

  table.summary = {{"max_admissible_delta", to_string(best.value)},
                   {"max_admissible_delta_approx", to_double(best.value)},
                   {"binding", best.binding},
                   {"delta_admissible", delta_ok},
                   {"w_exp", to_string(w.w_exp)}};
  const bool pass = report.all_satisfied() && delta_ok;
  out << (pass ? "all constraints satisfied\n" : "constraint check FAILED\n");
  return pass;
}

// ----------------------------------------------------------------- deficiency

DeficiencyOptions deficiency_options(const RunConfig& c, const BuchstabTable* table) {
  DeficiencyOptions o;
  o.qmc.samples = c.samples;
  o.qmc.seed = c.seed;
  o.qmc.replicates = c.replicates;
  o.qmc.threads = c.threads;
  if (c.omega == "upper")
    o.omega = OmegaSource::UpperBound;
  else if (c.omega == "table")
    o.omega = OmegaSource::Table;
  else
    throw ConfigError("--omega must be 'upper' or 'table'");
  if (c.sampling == "log")
    o.sampling = Sampling::FoldedLog;
  else if (c.sampling == "folded")
    o.sampling = Sampling::Folded;
  else if (c.sampling == "box")
    o.sampling = Sampling::BoundingBox;
  else
    throw ConfigError("--sampling must be 'log', 'folded' or 'box'");
  o.strict_gap = c.strict_gap;
  o.table = table;
  return o;
}

void deficiency_row(Table& table, std::ostream& out, const DeficiencyEstimate& e, const char* variant) {
  const double bound = paper_bound(e.region);
  const double upper = e.value + e.error_bound;
  const bool pass = upper < bound;
  table.rows.push_back({std::string(region_name(e.region)), std::string(variant), e.value, e.error_bound, bound, upper,
                        pass});
  char line[160];
  std::snprintf(line, sizeof line, "%-5s %-8s %.6f +- %.6f  < %-8g %s\n", std::string(region_name(e.region)).c_str(),
                variant, e.value, e.error_bound, bound, pass ? "ok" : "EXCEEDS");
  out << line;
}

bool run_deficiency(const RunConfig& config, Table& table, std::ostream& out) {
  const SieveParameters params = resolve_params(config);
  std::optional<BuchstabTable> buchstab;
  if (config.omega == "table") buchstab.emplace(25.0, 10000);
  const DeficiencyOptions options = deficiency_options(config, buchstab ? &*buchstab : nullptr);
  if (options.qmc.samples < 10'000) throw ConfigError("--samples must be at least 10000");
  if (options.qmc.replicates < 2) throw ConfigError("--replicates must be at least 2");

  table.columns = {"region", "variant", "value", "error", "bound", "upper", "pass"};
  const char* variant = config.strict_gap ? "strict" : "printed";
  const TotalDeficiency total = total_deficiency(params, options);
  for (const auto& e : total.estimates) deficiency_row(table, out, e, variant);

  if (!total.regions_certified) {
    out << "a region exceeds its bound; comparing the other gap-exclusion variant for G2 and F3\n";
    DeficiencyOptions alt = options;
    alt.strict_gap = !options.strict_gap;
    for (RegionId id : {RegionId::G2, RegionId::F3})
      deficiency_row(table, out, integrate(Region(id, params, alt.strict_gap), alt), alt.strict_gap ? "strict" : "printed");
  }
  char line[200];
  std::snprintf(line, sizeof line, "S1 = %.6f  S2 = %.6f  S3 = %.6f  total = %.6f  margin = %.6f  (errors %.2e)\n",
                total.s1, total.s2, total.s3, total.total, total.margin, total.error_sum);
  out << line;
  table.summary = {{"s1", total.s1},
                   {"s2", total.s2},
                   {"s3", total.s3},
                   {"total", total.total},
                   {"margin", total.margin},
                   {"error_sum", total.error_sum},
                   {"regions_certified", total.regions_certified},
                   {"margin_certified", total.margin_certified}};
  const bool pass = total.regions_certified && total.margin_certified;
  out << (pass ? "margin - errors > 0.05: certified\n" : "deficiency certification FAILED\n");
  return pass;
}

// --------------------------------------------------------------------- expsum

struct CorpusCase {
  i64 c1 = 0, c2 = 0, tau = 0, xi = 0;
  u64 d1 = 1, d2 = 1;
  u64 p = 0;  ///< complete sum modulus (p or p^2 via [d1,d2])
  u64 q = 0;  ///< incomplete sum modulus
  double N = 0;
};

std::vector<CorpusCase> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read corpus " + path);
  std::vector<CorpusCase> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CorpusCase c;
      c.c1 = j.value("c1", i64{0});
      c.d1 = j.value("d1", u64{1});
      c.c2 = j.value("c2", i64{0});
      c.d2 = j.value("d2", u64{1});
      c.tau = j.value("tau", i64{0});
      c.xi = j.value("xi", i64{0});
      c.p = j.value("p", u64{0});
      c.q = j.value("q", u64{0});
      c.N = j.value("N", 0.0);
      if ((c.p == 0) == (c.q == 0)) throw ConfigError("exactly one of p, q is required");
      out.push_back(c);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CorpusCase> generated_corpus(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  auto in = [&](u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); };
  auto prime_in = [&](u64 lo, u64 hi) {
    for (;;) {
      const u64 p = in(lo, hi);
      if (is_prime(p)) return p;
    }
  };
  std::vector<CorpusCase> out;
  for (int i = 0; i < cases; ++i) {
    CorpusCase c;
    const int kind = i % 4;
    if (kind == 0) {  // mod p
      c.p = prime_in(5, 499);
      c.d1 = c.p;
      c.d2 = in(0, 1) ? c.p : 1;
    } else if (kind == 1) {  // mod p^2
      c.p = prime_in(5, 199);
      c.d1 = c.p * c.p;
      c.d2 = in(0, 1) ? c.d1 : 1;
    } else if (kind == 2) {  // incomplete, prime square modulus
      const u64 p = prime_in(50, 150);
      c.q = p * p;
      c.d1 = c.q;
      c.N = std::floor(std::pow(static_cast<double>(c.q), 0.3 + 0.6 * static_cast<double>(in(0, 100)) / 100.0));
    } else {  // incomplete, 7-smooth cube-free modulus
      static constexpr u64 smooth[] = {44100, 11025, 4900, 1764, 2205, 8820, 6300, 22050};
      c.q = smooth[in(0, 7)];
      c.d1 = c.q;
      c.N = std::floor(std::pow(static_cast<double>(c.q), 0.3 + 0.6 * static_cast<double>(in(0, 100)) / 100.0));
    }
    const u64 m = c.p ? c.p : c.q;
    c.c1 = static_cast<i64>(in(1, m - 1));
    c.c2 = static_cast<i64>(in(1, m - 1));
    c.tau = static_cast<i64>(in(1, m - 1));
    c.xi = static_cast<i64>(in(0, m - 1));
    out.push_back(c);
  }
  return out;
}

bool run_expsum(const RunConfig& config, Table& table, std::ostream& out, std::ostream& err) {
  const double X = to_double(rational_flag("scale", config.scale));
  const double sd = to_double(rational_flag("smooth-delta", config.smooth_delta));
  if (config.cases < 1) throw ConfigError("--cases must be positive");
  const auto corpus = config.corpus.empty() ? generated_corpus(config.seed, config.cases) : read_corpus(config.corpus);

  table.columns = {"case", "kind", "modulus", "abs_s", "bound", "ratio", "pass"};
  int failures = 0, skipped = 0, rows = 0;
  double worst_pv = 0, worst_vdc = 0, worst_exact = 0;
  constexpr double kCeiling = 100.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusCase& c = corpus[i];
    std::optional<RationalPhase> phase;
    try {
      phase.emplace(c.c1, c.d1, c.c2, c.d2, c.tau, c.xi);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("case " + std::to_string(i) + ": " + e.what());
    }
    auto add = [&](const char* kind, u64 modulus, double s, double bound, double ceiling) {
      const double ratio = s / bound;
      const bool pass = ratio <= ceiling;
      failures += !pass;
      ++rows;
      table.rows.push_back({static_cast<std::uint64_t>(i), std::string(kind), modulus, s, bound, ratio, pass});
      return ratio;
    };
    try {
      if (c.p) {
        if (c.p <= 3 || (c.tau % static_cast<i64>(c.p) == 0 && c.d2 > 1)) {
          err << "case " << i << ": excluded (p <= 3 or tau = 0 mod p)\n";
          ++skipped;
          continue;
        }
        const u64 l = phase->modulus();
        if (c.p % l == 0) {
          critical_points(*phase, c.p);  // degeneracy screen
          const double s = std::abs(complete_sum_prime(*phase, c.p));
          worst_exact = std::max(worst_exact, add("weil", c.p, s, kWeilConstant * std::sqrt(static_cast<double>(c.p)), 1.0));
        } else if (l == c.p * c.p) {
          const PrimeSquareSum s = complete_sum_prime_square(*phase, c.p);
          worst_exact = std::max(worst_exact, add("cz", l, std::abs(s.total), s.bound, 1.0 + 1e-12));
        } else {
          throw ConfigError("case " + std::to_string(i) + ": [d1,d2] must be p or p^2");
        }
      } else {
        if (phase->modulus() != c.q) throw ConfigError("case " + std::to_string(i) + ": [d1,d2] must equal q");
        Window w;
        w.length = c.N;
        const double s = std::abs(incomplete_sum(*phase, w));
        const BoundContext ctx = make_bound_context(*phase, 1, c.N);
        worst_pv = std::max(worst_pv, add("pv", c.q, s, pv_bound(ctx), kCeiling));
        try {
          const SmoothFactorization f = smooth_factorize(ctx.q1, sd, X);
          worst_vdc = std::max(worst_vdc, add("vdc", c.q, s, vdc_bound(ctx, f), kCeiling));
        } catch (const std::invalid_argument&) {
          // modulus not smooth at this scale; no q-van der Corput row
        }
      }
    } catch (const DegeneratePhase& e) {
      err << "case " << i << ": excluded, degenerate phase (" << e.what() << ")\n";
      ++skipped;
    }
  }
  out << rows << " rows from " << corpus.size() << " cases, " << skipped << " excluded\n"
      << "max |S|/bound for complete sums: " << fmt_double(worst_exact) << '\n'
      << "max |S|/pv_bound: " << fmt_double(worst_pv) << "   max |S|/vdc_bound: " << fmt_double(worst_vdc) << '\n';
  table.summary = {{"rows", static_cast<std::uint64_t>(rows)},
                   {"excluded", static_cast<std::uint64_t>(skipped)},
                   {"failures", static_cast<std::uint64_t>(failures)},
                   {"max_complete_ratio", worst_exact},
                   {"max_pv_ratio", worst_pv},
                   {"max_vdc_ratio", worst_vdc}};
  out << (failures == 0 ? "all exponential-sum bounds hold\n" : "exponential-sum check FAILED\n");
  return failures == 0;
}

// --------------------------------------------------------------------- primes

bool run_primes(const RunConfig& config, Table& table, std::ostream& out, std::ostream& err) {
  const SieveParameters params = resolve_params(config);
  FamilyConfig fc;
  fc.X = config.x;
  fc.K = config.k;
  fc.varpi = params.varpi;
  fc.delta = params.delta;
  fc.max_members = config.max_members;
  fc.seed = config.seed;
  ModuliFamily family;
  try {
    family = build_family(fc);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!family.split_in_window) err << "note: " << family.split_note << '\n';
  SieveOptions so;
  so.threads = config.threads;
  const CountReport rep = equidistribution_report(family, config.a, so);
  const CountReport mirror = equidistribution_report(family, -config.a, so);
  for (const auto& line : rep.skipped) err << line << '\n';

  table.columns = {"d", "d_sq", "count", "expectation", "ratio", "z"};
  for (const auto& r : rep.rows)
    table.rows.push_back({r.d, r.d_sq, r.count, r.expectation, r.ratio, r.z});

  out << "X = " << family.X << ", K = " << family.K << ", D = " << fmt_double(family.D) << ", members "
      << family.members.size() << " of " << family.total_members << ", K0 = " << family.split_index << '\n';
  for (const auto& iv : family.intervals)
    out << "  I_" << iv.j << " = (" << fmt_double(iv.lo) << ", " << fmt_double(iv.hi) << "]: " << iv.primes.size()
        << " primes\n";
  out << "primes in (X, 2X]: " << rep.interval_primes << '\n'
      << "mean ratio " << fmt_double(rep.mean_ratio) << ", within 3 sigma " << fmt_double(rep.fraction_in_band)
      << ", ratio <= 0.05: " << fmt_double(rep.fraction_below_threshold) << ", anomalies " << rep.anomalies.size()
      << '\n'
      << "a = " << -config.a << ": mean ratio " << fmt_double(mirror.mean_ratio) << ", within 3 sigma "
      << fmt_double(mirror.fraction_in_band) << '\n';

  table.summary = {{"interval_primes", rep.interval_primes},
                   {"members", static_cast<std::uint64_t>(rep.rows.size())},
                   {"skipped", static_cast<std::uint64_t>(rep.skipped.size())},
                   {"mean_ratio", rep.mean_ratio},
                   {"fraction_in_band", rep.fraction_in_band},
                   {"fraction_below_threshold", rep.fraction_below_threshold},
                   {"anomalies", static_cast<std::uint64_t>(rep.anomalies.size())},
                   {"mirror_mean_ratio", mirror.mean_ratio},
                   {"mirror_fraction_in_band", mirror.fraction_in_band},
                   {"split_index", static_cast<std::int64_t>(family.split_index)},
                   {"split_in_window", family.split_in_window}};
  if (config.format == "json") {
    // family dump travels with the JSON report
    for (const auto& m : family.members) {
      std::string ps;
      for (auto p : m.primes) ps += (ps.empty() ? "" : "*") + std::to_string(p);
      table.summary.push_back({"member_" + std::to_string(m.d), ps + " r=" + std::to_string(m.r) + " q=" + std::to_string(m.q)});
    }
  }
  const bool pass = rep.fraction_in_band >= 0.95 && rep.anomalies.empty();
  out << (pass ? "equidistribution within Poisson bands\n" : "equidistribution check FAILED\n");
  return pass;
}

// ------------------------------------------------------------------- selftest

bool run_selftest(const RunConfig& config, Table& table, std::ostream& out) {
  table.columns = {"check", "value", "expected", "tolerance", "pass"};
  bool all = true;
  auto check = [&](const std::string& name, double value, double expected, double tol) {
    const bool pass = std::abs(value - expected) <= tol;
    all = all && pass;
    table.rows.push_back({name, value, expected, tol, pass});
    char line[200];
    std::snprintf(line, sizeof line, "%-32s %-16.10g expected %-16.10g %s\n", name.c_str(), value, expected,
                  pass ? "ok" : "FAIL");
    out << line;
  };

  // closed-form quadrature
  SamplingChart chart{{0.2, 0.2}, {0.3, 0.3}, 2};
  QmcOptions qo;
  qo.samples = std::max<std::uint64_t>(config.samples, 1'000'000);
  qo.seed = config.seed;
  qo.replicates = config.replicates;
  qo.threads = config.threads;
  const auto q = integrate_chart(chart, [](std::span<const double> a) { return 1.0 / (a[0] * a[1] * a[1]); }, qo);
  check("quadrature", q.value, 5.0 * std::log(1.5) - (5.0 - 10.0 / 3.0), 1e-3);

  const BuchstabTable omega(12.0, 10000);
  check("omega(3)", omega(3.0), (1.0 + std::numbers::ln2) / 3.0, 1e-4);
  double excess = 0;
  for (double u = 1.0; u <= 10.0; u += 0.001) excess = std::max(excess, omega(u) - omega_upper(u));
  check("omega_minus_upper_max", std::max(excess, 0.0), 0.0, 1e-6);

  check("kloosterman_S(1,1;5)", complete_sum_prime(RationalPhase(1, 5, 0, 1, 0, 1), 5).real(),
        2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0), 1e-9);
  check("inverse_sum_mod_25", std::abs(complete_sum_prime_square(RationalPhase(1, 25), 5).total), 0.0, 1e-6);
  check("c_6(1)", static_cast<double>(ramanujan(6, 1)), 1.0, 0.0);
  check("c_4(2)", static_cast<double>(ramanujan(4, 2)), -2.0, 0.0);

  out << "Ramanujan sums c_q(n), q = 1..8, n = 0..8\n";
  for (u64 qq = 1; qq <= 8; ++qq) {
    out << "  q=" << qq << ':';
    for (i64 n = 0; n <= 8; ++n) out << ' ' << ramanujan(qq, n);
    out << '\n';
  }
  const RamanujanSuite rs = run_ramanujan_suite(100, 100);
  check("ramanujan_violations_q<=100", static_cast<double>(rs.bound_violations + rs.formula_mismatches), 0.0, 0.0);
  const CrtSuite crt = run_crt_suite(config.seed, 20, 2000);
  check("crt_max_residual", crt.max_residual, 0.0, kCrtTolerance);

  const u64 sieve = count_primes(1'000'000, 2'000'000);
  const u64 scan = prime_count_in_progression_scan(1'000'000, 1, 0);
  check("pi(2e6)-pi(1e6)_sieve", static_cast<double>(sieve), 70435.0, 0.0);
  check("pi(2e6)-pi(1e6)_scan", static_cast<double>(scan), 70435.0, 0.0);

  if (kernels::avx2_available()) {
    std::mt19937_64 rng(config.seed);
    std::vector<double> v(10007);
    for (auto& x : v) x = std::uniform_real_distribution<double>(-1, 1)(rng);
    const double a = kernels::scalar_kernels().sum(v);
    const double b = kernels::avx2_kernels().sum(v);
    check("kernel_sum_scalar_vs_avx2", b - a, 0.0, 0.0);
  }
  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  table.summary = {{"passed", all}};
  return all;
}

void select_isa(const std::string& isa) {
  if (isa == "auto") return;
  try {
    if (isa == "scalar")
      kernels::set_active(kernels::Isa::Scalar);
    else if (isa == "avx2")
      kernels::set_active(kernels::Isa::Avx2);
    else
      throw ConfigError("--isa must be auto, scalar or avx2");
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

// lets counts be written as 1e7
const CLI::Validator kCount(
    [](std::string& text) -> std::string {
      if (text.find_first_of("eE") == std::string::npos) return {};
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        return "not a count: " + text;
      }
      if (used != text.size() || !(v >= 0.0) || v > 9.0e15 || v != std::floor(v)) return "not a count: " + text;
      text = std::to_string(static_cast<std::uint64_t>(v));
      return {};
    },
    "COUNT");

// Config file entries become flags placed right after the subcommand name;
// with take-last semantics anything given on the command line wins.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string>& subcommands) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  const auto items = CLI::ConfigTOML().from_file(path);
  auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (sub == args.end()) return args;
  std::vector<std::string> flags;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && item.parents.front() != *sub) continue;
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    if (item.inputs.size() == 1) {
      flags.push_back("--" + name + "=" + item.inputs.front());
    } else {
      flags.push_back("--" + name);
      flags.insert(flags.end(), item.inputs.begin(), item.inputs.end());
    }
  }
  args.insert(sub + 1, flags.begin(), flags.end());
  return args;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "csv" && config.format != "json") throw ConfigError("--format must be csv or json");
    if (config.threads < 1) throw ConfigError("--threads must be positive");
    select_isa(config.isa);
    Table table;
    bool pass = false;
    if (config.subcommand == "constraints")
      pass = run_constraints(config, table, out);
    else if (config.subcommand == "deficiency")
      pass = run_deficiency(config, table, out);
    else if (config.subcommand == "expsum")
      pass = run_expsum(config, table, out, err);
    else if (config.subcommand == "primes")
      pass = run_primes(config, table, out, err);
    else if (config.subcommand == "selftest")
      pass = run_selftest(config, table, out);
    else
      throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    write_machine_output(config, table);
    return pass ? kExitOk : kExitCertificationFailed;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Numerical checks for primes in residue classes modulo smooth squares"};
  app.require_subcommand(1, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "TOML-like key = value file; flags override it");
    sub->add_option("--sigma", config.sigma, "sigma as p/q or decimal")->capture_default_str();
    sub->add_option("--varpi", config.varpi, "varpi")->capture_default_str();
    sub->add_option("--delta", config.delta, "delta")->capture_default_str();
    sub->add_option("--eta", config.eta, "eta")->capture_default_str();
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads")->capture_default_str();
    sub->add_option("--isa", config.isa, "auto, scalar or avx2")->capture_default_str();
    sub->add_option("--output,-o", config.output, "machine output file");
    sub->add_option("--format", config.format, "csv or json")->capture_default_str();
  };

  auto* constraints = app.add_subcommand("constraints", "exponent constraint ledger");
  common(constraints);

  auto* deficiency = app.add_subcommand("deficiency", "deficiency integrals and the final margin");
  common(deficiency);
  deficiency->add_option("--samples", config.samples, "QMC points per region")->transform(kCount)->capture_default_str();
  deficiency->add_option("--replicates", config.replicates, "random shifts")->capture_default_str();
  deficiency->add_option("--omega", config.omega, "upper or table")->capture_default_str();
  deficiency->add_option("--sampling", config.sampling, "log, folded or box")->capture_default_str();
  deficiency->add_flag("--strict-gap", config.strict_gap, "exclude every subset sum in G2 and F3");

  auto* expsum = app.add_subcommand("expsum", "exponential sums against their bounds");
  common(expsum);
  expsum->add_option("--corpus", config.corpus, "JSON lines {c1,d1,c2,d2,tau,xi,p|q,N}");
  expsum->add_option("--cases", config.cases, "generated cases when no corpus is given")->capture_default_str();
  expsum->add_option("--scale", config.scale, "X in the smoothness factor")->capture_default_str();
  expsum->add_option("--smooth-delta", config.smooth_delta, "delta in the smoothness factor")->capture_default_str();

  auto* primes = app.add_subcommand("primes", "primes in progressions modulo d^2");
  common(primes);
  primes->add_option("--x", config.x, "scale X; counts primes in (X, 2X]")->transform(kCount)->capture_default_str();
  primes->add_option("--k", config.k, "number of prime blocks")->capture_default_str();
  primes->add_option("--a", config.a, "residue class")->capture_default_str();
  primes->add_option("--max-members", config.max_members, "sample this many moduli (0 = all)")
      ->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "closed-form and fixed-value checks");
  common(selftest);
  selftest->add_option("--samples", config.samples, "quadrature points (at least 10^6)")->transform(kCount);
  selftest->add_option("--replicates", config.replicates, "random shifts")->capture_default_str();

  std::vector<std::string> subcommands;
  for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    subcommands.push_back(sub->get_name());
  try {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    args = expand_config(std::move(args), subcommands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  if (config.subcommand == "selftest" && selftest->count("--samples") == 0) config.samples = 1'000'000;
  return run(config, out, err);
}

}  // namespace sqmod::cli
