#include "sqmod/params.hpp"

#include <stdexcept>

namespace sqmod {

namespace {

const Rational kHalf(1, 2);

void require_unit_open(const Rational& x, const char* name) {
  if (x <= 0 || x >= 1)
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " + to_string(x));
}

void require_unit_halfopen(const Rational& x, const char* name) {
  if (x < 0 || x >= 1)
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1), got " + to_string(x));
}

ConstraintEntry make_entry(std::string name, Rational value, Rational bound, bool strict) {
  Rational margin = bound - value;
  const bool ok = strict ? margin > 0 : margin >= 0;
  return ConstraintEntry{std::move(name), std::move(value), std::move(bound), strict, ok,
                         std::move(margin)};
}

}  // namespace

GapSet::Fast GapSet::fast() const {
  return Fast{outer.lo.get_d(), outer.hi.get_d(), inner.lo.get_d(), inner.hi.get_d()};
}

SieveParameters SieveParameters::reference() {
  return derive_parameters(parse_rational("1/19.5"), Rational(1, 4000), Rational(0), Rational(0));
}

SieveParameters derive_parameters(const Rational& sigma_in, const Rational& varpi_in,
                                  const Rational& delta_in, const Rational& eta_in) {
  // gmp comparisons assume canonical form; callers may hand us mpq_class(a, b)
  Rational sigma = sigma_in, varpi = varpi_in, delta = delta_in, eta = eta_in;
  for (Rational* r : {&sigma, &varpi, &delta, &eta}) r->canonicalize();
  require_unit_open(sigma, "sigma");
  require_unit_open(varpi, "varpi");
  require_unit_halfopen(delta, "delta");
  require_unit_halfopen(eta, "eta");
  if (sigma <= 2 * varpi + delta)
    throw std::invalid_argument("sigma must exceed 2*varpi + delta (empty Type II interior): sigma = " +
                                to_string(sigma) + ", 2*varpi + delta = " + to_string(2 * varpi + delta));
  if (sigma >= kHalf) throw std::invalid_argument("sigma must be below 1/2, got " + to_string(sigma));

  SieveParameters p;
  p.sigma = sigma;
  p.varpi = varpi;
  p.delta = delta;
  p.eta = eta;
  p.z_exp = sigma - 2 * varpi - delta;
  p.alpha_threshold = Rational(1, 8) + sigma / 2 - Rational(5, 2) * varpi - eta;
  p.d_exp = kHalf + 2 * varpi;
  p.gap.outer = {kHalf - sigma, kHalf + sigma};
  p.gap.inner = {kHalf - 2 * varpi, kHalf + 2 * varpi};
  for (Rational* r : {&p.z_exp, &p.alpha_threshold, &p.d_exp, &p.gap.outer.lo, &p.gap.outer.hi,
                      &p.gap.inner.lo, &p.gap.inner.hi})
    r->canonicalize();
  return p;
}

SieveParameters with_gamma(SieveParameters params, const Rational& gamma) {
  if (gamma < 2 * params.varpi + params.delta || gamma > params.sigma)
    throw std::invalid_argument("gamma must lie in [2*varpi + delta, sigma], got " + to_string(gamma));
  params.gamma = gamma;
  return params;
}

AdmissibleDelta max_admissible_delta(const Rational& sigma, const Rational& varpi) {
  // With gamma = sigma:
  //   19 sigma + 90 varpi + 71 delta < 1
  //   10 sigma + 40 varpi + 33 delta < 1
  //   30 varpi + 11 delta <= 1/2 - delta
  struct Candidate {
    const char* name;
    Rational value;
  };
  const Candidate candidates[] = {
      {"type_ii_main", (1 - 19 * sigma - 90 * varpi) / 71},
      {"type_ii_aux", (1 - 10 * sigma - 40 * varpi) / 33},
      {"type_i", (kHalf - 30 * varpi) / 12},
  };
  const Candidate* best = &candidates[0];
  for (const auto& c : candidates)
    if (c.value < best->value) best = &c;
  Rational value = best->value;
  value.canonicalize();
  return {value, best->name};
}

bool check_type_ii_range(const Rational& m_exp, const SieveParameters& params) {
  const Rational& s = params.sigma;
  const Rational excl = 2 * params.varpi + params.delta;
  const bool in_outer = m_exp >= kHalf - s && m_exp <= kHalf + s;
  const bool in_gap = m_exp >= kHalf - excl && m_exp <= kHalf + excl;
  return in_outer && !in_gap;
}

FactorizationWindows factorization_windows(const SieveParameters& params, const Rational& gamma) {
  const Rational& w = params.varpi;
  const Rational& d = params.delta;
  if (gamma < 2 * w + d || gamma > params.sigma)
    throw std::invalid_argument("gamma must lie in [2*varpi + delta, sigma], got " + to_string(gamma));

  FactorizationWindows out;
  out.r_window = {kHalf - 2 * w - 2 * gamma - 3 * d, kHalf - 2 * w - 2 * gamma - 2 * d};
  out.q_window = {4 * w + 2 * gamma + 2 * d, 4 * w + 2 * gamma + 3 * d};
  out.type_i_q_window = {16 * w + 8 * d, 16 * w + 9 * d};
  out.w_exp = 2 * gamma - 4 * w - 2 * d;
  for (Rational* r : {&out.r_window.lo, &out.r_window.hi, &out.q_window.lo, &out.q_window.hi,
                      &out.type_i_q_window.lo, &out.type_i_q_window.hi, &out.w_exp})
    r->canonicalize();

  if (out.r_window.lo + out.q_window.hi != params.d_exp || out.r_window.hi + out.q_window.lo != params.d_exp)
    throw std::logic_error("R/Q windows do not multiply to D");
  // W = M^2 X^(-2 delta) / (RQ)^2 with M = X^(1/2 + gamma) and RQ = D.
  const Rational w_direct = 2 * (kHalf + gamma) - 2 * d - 2 * params.d_exp;
  if (w_direct != out.w_exp) throw std::logic_error("W exponent mismatch");
  if (out.w_exp < 0) throw std::logic_error("W exponent negative inside the legal gamma range");
  return out;
}

bool ConstraintReport::all_satisfied() const {
  for (const auto& e : entries)
    if (!e.satisfied) return false;
  return true;
}

ConstraintReport check_constraints(const SieveParameters& params) {
  const Rational& s = params.sigma;
  const Rational& w = params.varpi;
  const Rational& d = params.delta;
  const Rational gamma = params.gamma.value_or(s);

  ConstraintReport report;
  auto& e = report.entries;
  e.push_back(make_entry("gap_nonempty", 2 * w + d, s, true));
  e.push_back(make_entry("type_i", 30 * w + 12 * d, kHalf, false));
  e.push_back(make_entry("type_ii_main", 19 * gamma + 90 * w + 71 * d, Rational(1), true));
  e.push_back(make_entry("type_ii_aux", 10 * gamma + 40 * w + 33 * d, Rational(1), true));
  e.push_back(make_entry("sigma", 19 * s + 90 * w + 71 * d, Rational(1), true));
  e.push_back(make_entry("w_nonnegative", 4 * w + 2 * d, 2 * gamma, false));
  for (auto& entry : e) {
    entry.value.canonicalize();
    entry.bound.canonicalize();
    entry.margin.canonicalize();
  }
  return report;
}

}  // namespace sqmod
