#pragma once

// Exact-rational bookkeeping for the exponents of the sieve argument and the
// inequalities they must satisfy.

#include <optional>
#include <string>
#include <vector>

#include "sqmod/rational.hpp"

namespace sqmod {

/// [1/2 - sigma, 1/2 + sigma] minus [1/2 - 2 varpi, 1/2 + 2 varpi]: exponents
/// for which no Type II information is available.
struct GapSet {
  RationalInterval outer;
  RationalInterval inner;

  bool contains(const Rational& x) const { return outer.contains(x) && !inner.contains(x); }

  /// Floating-point membership for integrands; endpoints are converted once.
  struct Fast {
    double outer_lo, outer_hi, inner_lo, inner_hi;
    bool contains(double x) const {
      return x >= outer_lo && x <= outer_hi && !(x >= inner_lo && x <= inner_hi);
    }
  };
  Fast fast() const;
};

struct SieveParameters {
  Rational sigma;  ///< Type II width exponent
  Rational varpi;  ///< equidistribution gain
  Rational delta;  ///< smoothness exponent
  Rational eta;    ///< slack (0 for reference runs)
  std::optional<Rational> gamma;  ///< Type II position, N = X^(1/2 - gamma)

  Rational z_exp;            ///< sigma - 2 varpi - delta
  Rational alpha_threshold;  ///< 1/8 + sigma/2 - 5 varpi/2 - eta
  Rational d_exp;            ///< 1/2 + 2 varpi
  GapSet gap;

  /// Reference exponents: sigma = 1/19.5, varpi = 1/4000, delta = eta = 0.
  static SieveParameters reference();
};

/// Validates the inputs and computes every derived exponent exactly.
/// Throws std::invalid_argument when a value lies outside (0, 1) (eta and
/// delta may be 0) or when sigma <= 2 varpi + delta.
SieveParameters derive_parameters(const Rational& sigma, const Rational& varpi,
                                  const Rational& delta, const Rational& eta);

/// Sets gamma after checking gamma in [2 varpi + delta, sigma].
SieveParameters with_gamma(SieveParameters params, const Rational& gamma);

struct AdmissibleDelta {
  Rational value;       ///< supremum of admissible delta; <= 0 means infeasible
  std::string binding;  ///< name of the constraint attaining the minimum
};

/// Supremum of delta satisfying the Type I and both Type II constraint
/// families, with gamma at its worst case gamma = sigma.
AdmissibleDelta max_admissible_delta(const Rational& sigma, const Rational& varpi);

/// m_exp in [1/2 - sigma, 1/2 + sigma] and outside [1/2 - 2 varpi - delta, 1/2 + 2 varpi + delta].
bool check_type_ii_range(const Rational& m_exp, const SieveParameters& params);

struct FactorizationWindows {
  RationalInterval r_window;         ///< exponent of R in the Type II split
  RationalInterval q_window;         ///< exponent of Q in the Type II split
  RationalInterval type_i_q_window;  ///< exponent of Q in the Type I split
  Rational w_exp;                    ///< exponent of W = M^2 X^(-2 delta) / (R Q)^2
};

/// Throws std::invalid_argument if gamma lies outside [2 varpi + delta, sigma];
/// throws std::logic_error if the windows are inconsistent with d_exp.
FactorizationWindows factorization_windows(const SieveParameters& params, const Rational& gamma);

struct ConstraintEntry {
  std::string name;
  Rational value;
  Rational bound;
  bool strict;
  bool satisfied;
  Rational margin;  ///< bound - value
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;
  bool all_satisfied() const;
};

/// Every exponent inequality of the argument, evaluated at gamma = sigma
/// unless params.gamma is set.
ConstraintReport check_constraints(const SieveParameters& params);

}  // namespace sqmod
