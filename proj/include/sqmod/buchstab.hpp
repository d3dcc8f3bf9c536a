#pragma once

#include <vector>

namespace sqmod {

/// Piecewise upper bound for the Buchstab function:
/// 0 for u < 1, 1/u on [1,2), (1 + log(u-1))/u on [2,3), 0.5644 on [3,4),
/// 0.5617 for u >= 4.
double omega_upper(double u);

/// Grid solution of the Buchstab delay equation (u w(u))' = w(u-1), with
/// w(u) = 1/u on [1, 2], advanced by the trapezoidal rule.
///
/// The grid spacing is 1/steps_per_unit so that u - 1 is always a grid point.
/// A built table is immutable.
class BuchstabTable {
 public:
  explicit BuchstabTable(double u_max = 12.0, int steps_per_unit = 10000);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  int steps_per_unit() const { return steps_per_unit_; }
  const std::vector<double>& values() const { return values_; }

  /// Linear interpolation on the grid. Throws std::out_of_range outside [1, u_max].
  double operator()(double u) const;

  /// Value at grid index i, u = 1 + i * step.
  double at_index(std::size_t i) const { return values_[i]; }

 private:
  double u_max_;
  int steps_per_unit_;
  double step_;
  std::vector<double> values_;
};

/// omega(u) via the table; same contract as BuchstabTable::operator().
inline double omega(double u, const BuchstabTable& table) { return table(u); }

}  // namespace sqmod
