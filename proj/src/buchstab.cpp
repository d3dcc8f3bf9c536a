#include "sqmod/buchstab.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqmod {

double omega_upper(double u) {
  if (u < 1.0) return 0.0;
  if (u < 2.0) return 1.0 / u;
  if (u < 3.0) return (1.0 + std::log(u - 1.0)) / u;
  if (u < 4.0) return 0.5644;
  return 0.5617;
}

BuchstabTable::BuchstabTable(double u_max, int steps_per_unit)
    : u_max_(u_max), steps_per_unit_(steps_per_unit), step_(1.0 / steps_per_unit) {
  if (steps_per_unit < 1) throw std::invalid_argument("steps_per_unit must be positive");
  if (!(u_max >= 4.0)) throw std::invalid_argument("u_max must be at least 4");

  const std::size_t n = static_cast<std::size_t>(steps_per_unit);
  const std::size_t last = static_cast<std::size_t>(std::ceil((u_max - 1.0) * steps_per_unit - 1e-9));
  values_.resize(last + 1);

  // [1, 2]: closed form.
  for (std::size_t i = 0; i <= n && i <= last; ++i) values_[i] = 1.0 / (1.0 + static_cast<double>(i) * step_);

  // g(u) = u w(u); g(u + h) = g(u) + h/2 (w(u - 1) + w(u + h - 1)).
  double g = 2.0 * values_[n];
  for (std::size_t i = n; i < last; ++i) {
    g += 0.5 * step_ * (values_[i - n] + values_[i + 1 - n]);
    values_[i + 1] = g / (1.0 + static_cast<double>(i + 1) * step_);
  }
  u_max_ = 1.0 + static_cast<double>(last) * step_;
}

double BuchstabTable::operator()(double u) const {
  if (!(u >= 1.0) || u > u_max_ + 1e-12)
    throw std::out_of_range("omega: u = " + std::to_string(u) + " outside [1, " + std::to_string(u_max_) + "]");
  const double x = (u - 1.0) * steps_per_unit_;
  auto i = static_cast<std::size_t>(x);
  if (i + 1 >= values_.size()) return values_.back();
  const double t = x - static_cast<double>(i);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

}  // namespace sqmod
