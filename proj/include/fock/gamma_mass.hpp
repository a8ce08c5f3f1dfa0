#pragma once

#include <algorithm>

#include "fock/geometry.hpp"
#include "fock/specfun.hpp"

namespace fock {

/// Mass that the Gamma(s,1) density t^{s-1} e^{-t} / Gamma(s) assigns to a
/// union of t-intervals. Every concentration quantity in this library — the
/// radial mass of a normalized monomial, a Toeplitz eigenvalue, a moment
/// matrix entry — reduces to this one sum of regularized incomplete gamma
/// differences, so they all share this code path.
inline double gamma_mass(const geometry::IntervalUnion& t_set,
                         specfun::Shape s) {
  double total = 0.0;
  for (const geometry::Interval& iv : t_set.intervals()) {
    const double d =
        specfun::reg_lower_gamma(s, iv.hi) - specfun::reg_lower_gamma(s, iv.lo);
    total += std::max(d, 0.0);  // exact difference is >= 0; shed round-off
  }
  return detail::clamp01(total, "gamma_mass");
}

}  // namespace fock
