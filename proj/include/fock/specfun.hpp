#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fock/common.hpp"

namespace fock::specfun {

/// Shape parameter of the regularized incomplete gamma function.
///
/// Integer shapes n+1 arise from monomial masses; half-integer shapes from
/// moment matrices where n+m is odd. Anything below 1/2 is outside what this
/// library needs or certifies, so it is rejected at construction.
class Shape {
 public:
  explicit Shape(double s) : s_(s) {
    if (!(s >= 0.5))
      throw std::domain_error("Shape: require s >= 1/2, got " +
                              std::to_string(s));
  }
  double value() const { return s_; }

 private:
  double s_;
};

namespace detail {

inline constexpr double half_log_2pi =
    0.918938533204672741780329736406;  // log(sqrt(2 pi))

// stirlerr(s) = log Gamma(s+1) - [ log sqrt(2 pi s) + s log s - s ].
// Asymptotic series for large s; exact via lgamma below the cutoff.
inline double stirlerr(double s) {
  if (s < 16.0)
    return std::lgamma(s) - ((s - 0.5) * std::log(s) - s + half_log_2pi);
  const double r = 1.0 / (s * s);
  return ((((r / 1188.0 - 1.0 / 1680.0) * r + 1.0 / 1260.0) * r - 1.0 / 360.0) *
              r +
          1.0 / 12.0) /
         s;
}

// bd0(s,x) = s log(s/x) + x - s without cancellation near s = x,
// via the series s*v^2*(2/1 + 2v^2/3 + 2v^4/5 + ...), v = (s-x)/(s+x).
inline double bd0(double s, double x) {
  if (std::fabs(s - x) < 0.1 * (s + x)) {
    const double v = (s - x) / (s + x);
    double sum = (s - x) * v;
    double ej = 2.0 * s * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double next = sum + ej / (2 * j + 1);
      if (next == sum) return next;
      sum = next;
    }
    throw non_convergence_error("bd0: series failed to terminate");
  }
  return s * std::log(s / x) + x - s;
}

// x^s e^{-x} / Gamma(s+1). The stable form e^{-stirlerr-bd0}/sqrt(2 pi s)
// avoids the overflow/cancellation of the naive log-domain expression when
// s and x are both large and comparable.
inline double gamma_density_scale(double s, double x) {
  if (x == 0.0) return s == 0.0 ? 1.0 : 0.0;
  if (s == 0.0) return std::exp(-x);
  if (s < 16.0) return std::exp(s * std::log(x) - x - std::lgamma(s + 1.0));
  return std::exp(-stirlerr(s) - bd0(s, x)) / std::sqrt(2.0 * fock::pi * s);
}

// P(s,x) = d * (1 + x/(s+1) + x^2/((s+1)(s+2)) + ...), d = x^s e^{-x}/s!.
// Converges briskly for x < s+1 where successive ratios stay below 1.
inline double lower_series_factor(double s, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (s + k);
    sum += term;
    if (term <= sum * 1e-17) return sum;
  }
  throw non_convergence_error("reg_lower_gamma: series stalled at s=" +
                              std::to_string(s) + " x=" + std::to_string(x));
}

// Lentz evaluation of the continued fraction for Q(s,x)/(x^s e^{-x}/Gamma(s)),
// valid for x >= s+1.
inline double upper_cf_factor(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) return h;
  }
  throw non_convergence_error(
      "reg_lower_gamma: continued fraction stalled at s=" + std::to_string(s) +
      " x=" + std::to_string(x));
}

}  // namespace detail

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
///
/// Series branch for x < s+1, continued-fraction branch otherwise, both
/// scaled by x^s e^{-x}/Gamma(s+1) computed in a cancellation-free form.
/// When that prefactor underflows, the mass sits entirely on one side of x
/// to far below double precision and the saturated value is returned.
inline double reg_lower_gamma(Shape s, double x) {
  if (!(x >= 0.0))
    throw std::domain_error("reg_lower_gamma: require x >= 0, got " +
                            std::to_string(x));
  if (x == 0.0) return 0.0;
  const double sv = s.value();
  const double d = detail::gamma_density_scale(sv, x);
  if (d == 0.0) return x > sv ? 1.0 : 0.0;
  double p;
  if (x < sv + 1.0) {
    p = d * detail::lower_series_factor(sv, x);
  } else {
    p = 1.0 - d * sv * detail::upper_cf_factor(sv, x);
  }
  return fock::detail::clamp01(p, "reg_lower_gamma");
}

/// 1 - e^{-x} sum_{j<=k} x^j/j!, the mass a Poisson(x) variable puts above k.
/// Also equals P(k+1, x); kept as an independent summation so the two can be
/// checked against each other.
inline double truncated_exp_sum(long k, double x) {
  if (k < 0)
    throw std::domain_error("truncated_exp_sum: require k >= 0, got " +
                            std::to_string(k));
  if (!(x >= 0.0))
    throw std::domain_error("truncated_exp_sum: require x >= 0, got " +
                            std::to_string(x));
  double cdf;
  if (x < 700.0) {
    double term = std::exp(-x);
    double sum = term;
    for (long j = 1; j <= k; ++j) {
      term *= x / static_cast<double>(j);
      sum += term;
    }
    cdf = sum;
  } else {
    // e^{-x} underflows; assemble each Poisson weight in its stable form.
    double sum = 0.0;
    for (long j = 0; j <= k; ++j)
      sum += detail::gamma_density_scale(static_cast<double>(j), x);
    cdf = sum;
  }
  return fock::detail::clamp01(1.0 - cdf, "truncated_exp_sum");
}

/// log(n!) via lgamma; exact to relative 1e-14 over the certified range.
inline double log_factorial(long n) {
  if (n < 0)
    throw std::domain_error("log_factorial: require n >= 0, got " +
                            std::to_string(n));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace fock::specfun
