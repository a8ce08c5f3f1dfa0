#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fock/common.hpp"
#include "fock/concentration.hpp"
#include "fock/geometry.hpp"
#include "fock/moments.hpp"
#include "fock/quadrature.hpp"
#include "fock/report.hpp"
#include "fock/symbols.hpp"

namespace fock::timefreq {

inline constexpr long max_hermite_index = 200;

namespace detail {

inline void check_hermite_index(long n, const char* who) {
  if (n < 0 || n > max_hermite_index)
    throw std::invalid_argument(std::string(who) + ": require 0 <= n <= " +
                                std::to_string(max_hermite_index) + ", got " +
                                std::to_string(n));
}

}  // namespace detail

/// Values h_0(t)..h_{n_max}(t) of the L^2-normalized Hermite functions
/// h_n(t) = 2^{1/4} (2^n n!)^{-1/2} H_n(sqrt(2 pi) t) e^{-pi t^2},
/// via the normalized three-term recurrence
///   h_{n+1} = 2 t sqrt(pi/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1},
/// whose intermediates stay O(1) so nothing overflows.
///
/// Underflow guard: for pi t^2 > 700 the seed h_0 is at the edge of the
/// double range and the whole ladder is returned as 0. The discarded true
/// values are below 1e-149 in absolute value for n <= 200.
inline std::vector<double> hermite_values(long n_max, double t) {
  detail::check_hermite_index(n_max, "hermite_values");
  std::vector<double> h(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (fock::pi * t * t > 700.0) return h;
  h[0] = 1.18920711500272107 /* 2^{1/4} */ * std::exp(-fock::pi * t * t);
  if (n_max >= 1) h[1] = 2.0 * t * std::sqrt(fock::pi) * h[0];
  for (long n = 1; n < n_max; ++n)
    h[static_cast<std::size_t>(n) + 1] =
        2.0 * t * std::sqrt(fock::pi / (n + 1.0)) * h[static_cast<std::size_t>(n)] -
        std::sqrt(n / (n + 1.0)) * h[static_cast<std::size_t>(n) - 1];
  return h;
}

inline double hermite_eval(long n, double t) {
  detail::check_hermite_index(n, "hermite_eval");
  return hermite_values(n, t).back();
}

/// Uniformly sampled table of the first max_index+1 Hermite functions.
struct HermiteBasis {
  long max_index = 0;
  std::vector<double> grid;
  std::vector<std::vector<double>> values;  // values[n][i] = h_n(grid[i])

  double step() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

inline HermiteBasis make_hermite_basis(long max_index, double t_min,
                                       double t_max, int samples) {
  detail::check_hermite_index(max_index, "make_hermite_basis");
  if (!(t_max > t_min))
    throw std::invalid_argument("make_hermite_basis: require t_max > t_min");
  if (samples < 2)
    throw std::invalid_argument("make_hermite_basis: require samples >= 2");
  HermiteBasis b;
  b.max_index = max_index;
  b.grid.resize(static_cast<std::size_t>(samples));
  const double h = (t_max - t_min) / (samples - 1);
  for (int i = 0; i < samples; ++i) b.grid[static_cast<std::size_t>(i)] = t_min + i * h;
  b.values.assign(static_cast<std::size_t>(max_index) + 1, {});
  std::vector<std::vector<double>> columns(b.grid.size());
  parallel_for(b.grid.size(), [&](std::size_t i) {
    columns[i] = hermite_values(max_index, b.grid[i]);
  });
  for (std::size_t n = 0; n <= static_cast<std::size_t>(max_index); ++n) {
    b.values[n].resize(b.grid.size());
    for (std::size_t i = 0; i < b.grid.size(); ++i)
      b.values[n][i] = columns[i][n];
  }
  return b;
}

/// Largest deviation of the basis's trapezoid Gram matrix from the identity —
/// a discretization health check (the functions are exactly orthonormal).
inline double basis_gram_defect(const HermiteBasis& b) {
  const double h = b.step();
  double worst = 0.0;
  const std::size_t rows = b.values.size();
  std::vector<double> defect(rows, 0.0);
  parallel_for(rows, [&](std::size_t n) {
    for (std::size_t m = n; m < rows; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < b.grid.size(); ++i) {
        const double w =
            (i == 0 || i + 1 == b.grid.size()) ? 0.5 * h : h;
        acc += w * b.values[n][i] * b.values[m][i];
      }
      const double target = n == m ? 1.0 : 0.0;
      defect[n] = std::max(defect[n], std::fabs(acc - target));
    }
  });
  for (double d : defect) worst = std::max(worst, d);
  return worst;
}

/// Short-time Fourier transform of h_n against the Gaussian window h_0 at
/// z = x + i xi, with the time-frequency shift convention
/// (pi(z) f)(t) = e^{2 pi i xi t} f(t - x):
///   <h_n, pi(z) h_0> = e^{-i pi x xi} e^{-pi |z|^2 / 2}
///                      sqrt(pi^n / n!) conj(z)^n.
/// Assembled in log magnitude + phase so large n and |z| cannot overflow.
inline std::complex<double> stft_hermite(long n, std::complex<double> z) {
  detail::check_hermite_index(n, "stft_hermite");
  const double r = std::abs(z);
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_mag = -0.5 * fock::pi * r * r +
                         0.5 * (n * std::log(fock::pi) -
                                specfun::log_factorial(n)) +
                         n * std::log(r);
  const double phase =
      -fock::pi * z.real() * z.imag() - n * std::arg(z);
  return std::polar(std::exp(log_mag), phase);
}

/// <pi(w) h_n, pi(z) h_0>: the covariance property moves the shift onto the
/// evaluation point at the cost of an explicit phase.
inline std::complex<double> stft_hermite_shifted(long n,
                                                 std::complex<double> w,
                                                 std::complex<double> z) {
  const double phase = 2.0 * fock::pi * (w.imag() - z.imag()) * w.real();
  return std::polar(1.0, phase) * stft_hermite(n, z - w);
}

/// Entire-function transform value with a quadrature error estimate.
struct BargmannResult {
  std::complex<double> value;
  double error_estimate = 0.0;
};

/// (Bf)(z) = 2^{1/4} \int f(t) exp(2 pi t z - pi t^2 - (pi/2) z^2) dt over
/// [-half_width, half_width], by Gauss–Legendre with node doubling
/// (64 -> 2048) until successive passes agree to rel_tol. The error estimate
/// is the difference between the last two passes.
///
/// Certified only for |z| <= 5 and integrands that have decayed below 1e-12
/// at the window edges; both are checked.
inline BargmannResult bargmann_transform(const std::function<double(double)>& f,
                                         double half_width,
                                         std::complex<double> z,
                                         double rel_tol = 1e-9) {
  if (!(half_width > 0.0))
    throw std::invalid_argument("bargmann_transform: require half_width > 0");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("bargmann_transform: require rel_tol > 0");
  if (std::abs(z) > 5.0)
    throw std::domain_error(
        "bargmann_transform: quadrature certified only for |z| <= 5");
  if (std::fabs(f(-half_width)) > 1e-12 || std::fabs(f(half_width)) > 1e-12)
    throw std::domain_error(
        "bargmann_transform: integrand has not decayed below 1e-12 at the "
        "window edges; enlarge half_width");
  const std::complex<double> outer =
      1.18920711500272107 * std::exp(-0.5 * fock::pi * z * z);
  auto integrand = [&](double t) {
    return f(t) * std::exp((2.0 * fock::pi * z - fock::pi * t) * t);
  };
  std::complex<double> prev =
      quadrature::integrate(integrand, -half_width, half_width, 64);
  for (int nodes = 128; nodes <= 2048; nodes *= 2) {
    const std::complex<double> cur =
        quadrature::integrate(integrand, -half_width, half_width, nodes);
    const double err = std::abs(cur - prev);
    if (err <= rel_tol * std::max(1.0, std::abs(cur)))
      return {outer * cur, err};
    prev = cur;
  }
  throw non_convergence_error(
      "bargmann_transform: node doubling did not converge by 2048 nodes");
}

/// Matrix of the localization (anti-Wick) operator for the indicator of a
/// planar set, in the Hermite basis: M(n,m) = <H_Omega h_n, h_m>, which in
/// the Bargmann picture is the moment matrix of the set.
struct LocalizationMatrix {
  moments::HermitianMatrix entries;
  geometry::PlanarSet set;
  int N = 0;
  int K = 0;  // requested angular resolution
  double quad_error = 0.0;

  double diagonal(int n) const { return entries(n, n).real(); }
  std::vector<double> eigenvalues() const { return entries.eigenvalues(); }
};

/// Computes the matrix up to order N (N <= 60 keeps the moment coefficients
/// well inside double range). Origin-centered annuli are exact and diagonal;
/// an AngularProfile is integrated exactly for the set it represents; other
/// sets are discretized with K and 2K rays — the finer pass is returned and
/// the entrywise difference between passes is reported as quad_error.
inline LocalizationMatrix localization_matrix(const geometry::PlanarSet& s,
                                              int N, int K = 1024) {
  if (N < 0 || N > 60)
    throw std::invalid_argument(
        "localization_matrix: require 0 <= N <= 60, got " + std::to_string(N));
  if (K < 256)
    throw std::invalid_argument(
        "localization_matrix: require K >= 256, got " + std::to_string(K));
  LocalizationMatrix out{moments::HermitianMatrix(N + 1), s, N, K, 0.0};
  const auto* a = std::get_if<geometry::Annuli>(&s);
  const bool exact = (a != nullptr && is_origin(a->center)) ||
                     std::holds_alternative<geometry::AngularProfile>(s);
  if (exact) {
    out.entries = moments::moment_matrix(s, N, K);
    return out;
  }
  const moments::HermitianMatrix coarse = moments::moment_matrix(s, N, K);
  moments::HermitianMatrix fine = moments::moment_matrix(s, N, 2 * K);
  out.quad_error = coarse.max_abs_diff(fine);
  out.entries = std::move(fine);
  return out;
}

/// Norm bound for the operator with the given symbol; identical arithmetic
/// to the step-symbol bound.
inline double localization_norm_bound(const symbols::StepRadialSymbol& f) {
  return symbols::toeplitz_norm_bound(f);
}

/// Norm bound for the localization operator of a set: the indicator has
/// sup norm 1 and L1 norm equal to the area, so the bound is 1 - e^{-area}.
/// Routed through the symbol bound on a radial indicator of equal area to
/// keep one code path.
inline double localization_norm_bound(const geometry::PlanarSet& s) {
  const double area = geometry::measure(s);
  if (area == 0.0)
    throw std::domain_error("localization_norm_bound: set has measure 0");
  const double r = std::sqrt(area / fock::pi);
  return symbols::toeplitz_norm_bound(
      symbols::StepRadialSymbol({{0.0, r, 1.0}}));
}

/// One time-frequency shift of h_n with its coefficient.
struct Shift {
  std::complex<double> coeff;
  std::complex<double> z;
};

/// The full comparison chain for a finite combination
/// f = sum_j coeff_j pi(z_j) h_n with sum |coeff_j| <= 1:
///   lhs      = || Vf ||_{L^2(Omega_K)}   (K-ray discretized set)
///   majorant = sum_j |coeff_j| * sqrt(mass of Omega_K - z_j)
///   bound    = sqrt(1 - e^{-|Omega|})
/// lhs <= majorant is the exact L^2 triangle inequality on the discretized
/// measure; majorant <= bound holds up to the O(1/K) angular error.
struct M1Chain {
  double lhs = 0.0;
  double majorant = 0.0;
  double bound = 0.0;
  double budget = 0.0;  // sum |coeff_j|
  int K = 0;
};

inline M1Chain m1_chain(const std::vector<Shift>& shifts, long n,
                        const geometry::PlanarSet& s, int K = 1024) {
  detail::check_hermite_index(n, "m1_chain");
  if (shifts.empty())
    throw std::invalid_argument("m1_chain: no shifts given");
  if (std::holds_alternative<geometry::AngularProfile>(s))
    throw std::invalid_argument("m1_chain: expects annuli or disc-union input");
  M1Chain chain;
  chain.K = K;
  for (const Shift& sh : shifts) chain.budget += std::abs(sh.coeff);
  if (chain.budget > 1.0 + 1e-12)
    throw std::invalid_argument(
        "m1_chain: sum of |coeff| exceeds 1 (got " +
        std::to_string(chain.budget) + "); rescale the combination");

  const geometry::AngularProfile prof = geometry::angular_profile_of(s, K);
  auto vf = [&](std::complex<double> z) {
    std::complex<double> acc{0.0, 0.0};
    for (const Shift& sh : shifts)
      acc += sh.coeff * stft_hermite_shifted(n, sh.z, z);
    return acc;
  };
  // || Vf ||^2 over the discretized set: per ray, 64-node Gauss-Legendre in
  // r against the measure r dr, then the exact angular cell weight 2 pi / K.
  std::vector<double> ray_l2(prof.profiles.size(), 0.0);
  parallel_for(prof.profiles.size(), [&](std::size_t j) {
    const double theta =
        2.0 * fock::pi * static_cast<double>(j) / static_cast<double>(K);
    const std::complex<double> dir = std::polar(1.0, theta);
    double acc = 0.0;
    for (const geometry::Interval& iv : prof.profiles[j].intervals())
      acc += quadrature::integrate(
          [&](double r) { return std::norm(vf(dir * r)) * r; }, iv.lo, iv.hi,
          64);
    ray_l2[j] = acc;
  });
  double lhs2 = 0.0;
  for (double v : ray_l2) lhs2 += v;
  chain.lhs = std::sqrt(lhs2 * 2.0 * fock::pi / static_cast<double>(K));

  for (const Shift& sh : shifts) {
    const concentration::JensenChain jc =
        concentration::jensen_chain(s, n, to_point(sh.z), K);
    chain.majorant += std::abs(sh.coeff) * std::sqrt(jc.ray_average);
  }
  chain.bound = std::sqrt(-std::expm1(-geometry::measure(s)));
  return chain;
}

/// Audits the chain end to end; the per-link comparisons are available from
/// m1_chain for finer-grained tests.
inline AuditReport m1_finite_combination_check(const std::vector<Shift>& shifts,
                                               long n,
                                               const geometry::PlanarSet& s,
                                               int K = 1024) {
  const M1Chain chain = m1_chain(shifts, n, s, K);
  AuditReport r = make_audit("||Vf|| over set vs sqrt(1-exp(-area))",
                             chain.lhs, chain.bound, 10.0 / K);
  r.with("majorant", chain.majorant)
      .with("budget", chain.budget)
      .with("n", static_cast<double>(n))
      .with("K", static_cast<double>(K))
      .with("area", geometry::measure(s));
  return r;
}

}  // namespace fock::timefreq
