#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fock/common.hpp"
#include "fock/gamma_mass.hpp"
#include "fock/geometry.hpp"
#include "fock/moments.hpp"
#include "fock/report.hpp"
#include "fock/specfun.hpp"

namespace fock::concentration {

using fock::AuditReport;

/// Mass the density t^n e^{-t} / n! assigns to a union of t-intervals — the
/// fraction of the n-th normalized monomial's weight that lands in the
/// radially-encoded set. Equals a sum of regularized incomplete gamma
/// differences at shape n+1.
inline double monomial_mass(const geometry::IntervalUnion& t_set, long n) {
  if (n < 0)
    throw std::domain_error("monomial_mass: require n >= 0, got " +
                            std::to_string(n));
  return gamma_mass(t_set, specfun::Shape(static_cast<double>(n) + 1.0));
}

/// Checks monomial_mass(I, n) <= 1 - e^{-|I|} for n = 0..n_max, one report per
/// n. The bound depends on the union only through its total length.
inline std::vector<AuditReport> mass_bound_audit(const geometry::IntervalUnion& I,
                                             long n_max, double tol = 1e-11) {
  if (n_max < 0)
    throw std::domain_error("mass_bound_audit: require n_max >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("mass_bound_audit: require tol > 0");
  const double rhs = -std::expm1(-I.total_length());
  std::vector<AuditReport> out(static_cast<std::size_t>(n_max) + 1);
  parallel_for(out.size(), [&](std::size_t n) {
    AuditReport r = make_audit("gamma mass vs 1-exp(-|I|), n=" +
                                   std::to_string(n),
                               monomial_mass(I, static_cast<long>(n)), rhs, tol);
    r.with("n", static_cast<double>(n)).with("total_length", I.total_length());
    out[n] = std::move(r);
  });
  return out;
}

/// One term of a convex-combination bound: a union of t-intervals with a
/// weight in [0, 1].
struct WeightedPiece {
  geometry::IntervalUnion set;
  double weight = 0.0;
};

namespace detail {

// The unions in a weighted family must not overlap each other; sweep all
// intervals by left endpoint and compare neighbours across owners.
inline void check_family_disjoint(const std::vector<WeightedPiece>& family) {
  struct Tagged {
    geometry::Interval iv;
    std::size_t owner;
  };
  std::vector<Tagged> all;
  for (std::size_t k = 0; k < family.size(); ++k)
    for (const geometry::Interval& iv : family[k].set.intervals())
      all.push_back({iv, k});
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
    return a.iv.lo < b.iv.lo;
  });
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].iv.lo < all[i - 1].iv.hi)
      throw std::invalid_argument(
          "weighted_mass_audit: sets " + std::to_string(all[i - 1].owner) + " and " +
          std::to_string(all[i].owner) + " overlap near t=" +
          std::to_string(all[i].iv.lo));
}

}  // namespace detail

/// Checks sum_k w_k * monomial_mass(I_k, p) <= 1 - e^{-sum_k w_k |I_k|} for a
/// family of pairwise disjoint unions with weights in [0, 1]. With all
/// weights equal to 1 this reduces to mass_bound_audit on the merged union.
inline AuditReport weighted_mass_audit(const std::vector<WeightedPiece>& family,
                                long p, double tol = 1e-11) {
  if (p < 0) throw std::domain_error("weighted_mass_audit: require p >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("weighted_mass_audit: require tol > 0");
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double w = family[k].weight;
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("weighted_mass_audit: weight " + std::to_string(k) +
                                  " outside [0,1]: " + std::to_string(w));
  }
  detail::check_family_disjoint(family);
  double lhs = 0.0;
  double weighted_length = 0.0;
  for (const WeightedPiece& piece : family) {
    lhs += piece.weight * monomial_mass(piece.set, p);
    weighted_length += piece.weight * piece.set.total_length();
  }
  AuditReport r = make_audit("weighted gamma mass vs 1-exp(-weighted length)",
                             lhs, -std::expm1(-weighted_length), tol);
  r.with("p", static_cast<double>(p))
      .with("pieces", static_cast<double>(family.size()))
      .with("weighted_length", weighted_length);
  return r;
}

/// Mass of the n-th normalized monomial over a rotation-invariant set
/// centered at the origin, where the angular integral is trivial and the
/// answer is exact. Off-center sets go through
/// translated_monomial_concentration instead.
inline double monomial_concentration(const geometry::PlanarSet& s, long n) {
  const auto* a = std::get_if<geometry::Annuli>(&s);
  if (a == nullptr || !is_origin(a->center))
    throw std::invalid_argument(
        "monomial_concentration: set must be origin-centered annuli; use "
        "translated_monomial_concentration for anything else");
  return monomial_mass(geometry::radii_to_t(a->rings), n);
}

/// The two averaging steps that bound the mass of a translated monomial:
///   ray_average     = (1/K) sum_j monomial_mass(I_j, n)        (exact per ray)
///   jensen_average  = (1/K) sum_j (1 - e^{-|I_j|})
///   bound           = 1 - e^{-|Omega|}
/// Mathematically ray_average <= jensen_average <= bound (concavity of
/// t -> 1 - e^{-t}); the angular discretization perturbs the middle
/// comparison by O(1/K).
struct JensenChain {
  double ray_average = 0.0;
  double jensen_average = 0.0;
  double bound = 0.0;
  int K = 0;
};

inline JensenChain jensen_chain(const geometry::PlanarSet& s, long n, Point a,
                                int K) {
  if (n < 0) throw std::domain_error("jensen_chain: require n >= 0");
  if (std::holds_alternative<geometry::AngularProfile>(s))
    throw std::invalid_argument(
        "jensen_chain: expects annuli or disc-union input");
  const double area = geometry::measure(s);  // translation invariant
  const geometry::AngularProfile prof =
      geometry::angular_profile_of(geometry::translate(s, -a), K);
  JensenChain chain;
  chain.K = K;
  std::vector<double> ray(prof.profiles.size());
  std::vector<double> jen(prof.profiles.size());
  parallel_for(prof.profiles.size(), [&](std::size_t j) {
    const geometry::IntervalUnion t = geometry::radii_to_t(prof.profiles[j]);
    ray[j] = monomial_mass(t, n);
    jen[j] = -std::expm1(-t.total_length());
  });
  for (std::size_t j = 0; j < ray.size(); ++j) {
    chain.ray_average += ray[j];
    chain.jensen_average += jen[j];
  }
  chain.ray_average /= static_cast<double>(ray.size());
  chain.jensen_average /= static_cast<double>(ray.size());
  chain.bound = -std::expm1(-area);
  return chain;
}

/// Mass of the monomial recentred at `a` over the set, audited against
/// 1 - e^{-|Omega|}. The tolerance 10/K absorbs the angular midpoint error;
/// halve it by doubling K.
inline AuditReport translated_monomial_concentration(
    const geometry::PlanarSet& s, long n, Point a, int K = 1024) {
  const JensenChain chain = jensen_chain(s, n, a, K);
  AuditReport r =
      make_audit("translated monomial mass vs 1-exp(-area)", chain.ray_average,
                 chain.bound, 10.0 / K);
  r.with("n", static_cast<double>(n))
      .with("jensen_average", chain.jensen_average)
      .with("area", geometry::measure(s))
      .with("K", static_cast<double>(K))
      .with("shift_x", a.x)
      .with("shift_y", a.y);
  return r;
}

/// Mass of the normalized reproducing kernel at w over the set — the n = 0
/// monomial recentred at w, so it shares that code path verbatim.
inline AuditReport kernel_concentration(Point w, const geometry::PlanarSet& s,
                                        int K = 1024) {
  AuditReport r = translated_monomial_concentration(s, 0, w, K);
  r.context = "kernel mass vs 1-exp(-area)";
  return r;
}

/// Construction certificate for a sparse disc family: every unit vector in
/// the span of the first `degree`+1 monomials keeps at least 1 - eps of its
/// mass outside the union.
struct SparseDiscCertificate {
  double eps = 0.0;
  double R = 0.0;
  double delta = 0.0;    // per-disc Gaussian mass budget, eps * (1-e^{-pi R^2})
  double radius = 0.0;   // common disc radius sqrt(delta / pi)
  double spacing = 0.0;  // center spacing along the x-axis
  double guaranteed_bound = 0.0;  // = eps
};

struct SparseDiscSet {
  geometry::DiscUnion discs;
  SparseDiscCertificate certificate;
};

/// Builds `count` discs of equal Gaussian mass budget delta = eps * C_R,
/// C_R = 1 - e^{-pi R^2}, centered at (i * spacing, 0). The spacing keeps
/// any translate of D(0,R) from meeting two discs at once, which is what
/// makes the per-disc budgets add up to a uniform bound of eps.
inline SparseDiscSet sparse_disc_construct(double eps, double R, int count) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("sparse_disc_construct: require 0 < eps < 1");
  if (!(R > 0.0))
    throw std::domain_error("sparse_disc_construct: require R > 0");
  if (count < 1)
    throw std::invalid_argument("sparse_disc_construct: require count >= 1");
  SparseDiscSet out;
  auto& cert = out.certificate;
  cert.eps = eps;
  cert.R = R;
  cert.delta = eps * (-std::expm1(-fock::pi * R * R));
  cert.radius = std::sqrt(cert.delta / fock::pi);
  cert.spacing = 2.0 * R + 2.0 * cert.radius + 1.0;
  cert.guaranteed_bound = eps;
  out.discs.discs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.discs.discs.push_back({{i * cert.spacing, 0.0}, cert.radius});
  return out;
}

namespace detail {

// Standard complex Gaussian from explicit Box-Muller on the generator's raw
// 64-bit output, so draws are pinned by the seed alone.
inline std::complex<double> complex_gaussian(std::mt19937_64& rng) {
  auto unit = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  const double r = std::sqrt(-2.0 * std::log(unit()));
  const double phi = 2.0 * fock::pi * unit();
  // variance 1/2 per real component: standard complex normal
  return {r * std::cos(phi) * 0.5 * std::sqrt(2.0),
          r * std::sin(phi) * 0.5 * std::sqrt(2.0)};
}

}  // namespace detail

/// Empirical stress test of a sparse disc certificate: draws random unit
/// vectors in the monomial span up to `degree` and measures the largest
/// fraction of mass any of them places on the union. The observed maximum
/// must stay at or below the certified bound (here compared against `eps`).
inline AuditReport sparse_disc_audit(const SparseDiscSet& set, double eps,
                                     int trials, int degree,
                                     std::uint64_t seed = 20260817,
                                     int window_K = 512) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("sparse_disc_audit: require 0 < eps < 1");
  if (trials < 1)
    throw std::invalid_argument("sparse_disc_audit: require trials >= 1");
  if (degree < 0)
    throw std::invalid_argument("sparse_disc_audit: require degree >= 0");
  const auto& cert = set.certificate;
  if (!(cert.delta > 0.0) || !(cert.radius > 0.0) || !(cert.spacing > 0.0))
    throw std::invalid_argument(
        "sparse_disc_audit: set carries no usable certificate");
  if (cert.spacing < 2.0 * cert.R + 2.0 * cert.radius + 1.0 - 1e-12)
    throw std::invalid_argument(
        "sparse_disc_audit: certificate spacing inconsistent with its R and "
        "radius");
  for (const geometry::Disc& d : set.discs.discs)
    if (std::fabs(d.radius - cert.radius) > 1e-12 * std::max(1.0, cert.radius))
      throw std::invalid_argument(
          "sparse_disc_audit: disc radius disagrees with certificate");

  const moments::HermitianMatrix gram =
      moments::moment_matrix_windowed(set.discs, degree, window_K);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::complex<double>> b(static_cast<std::size_t>(degree) + 1);
    double norm2 = 0.0;
    for (auto& c : b) {
      c = detail::complex_gaussian(rng);
      norm2 += std::norm(c);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& c : b) c *= scale;
    worst = std::max(worst, gram.quadratic_form(b));
  }
  AuditReport r = make_audit("max sampled mass on sparse union vs eps", worst,
                             eps, 0.0);
  r.seed = seed;
  r.with("trials", static_cast<double>(trials))
      .with("degree", static_cast<double>(degree))
      .with("discs", static_cast<double>(set.discs.discs.size()))
      .with("window_K", static_cast<double>(window_K))
      .with("certificate_bound", cert.guaranteed_bound);
  return r;
}

}  // namespace fock::concentration
