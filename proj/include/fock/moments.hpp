#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fock/common.hpp"
#include "fock/gamma_mass.hpp"
#include "fock/geometry.hpp"
#include "fock/specfun.hpp"

namespace fock::moments {

/// Dense Hermitian matrix held row-major; only small orders (<= a few
/// hundred) are ever needed here.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int dim) : n_(dim) {
    if (dim < 1) throw std::invalid_argument("HermitianMatrix: dim < 1");
    a_.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
  }

  int dim() const { return n_; }

  std::complex<double>& operator()(int r, int c) {
    return a_[static_cast<std::size_t>(r) * n_ + c];
  }
  const std::complex<double>& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * n_ + c];
  }

  double max_hermiticity_defect() const {
    double m = 0.0;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
  }

  double max_abs_diff(const HermitianMatrix& other) const {
    if (other.n_ != n_)
      throw std::invalid_argument("HermitianMatrix: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      m = std::max(m, std::abs(a_[i] - other.a_[i]));
    return m;
  }

  /// Eigenvalues in ascending order (self-adjoint solver).
  std::vector<double> eigenvalues() const {
    Eigen::MatrixXcd m(n_, n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) m(r, c) = (*this)(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw non_convergence_error("HermitianMatrix: eigensolver failed");
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] =
        solver.eigenvalues()[i];
    return out;
  }

  /// Re(b^H A b) for a coefficient vector b of matching dimension.
  double quadratic_form(const std::vector<std::complex<double>>& b) const {
    if (static_cast<int>(b.size()) != n_)
      throw std::invalid_argument("quadratic_form: dimension mismatch");
    std::complex<double> s{0.0, 0.0};
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) s += std::conj(b[r]) * (*this)(r, c) * b[c];
    return s.real();
  }

 private:
  int n_;
  std::vector<std::complex<double>> a_;
};

namespace detail {

// Row-scaled coupling coefficient Gamma(s)/sqrt(n! m!) with s = (n+m)/2 + 1,
// so that entry (n,m) equals coef * (angular average of e^{i(m-n)theta} *
// regularized radial mass at shape s).
inline double entry_coef(int n, int m) {
  const double s = 0.5 * (n + m) + 1.0;
  return std::exp(std::lgamma(s) - 0.5 * specfun::log_factorial(n) -
                  0.5 * specfun::log_factorial(m));
}

// Assembles A(n,m) = coef(n,m) * sum_j w_j(m-n) g_j(n+m) from per-ray radial
// masses g_j(sigma) = gamma_mass(I_j, sigma/2 + 1) and complex angular
// weights w_j(d). The two quadrature flavors below differ only in w_j.
struct RaySample {
  double angle = 0.0;
  double weight = 0.0;  // fraction of the full circle this ray represents
  geometry::IntervalUnion t_section;
};

inline HermitianMatrix assemble(const std::vector<RaySample>& rays, int N,
                                bool exact_cell_phase) {
  HermitianMatrix a(N + 1);
  const std::size_t J = rays.size();
  // radial masses, indexed [ray][sigma]
  std::vector<std::vector<double>> g(J);
  parallel_for(J, [&](std::size_t j) {
    g[j].resize(static_cast<std::size_t>(2 * N) + 1);
    for (int sigma = 0; sigma <= 2 * N; ++sigma)
      g[j][static_cast<std::size_t>(sigma)] =
          gamma_mass(rays[j].t_section, specfun::Shape(0.5 * sigma + 1.0));
  });
  for (int n = 0; n <= N; ++n) {
    for (int m = n; m <= N; ++m) {
      const int d = m - n;
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t j = 0; j < J; ++j) {
        const double gs = g[j][static_cast<std::size_t>(n + m)];
        if (gs == 0.0) continue;
        double w = rays[j].weight;
        if (exact_cell_phase && d != 0) {
          // integral of e^{i d theta} over the cell of half-width pi*w
          // centered on the ray: e^{i d angle} * sin(d pi w) / (d pi)
          w = std::sin(d * fock::pi * w) / (d * fock::pi);
        }
        acc += std::polar(w * gs, d * rays[j].angle);
      }
      a(n, m) = detail::entry_coef(n, m) * acc;
      if (m != n) a(m, n) = std::conj(a(n, m));
    }
  }
  return a;
}

inline std::vector<RaySample> rays_of_profile(const geometry::AngularProfile& p) {
  const std::size_t K = p.profiles.size();
  std::vector<RaySample> rays(K);
  for (std::size_t j = 0; j < K; ++j) {
    rays[j].angle = 2.0 * fock::pi * static_cast<double>(j) / K;
    rays[j].weight = 1.0 / static_cast<double>(K);
    rays[j].t_section = geometry::radii_to_t(p.profiles[j]);
  }
  return rays;
}

}  // namespace detail

/// Moment matrix A(n,m) = integral over the set of conj(e_n) e_m against the
/// Gaussian measure, where e_n is the n-th normalized monomial. Diagonal
/// entries are the monomial masses of the set; the top eigenvalue is the
/// norm of the associated localization operator restricted to the first N+1
/// basis elements.
///
/// Rotation-invariant sets centered at the origin are handled exactly (the
/// matrix is diagonal). An AngularProfile is integrated exactly for the set
/// it represents: radial integrals are closed-form and the angular phase is
/// integrated analytically over each cell. Everything else is discretized
/// with K rays through the origin and a midpoint rule in angle.
inline HermitianMatrix moment_matrix(const geometry::PlanarSet& s, int N,
                                     int K) {
  if (N < 0) throw std::invalid_argument("moment_matrix: require N >= 0");
  if (const auto* a = std::get_if<geometry::Annuli>(&s);
      a != nullptr && is_origin(a->center)) {
    HermitianMatrix m(N + 1);
    const geometry::IntervalUnion t = geometry::radii_to_t(a->rings);
    for (int n = 0; n <= N; ++n)
      m(n, n) = gamma_mass(t, specfun::Shape(static_cast<double>(n) + 1.0));
    return m;
  }
  if (const auto* p = std::get_if<geometry::AngularProfile>(&s)) {
    if (!is_origin(p->center))
      throw std::invalid_argument(
          "moment_matrix: angular profile must be centered at the origin");
    return detail::assemble(detail::rays_of_profile(*p), N, true);
  }
  const geometry::AngularProfile p = geometry::angular_profile_of(s, K);
  return detail::assemble(detail::rays_of_profile(p), N, false);
}

/// Same moment matrix for a union of pairwise disjoint discs, but with the
/// angular quadrature concentrated on each disc's angular window as seen
/// from the origin (K midpoint nodes per disc). For widely separated small
/// discs this resolves windows a global ray family would straddle.
inline HermitianMatrix moment_matrix_windowed(const geometry::DiscUnion& u,
                                              int N, int K) {
  if (N < 0)
    throw std::invalid_argument("moment_matrix_windowed: require N >= 0");
  if (K < 8)
    throw std::invalid_argument("moment_matrix_windowed: require K >= 8");
  geometry::detail::check_disjoint(u);
  std::vector<detail::RaySample> rays;
  for (const geometry::Disc& d : u.discs) {
    const double dist = norm(d.center);
    double mid, half;
    if (dist <= d.radius) {
      mid = 0.0;  // origin inside: every direction meets the disc
      half = fock::pi;
    } else {
      mid = std::atan2(d.center.y, d.center.x);
      half = std::asin(d.radius / dist);
    }
    for (int l = 0; l < K; ++l) {
      detail::RaySample r;
      r.angle = mid + half * (2.0 * l + 1.0 - K) / K;
      r.weight = (2.0 * half / K) / (2.0 * fock::pi);
      if (auto iv =
              geometry::detail::ray_disc_section({}, r.angle, d)) {
        r.t_section = geometry::radii_to_t(
            geometry::IntervalUnion::of({*iv}));
        rays.push_back(std::move(r));
      }
    }
  }
  return detail::assemble(rays, N, false);
}

}  // namespace fock::moments
