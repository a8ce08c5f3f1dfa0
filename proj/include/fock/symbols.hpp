#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fock/common.hpp"
#include "fock/gamma_mass.hpp"
#include "fock/geometry.hpp"
#include "fock/report.hpp"
#include "fock/specfun.hpp"

namespace fock::symbols {

/// One radial step: value on the annulus a <= |z - center| < b.
struct Piece {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
};

/// Bounded radial step function F(z) = sum_k value_k * chi_{[a_k,b_k)}(|z -
/// center|). Pieces are validated sorted and non-overlapping; the function
/// vanishes off the listed annuli.
class StepRadialSymbol {
 public:
  StepRadialSymbol() = default;

  explicit StepRadialSymbol(std::vector<Piece> pieces, Point center = {})
      : pieces_(std::move(pieces)), center_(center) {
    double prev_hi = 0.0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Piece& p = pieces_[k];
      if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.value))
        throw std::invalid_argument("StepRadialSymbol: non-finite field in piece " +
                                    std::to_string(k));
      if (p.a < 0.0 || p.b <= p.a)
        throw std::invalid_argument(
            "StepRadialSymbol: piece " + std::to_string(k) +
            " needs 0 <= a < b, got [" + std::to_string(p.a) + ", " +
            std::to_string(p.b) + ")");
      if (k > 0 && p.a < prev_hi)
        throw std::invalid_argument(
            "StepRadialSymbol: pieces must be sorted and disjoint; piece " +
            std::to_string(k) + " starts at " + std::to_string(p.a) +
            " before previous end " + std::to_string(prev_hi));
      prev_hi = p.b;
    }
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  Point center() const { return center_; }
  bool is_origin_centered() const { return is_origin(center_); }

  /// Radius beyond which the symbol vanishes (0 for the zero symbol).
  double support_radius() const {
    return pieces_.empty() ? 0.0 : pieces_.back().b;
  }

  /// Same radial profile, recentered. The induced operator is unitarily
  /// equivalent under translation, so norms are unaffected.
  StepRadialSymbol recentered(Point c = {}) const {
    return StepRadialSymbol(pieces_, c);
  }

 private:
  std::vector<Piece> pieces_;
  Point center_;
};

inline double sup_norm(const StepRadialSymbol& f) {
  double m = 0.0;
  for (const Piece& p : f.pieces()) m = std::max(m, std::fabs(p.value));
  return m;
}

/// L1 norm against Lebesgue measure: sum |value_k| * pi (b_k^2 - a_k^2).
inline double l1_norm(const StepRadialSymbol& f) {
  double total = 0.0;
  for (const Piece& p : f.pieces())
    total += std::fabs(p.value) * fock::pi * (p.b * p.b - p.a * p.a);
  return total;
}

/// Eigenvalue of the induced operator on the n-th normalized monomial:
/// lambda_n = sum_k value_k * [P(n+1, pi b_k^2) - P(n+1, pi a_k^2)].
/// Requires an origin-centered symbol, where the operator is diagonal.
inline double radial_eigenvalue(const StepRadialSymbol& f, long n) {
  if (!f.is_origin_centered())
    throw std::invalid_argument(
        "radial_eigenvalue: symbol must be centered at the origin; recenter "
        "first (norms are translation invariant)");
  if (n < 0)
    throw std::domain_error("radial_eigenvalue: require n >= 0, got " +
                            std::to_string(n));
  const specfun::Shape s(static_cast<double>(n) + 1.0);
  double lambda = 0.0;
  for (const Piece& p : f.pieces()) {
    const auto t = geometry::radii_to_t(
        geometry::IntervalUnion::of({{p.a, p.b}}));
    lambda += p.value * gamma_mass(t, s);
  }
  return lambda;
}

/// Prefix lambda_0..lambda_N plus a certified bound on every eigenvalue past
/// the truncation point.
struct EigenvalueSequence {
  std::vector<double> values;
  double tail_bound = 0.0;
  long truncation() const { return static_cast<long>(values.size()) - 1; }
};

/// Computes eigenvalues until the tail is provably below tol. Since the
/// symbol is supported in |z| <= b_max, |lambda_n| <= sup_norm * P(n+1, pi
/// b_max^2) for every n, and P(s,x) decreases in s; the reported tail_bound
/// is that envelope evaluated just past the truncation point.
inline EigenvalueSequence eigenvalue_sequence(const StepRadialSymbol& f,
                                              double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("eigenvalue_sequence: require tol > 0");
  EigenvalueSequence seq;
  const double sup = sup_norm(f);
  if (sup == 0.0) {
    seq.values.assign(1, 0.0);
    seq.tail_bound = 0.0;
    return seq;
  }
  const double b = f.support_radius();
  const double x = fock::pi * b * b;
  long N = 0;
  // P(N+2, x) falls below any tolerance once N passes x by a few sqrt(x).
  while (sup * specfun::reg_lower_gamma(
             specfun::Shape(static_cast<double>(N) + 2.0), x) > tol) {
    ++N;
    if (N > 100000000)
      throw non_convergence_error("eigenvalue_sequence: tail never certified");
  }
  seq.values.resize(static_cast<std::size_t>(N) + 1);
  parallel_for(seq.values.size(), [&](std::size_t n) {
    seq.values[n] = radial_eigenvalue(f, static_cast<long>(n));
  });
  seq.tail_bound =
      sup * specfun::reg_lower_gamma(
                specfun::Shape(static_cast<double>(N) + 2.0), x);
  return seq;
}

/// Operator norm of the induced diagonal operator: sup_n |lambda_n|,
/// evaluated to within tol via the certified tail bound.
inline double toeplitz_norm(const StepRadialSymbol& f, double tol = 1e-12) {
  StepRadialSymbol g = f.is_origin_centered() ? f : f.recentered();
  const EigenvalueSequence seq = eigenvalue_sequence(g, tol);
  double m = seq.tail_bound;
  for (double v : seq.values) m = std::max(m, std::fabs(v));
  return m;
}

/// ||F||_inf * (1 - exp(-||F||_1 / ||F||_inf)). Rejects the zero symbol,
/// whose bound would be 0/0.
inline double toeplitz_norm_bound(const StepRadialSymbol& f) {
  const double sup = sup_norm(f);
  if (sup == 0.0)
    throw std::domain_error("toeplitz_norm_bound: zero symbol has no bound");
  return sup * (-std::expm1(-l1_norm(f) / sup));
}

/// Checks toeplitz_norm(f) <= toeplitz_norm_bound(f) + tol and reports both sides.
inline AuditReport norm_bound_audit(const StepRadialSymbol& f, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("norm_bound_audit: require tol > 0");
  const double sup = sup_norm(f);
  if (sup == 0.0)
    throw std::domain_error("norm_bound_audit: zero symbol has no bound");
  const double trunc_tol = std::min(1e-12 * std::max(sup, 1.0), tol * 0.01);
  const double lhs = toeplitz_norm(f, trunc_tol);
  const double rhs = toeplitz_norm_bound(f);
  AuditReport r = make_audit("toeplitz norm vs sup*(1-exp(-L1/sup))", lhs, rhs, tol);
  r.with("sup_norm", sup)
      .with("l1_norm", l1_norm(f))
      .with("truncation_tol", trunc_tol);
  return r;
}

/// Midpoint-sampled step approximation of a radial profile g(r) on [0,
/// r_max), with `count` equal-width pieces. Zero-valued pieces are elided.
inline StepRadialSymbol step_approximation(
    const std::function<double(double)>& g, double r_max, int count,
    Point center = {}) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("step_approximation: require r_max > 0");
  if (count < 1)
    throw std::invalid_argument("step_approximation: require count >= 1");
  std::vector<Piece> pieces;
  const double h = r_max / count;
  for (int k = 0; k < count; ++k) {
    const double v = g((k + 0.5) * h);
    if (!std::isfinite(v))
      throw std::invalid_argument(
          "step_approximation: profile not finite at r=" +
          std::to_string((k + 0.5) * h));
    if (v != 0.0) pieces.push_back({k * h, (k + 1) * h, v});
  }
  return StepRadialSymbol(std::move(pieces), center);
}

}  // namespace fock::symbols
