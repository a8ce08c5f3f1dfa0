#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fock/common.hpp"

namespace fock::geometry {

/// Half-open interval [lo, hi) on the nonnegative axis.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

inline bool operator==(Interval a, Interval b) {
  return a.lo == b.lo && a.hi == b.hi;
}

/// Finite union of disjoint half-open intervals, kept sorted.
///
/// Construction normalizes: zero-length pieces are dropped, touching or
/// overlapping pieces are merged. Normalization is idempotent, so a value
/// round-tripped through its own intervals() compares equal.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  static IntervalUnion of(std::vector<Interval> parts) {
    for (const Interval& iv : parts) {
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw std::invalid_argument("IntervalUnion: non-finite endpoint");
      if (iv.lo < 0.0)
        throw std::invalid_argument(
            "IntervalUnion: negative endpoint " + std::to_string(iv.lo));
      if (iv.hi < iv.lo)
        throw std::invalid_argument("IntervalUnion: hi < lo (" +
                                    std::to_string(iv.hi) + " < " +
                                    std::to_string(iv.lo) + ")");
    }
    std::sort(parts.begin(), parts.end(),
              [](Interval a, Interval b) {
                return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    IntervalUnion u;
    for (const Interval& iv : parts) {
      if (iv.hi == iv.lo) continue;
      if (!u.parts_.empty() && iv.lo <= u.parts_.back().hi)
        u.parts_.back().hi = std::max(u.parts_.back().hi, iv.hi);
      else
        u.parts_.push_back(iv);
    }
    return u;
  }

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  double total_length() const {
    double len = 0.0;
    for (const Interval& iv : parts_) len += iv.length();
    return len;
  }

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<Interval> parts_;
};

/// Maps a union of radial intervals [lo,hi) to t = pi r^2 coordinates, where
/// the Gaussian weight e^{-pi r^2} 2 pi r dr becomes e^{-t} dt. Strictly
/// monotone, so sortedness and disjointness survive.
inline IntervalUnion radii_to_t(const IntervalUnion& radial) {
  std::vector<Interval> mapped;
  mapped.reserve(radial.intervals().size());
  for (const Interval& iv : radial.intervals())
    mapped.push_back({fock::pi * iv.lo * iv.lo, fock::pi * iv.hi * iv.hi});
  return IntervalUnion::of(std::move(mapped));
}

/// Rotation-invariant set: union of annuli centered at `center` with the
/// radial cross-section `rings`.
struct Annuli {
  Point center;
  IntervalUnion rings;
};

struct Disc {
  Point center;
  double radius = 0.0;
};

/// Union of discs. Operations that integrate over the set require the discs
/// to be pairwise disjoint and check for it.
struct DiscUnion {
  std::vector<Disc> discs;
};

/// Polar discretization around `center`: ray j at angle 2 pi j / K carries a
/// radial cross-section, and represents the angular cell of width 2 pi / K
/// centered on that ray.
struct AngularProfile {
  Point center;
  std::vector<IntervalUnion> profiles;  // size K >= 8

  std::size_t ray_count() const { return profiles.size(); }
};

using PlanarSet = std::variant<Annuli, DiscUnion, AngularProfile>;

namespace detail {

inline void check_disc(const Disc& d) {
  if (!(d.radius > 0.0) || !std::isfinite(d.radius))
    throw std::invalid_argument("Disc: require radius > 0, got " +
                                std::to_string(d.radius));
}

inline void check_disjoint(const DiscUnion& u) {
  for (std::size_t i = 0; i < u.discs.size(); ++i) {
    check_disc(u.discs[i]);
    for (std::size_t j = i + 1; j < u.discs.size(); ++j) {
      const double gap = norm(u.discs[i].center - u.discs[j].center);
      if (gap < u.discs[i].radius + u.discs[j].radius)
        throw std::invalid_argument(
            "DiscUnion: discs " + std::to_string(i) + " and " +
            std::to_string(j) + " overlap (center distance " +
            std::to_string(gap) + " < sum of radii)");
    }
  }
}

// Intersection of the ray {origin + r (cos a, sin a) : r >= 0} with a disc,
// as an interval of r. Solves |origin + r u - c| = rho: with p = u . (c -
// origin) and q^2 the squared distance of c from the ray's line, the section
// is [p - h, p + h], h = sqrt(rho^2 - q^2), clipped to r >= 0.
inline std::optional<Interval> ray_disc_section(Point origin, double angle,
                                                const Disc& disc) {
  const Point d = disc.center - origin;
  const double ux = std::cos(angle), uy = std::sin(angle);
  const double p = d.x * ux + d.y * uy;
  const double dist2 = d.x * d.x + d.y * d.y;
  const double q2 = std::max(0.0, dist2 - p * p);
  const double h2 = disc.radius * disc.radius - q2;
  if (h2 <= 0.0) return std::nullopt;  // misses (tangency has zero length)
  const double h = std::sqrt(h2);
  double lo = p - h, hi = p + h;
  if (hi <= 0.0) return std::nullopt;  // entirely behind the origin
  lo = std::max(lo, 0.0);
  if (hi <= lo) return std::nullopt;
  return Interval{lo, hi};
}

// [a.lo,a.hi) minus [b.lo,b.hi): zero, one, or two pieces.
inline void subtract_interval(Interval a, Interval b,
                              std::vector<Interval>& out) {
  if (b.hi <= a.lo || b.lo >= a.hi) {
    out.push_back(a);
    return;
  }
  if (b.lo > a.lo) out.push_back({a.lo, b.lo});
  if (b.hi < a.hi) out.push_back({b.hi, a.hi});
}

}  // namespace detail

/// Lebesgue measure (area).
inline double measure(const PlanarSet& s) {
  struct V {
    double operator()(const Annuli& a) const {
      double total = 0.0;
      for (const Interval& iv : a.rings.intervals())
        total += fock::pi * (iv.hi * iv.hi - iv.lo * iv.lo);
      return total;
    }
    double operator()(const DiscUnion& u) const {
      detail::check_disjoint(u);
      double total = 0.0;
      for (const Disc& d : u.discs) total += fock::pi * d.radius * d.radius;
      return total;
    }
    double operator()(const AngularProfile& p) const {
      if (p.profiles.empty())
        throw std::invalid_argument("AngularProfile: no rays");
      double total = 0.0;
      for (const IntervalUnion& u : p.profiles)
        for (const Interval& iv : u.intervals())
          total += iv.hi * iv.hi - iv.lo * iv.lo;
      return total * fock::pi / static_cast<double>(p.profiles.size());
    }
  };
  return std::visit(V{}, s);
}

/// Shifts the set by v. Measures and radial cross-sections relative to the
/// (shifted) center are untouched.
inline PlanarSet translate(const PlanarSet& s, Point v) {
  struct V {
    Point v;
    PlanarSet operator()(Annuli a) const {
      a.center = a.center + v;
      return a;
    }
    PlanarSet operator()(DiscUnion u) const {
      for (Disc& d : u.discs) d.center = d.center + v;
      return u;
    }
    PlanarSet operator()(AngularProfile p) const {
      p.center = p.center + v;
      return p;
    }
  };
  return std::visit(V{v}, s);
}

/// Polar discretization of an annuli or disc-union set as seen from
/// `origin`: K rays at angles 2 pi j / K, each carrying the exact radial
/// cross-section of the set along that ray. The result represents the set
/// exactly on each ray; only the angular direction is sampled.
inline AngularProfile angular_profile_of(const PlanarSet& s, int K,
                                         Point origin = {}) {
  if (K < 8)
    throw std::invalid_argument("angular_profile_of: require K >= 8, got " +
                                std::to_string(K));
  struct V {
    int K;
    Point origin;

    AngularProfile operator()(const Annuli& a) const {
      AngularProfile out;
      out.center = origin;
      out.profiles.reserve(static_cast<std::size_t>(K));
      for (int j = 0; j < K; ++j) {
        const double angle = 2.0 * fock::pi * j / K;
        std::vector<Interval> sections;
        for (const Interval& ring : a.rings.intervals()) {
          auto outer = detail::ray_disc_section(origin, angle,
                                                Disc{a.center, ring.hi});
          if (!outer) continue;
          if (ring.lo <= 0.0) {
            sections.push_back(*outer);
            continue;
          }
          auto inner = detail::ray_disc_section(origin, angle,
                                                Disc{a.center, ring.lo});
          if (!inner)
            sections.push_back(*outer);
          else
            detail::subtract_interval(*outer, *inner, sections);
        }
        out.profiles.push_back(IntervalUnion::of(std::move(sections)));
      }
      return out;
    }

    AngularProfile operator()(const DiscUnion& u) const {
      detail::check_disjoint(u);
      AngularProfile out;
      out.center = origin;
      out.profiles.reserve(static_cast<std::size_t>(K));
      for (int j = 0; j < K; ++j) {
        const double angle = 2.0 * fock::pi * j / K;
        std::vector<Interval> sections;
        for (const Disc& d : u.discs)
          if (auto iv = detail::ray_disc_section(origin, angle, d))
            sections.push_back(*iv);
        out.profiles.push_back(IntervalUnion::of(std::move(sections)));
      }
      return out;
    }

    AngularProfile operator()(const AngularProfile&) const {
      throw std::invalid_argument(
          "angular_profile_of: input is already an angular profile");
    }
  };
  return std::visit(V{K, origin}, s);
}

/// Measure of the K-ray discretization for K, 2K, 4K, ... — a convergence
/// diagnostic callers can use to certify their own angular resolution.
struct ProfileMeasure {
  int K = 0;
  double value = 0.0;
};

inline std::vector<ProfileMeasure> profile_measure_convergence(
    const PlanarSet& s, int K, int doublings, Point origin = {}) {
  if (doublings < 0)
    throw std::invalid_argument("profile_measure_convergence: doublings < 0");
  std::vector<ProfileMeasure> out;
  for (int i = 0, k = K; i <= doublings; ++i, k *= 2)
    out.push_back({k, measure(PlanarSet{angular_profile_of(s, k, origin)})});
  return out;
}

}  // namespace fock::geometry
