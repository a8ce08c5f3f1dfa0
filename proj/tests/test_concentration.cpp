#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fock/concentration.hpp"
#include "oracles.hpp"

using namespace fock::concentration;
using fock::Point;
using fock::geometry::Annuli;
using fock::geometry::AngularProfile;
using fock::geometry::DiscUnion;
using fock::geometry::Interval;
using fock::geometry::IntervalUnion;
using fock::geometry::PlanarSet;

TEST_CASE("monomial_mass against quadrature and a frozen value") {
  const auto u = IntervalUnion::of({{2.0, 3.0}, {5.0, 6.0}});
  CHECK_THAT(monomial_mass(u, 4),
             Catch::Matchers::WithinAbs(0.28752052288109797, 1e-14));
  const double log_fact4 = oracles::log_factorial_direct(4);
  const double quad =
      oracles::integrate_real(
          [&](double t) { return std::exp(4.0 * std::log(t) - t - log_fact4); },
          2.0, 3.0) +
      oracles::integrate_real(
          [&](double t) { return std::exp(4.0 * std::log(t) - t - log_fact4); },
          5.0, 6.0);
  CHECK_THAT(monomial_mass(u, 4), Catch::Matchers::WithinAbs(quad, 1e-12));
  CHECK_THROWS_AS(monomial_mass(u, -1), std::domain_error);
}

TEST_CASE("monomial_mass is exactly 1-exp(-L) for prefixes at n = 0") {
  for (double L : {0.1, 0.7, 2.0, 10.0, 40.0})
    CHECK_THAT(monomial_mass(IntervalUnion::of({{0.0, L}}), 0),
               Catch::Matchers::WithinAbs(-std::expm1(-L), 1e-15));
}

TEST_CASE("mass_bound_audit holds across orders, including near-extremal sets") {
  // the bound is tight when the union is the density's upper level set;
  // an interval around the mode t = n is the stress case
  for (long n : {0L, 5L, 37L}) {
    const double mode = static_cast<double>(n);
    const auto u = IntervalUnion::of(
        {{std::max(0.0, mode - 2.0), mode + 2.5}});
    const auto reports = mass_bound_audit(u, 60, 1e-11);
    REQUIRE(reports.size() == 61);
    for (const auto& r : reports) {
      INFO(r.context);
      CHECK(r.holds);
    }
  }
  CHECK_THROWS_AS(mass_bound_audit(IntervalUnion{}, -1), std::domain_error);
  CHECK_THROWS_AS(mass_bound_audit(IntervalUnion{}, 3, 0.0),
                  std::invalid_argument);
}

TEST_CASE("weighted_mass_audit reduces to the plain bound at unit weights") {
  const auto a = IntervalUnion::of({{0.5, 1.5}});
  const auto b = IntervalUnion::of({{3.0, 4.5}});
  const auto merged = IntervalUnion::of({{0.5, 1.5}, {3.0, 4.5}});
  for (long p : {0L, 3L, 17L}) {
    const fock::AuditReport two =
        weighted_mass_audit({{a, 1.0}, {b, 1.0}}, p, 1e-13);
    const double direct = monomial_mass(merged, p);
    CHECK(two.lhs == direct);  // identical code path, identical bits
    CHECK_THAT(two.rhs,
               Catch::Matchers::WithinAbs(-std::expm1(-merged.total_length()),
                                          1e-15));
    CHECK(two.holds);
  }
  // zero weights drop out entirely
  const fock::AuditReport zero = weighted_mass_audit({{a, 1.0}, {b, 0.0}}, 2, 1e-13);
  CHECK(zero.lhs == monomial_mass(a, 2));
}

TEST_CASE("weighted_mass_audit validates weights and disjointness") {
  const auto a = IntervalUnion::of({{0.0, 2.0}});
  const auto b = IntervalUnion::of({{1.0, 3.0}});
  CHECK_THROWS_AS(weighted_mass_audit({{a, 0.5}, {b, 0.5}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_mass_audit({{a, 1.5}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(weighted_mass_audit({{a, -0.1}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(weighted_mass_audit({{a, 0.5}}, -1), std::domain_error);
  // touching unions are acceptable
  const auto c = IntervalUnion::of({{2.0, 3.0}});
  CHECK_NOTHROW(weighted_mass_audit({{a, 0.5}, {c, 0.5}}, 1));
}

TEST_CASE("weighted_mass_audit randomized sweep") {
  std::mt19937_64 rng(99);
  auto unit = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<WeightedPiece> family;
    double cursor = 3.0 * unit();
    const int pieces = 1 + static_cast<int>(unit() * 4);
    for (int i = 0; i < pieces; ++i) {
      const double len = 6.0 * unit() + 1e-3;
      family.push_back(
          {IntervalUnion::of({{cursor, cursor + len}}), unit()});
      cursor += len + 0.5 * unit() + 1e-6;
    }
    const long p = static_cast<long>(unit() * 41.0);
    const fock::AuditReport r = weighted_mass_audit(family, p, 1e-11);
    INFO("trial " << trial << " p=" << p << " lhs=" << r.lhs
                  << " rhs=" << r.rhs);
    CHECK(r.holds);
  }
}

TEST_CASE("monomial_concentration on origin-centered sets") {
  // disc of radius R at n = 0: mass is exactly 1 - e^{-pi R^2}
  for (double R : {0.5, 1.0, 2.0}) {
    const PlanarSet disc = Annuli{{}, IntervalUnion::of({{0.0, R}})};
    CHECK_THAT(monomial_concentration(disc, 0),
               Catch::Matchers::WithinAbs(-std::expm1(-oracles::pi * R * R),
                                          1e-14));
  }
  const PlanarSet ann = Annuli{{}, IntervalUnion::of({{1.0, 2.0}})};
  CHECK_THAT(monomial_concentration(ann, 5),
             Catch::Matchers::WithinAbs(
                 oracles::reg_lower_gamma_quad(6.0, 4.0 * oracles::pi) -
                     oracles::reg_lower_gamma_quad(6.0, oracles::pi),
                 1e-12));
  // only origin-centered annuli qualify for the exact path
  CHECK_THROWS_AS(monomial_concentration(
                      PlanarSet{Annuli{{1.0, 0.0}, IntervalUnion::of({{0.0, 1.0}})}},
                      0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      monomial_concentration(PlanarSet{DiscUnion{{{{0.0, 0.0}, 1.0}}}}, 0),
      std::invalid_argument);
}

TEST_CASE("monomial_concentration against Monte Carlo") {
  const PlanarSet ann = Annuli{{}, IntervalUnion::of({{0.8, 1.6}})};
  for (int n : {0, 3}) {
    const double mc = oracles::monomial_mass_mc(
        [](double x, double y) {
          const double r = std::hypot(x, y);
          return r >= 0.8 && r < 1.6;
        },
        n, 4000000, 2024);
    CHECK_THAT(monomial_concentration(ann, n),
               Catch::Matchers::WithinAbs(mc, 2e-3));
  }
}

TEST_CASE("jensen chain is an equality for a centered disc") {
  const PlanarSet disc = DiscUnion{{{{0.0, 0.0}, 1.3}}};
  const JensenChain chain = jensen_chain(disc, 0, {}, 512);
  CHECK_THAT(chain.ray_average,
             Catch::Matchers::WithinAbs(chain.bound, 1e-12));
  CHECK_THAT(chain.jensen_average,
             Catch::Matchers::WithinAbs(chain.bound, 1e-12));
}

TEST_CASE("translated_monomial_concentration holds on a shifted disc sweep") {
  const PlanarSet disc = DiscUnion{{{{2.0, 0.0}, 1.0}}};
  for (long n : {0L, 1L, 7L, 20L}) {
    const fock::AuditReport r =
        translated_monomial_concentration(disc, n, {}, 1024);
    INFO("n=" << n << " ray=" << r.lhs << " bound=" << r.rhs);
    CHECK(r.holds);
    // chain ordering: ray average <= jensen average (+ tolerance)
    double jensen = 0.0;
    for (const auto& [k, v] : r.params)
      if (k == "jensen_average") jensen = v;
    CHECK(r.lhs <= jensen + 10.0 / 1024.0);
    CHECK(jensen <= r.rhs + 10.0 / 1024.0);
  }
}

TEST_CASE("kernel_concentration is the n = 0 chain verbatim") {
  const PlanarSet disc = DiscUnion{{{{1.5, -0.5}, 0.8}}};
  const Point w{0.7, 0.4};
  const fock::AuditReport k = kernel_concentration(w, disc, 512);
  const fock::AuditReport m =
      translated_monomial_concentration(disc, 0, w, 512);
  CHECK(k.lhs == m.lhs);  // same code path, same bits
  CHECK(k.rhs == m.rhs);
  CHECK(k.holds);
  // a faraway kernel sees almost nothing of the set
  const fock::AuditReport far =
      kernel_concentration({20.0, 0.0}, disc, 512);
  CHECK(far.lhs < 1e-10);
}

TEST_CASE("sparse_disc_construct arithmetic") {
  const SparseDiscSet s = sparse_disc_construct(0.1, 1.0, 50);
  CHECK(s.discs.discs.size() == 50);
  CHECK_THAT(s.certificate.delta,
             Catch::Matchers::WithinAbs(0.095678608173622775, 1e-16));
  CHECK_THAT(s.certificate.radius,
             Catch::Matchers::WithinAbs(0.17451489013253101, 1e-15));
  CHECK(s.certificate.guaranteed_bound == 0.1);
  CHECK_THAT(s.certificate.spacing,
             Catch::Matchers::WithinAbs(2.0 + 2.0 * 0.17451489013253101 + 1.0,
                                        1e-14));
  // total area is count * delta (each disc has Lebesgue measure delta)
  CHECK_THAT(measure(PlanarSet{s.discs}),
             Catch::Matchers::WithinRel(50.0 * s.certificate.delta, 1e-12));
  CHECK_THROWS_AS(sparse_disc_construct(0.0, 1.0, 5), std::domain_error);
  CHECK_THROWS_AS(sparse_disc_construct(1.0, 1.0, 5), std::domain_error);
  CHECK_THROWS_AS(sparse_disc_construct(0.1, 0.0, 5), std::domain_error);
  CHECK_THROWS_AS(sparse_disc_construct(0.1, 1.0, 0), std::invalid_argument);
}

TEST_CASE("sparse_disc_audit stays under the certified bound") {
  const SparseDiscSet s = sparse_disc_construct(0.1, 1.0, 12);
  const fock::AuditReport r = sparse_disc_audit(s, 0.1, 50, 8, 7);
  INFO("max sampled mass " << r.lhs);
  CHECK(r.holds);
  CHECK(r.lhs > 0.0);  // the sampler does see the discs
  CHECK(r.seed.has_value());
  // same seed, same bits
  const fock::AuditReport again = sparse_disc_audit(s, 0.1, 50, 8, 7);
  CHECK(r.lhs == again.lhs);
}

TEST_CASE("sparse_disc_audit rejects broken certificates") {
  SparseDiscSet s = sparse_disc_construct(0.1, 1.0, 4);
  CHECK_THROWS_AS(sparse_disc_audit(s, 0.1, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(sparse_disc_audit(s, 0.1, 10, -1), std::invalid_argument);
  CHECK_THROWS_AS(sparse_disc_audit(s, 1.5, 10, 8), std::domain_error);
  SparseDiscSet tampered = s;
  tampered.certificate.spacing = 0.5;  // violates the separation invariant
  CHECK_THROWS_AS(sparse_disc_audit(tampered, 0.1, 10, 8),
                  std::invalid_argument);
  SparseDiscSet blank = s;
  blank.certificate = SparseDiscCertificate{};
  CHECK_THROWS_AS(sparse_disc_audit(blank, 0.1, 10, 8),
                  std::invalid_argument);
}
