#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fock/concentration.hpp"
#include "fock/moments.hpp"
#include "oracles.hpp"

using namespace fock::moments;
using fock::geometry::Annuli;
using fock::geometry::AngularProfile;
using fock::geometry::DiscUnion;
using fock::geometry::IntervalUnion;
using fock::geometry::PlanarSet;

namespace {

// 2D quadrature oracle over the disc |(x,y) - c| <= rho of the integrand
// conj(e_n) e_m e^{-pi(x^2+y^2)}; returns the complex moment.
std::complex<double> disc_moment_quad(int n, int m, double cx, double cy,
                                      double rho) {
  const double coef = std::exp(0.5 * ((n + m) * std::log(oracles::pi) -
                                      oracles::log_factorial_direct(n) -
                                      oracles::log_factorial_direct(m)));
  auto inner = [&](double x) {
    const double half = std::sqrt(std::max(0.0, rho * rho - (x - cx) * (x - cx)));
    if (half == 0.0) return std::complex<double>{0.0, 0.0};
    return oracles::integrate<std::complex<double>>(
        [&](double y) {
          const std::complex<double> z{x, y};
          return std::conj(std::pow(z, n)) * std::pow(z, m) *
                 std::exp(-oracles::pi * std::norm(z));
        },
        cy - half, cy + half, 1e-13);
  };
  return coef * oracles::integrate<std::complex<double>>(inner, cx - rho,
                                                         cx + rho, 1e-12);
}

}  // namespace

TEST_CASE("HermitianMatrix basics") {
  HermitianMatrix a(3);
  a(0, 0) = 2.0;
  a(1, 1) = -1.0;
  a(2, 2) = 0.5;
  const auto eigs = a.eigenvalues();
  REQUIRE(eigs.size() == 3);
  CHECK_THAT(eigs[0], Catch::Matchers::WithinAbs(-1.0, 1e-14));
  CHECK_THAT(eigs[2], Catch::Matchers::WithinAbs(2.0, 1e-14));
  CHECK(a.max_hermiticity_defect() == 0.0);
  // quadratic form of a diagonal matrix
  CHECK_THAT(a.quadratic_form({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}),
             Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(a.quadratic_form({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(0), std::invalid_argument);
}

TEST_CASE("moment matrix of origin-centered annuli is the exact diagonal") {
  const PlanarSet ann = Annuli{{}, IntervalUnion::of({{0.5, 1.5}})};
  const HermitianMatrix a = moment_matrix(ann, 8, 256);
  for (int n = 0; n <= 8; ++n) {
    CHECK_THAT(a(n, n).real(),
               Catch::Matchers::WithinAbs(
                   fock::concentration::monomial_concentration(ann, n), 0.0));
    for (int m = 0; m <= 8; ++m)
      if (m != n) CHECK(std::abs(a(n, m)) == 0.0);
  }
}

TEST_CASE("moment matrix entries match a 2D quadrature oracle") {
  // angular midpoint error decays like K^{-3/2} (square-root kinks at the
  // tangency angles), so expect ~1e-6 at K = 4096
  const PlanarSet disc = DiscUnion{{{{2.0, 0.0}, 1.0}}};
  const HermitianMatrix a = moment_matrix(disc, 4, 4096);
  for (int n = 0; n <= 2; ++n) {
    for (int m = n; m <= 3; ++m) {
      const std::complex<double> want = disc_moment_quad(n, m, 2.0, 0.0, 1.0);
      INFO("entry (" << n << "," << m << ") got " << a(n, m).real() << "+"
                     << a(n, m).imag() << "i, want " << want.real() << "+"
                     << want.imag() << "i");
      CHECK(std::abs(a(n, m) - want) < 1e-5);
    }
  }
}

TEST_CASE("windowed and global quadratures agree") {
  const DiscUnion u{{{{2.0, 0.0}, 0.5}, {{-3.0, 1.0}, 0.7}}};
  const HermitianMatrix global = moment_matrix(PlanarSet{u}, 6, 8192);
  const HermitianMatrix windowed = moment_matrix_windowed(u, 6, 1024);
  CHECK(global.max_abs_diff(windowed) < 5e-5);
}

TEST_CASE("windowed quadrature matches the oracle on a nearby small disc") {
  const DiscUnion u{{{{1.5, 1.0}, 0.25}}};
  const HermitianMatrix a = moment_matrix_windowed(u, 3, 2048);
  for (int n = 0; n <= 3; ++n)
    for (int m = n; m <= 3; ++m) {
      const std::complex<double> want =
          disc_moment_quad(n, m, 1.5, 1.0, 0.25);
      CHECK(std::abs(a(n, m) - want) < 1e-5);
    }
}

TEST_CASE("profile and direct assemblies agree on the same disc") {
  // exact-phase assembly of a dense profile vs the plain midpoint rule at
  // higher K: both approximate the same disc
  const PlanarSet disc = DiscUnion{{{{1.5, 0.5}, 0.8}}};
  const AngularProfile prof =
      fock::geometry::angular_profile_of(disc, 2048);
  const HermitianMatrix via_profile = moment_matrix(PlanarSet{prof}, 5, 256);
  const HermitianMatrix direct = moment_matrix(disc, 5, 8192);
  CHECK(via_profile.max_abs_diff(direct) < 1e-3);
}

TEST_CASE("moment matrices are Hermitian by construction") {
  const PlanarSet disc = DiscUnion{{{{1.0, -2.0}, 1.1}}};
  CHECK(moment_matrix(disc, 10, 512).max_hermiticity_defect() == 0.0);
}

TEST_CASE("diagonal entries obey Cauchy-Schwarz against off-diagonals") {
  const PlanarSet disc = DiscUnion{{{{2.0, 1.0}, 1.0}}};
  const HermitianMatrix a = moment_matrix(disc, 8, 1024);
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= 8; ++m)
      CHECK(std::abs(a(n, m)) <=
            std::sqrt(a(n, n).real() * a(m, m).real()) + 1e-12);
}

TEST_CASE("diagonal of the ray-sampled matrix equals the jensen ray average") {
  const PlanarSet disc = DiscUnion{{{{2.0, 0.0}, 1.0}}};
  const HermitianMatrix a = moment_matrix(disc, 6, 1024);
  for (long n = 0; n <= 6; ++n) {
    const auto chain = fock::concentration::jensen_chain(disc, n, {}, 1024);
    CHECK_THAT(a(static_cast<int>(n), static_cast<int>(n)).real(),
               Catch::Matchers::WithinAbs(chain.ray_average, 1e-13));
  }
}
