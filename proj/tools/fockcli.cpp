// fockcli — norm bounds, concentration audits, and localization matrices
// for radial step symbols and planar sets on the Bargmann–Fock space.
//
// Exit codes: 0 success, 1 input/config error, 2 audit failure,
//             3 numerical non-convergence.

#include <CLI11.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fock/fock.hpp"
#include "svg.hpp"

namespace {

using fock::io::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << std::flush;
  else
    fock::io::write_text(out_path, text);
}

std::string pretty(const json& doc) { return doc.dump(2) + "\n"; }

double unit_draw(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// ---- toeplitz-norm --------------------------------------------------------

struct ToeplitzOpts {
  std::string symbol_path;
  double trunc_tol = 1e-12;
  double tol = 1e-10;
  std::string format = "json";
  std::string out;
};

int cmd_toeplitz_norm(const ToeplitzOpts& opt) {
  const fock::symbols::StepRadialSymbol loaded =
      fock::io::load_symbol(opt.symbol_path);
  json doc{{"command", "toeplitz-norm"},
           {"config",
            {{"symbol", opt.symbol_path},
             {"trunc_tol", opt.trunc_tol},
             {"tol", opt.tol},
             {"threads", fock::thread_count()}}},
           {"symbol", fock::io::to_json(loaded)}};

  if (fock::symbols::sup_norm(loaded) == 0.0) {
    doc["zero_symbol"] = true;
    doc["norm"] = 0.0;
    emit(pretty(doc), opt.out);
    return 0;
  }
  const bool recentered = !loaded.is_origin_centered();
  const fock::symbols::StepRadialSymbol f =
      recentered ? loaded.recentered() : loaded;
  if (recentered)
    doc["note"] =
        "symbol recentered at the origin; the operator norm is translation "
        "invariant";
  doc["recentered"] = recentered;

  const fock::symbols::EigenvalueSequence seq =
      fock::symbols::eigenvalue_sequence(f, opt.trunc_tol);
  double norm = seq.tail_bound;
  for (double v : seq.values) norm = std::max(norm, std::fabs(v));
  const double bound = fock::symbols::toeplitz_norm_bound(f);
  const fock::AuditReport audit = fock::symbols::norm_bound_audit(f, opt.tol);

  doc["sup_norm"] = fock::symbols::sup_norm(f);
  doc["l1_norm"] = fock::symbols::l1_norm(f);
  doc["truncation"] = seq.truncation();
  doc["tail_bound"] = seq.tail_bound;
  doc["norm"] = norm;
  doc["bound"] = bound;
  doc["audit"] = fock::io::to_json(audit);
  doc["eigenvalues"] = seq.values;

  if (opt.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "n,lambda\n";
    for (std::size_t n = 0; n < seq.values.size(); ++n)
      csv << n << "," << seq.values[n] << "\n";
    emit(csv.str(), opt.out);
  } else if (opt.format == "svg") {
    svgplot::Series lam{"lambda_n", "#1f6fb2", {}};
    for (std::size_t n = 0; n < seq.values.size(); ++n)
      lam.points.emplace_back(static_cast<double>(n), seq.values[n]);
    emit(svgplot::line_chart("eigenvalues of the step-symbol operator", "n",
                             "lambda_n", {lam},
                             {{"norm", "#2a7d2a", norm},
                              {"bound", "#b23a1f", bound}}),
         opt.out);
  } else {
    emit(pretty(doc), opt.out);
  }
  return audit.holds ? 0 : 2;
}

// ---- interval-audit ----------------------------------------------------------

struct IntervalAuditOpts {
  long n_max = 60;
  long p_max = 40;
  int trials = 200;
  double length_max = 50.0;
  double tol = 1e-11;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

fock::geometry::IntervalUnion random_union(std::mt19937_64& rng,
                                           double length_max) {
  const int pieces = 1 + static_cast<int>(unit_draw(rng) * 6);
  std::vector<fock::geometry::Interval> parts;
  double cursor = unit_draw(rng) * 2.0;
  double budget = length_max * (0.1 + 0.9 * unit_draw(rng));
  for (int i = 0; i < pieces; ++i) {
    const double len = budget * unit_draw(rng) / pieces + 1e-3;
    parts.push_back({cursor, cursor + len});
    cursor += len + unit_draw(rng) * 3.0 + 1e-3;
  }
  return fock::geometry::IntervalUnion::of(parts);
}

int cmd_interval_audit(const IntervalAuditOpts& opt) {
  std::mt19937_64 rng(opt.seed);
  json doc{{"command", "interval-audit"},
           {"config",
            {{"n_max", opt.n_max},
             {"p_max", opt.p_max},
             {"trials", opt.trials},
             {"length_max", opt.length_max},
             {"tol", opt.tol},
             {"seed", opt.seed},
             {"threads", fock::thread_count()}}}};

  // exact identity at n = 0: mass of [0, L) is 1 - e^{-L}
  double identity_err = 0.0;
  for (double length : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto u = fock::geometry::IntervalUnion::of({{0.0, length}});
    identity_err = std::max(
        identity_err, std::fabs(fock::concentration::monomial_mass(u, 0) -
                                (-std::expm1(-length))));
  }
  doc["identity_max_err"] = identity_err;

  std::ostringstream csv;
  csv.precision(17);
  csv << "case,trial,n,lhs,rhs,slack,holds\n";

  int violations = 0;
  double min_slack = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    const auto u = random_union(rng, opt.length_max);
    const auto reports =
        fock::concentration::mass_bound_audit(u, opt.n_max, opt.tol);
    const fock::AuditReport* worst = &reports.front();
    for (const auto& r : reports)
      if (r.slack < worst->slack) worst = &r;
    if (!worst->holds) ++violations;
    min_slack = std::min(min_slack, worst->slack);
    csv << "single," << t << "," << worst->params[0].second << ","
        << worst->lhs << "," << worst->rhs << "," << worst->slack << ","
        << worst->holds << "\n";
  }
  doc["single_union"] = {{"trials", opt.trials},
                   {"violations", violations},
                   {"min_slack", min_slack}};

  int violations2 = 0;
  double min_slack2 = 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    const int pieces = 1 + static_cast<int>(unit_draw(rng) * 4);
    std::vector<fock::concentration::WeightedPiece> family;
    double cursor = 0.0;
    for (int i = 0; i < pieces; ++i) {
      std::vector<fock::geometry::Interval> parts;
      const int sub = 1 + static_cast<int>(unit_draw(rng) * 3);
      for (int s = 0; s < sub; ++s) {
        const double len = unit_draw(rng) * opt.length_max / (4.0 * sub);
        parts.push_back({cursor, cursor + len});
        cursor += len + unit_draw(rng) + 1e-6;
      }
      family.push_back({fock::geometry::IntervalUnion::of(parts),
                        unit_draw(rng)});
    }
    const long p = static_cast<long>(unit_draw(rng) * (opt.p_max + 1));
    const fock::AuditReport r =
        fock::concentration::weighted_mass_audit(family, p, opt.tol);
    if (!r.holds) ++violations2;
    min_slack2 = std::min(min_slack2, r.slack);
    csv << "weighted," << t << "," << p << "," << r.lhs << "," << r.rhs << ","
        << r.slack << "," << r.holds << "\n";
  }
  doc["weighted_family"] = {{"trials", opt.trials},
                   {"violations", violations2},
                   {"min_slack", min_slack2}};

  const bool holds =
      violations == 0 && violations2 == 0 && identity_err <= 1e-12;
  doc["holds"] = holds;

  emit(opt.format == "csv" ? csv.str() : pretty(doc), opt.out);
  return holds ? 0 : 2;
}

// ---- concentration --------------------------------------------------------

struct ConcentrationOpts {
  std::string set_path;
  long n_max = 20;
  int angles = 1024;
  std::vector<double> shift;  // empty or {x, y}
  std::string format = "json";
  std::string out;
};

int cmd_concentration(const ConcentrationOpts& opt) {
  const fock::geometry::PlanarSet set = fock::io::load_set(opt.set_path);
  const bool shifted = !opt.shift.empty();
  const fock::Point a =
      shifted ? fock::Point{opt.shift[0], opt.shift[1]} : fock::Point{};

  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,value,jensen_average,bound,slack,holds\n";
  svgplot::Series value_series{"mass", "#1f6fb2", {}};
  svgplot::Series jensen_series{"jensen average", "#6f42c1", {}};
  bool all_hold = true;
  double bound = 0.0;

  auto push_row = [&](long n, double value, double jensen, double rhs,
                      double tol) {
    const bool holds = value <= rhs + tol;
    all_hold = all_hold && holds;
    rows.push_back({{"n", n},
                    {"value", value},
                    {"jensen_average", jensen},
                    {"bound", rhs},
                    {"slack", rhs - value},
                    {"holds", holds}});
    csv << n << "," << value << "," << jensen << "," << rhs << ","
        << (rhs - value) << "," << holds << "\n";
    value_series.points.emplace_back(static_cast<double>(n), value);
    jensen_series.points.emplace_back(static_cast<double>(n), jensen);
    bound = rhs;
  };

  if (const auto* prof = std::get_if<fock::geometry::AngularProfile>(&set)) {
    if (shifted)
      throw std::invalid_argument(
          "concentration: --shift does not apply to an angular_profile set "
          "(profiles are tied to their own center)");
    const int K = static_cast<int>(prof->ray_count());
    if (K < 256)
      std::cerr << "warning: profile has only " << K
                << " rays; bounds are exact for the profile set but it may "
                   "poorly resolve the set it was sampled from\n";
    const double area = fock::geometry::measure(set);
    for (long n = 0; n <= opt.n_max; ++n) {
      double ray = 0.0, jen = 0.0;
      for (const auto& u : prof->profiles) {
        const auto t = fock::geometry::radii_to_t(u);
        ray += fock::concentration::monomial_mass(t, n);
        jen += -std::expm1(-t.total_length());
      }
      ray /= K;
      jen /= K;
      // the mass over the profile set is exactly the ray average: the
      // integrand is radial, so each angular cell integrates trivially
      push_row(n, ray, jen, -std::expm1(-area), 1e-12);
    }
  } else if (!shifted &&
             std::holds_alternative<fock::geometry::Annuli>(set) &&
             fock::is_origin(
                 std::get<fock::geometry::Annuli>(set).center)) {
    const double area = fock::geometry::measure(set);
    for (long n = 0; n <= opt.n_max; ++n) {
      const double v = fock::concentration::monomial_concentration(set, n);
      push_row(n, v, v, -std::expm1(-area), 1e-12);
    }
  } else {
    for (long n = 0; n <= opt.n_max; ++n) {
      const fock::concentration::JensenChain chain =
          fock::concentration::jensen_chain(set, n, a, opt.angles);
      push_row(n, chain.ray_average, chain.jensen_average, chain.bound,
               10.0 / opt.angles);
    }
  }

  json doc{{"command", "concentration"},
           {"config",
            {{"set", opt.set_path},
             {"n_max", opt.n_max},
             {"angles", opt.angles},
             {"shift", opt.shift},
             {"threads", fock::thread_count()}}},
           {"set", fock::io::to_json(set)},
           {"rows", rows},
           {"holds", all_hold}};

  if (opt.format == "csv")
    emit(csv.str(), opt.out);
  else if (opt.format == "svg")
    emit(svgplot::line_chart("monomial mass on the set vs order", "n", "mass",
                             {value_series, jensen_series},
                             {{"1-exp(-area)", "#b23a1f", bound}}),
         opt.out);
  else
    emit(pretty(doc), opt.out);
  return all_hold ? 0 : 2;
}

// ---- localization ---------------------------------------------------------

struct LocalizationOpts {
  std::string set_path;
  int n_max = 40;
  int angles = 1024;
  std::string format = "json";
  std::string out;
};

int cmd_localization(const LocalizationOpts& opt) {
  const fock::geometry::PlanarSet set = fock::io::load_set(opt.set_path);
  const fock::timefreq::LocalizationMatrix m =
      fock::timefreq::localization_matrix(set, opt.n_max, opt.angles);
  const double bound = fock::timefreq::localization_norm_bound(set);
  const std::vector<double> eigs = m.eigenvalues();

  const double eps = m.quad_error + 1e-12;
  const double herm = m.entries.max_hermiticity_defect();
  bool diag_ok = true;
  for (int n = 0; n <= m.N; ++n)
    diag_ok = diag_ok && m.diagonal(n) >= -eps && m.diagonal(n) <= bound + eps;
  const bool eig_ok = eigs.front() >= -eps && eigs.back() <= bound + eps;
  const bool herm_ok = herm <= eps;
  const bool ok = diag_ok && eig_ok && herm_ok;

  json doc{{"command", "localization"},
           {"config",
            {{"set", opt.set_path},
             {"n_max", opt.n_max},
             {"angles", opt.angles},
             {"threads", fock::thread_count()}}},
           {"matrix", fock::io::to_json(m)},
           {"eigenvalues", eigs},
           {"norm_bound", bound},
           {"checks",
            {{"hermiticity_defect", herm},
             {"hermitian", herm_ok},
             {"diagonal_within_bound", diag_ok},
             {"eigenvalues_within_bound", eig_ok}}},
           {"holds", ok}};

  if (opt.format == "csv") {
    emit(fock::io::matrix_diag_csv(m), opt.out);
  } else if (opt.format == "svg") {
    svgplot::Series es{"eigenvalues (ascending)", "#1f6fb2", {}};
    for (std::size_t i = 0; i < eigs.size(); ++i)
      es.points.emplace_back(static_cast<double>(i), eigs[i]);
    emit(svgplot::line_chart("localization operator spectrum", "index",
                             "eigenvalue", {es},
                             {{"1-exp(-area)", "#b23a1f", bound}}),
         opt.out);
  } else {
    emit(pretty(doc), opt.out);
  }
  return ok ? 0 : 2;
}

// ---- sparse-omega ---------------------------------------------------------

struct SparseOpts {
  double eps = 0.1;
  double disc_radius = 1.0;
  int count = 50;
  int trials = 200;
  int degree = 12;
  int window_angles = 512;
  std::uint64_t seed = 20260817;
  std::string out;
  std::string set_out;
  std::string format = "json";
};

int cmd_sparse_omega(const SparseOpts& opt) {
  const fock::concentration::SparseDiscSet sparse =
      fock::concentration::sparse_disc_construct(opt.eps, opt.disc_radius,
                                                 opt.count);
  const fock::AuditReport audit = fock::concentration::sparse_disc_audit(
      sparse, opt.eps, opt.trials, opt.degree, opt.seed, opt.window_angles);
  const auto& cert = sparse.certificate;

  json doc{{"command", "sparse-omega"},
           {"config",
            {{"eps", opt.eps},
             {"disc_radius", opt.disc_radius},
             {"count", opt.count},
             {"trials", opt.trials},
             {"degree", opt.degree},
             {"window_angles", opt.window_angles},
             {"seed", opt.seed},
             {"threads", fock::thread_count()}}},
           {"certificate",
            {{"eps", cert.eps},
             {"R", cert.R},
             {"delta", cert.delta},
             {"radius", cert.radius},
             {"spacing", cert.spacing},
             {"guaranteed_bound", cert.guaranteed_bound}}},
           {"measure", fock::geometry::measure(
                           fock::geometry::PlanarSet{sparse.discs})},
           {"set", fock::io::to_json(fock::geometry::PlanarSet{sparse.discs})},
           {"audit", fock::io::to_json(audit)}};

  if (!opt.set_out.empty())
    fock::io::write_text(
        opt.set_out,
        fock::io::to_json(fock::geometry::PlanarSet{sparse.discs}).dump(2) +
            "\n");

  if (opt.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "eps,delta,radius,spacing,count,max_sampled_mass,holds\n";
    csv << cert.eps << "," << cert.delta << "," << cert.radius << ","
        << cert.spacing << "," << opt.count << "," << audit.lhs << ","
        << audit.holds << "\n";
    emit(csv.str(), opt.out);
  } else {
    emit(pretty(doc), opt.out);
  }
  return audit.holds ? 0 : 2;
}

// ---- bargmann-check -------------------------------------------------------

struct BargmannOpts {
  long n_max = 8;
  int grid = 11;
  double half_width = 6.0;
  double tol = 1e-6;
  std::string format = "json";
  std::string out;
};

int cmd_bargmann_check(const BargmannOpts& opt) {
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,max_rel_err,max_consistency_err\n";
  bool ok = true;
  for (long n = 0; n <= opt.n_max; ++n) {
    auto f = [n](double t) { return fock::timefreq::hermite_eval(n, t); };
    double worst_rel = 0.0, worst_cons = 0.0;
    for (int i = 0; i < opt.grid; ++i) {
      for (int j = 0; j < opt.grid; ++j) {
        const double x = -3.0 + 6.0 * i / (opt.grid - 1);
        const double xi = -3.0 + 6.0 * j / (opt.grid - 1);
        const std::complex<double> z{x, xi};
        const fock::timefreq::BargmannResult b =
            fock::timefreq::bargmann_transform(f, opt.half_width, z);
        // the transform sends h_n to the normalized monomial e_n
        const std::complex<double> target =
            std::pow(z, n) *
            std::exp(0.5 * (n * std::log(fock::pi) -
                            fock::specfun::log_factorial(n)));
        worst_rel = std::max(worst_rel, std::abs(b.value - target) /
                                            std::max(1.0, std::abs(target)));
        // windowed transform at (x, -xi) equals the Bargmann value up to
        // the metaplectic phase and Gaussian weight
        const std::complex<double> lhs =
            fock::timefreq::stft_hermite(n, {x, -xi});
        const std::complex<double> rhs =
            std::polar(1.0, fock::pi * x * xi) * b.value *
            std::exp(-0.5 * fock::pi * std::norm(z));
        worst_cons = std::max(worst_cons, std::abs(lhs - rhs));
      }
    }
    ok = ok && worst_rel <= opt.tol && worst_cons <= opt.tol;
    rows.push_back({{"n", n},
                    {"max_rel_err", worst_rel},
                    {"max_consistency_err", worst_cons}});
    csv << n << "," << worst_rel << "," << worst_cons << "\n";
  }
  json doc{{"command", "bargmann-check"},
           {"config",
            {{"n_max", opt.n_max},
             {"grid", opt.grid},
             {"half_width", opt.half_width},
             {"tol", opt.tol},
             {"threads", fock::thread_count()}}},
           {"rows", rows},
           {"holds", ok}};
  emit(opt.format == "csv" ? csv.str() : pretty(doc), opt.out);
  return ok ? 0 : 2;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const fock::io::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const fock::non_convergence_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fockcli: norm bounds and concentration audits for Toeplitz and "
      "localization operators on Fock space"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 1;
  app.add_option("--threads", threads, "worker threads (results identical)")
      ->check(CLI::PositiveNumber);

  const auto format_check = CLI::IsMember({"json", "csv", "svg"});
  const auto format_check_nosvg = CLI::IsMember({"json", "csv"});

  ToeplitzOpts tn;
  auto* tn_cmd = app.add_subcommand(
      "toeplitz-norm", "operator norm of a radial step symbol vs its bound");
  tn_cmd->add_option("--symbol", tn.symbol_path, "step symbol JSON file")
      ->required();
  tn_cmd->add_option("--trunc-tol", tn.trunc_tol,
                     "eigenvalue tail truncation tolerance");
  tn_cmd->add_option("--tol", tn.tol, "audit comparison tolerance");
  tn_cmd->add_option("--format", tn.format, "json|csv|svg")->check(format_check);
  tn_cmd->add_option("--out", tn.out, "output path (default stdout)");

  IntervalAuditOpts la;
  auto* la_cmd = app.add_subcommand(
      "interval-audit", "randomized audit of the interval concentration bounds");
  la_cmd->add_option("--n-max", la.n_max, "largest monomial order")
      ->check(CLI::NonNegativeNumber);
  la_cmd->add_option("--p-max", la.p_max, "largest order in weighted audits")
      ->check(CLI::NonNegativeNumber);
  la_cmd->add_option("--trials", la.trials, "random instances per family")
      ->check(CLI::PositiveNumber);
  la_cmd->add_option("--length-max", la.length_max, "total length budget");
  la_cmd->add_option("--tol", la.tol, "comparison tolerance")
      ->check(CLI::PositiveNumber);
  la_cmd->add_option("--seed", la.seed, "RNG seed");
  la_cmd->add_option("--format", la.format, "json|csv")
      ->check(format_check_nosvg);
  la_cmd->add_option("--out", la.out, "output path (default stdout)");

  ConcentrationOpts co;
  auto* co_cmd = app.add_subcommand(
      "concentration", "monomial mass of a planar set vs 1-exp(-area)");
  co_cmd->add_option("--set", co.set_path, "planar set JSON file")->required();
  co_cmd->add_option("--n-max", co.n_max, "largest monomial order")
      ->check(CLI::NonNegativeNumber);
  co_cmd->add_option("--angles", co.angles, "rays for off-center sets")
      ->check(CLI::PositiveNumber);
  co_cmd->add_option("--shift", co.shift,
                     "recentre the monomial at x y (two numbers)")
      ->expected(2);
  co_cmd->add_option("--format", co.format, "json|csv|svg")->check(format_check);
  co_cmd->add_option("--out", co.out, "output path (default stdout)");

  LocalizationOpts lo;
  auto* lo_cmd = app.add_subcommand(
      "localization", "localization operator matrix in the Hermite basis");
  lo_cmd->add_option("--set", lo.set_path, "planar set JSON file")->required();
  lo_cmd->add_option("--n-max", lo.n_max, "matrix order N (at most 60)");
  lo_cmd->add_option("--angles", lo.angles, "angular resolution K (>= 256)");
  lo_cmd->add_option("--format", lo.format, "json|csv|svg")->check(format_check);
  lo_cmd->add_option("--out", lo.out, "output path (default stdout)");

  SparseOpts so;
  auto* so_cmd = app.add_subcommand(
      "sparse-omega",
      "construct a sparse disc union with a certified mass bound and audit it");
  so_cmd->add_option("--eps", so.eps, "mass bound to certify (0,1)");
  so_cmd->add_option("--disc-radius", so.disc_radius,
                     "radius R of the test discs");
  so_cmd->add_option("--count", so.count, "number of discs")
      ->check(CLI::PositiveNumber);
  so_cmd->add_option("--trials", so.trials, "random unit vectors to sample")
      ->check(CLI::PositiveNumber);
  so_cmd->add_option("--degree", so.degree, "monomial span degree")
      ->check(CLI::NonNegativeNumber);
  so_cmd->add_option("--angles", so.window_angles,
                     "angular nodes per disc window");
  so_cmd->add_option("--seed", so.seed, "RNG seed");
  so_cmd->add_option("--set-out", so.set_out,
                     "also write the constructed set to this file");
  so_cmd->add_option("--format", so.format, "json|csv")
      ->check(format_check_nosvg);
  so_cmd->add_option("--out", so.out, "output path (default stdout)");

  BargmannOpts bc;
  auto* bc_cmd = app.add_subcommand(
      "bargmann-check",
      "fidelity of the integral transform against closed forms");
  bc_cmd->add_option("--n-max", bc.n_max, "largest Hermite index");
  bc_cmd->add_option("--grid", bc.grid, "grid points per axis")
      ->check(CLI::Range(2, 101));
  bc_cmd->add_option("--half-width", bc.half_width, "integration window");
  bc_cmd->add_option("--tol", bc.tol, "acceptance threshold");
  bc_cmd->add_option("--format", bc.format, "json|csv")
      ->check(format_check_nosvg);
  bc_cmd->add_option("--out", bc.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  fock::set_thread_count(threads);
  if (app.got_subcommand(tn_cmd))
    return run_guarded([&] { return cmd_toeplitz_norm(tn); });
  if (app.got_subcommand(la_cmd))
    return run_guarded([&] { return cmd_interval_audit(la); });
  if (app.got_subcommand(co_cmd))
    return run_guarded([&] { return cmd_concentration(co); });
  if (app.got_subcommand(lo_cmd))
    return run_guarded([&] { return cmd_localization(lo); });
  if (app.got_subcommand(so_cmd))
    return run_guarded([&] { return cmd_sparse_omega(so); });
  if (app.got_subcommand(bc_cmd))
    return run_guarded([&] { return cmd_bargmann_check(bc); });
  return 1;
}
