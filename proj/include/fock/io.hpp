#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fock/common.hpp"
#include "fock/geometry.hpp"
#include "fock/report.hpp"
#include "fock/symbols.hpp"
#include "fock/timefreq.hpp"

namespace fock::io {

using nlohmann::json;

/// Input rejection with enough context to fix the file: the offending
/// source (file name or label) and a JSON-ish path to the bad field.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& source, const std::string& where,
              const std::string& what)
      : std::runtime_error(source + ": " + where + ": " + what) {}
};

namespace detail {

inline double require_number(const json& j, const std::string& key,
                             const std::string& source,
                             const std::string& where) {
  if (!j.contains(key))
    throw parse_error(source, where, "missing field '" + key + "'");
  if (!j[key].is_number())
    throw parse_error(source, where, "field '" + key + "' must be a number");
  return j[key].get<double>();
}

inline Point read_point(const json& j, const std::string& source,
                        const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error(source, where, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::string kind_of(const json& j, const std::string& source) {
  if (!j.is_object()) throw parse_error(source, "$", "expected a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw parse_error(source, "$", "missing string field 'kind'");
  return j["kind"].get<std::string>();
}

inline json wrap_parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(source, "byte " + std::to_string(e.byte), e.what());
  }
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw parse_error(path.string(), "$", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// ---- step radial symbols ----------------------------------------------
//
// {"kind": "step_radial", "center": [0, 0],
//  "pieces": [{"a": 0, "b": 1, "value": 0.5}, ...]}

inline symbols::StepRadialSymbol symbol_from_json(const json& j,
                                                  const std::string& source) {
  if (detail::kind_of(j, source) != "step_radial")
    throw parse_error(source, "kind",
                      "expected 'step_radial', got '" +
                          j["kind"].get<std::string>() + "'");
  Point center{};
  if (j.contains("center")) center = detail::read_point(j["center"], source, "center");
  if (!j.contains("pieces") || !j["pieces"].is_array())
    throw parse_error(source, "pieces", "missing array field 'pieces'");
  std::vector<symbols::Piece> pieces;
  for (std::size_t k = 0; k < j["pieces"].size(); ++k) {
    const std::string where = "pieces[" + std::to_string(k) + "]";
    const json& pj = j["pieces"][k];
    if (!pj.is_object()) throw parse_error(source, where, "expected an object");
    pieces.push_back({detail::require_number(pj, "a", source, where),
                      detail::require_number(pj, "b", source, where),
                      detail::require_number(pj, "value", source, where)});
  }
  try {
    return symbols::StepRadialSymbol(std::move(pieces), center);
  } catch (const std::invalid_argument& e) {
    throw parse_error(source, "pieces", e.what());
  }
}

inline json to_json(const symbols::StepRadialSymbol& f) {
  json pieces = json::array();
  for (const symbols::Piece& p : f.pieces())
    pieces.push_back({{"a", p.a}, {"b", p.b}, {"value", p.value}});
  return {{"kind", "step_radial"},
          {"center", {f.center().x, f.center().y}},
          {"pieces", std::move(pieces)}};
}

inline symbols::StepRadialSymbol load_symbol(const std::filesystem::path& path) {
  return symbol_from_json(detail::wrap_parse(detail::slurp(path), path.string()),
                          path.string());
}

// ---- planar sets --------------------------------------------------------
//
// {"kind": "annuli", "center": [0, 0], "rings": [{"lo": 0, "hi": 1}, ...]}
// {"kind": "discs", "discs": [{"center": [2, 0], "radius": 1}, ...]}
// {"kind": "angular_profile", "center": [0, 0],
//  "profiles": [[[lo, hi], ...], ...]}   // one list of [lo,hi) per ray

inline geometry::IntervalUnion intervals_from_json(const json& j,
                                                   const std::string& source,
                                                   const std::string& where) {
  if (!j.is_array()) throw parse_error(source, where, "expected an array");
  std::vector<geometry::Interval> parts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& ij = j[i];
    if (ij.is_object()) {
      parts.push_back({detail::require_number(ij, "lo", source, at),
                       detail::require_number(ij, "hi", source, at)});
    } else if (ij.is_array() && ij.size() == 2 && ij[0].is_number() &&
               ij[1].is_number()) {
      parts.push_back({ij[0].get<double>(), ij[1].get<double>()});
    } else {
      throw parse_error(source, at, "expected {lo, hi} or [lo, hi]");
    }
  }
  try {
    return geometry::IntervalUnion::of(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw parse_error(source, where, e.what());
  }
}

inline geometry::PlanarSet set_from_json(const json& j,
                                         const std::string& source) {
  const std::string kind = detail::kind_of(j, source);
  if (kind == "annuli") {
    geometry::Annuli a;
    if (j.contains("center"))
      a.center = detail::read_point(j["center"], source, "center");
    if (!j.contains("rings"))
      throw parse_error(source, "rings", "missing field 'rings'");
    a.rings = intervals_from_json(j["rings"], source, "rings");
    return a;
  }
  if (kind == "discs") {
    if (!j.contains("discs") || !j["discs"].is_array())
      throw parse_error(source, "discs", "missing array field 'discs'");
    geometry::DiscUnion u;
    for (std::size_t i = 0; i < j["discs"].size(); ++i) {
      const std::string where = "discs[" + std::to_string(i) + "]";
      const json& dj = j["discs"][i];
      if (!dj.is_object() || !dj.contains("center"))
        throw parse_error(source, where, "expected {center, radius}");
      geometry::Disc d{detail::read_point(dj["center"], source, where + ".center"),
                       detail::require_number(dj, "radius", source, where)};
      if (!(d.radius > 0.0))
        throw parse_error(source, where, "radius must be positive");
      u.discs.push_back(d);
    }
    try {
      geometry::detail::check_disjoint(u);
    } catch (const std::invalid_argument& e) {
      throw parse_error(source, "discs", e.what());
    }
    return u;
  }
  if (kind == "angular_profile") {
    geometry::AngularProfile p;
    if (j.contains("center"))
      p.center = detail::read_point(j["center"], source, "center");
    if (!j.contains("profiles") || !j["profiles"].is_array())
      throw parse_error(source, "profiles", "missing array field 'profiles'");
    for (std::size_t r = 0; r < j["profiles"].size(); ++r)
      p.profiles.push_back(intervals_from_json(
          j["profiles"][r], source, "profiles[" + std::to_string(r) + "]"));
    if (p.profiles.size() < 8)
      throw parse_error(source, "profiles",
                        "need at least 8 rays, got " +
                            std::to_string(p.profiles.size()));
    return p;
  }
  throw parse_error(source, "kind",
                    "unknown set kind '" + kind +
                        "' (expected annuli | discs | angular_profile)");
}

inline json to_json(const geometry::PlanarSet& s) {
  struct V {
    json operator()(const geometry::Annuli& a) const {
      json rings = json::array();
      for (const geometry::Interval& iv : a.rings.intervals())
        rings.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
      return {{"kind", "annuli"},
              {"center", {a.center.x, a.center.y}},
              {"rings", std::move(rings)}};
    }
    json operator()(const geometry::DiscUnion& u) const {
      json discs = json::array();
      for (const geometry::Disc& d : u.discs)
        discs.push_back(
            {{"center", {d.center.x, d.center.y}}, {"radius", d.radius}});
      return {{"kind", "discs"}, {"discs", std::move(discs)}};
    }
    json operator()(const geometry::AngularProfile& p) const {
      json profiles = json::array();
      for (const geometry::IntervalUnion& u : p.profiles) {
        json rays = json::array();
        for (const geometry::Interval& iv : u.intervals())
          rays.push_back({iv.lo, iv.hi});
        profiles.push_back(std::move(rays));
      }
      return {{"kind", "angular_profile"},
              {"center", {p.center.x, p.center.y}},
              {"profiles", std::move(profiles)}};
    }
  };
  return std::visit(V{}, s);
}

inline geometry::PlanarSet load_set(const std::filesystem::path& path) {
  return set_from_json(detail::wrap_parse(detail::slurp(path), path.string()),
                       path.string());
}

// ---- reports and matrices ----------------------------------------------

inline json to_json(const AuditReport& r) {
  json params = json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  json out{{"context", r.context}, {"lhs", r.lhs},
           {"rhs", r.rhs},         {"slack", r.slack},
           {"tolerance", r.tolerance}, {"holds", r.holds},
           {"params", std::move(params)}};
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

inline json to_json(const timefreq::LocalizationMatrix& m) {
  const int dim = m.entries.dim();
  json re = json::array(), im = json::array();
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      re.push_back(m.entries(r, c).real());
      im.push_back(m.entries(r, c).imag());
    }
  return {{"N", m.N},
          {"K", m.K},
          {"set", to_json(m.set)},
          {"entries_re", std::move(re)},
          {"entries_im", std::move(im)},
          {"quad_error", m.quad_error}};
}

inline timefreq::LocalizationMatrix localization_from_json(
    const json& j, const std::string& source) {
  for (const char* key : {"N", "K", "set", "entries_re", "entries_im",
                          "quad_error"})
    if (!j.contains(key))
      throw parse_error(source, key, "missing field");
  const int N = j["N"].get<int>();
  if (N < 0) throw parse_error(source, "N", "must be >= 0");
  const int dim = N + 1;
  const auto& re = j["entries_re"];
  const auto& im = j["entries_im"];
  if (!re.is_array() || !im.is_array() ||
      re.size() != static_cast<std::size_t>(dim) * dim ||
      im.size() != re.size())
    throw parse_error(source, "entries_re",
                      "expected " + std::to_string(dim * dim) +
                          " row-major entries");
  timefreq::LocalizationMatrix m{moments::HermitianMatrix(dim),
                                 set_from_json(j["set"], source), N,
                                 j["K"].get<int>(),
                                 j["quad_error"].get<double>()};
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * dim + c;
      m.entries(r, c) = {re[i].get<double>(), im[i].get<double>()};
    }
  return m;
}

/// CSV of the diagonal: n, diagonal mass, for quick plotting.
inline std::string matrix_diag_csv(const timefreq::LocalizationMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "n,diagonal\n";
  for (int n = 0; n <= m.N; ++n) out << n << "," << m.diagonal(n) << "\n";
  return out.str();
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out.flush())
    throw std::runtime_error("write failed: " + path.string());
}

}  // namespace fock::io
