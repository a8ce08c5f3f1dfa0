#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fock {

/// Outcome of checking an inequality lhs <= rhs numerically.
///
/// `holds` is decided against the recorded absolute tolerance, so a report is
/// self-contained: re-evaluating `lhs <= rhs + tolerance` reproduces it.
/// `params` carries named side quantities (measures, truncation orders,
/// intermediate averages) in insertion order for serialization.
struct AuditReport {
  std::string context;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool holds = false;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, double>> params;

  AuditReport& with(std::string name, double value) {
    params.emplace_back(std::move(name), value);
    return *this;
  }
};

inline AuditReport make_audit(std::string context, double lhs, double rhs,
                              double tolerance) {
  AuditReport r;
  r.context = std::move(context);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.holds = lhs <= rhs + tolerance;
  return r;
}

}  // namespace fock
