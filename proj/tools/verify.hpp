#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zonalpd::cli {

/// One line of a verify report: `PASS suite.check measured=… tol=… [note]`.
struct CheckLine {
  std::string suite;
  std::string check;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"jacobi", "transforms", "decomposition", "gram", "lambdas"};
  return names;
}

/// Runs a named suite (or "all"); returns nullopt for an unknown name.
/// Info lines (measured values without a verdict) go straight to `out`.
std::optional<std::vector<CheckLine>> run_suite(const std::string& name, std::uint64_t seed, std::ostream& out);

}  // namespace zonalpd::cli
