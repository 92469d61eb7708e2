#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qforms::cli {

struct SuiteReport {
  std::string suite;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// Suites: oracle, integrality, bounds, proofs. Throws DomainError for any
// other name.
SuiteReport run_suite(std::string_view name, unsigned threads = 0);

inline constexpr std::string_view kSuites[] = {"oracle", "integrality", "bounds", "proofs"};

}  // namespace qforms::cli
