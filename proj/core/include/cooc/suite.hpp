#pragma once

#include "cooc/density.hpp"
#include "cooc/random_model.hpp"
#include "cooc/scm.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cooc {

struct CheckResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what);
  void merge(const CheckResult& other);
  bool ok() const { return failures == 0; }
};

using CheckFn = std::function<void(const Model&, ModelGenerator&, CheckResult&)>;

struct TheoremCheck {
  std::string id;
  std::string title;
  CheckFn run;
};

// Every executable identity, keyed by theorem number ("2.9.1", "3.9", "6.6", ...).
const std::vector<TheoremCheck>& theorem_checks();

// Conditional independence equivalences.  With `exhaustive`, every event on every chosen codomain is tried;
// otherwise `samples` random event tuples per pattern.
void check_ci_equivalences(const Model& m, ModelGenerator& g, CheckResult& r, bool exhaustive,
                           std::size_t samples = 12);

struct SuiteOptions {
  std::vector<std::string> theorems;  // empty: all
  std::size_t cases = 0;              // random models in addition to the given ones
  std::uint64_t seed = 0;
};

struct SuiteRow {
  std::string id;
  std::string title;
  CheckResult result;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  bool ok() const;
};

// Errors: UnknownIndex for an unknown theorem id.
SuiteReport run_suite(const std::vector<Model>& models, const SuiteOptions& opts);

}  // namespace cooc
