#pragma once

// Self-checks shared by `ibstring verify` and the acceptance test binary.

#include "ibstring/curve.hpp"
#include "ibstring/dynamics.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace ibstring {

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string id;
  std::string title;
  std::function<CheckOutcome()> run;
};

struct CheckReport {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Fast invariant checks across all modules (a few seconds).
std::vector<Check> invariant_checks();

/// The twelve acceptance criteria, ids A01..A12.
std::vector<Check> acceptance_checks();

enum class VerifyLevel { quick, full };

/// quick: invariant checks; full: invariant checks followed by the acceptance
/// criteria.
std::vector<Check> verify_suite(VerifyLevel level);

/// Runs one check, converting an escaping exception into a failure.
CheckReport run_check(const Check& check);

/// Runs all checks, printing one "PASS|FAIL id title: detail" line each.
/// Returns true when every check passed.
bool run_suite(const std::vector<Check>& checks, std::ostream& out);

/// Random near-circle: a circle of random radius, phase and center plus
/// modes 2..6 with amplitudes up to max_amplitude times the radius.
CurveState random_near_circle(std::mt19937_64& rng, std::size_t n, double max_amplitude = 0.05);

/// Named long runs used by several criteria; each is computed once per
/// process and cached.
struct StandardRun {
  std::string name;
  RunResult result;
};
const StandardRun& standard_run(const std::string& name);
std::vector<std::string> standard_run_names();

}  // namespace ibstring
