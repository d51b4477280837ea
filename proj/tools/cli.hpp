#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace rigidtori::cli {

struct Tolerances {
  double complex_structure = 1e-10;
  double rounding = 1e-6;
  double newton = 1e-10;
  double positivity = 1e-8;
  double conditioning = 1e6;
  double relation_one = 1e-8;
  double min_eigenvalue = 1e-6;
};

struct JobSpec {
  std::string command;  // analyze, rigidity, enumerate-rigid, polarize, deform, selftest
  std::string input;    // path; unused by selftest
  std::optional<std::uint64_t> seed;
  long max_denominator = 256;
  double epsilon = 1e-2;
  bool g_invariant = false;
  Tolerances tolerances;
};

struct JobResult {
  int status = 0;  // 0 ok, 1 domain error, 2 input error
  nlohmann::json report;
  std::string human;
};

/// Runs one job on an already parsed input document.
JobResult run(const JobSpec& job, const nlohmann::json& document);
/// Reads job.input (except for selftest) and runs.
JobResult run(const JobSpec& job);

/// Canonical text of a report: sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& report);

}  // namespace rigidtori::cli
