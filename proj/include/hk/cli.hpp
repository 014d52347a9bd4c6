#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/io.hpp"

namespace hk {

struct JobSpec {
  std::string command;  // "height point", "bound fermat", ...
  json input = json::object();
  long precision = 256;
  std::optional<uint64_t> seed;
  int workers = 1;
  std::optional<long> budget;
  bool latex = false;
};

struct JobResult {
  int exit_code = 0;  // 0 success, 2 hypothesis failed, 1 error
  json doc;
};

// Validates the input against the command schema, runs it, and never throws.
JobResult run_job(const JobSpec& job);

const std::vector<std::string>& command_names();
// Input schema of a command, e.g. "siegel smallsection".
const json& command_schema(const std::string& command);

// Fixed-size sweeps of every module's invariants.
json run_selftest(uint64_t seed);

}  // namespace hk
