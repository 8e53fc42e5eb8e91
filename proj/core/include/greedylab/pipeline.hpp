#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "greedylab/basis.hpp"
#include "greedylab/config.hpp"
#include "greedylab/harness.hpp"

namespace greedylab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

struct CommandOptions {
    std::string basis_id;    // catalog id, e.g. "summing:8"
    std::string basis_file;  // custom basis JSON (takes precedence)
    bool require_exact = false;
    bool inject_fault = false;  // verify: corrupt one table to exercise the failure path
};

// Each command writes into config.outputs.dir (created when missing) and
// returns an exit code: 0 ok, 1 check failure, 2 usage/config, 3 capacity.
int cmd_params(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_thresholds(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_lebesgue(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);

// The checks behind cmd_verify, sorted by (check_id, basis_id).
std::vector<CheckResult> run_verification(const RunConfig& config, bool inject_fault = false);

// Clips m_max to [1, n] (0 means n), warning on err when clipping.
int effective_m_max(int requested, int n, std::ostream& err);

}  // namespace greedylab
