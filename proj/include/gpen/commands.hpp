#pragma once

#include "gpen/config.hpp"

namespace gpen {

/// Exit statuses shared by all commands:
///   0 success, 1 usage/domain error, 2 inequality or identity violation,
///   3 gate rejection.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitGate = 3;

int cmd_verify(const RunConfig& config);
int cmd_family(const RunConfig& config);
int cmd_converge(const RunConfig& config);
int cmd_identities(const RunConfig& config);

/// Shared error-to-exit-code mapping for main() and tests.
int run_command(const std::string& command, const RunConfig& config);

}  // namespace gpen
