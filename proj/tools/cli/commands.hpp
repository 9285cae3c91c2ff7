#pragma once

#include <ostream>

#include "cli/config.hpp"

namespace surftex::cli {

/// Each command returns 0 once every output is in place and throws
/// surftex::Error otherwise (outputs of a failed run are removed).
int cmd_sandblast(const RunConfig& cfg, std::ostream& log);
int cmd_mill(const RunConfig& cfg, std::ostream& log);
int cmd_stats(const RunConfig& cfg, std::ostream& log);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_fixture(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.mode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace surftex::cli
