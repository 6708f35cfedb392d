#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace agv::cli {

enum class Status { ok, infeasible, not_found, error };

std::string to_string(Status s);

struct CommandResult {
  Status status = Status::ok;
  nlohmann::json payload = nlohmann::json::object();
  /// 0 when the command ran (whatever the verdict), 1 for usage or input
  /// errors, 2 when --assert-feasible is set and the verdict is negative.
  int exit_code = 0;
};

/// Parses and dispatches one invocation. `args` excludes the program name.
/// Output goes to `out`; the one-line diagnostic for a failure goes to `err`.
CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agv::cli
