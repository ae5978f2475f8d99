#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gma::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kComputationFailed = 1,
  kValidationFailed = 2,
  kCriterionFailed = 3,
};

/// Runs one invocation. args excludes the program name. Reports go to out, errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The published configuration schema of a command such as "toric check".
nlohmann::json config_schema(const std::string& command);
std::vector<std::string> commands();

/// Throws ValidationError with the offending path on the first mismatch. Supports the subset
/// type, const, enum, minimum, exclusiveMinimum, maximum, items, minItems, maxItems, properties,
/// required and additionalProperties (false unless given). The extra type "rational" accepts
/// integers and strings such as "9/10".
void validate(const nlohmann::json& value, const nlohmann::json& schema, const std::string& path = "$");

}  // namespace gma::cli
