#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gma/io/grid_io.hpp"

namespace gma::cli {

struct Context {
  nlohmann::json config;
  std::filesystem::path base;  ///< relative paths in the config resolve against this
  std::uint64_t seed = 0;
  int threads = 1;
};

struct Outcome {
  nlohmann::json result;
  nlohmann::json timings = nlohmann::json::object();
  int code = 0;
  std::optional<std::string> table;  ///< CSV form, when the command has one
  std::vector<std::pair<std::string, io::GridFile>> grids;
  std::vector<std::pair<std::string, std::string>> files;
};

struct Command {
  nlohmann::json schema;
  std::function<Outcome(const Context&)> run;
  bool csvDefault = false;
};

/// Keyed by "group leaf", e.g. "psh lelong".
const std::map<std::string, Command>& command_table();

}  // namespace gma::cli
