#include "gma/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gma/errors.hpp"

namespace gma::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::string> commands() {
  std::vector<std::string> names;
  for (const auto& [k, v] : command_table()) names.push_back(k);
  return names;
}

json config_schema(const std::string& command) {
  const auto& t = command_table();
  const auto it = t.find(command);
  if (it == t.end()) throw ValidationError("unknown command '" + command + "'");
  return it->second.schema;
}

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream o(p, std::ios::binary);
  o << s;
  if (!o) throw DataError("cannot write " + p.string());
}

json error_json(const std::exception& e, const char* kind, int code) {
  return {{"error", kind}, {"message", e.what()}, {"exitCode", code}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for generalised Monge-Ampere equations"};
  app.name("gma");
  std::string configPath, outDir, format = "auto";
  std::uint64_t seed = 0;
  int threads = 1;
  bool printSchema = false;
  app.add_option("--config", configPath, "JSON run configuration");
  app.add_option("--out", outDir, "directory for report.json and artifacts");
  app.add_option("--seed", seed, "seed for randomized drivers");
  app.add_option("--threads", threads, "worker threads for grid loops")->check(CLI::Range(1, 256));
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_flag("--print-schema", printSchema, "print the config schema of the command and exit");
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, CLI::App*> groups;
  for (const auto& name : commands()) {
    const auto sp = name.find(' ');
    const std::string g = name.substr(0, sp), leaf = name.substr(sp + 1);
    if (!groups.count(g)) {
      groups[g] = app.add_subcommand(g);
      groups[g]->require_subcommand(1);
      groups[g]->fallthrough();
    }
    groups[g]->add_subcommand(leaf)->fallthrough();
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_json(e, "UsageError", kValidationFailed).dump() << "\n";
    return kValidationFailed;
  }
  const CLI::App* group = app.get_subcommands().front();
  const std::string name = group->get_name() + " " + group->get_subcommands().front()->get_name();
  const Command& cmd = command_table().at(name);

  if (printSchema) {
    out << cmd.schema.dump(2) << "\n";
    return kOk;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (configPath.empty()) throw ValidationError("--config is required");
    Context ctx;
    ctx.config = load_config(configPath);
    validate(ctx.config, cmd.schema);
    ctx.base = fs::absolute(configPath).parent_path();
    ctx.seed = seed;
    ctx.threads = threads;
    const bool csv = format == "csv" || (format == "auto" && cmd.csvDefault);

    Outcome o = cmd.run(ctx);
    if (csv && !o.table) throw ValidationError("--format csv is not available for " + name);

    json timings = o.timings;
    timings["wallSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json report = {{"command", name},
                         {"schemaVersion", 1},
                         {"seed", seed},
                         {"exitCode", o.code},
                         {"result", o.result},
                         {"timings", timings}};
    if (!outDir.empty()) {
      const fs::path dir(outDir);
      fs::create_directories(dir);
      write_text(dir / "report.json", report.dump(2) + "\n");
      for (const auto& [file, grid] : o.grids) io::write_grid((dir / file).string(), grid);
      for (const auto& [file, text] : o.files) write_text(dir / file, text);
    }
    out << (csv ? *o.table : report.dump(2) + "\n");
    return o.code;
  } catch (const ValidationError& e) {
    err << error_json(e, "ValidationError", kValidationFailed).dump() << "\n";
    return kValidationFailed;
  } catch (const DomainError& e) {
    err << error_json(e, "DomainError", kValidationFailed).dump() << "\n";
    return kValidationFailed;
  } catch (const ConeBreach& e) {
    json j = error_json(e, "ConeBreach", kComputationFailed);
    j["point"] = e.point();
    j["coords"] = e.coords();
    j["value"] = e.value();
    err << j.dump() << "\n";
  } catch (const CompatibilityDefect& e) {
    json j = error_json(e, "CompatibilityDefect", kComputationFailed);
    j["defect"] = e.defect();
    err << j.dump() << "\n";
  } catch (const SolverError& e) {
    err << error_json(e, e.kind().c_str(), kComputationFailed).dump() << "\n";
  } catch (const StateError& e) {
    err << error_json(e, "StateError", kComputationFailed).dump() << "\n";
  } catch (const DataError& e) {
    err << error_json(e, "DataError", kComputationFailed).dump() << "\n";
  } catch (const std::exception& e) {
    err << error_json(e, "InternalError", kComputationFailed).dump() << "\n";
  }
  return kComputationFailed;
}

}  // namespace gma::cli
