#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cadyn::cli {

/// One line of output: a command name and ordered key=value fields, plus
/// an optional pass/fail verdict.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Report& add(const std::string& key, const std::string& value);
  Report& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  Report& add(const std::string& key, std::int64_t value);
  Report& add(const std::string& key, std::uint64_t value);
  Report& add(const std::string& key, int value) { return add(key, static_cast<std::int64_t>(value)); }
  Report& add(const std::string& key, double value);
  Report& add(const std::string& key, bool value) { return add(key, value ? "yes" : "no"); }
  /// Records a check; the report fails if any check fails.
  Report& check(const std::string& key, bool passed);

  const std::string& command() const { return command_; }
  std::optional<bool> passed() const { return passed_; }
  const std::vector<std::pair<std::string, nlohmann::ordered_json>>& fields() const { return fields_; }

  /// `command key=value ...`; strings containing spaces are quoted.
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, nlohmann::ordered_json>> fields_;
  std::optional<bool> passed_;
};

/// Where relative paths resolve and what global flags say.
struct Context {
  std::filesystem::path input_dir = ".";
  std::filesystem::path output_dir = ".";
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 20240607;
  bool json = false;
  bool serial = false;
  std::ostream* diagnostics = nullptr;  ///< timing and warnings
};

/// Runs one command line (without the program name). Reports go to `out`,
/// errors and timing to `err`. Exit status: 0 all checks pass, 1 a check
/// failed, 2 usage or runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

/// Executes a single command within a context and returns its report.
/// Throws cadyn::Error (or CLI11 parse errors wrapped as cadyn::Error).
Report execute(const std::vector<std::string>& args, const Context& ctx);

struct ExperimentSpec {
  std::string name;
  std::filesystem::path base_dir;
  std::filesystem::path output_dir;
  std::vector<std::pair<int, std::vector<std::string>>> commands;  ///< (line, argv)
};

ExperimentSpec parse_experiment(const std::string& text, const std::filesystem::path& base_dir);

struct ExperimentResult {
  std::vector<Report> reports;
  bool all_passed = true;
  std::string error;  ///< set when a command aborted the run
  int error_line = 0;
};

ExperimentResult run_experiment(const ExperimentSpec& spec, const Context& ctx);
std::string experiment_text(const ExperimentResult& result);
nlohmann::ordered_json experiment_json(const ExperimentSpec& spec, const ExperimentResult& result);

}  // namespace cadyn::cli
