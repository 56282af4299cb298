#include <chrono>
#include <sstream>

#include "cadyn/cli.hpp"
#include "cadyn/error.hpp"

namespace cadyn::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& text, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  spec.base_dir = base_dir;
  spec.output_dir = base_dir;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.rfind("name:", 0) == 0) {
      spec.name = trim(line.substr(5));
      continue;
    }
    if (line.rfind("out:", 0) == 0) {
      const std::filesystem::path out(trim(line.substr(4)));
      spec.output_dir = out.is_absolute() ? out : base_dir / out;
      continue;
    }
    std::istringstream words(line);
    std::vector<std::string> argv;
    std::string w;
    while (words >> w) argv.push_back(w);
    if (argv.front() == "run") throw ParseError("run cannot be nested inside an experiment", number);
    spec.commands.emplace_back(number, std::move(argv));
  }
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Context& ctx) {
  Context local = ctx;
  local.input_dir = spec.base_dir;
  local.output_dir = spec.output_dir;
  ExperimentResult result;
  for (const auto& [line, argv] : spec.commands) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      result.reports.push_back(execute(argv, local));
    } catch (const std::exception& e) {
      result.error = argv.front() + ": " + e.what();
      result.error_line = line;
      result.all_passed = false;
      return result;
    }
    if (ctx.diagnostics) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      *ctx.diagnostics << "timing line " << line << ' ' << argv.front() << ' ' << dt.count() << "s\n";
    }
    if (result.reports.back().passed() == false) result.all_passed = false;
  }
  return result;
}

std::string experiment_text(const ExperimentResult& result) {
  std::string out;
  for (const Report& r : result.reports) out += r.to_text() + '\n';
  return out;
}

nlohmann::ordered_json experiment_json(const ExperimentSpec& spec, const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["experiment"] = spec.name;
  j["reports"] = nlohmann::ordered_json::array();
  for (const Report& r : result.reports) j["reports"].push_back(r.to_json());
  j["result"] = result.all_passed ? "pass" : "fail";
  if (!result.error.empty()) j["error"] = {{"line", result.error_line}, {"message", result.error}};
  return j;
}

}  // namespace cadyn::cli
