#include <cstdio>
#include <sstream>

#include "cadyn/cli.hpp"

namespace cadyn::cli {

Report& Report::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
  return *this;
}

Report& Report::add(const std::string& key, std::int64_t value) {
  fields_.emplace_back(key, value);
  return *this;
}

Report& Report::add(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, value);
  return *this;
}

Report& Report::add(const std::string& key, double value) {
  // fixed precision keeps text and JSON reports byte-stable
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  fields_.emplace_back(key, nlohmann::ordered_json::parse(buf));
  return *this;
}

Report& Report::check(const std::string& key, bool passed) {
  fields_.emplace_back(key, passed ? "pass" : "fail");
  passed_ = passed_.value_or(true) && passed;
  return *this;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command_;
  for (const auto& [key, value] : fields_) {
    out << ' ' << key << '=';
    if (value.is_string()) {
      const auto& s = value.get_ref<const std::string&>();
      if (s.empty() || s.find_first_of(" \t\"=") != std::string::npos) {
        out << nlohmann::ordered_json(s).dump();
      } else {
        out << s;
      }
    } else if (value.is_number_float()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", value.get<double>());
      out << buf;
    } else {
      out << value.dump();
    }
  }
  if (passed_) out << " result=" << (*passed_ ? "pass" : "fail");
  return out.str();
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  for (const auto& [key, value] : fields_) j[key] = value;
  if (passed_) j["result"] = *passed_ ? "pass" : "fail";
  return j;
}

}  // namespace cadyn::cli
