#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cadyn/formats.hpp"
#include "cadyn/rule_table.hpp"

namespace testing {

/// Seed for randomized properties; override with CADYN_SEED.
inline std::uint64_t seed() {
  const char* env = std::getenv("CADYN_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 20240607ULL;
}

inline cadyn::RuleTable random_rule(std::mt19937_64& rng, std::uint32_t k,
                                    std::vector<cadyn::Offset> hood,
                                    cadyn::Sidedness sided = cadyn::Sidedness::One) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < hood.size(); ++i) size *= k;
  std::uniform_int_distribution<int> dist(0, static_cast<int>(k) - 1);
  std::vector<cadyn::State> table(size);
  for (auto& s : table) s = static_cast<cadyn::State>(dist(rng));
  return cadyn::RuleTable(1, k, sided, std::move(hood), std::move(table));
}

inline std::vector<cadyn::State> word(const std::string& digits) {
  std::vector<cadyn::State> w;
  for (char c : digits) w.push_back(static_cast<cadyn::State>(c - '0'));
  return w;
}

inline std::string digits(std::span<const cadyn::State> w) {
  std::string s;
  for (auto x : w) s += static_cast<char>('0' + x);
  return s;
}

inline std::string data(const std::string& name) { return std::string(CADYN_DATA_DIR) + "/" + name; }

inline cadyn::RuleTable load(const std::string& name) {
  return cadyn::parse_rule_or_family(cadyn::read_file(data(name)));
}

/// Length-t factors of the bi-infinite block language {00, 12}^Z.
inline std::vector<std::string> block_language_factors(int t) {
  std::vector<std::string> out;
  // a long enough sample of every concatenation covers all factors
  const int blocks = t / 2 + 2;
  for (std::uint32_t mask = 0; mask < (1u << blocks); ++mask) {
    std::string w;
    for (int i = 0; i < blocks; ++i) w += (mask >> i & 1) ? "12" : "00";
    for (int start = 0; start + t <= static_cast<int>(w.size()); ++start) out.push_back(w.substr(start, t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace testing
