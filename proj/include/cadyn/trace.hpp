#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "cadyn/kernels.hpp"
#include "cadyn/rule_table.hpp"

namespace cadyn {

enum class PatternKind { SpaceTime, TraceWords };

/// How blocks are enumerated. Auto picks the column sweep for one-sided
/// rules and parallel brute force otherwise.
enum class Enumeration { Auto, BruteForce, Sweep };

struct EnumerationOptions {
  Budget budget{};
  Exec exec = Exec::Parallel;
  Enumeration method = Enumeration::Auto;
};

/// Exact set of n×t space-time blocks (equivalently, length-t words over
/// A^n read off the first n cells). Patterns are stored sorted, row-major
/// with one row of n cells per time step.
struct TraceSet {
  PatternKind kind = PatternKind::TraceWords;
  std::uint32_t alphabet_size = 0;
  int n = 0;
  int t = 0;
  std::vector<State> data;

  std::size_t stride() const { return static_cast<std::size_t>(n) * t; }
  std::size_t count() const { return stride() == 0 ? 0 : data.size() / stride(); }
  std::span<const State> pattern(std::size_t i) const {
    return {data.data() + i * stride(), stride()};
  }
  bool contains(std::span<const State> pattern) const;

  /// Same content with kind ignored.
  bool same_patterns(const TraceSet& other) const {
    return n == other.n && t == other.t && data == other.data;
  }
  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

TraceSet spacetime_patterns(const RuleTable& rule, int n, int t,
                            const EnumerationOptions& opts = {});
TraceSet trace_words(const RuleTable& rule, int n, int t, const EnumerationOptions& opts = {});

struct EntropyEstimate {
  std::uint64_t p_t = 0;
  std::uint64_t p_t_minus_2 = 0;
  double difference = 0.0;  ///< (log2 p_t - log2 p_{t-2}) / 2
  double raw = 0.0;         ///< log2(p_t) / t
};

EntropyEstimate entropy_estimate(const RuleTable& rule, int n, int t,
                                 const EnumerationOptions& opts = {});

/// True iff every entry of the n-fold composite equals q.
bool is_nilpotent_within(const RuleTable& rule, int n, State q, const Budget& budget = {},
                         Exec exec = Exec::Parallel);

/// States s with f(pattern) = s whenever s occurs in the pattern. Needs a
/// 1D rule whose neighborhood contains offsets 0 and 1.
std::set<State> find_spreading_states(const RuleTable& rule);

/// Whether some initial word of length m + 1 + r·m keeps state s out of
/// the region 0 <= i, j <= m of its space-time diagram.
bool avoiding_window_exists(const RuleTable& rule, State s, int m,
                            const EnumerationOptions& opts = {});

}  // namespace cadyn
