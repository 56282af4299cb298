#include "cadyn/trace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cadyn {

namespace {

bool use_sweep(const RuleTable& rule, Enumeration method) {
  const bool one_sided = rule.dimension() == 1 && rule.sidedness() == Sidedness::One;
  switch (method) {
    case Enumeration::BruteForce:
      return false;
    case Enumeration::Sweep:
      if (!one_sided) throw MismatchError("column sweep needs a one-sided 1D rule");
      return true;
    case Enumeration::Auto:
      break;
  }
  return one_sided;
}

TraceSet enumerate(const RuleTable& rule, int n, int t, PatternKind kind,
                   const EnumerationOptions& opts) {
  if (rule.dimension() != 1) throw MismatchError("pattern enumeration needs a 1D rule");
  if (n < 1 || t < 1) throw Error("pattern enumeration needs n >= 1 and t >= 1");
  TraceSet set;
  set.kind = kind;
  set.alphabet_size = rule.alphabet_size();
  set.n = n;
  set.t = t;
  set.data = use_sweep(rule, opts.method)
                 ? kernels::enumerate_blocks_sweep(rule, n, t, opts.budget, opts.exec)
                 : kernels::enumerate_blocks_bruteforce(rule, n, t, opts.budget, opts.exec);
  return set;
}

}  // namespace

bool TraceSet::contains(std::span<const State> p) const {
  if (p.size() != stride()) return false;
  std::size_t lo = 0;
  std::size_t hi = count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto q = pattern(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < count() && std::equal(p.begin(), p.end(), pattern(lo).begin());
}

TraceSet spacetime_patterns(const RuleTable& rule, int n, int t, const EnumerationOptions& opts) {
  return enumerate(rule, n, t, PatternKind::SpaceTime, opts);
}

TraceSet trace_words(const RuleTable& rule, int n, int t, const EnumerationOptions& opts) {
  return enumerate(rule, n, t, PatternKind::TraceWords, opts);
}

EntropyEstimate entropy_estimate(const RuleTable& rule, int n, int t,
                                 const EnumerationOptions& opts) {
  if (t < 3) throw Error("entropy_estimate: t must be at least 3");
  EntropyEstimate e;
  e.p_t = trace_words(rule, n, t, opts).count();
  e.p_t_minus_2 = trace_words(rule, n, t - 2, opts).count();
  const double log_t = std::log2(static_cast<double>(e.p_t));
  e.difference = (log_t - std::log2(static_cast<double>(e.p_t_minus_2))) / 2.0;
  e.raw = log_t / t;
  return e;
}

bool is_nilpotent_within(const RuleTable& rule, int n, State q, const Budget& budget,
                         Exec exec) {
  if (n < 1) throw Error("is_nilpotent_within: n must be at least 1");
  if (q >= rule.alphabet_size()) throw Error("is_nilpotent_within: q outside alphabet");
  const std::uint64_t size =
      saturating_pow(rule.alphabet_size(), static_cast<std::uint64_t>(rule.radius()) * n + 1);
  budget.require(size, "is_nilpotent_within");
  const RuleTable composite = power(rule, n, budget, exec);
  return std::all_of(composite.table().begin(), composite.table().end(),
                     [q](State s) { return s == q; });
}

std::set<State> find_spreading_states(const RuleTable& rule) {
  const auto& hood = rule.neighborhood();
  const bool has0 = std::find(hood.begin(), hood.end(), Offset{0, 0}) != hood.end();
  const bool has1 = std::find(hood.begin(), hood.end(), Offset{1, 0}) != hood.end();
  if (rule.dimension() != 1 || !has0 || !has1)
    throw Error("find_spreading_states: neighborhood must contain offsets 0 and 1");
  std::set<State> result;
  for (std::uint32_t s = 0; s < rule.alphabet_size(); ++s) {
    bool spreading = true;
    for (std::size_t i = 0; i < rule.pattern_count() && spreading; ++i) {
      const auto p = rule.pattern_at(i);
      if (std::find(p.begin(), p.end(), s) != p.end() && rule.at(i) != s) spreading = false;
    }
    if (spreading) result.insert(static_cast<State>(s));
  }
  return result;
}

bool avoiding_window_exists(const RuleTable& rule, State s, int m,
                            const EnumerationOptions& opts) {
  if (rule.dimension() != 1 || rule.sidedness() != Sidedness::One)
    throw MismatchError("avoiding_window_exists: rule must be one-sided 1D");
  if (m < 1) throw Error("avoiding_window_exists: m must be at least 1");
  const int size = m + 1;
  auto filter = [&](int column, std::span<const State> values) {
    if (column > m) return true;
    const auto rows = std::min<std::size_t>(values.size(), static_cast<std::size_t>(size));
    return std::find(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rows), s) ==
           values.begin() + static_cast<std::ptrdiff_t>(rows);
  };
  const auto blocks = kernels::enumerate_blocks_sweep(rule, size, size, opts.budget, opts.exec, filter);
  return !blocks.empty();
}

}  // namespace cadyn
