#pragma once

// Data-parallel inner loops shared by the library. Every kernel has a serial
// reference path and an OpenMP path selected by `Exec`; results never depend
// on the path or on the number of threads.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cadyn/exec.hpp"
#include "cadyn/rule_table.hpp"

namespace cadyn::kernels {

/// Writes the base-`base` digits of `index` into `digits` (most significant first).
void decode_word(std::uint64_t index, std::uint32_t base, std::span<State> digits);

/// Advances `digits` to the next word in lexicographic order.
void next_word(std::uint32_t base, std::span<State> digits);

/// Fills table[i] = fn(pattern_i) for all k^length patterns. `fn` receives
/// the decoded pattern and must be safe to call concurrently.
void fill_table(std::uint32_t base, int length, std::span<State> table,
                const std::function<State(std::span<const State>)>& fn, Exec exec);

/// True iff pred holds for every word of the given length.
bool all_words(std::uint32_t base, int length,
               const std::function<bool(std::span<const State>)>& pred, Exec exec);

/// Block enumeration by brute force: every initial word of length
/// n + (left + right)(t - 1) is evolved t - 1 steps with absent boundary and
/// the n×t block starting at offset left·(t - 1) is collected. Output is a
/// sorted, duplicate-free flat array with stride n·t (row-major, one row per
/// time step).
std::vector<State> enumerate_blocks_bruteforce(const RuleTable& rule, int n, int t,
                                               const Budget& budget, Exec exec);

/// Optional pruning hook for the column sweep: called with the column index
/// and the column's values (time 0 first); returning false discards the
/// partial diagram.
using ColumnFilter = std::function<bool(int column, std::span<const State> values)>;

/// Exact block enumeration for one-sided 1D rules by sweeping columns right
/// to left and keeping the set of reachable column tuples. Same output
/// format as the brute-force kernel. `work` counts (state, letter)
/// expansions and is checked against the budget.
std::vector<State> enumerate_blocks_sweep(const RuleTable& rule, int n, int t,
                                          const Budget& budget, Exec exec,
                                          const ColumnFilter& filter = {},
                                          std::uint64_t* work = nullptr);

}  // namespace cadyn::kernels
