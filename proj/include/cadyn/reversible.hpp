#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cadyn/rule_table.hpp"

namespace cadyn {

/// One-sided radius-1 rule f(x, a) = perms[a][x], one permutation of the
/// alphabet per right-neighbor state.
struct PermutationFamily {
  std::uint32_t alphabet_size = 0;
  std::vector<std::vector<State>> perms;

  /// Throws unless there is one bijection per state.
  void validate() const;
  friend bool operator==(const PermutationFamily&, const PermutationFamily&) = default;
};

/// The reversible rule on {0,1,2}: rho_0 = rho_2 = (0)(12), rho_1 = (012).
PermutationFamily zeta_family();
RuleTable zeta_rule();

RuleTable family_to_rule(const PermutationFamily& family);

/// Inverse of family_to_rule, when the rule has neighborhood {0, 1} and
/// every column f(_, a) is a permutation.
std::optional<PermutationFamily> rule_to_family(const RuleTable& rule);

/// Searches for an inverse of a 1D rule among rules of radius 0..max_radius
/// (neighborhood [0, R] for one-sided, [-R, R] for two-sided). Returns the
/// smallest-radius inverse, verified in both composition orders, or nullopt.
std::optional<RuleTable> invert_up_to_radius(const RuleTable& rule, int max_radius,
                                             const Budget& budget = {},
                                             Exec exec = Exec::Parallel);

/// rho: a_0 ... a_{n-1} -> rho_{a_1}(a_0) ... rho_{a_{n-1}}(a_{n-2}) rho_1(a_{n-1}).
std::vector<State> rho_step(std::span<const State> word);

inline constexpr int kRhoMaxLength = 16;

struct RhoOrbit {
  std::uint64_t length = 0;  ///< steps until 0^n recurs
  bool visits_all = false;   ///< every word of length n occurred exactly once
};

/// Iterates rho from 0^n, counting steps and marking visited words.
RhoOrbit rho_orbit(int n);
std::uint64_t rho_orbit_length(int n);

}  // namespace cadyn
