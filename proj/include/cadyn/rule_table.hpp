#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cadyn/exec.hpp"

namespace cadyn {

using State = std::uint16_t;

/// Largest alphabet a rule may use; the top value is reserved for
/// undetermined window cells.
inline constexpr std::uint32_t kMaxAlphabet = 0xFFFF;

/// Neighborhood offset. One-dimensional rules keep y == 0.
struct Offset {
  int x = 0;
  int y = 0;
  auto operator<=>(const Offset&) const = default;
};

inline Offset operator+(Offset a, Offset b) { return {a.x + b.x, a.y + b.y}; }

enum class Sidedness { One, Two };

/// A cellular automaton given by an explicit local rule.
///
/// The table is indexed by neighborhood patterns in the order the
/// neighborhood is listed: pattern (s_0, ..., s_{m-1}) sits at index
/// sum s_i * k^(m-1-i), so the first offset is the most significant digit
/// and table order is lexicographic order of patterns.
class RuleTable {
 public:
  RuleTable(int dimension, std::uint32_t alphabet_size, Sidedness sidedness,
            std::vector<Offset> neighborhood, std::vector<State> table);

  int dimension() const { return dimension_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  Sidedness sidedness() const { return sidedness_; }
  const std::vector<Offset>& neighborhood() const { return neighborhood_; }
  const std::vector<State>& table() const { return table_; }
  std::size_t pattern_count() const { return table_.size(); }

  /// max infinity-norm over the neighborhood.
  int radius() const;

  std::size_t index_of(std::span<const State> pattern) const;
  std::vector<State> pattern_at(std::size_t index) const;

  State operator()(std::span<const State> pattern) const { return table_[index_of(pattern)]; }
  State at(std::size_t index) const { return table_[index]; }

  /// Evaluates a 1D rule on a word whose letter word[j] sits at offset
  /// j - origin. Every neighborhood offset must fall inside the word.
  State eval_word(std::span<const State> word, int origin) const;

  /// Structural equality: same neighborhood order and table.
  /// Semantic equality of global maps is `equal_ca`.
  friend bool operator==(const RuleTable&, const RuleTable&) = default;

 private:
  int dimension_;
  std::uint32_t alphabet_size_;
  Sidedness sidedness_;
  std::vector<Offset> neighborhood_;
  std::vector<State> table_;
};

/// Identity rule with neighborhood {0}.
RuleTable identity_rule(int dimension, std::uint32_t alphabet_size,
                        Sidedness sidedness = Sidedness::One);

/// Rule mapping every pattern to `value`, neighborhood {0, 1} in 1D.
RuleTable constant_rule(std::uint32_t alphabet_size, State value,
                        Sidedness sidedness = Sidedness::One);

/// Rule of outer∘inner on the Minkowski sum of the neighborhoods.
RuleTable compose(const RuleTable& outer, const RuleTable& inner, const Budget& budget = {},
                  Exec exec = Exec::Parallel);

/// outer composed with itself `times` times (times ≥ 1).
RuleTable power(const RuleTable& rule, int times, const Budget& budget = {},
                Exec exec = Exec::Parallel);

/// Direct product acting componentwise; pair state (s1, s2) is encoded
/// as s1 * |A2| + s2. Neighborhood is the sorted union.
RuleTable product(const RuleTable& first, const RuleTable& second, const Budget& budget = {},
                  Exec exec = Exec::Parallel);

/// True iff both rules induce the same global map, decided on the union
/// neighborhood.
bool equal_ca(const RuleTable& a, const RuleTable& b, const Budget& budget = {},
              Exec exec = Exec::Parallel);

/// Re-expresses a rule on a larger neighborhood (which must contain the
/// original one). Used to normalise rules before comparing tables.
RuleTable extend_to(const RuleTable& rule, std::vector<Offset> neighborhood,
                    const Budget& budget = {});

/// Throws MismatchError unless both rules share alphabet, dimension and sidedness.
void require_compatible(const RuleTable& a, const RuleTable& b, const char* op);

}  // namespace cadyn
