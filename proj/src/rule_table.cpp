#include "cadyn/rule_table.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "cadyn/kernels.hpp"

namespace cadyn {

namespace {

// Position of each offset of `sub` inside `super`.
std::vector<int> positions_in(const std::vector<Offset>& sub, const std::vector<Offset>& super) {
  std::vector<int> pos;
  pos.reserve(sub.size());
  for (const Offset& o : sub) {
    auto it = std::find(super.begin(), super.end(), o);
    if (it == super.end()) throw MismatchError("neighborhood is not contained in target");
    pos.push_back(static_cast<int>(it - super.begin()));
  }
  return pos;
}

std::vector<Offset> sorted_union(const std::vector<Offset>& a, const std::vector<Offset>& b) {
  std::set<Offset> all(a.begin(), a.end());
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

std::uint64_t table_size_or_throw(std::uint32_t base, std::size_t length, const Budget& budget,
                                  const char* what) {
  const std::uint64_t size = saturating_pow(base, length);
  budget.require(size, what);
  return size;
}

}  // namespace

RuleTable::RuleTable(int dimension, std::uint32_t alphabet_size, Sidedness sidedness,
                     std::vector<Offset> neighborhood, std::vector<State> table)
    : dimension_(dimension),
      alphabet_size_(alphabet_size),
      sidedness_(sidedness),
      neighborhood_(std::move(neighborhood)),
      table_(std::move(table)) {
  if (dimension_ != 1 && dimension_ != 2) throw Error("dimension must be 1 or 2");
  if (alphabet_size_ == 0 || alphabet_size_ > kMaxAlphabet)
    throw Error("alphabet size must be in 1.." + std::to_string(kMaxAlphabet));
  if (dimension_ == 2 && sidedness_ == Sidedness::One)
    throw Error("one-sided rules are one-dimensional");
  if (neighborhood_.empty()) throw Error("neighborhood is empty");
  std::set<Offset> seen;
  for (const Offset& o : neighborhood_) {
    if (dimension_ == 1 && o.y != 0) throw Error("1D neighborhood offset with y != 0");
    if (sidedness_ == Sidedness::One && o.x < 0)
      throw Error("one-sided rule with negative offset " + std::to_string(o.x));
    if (!seen.insert(o).second) throw Error("duplicate neighborhood offset");
  }
  const std::uint64_t expected = saturating_pow(alphabet_size_, neighborhood_.size());
  if (expected != table_.size())
    throw Error("rule table has " + std::to_string(table_.size()) + " entries, expected " +
                std::to_string(expected));
  for (State s : table_)
    if (s >= alphabet_size_) throw Error("rule image " + std::to_string(s) + " outside alphabet");
}

int RuleTable::radius() const {
  int r = 0;
  for (const Offset& o : neighborhood_) r = std::max({r, std::abs(o.x), std::abs(o.y)});
  return r;
}

std::size_t RuleTable::index_of(std::span<const State> pattern) const {
  std::size_t index = 0;
  for (State s : pattern) index = index * alphabet_size_ + s;
  return index;
}

std::vector<State> RuleTable::pattern_at(std::size_t index) const {
  std::vector<State> digits(neighborhood_.size());
  kernels::decode_word(index, alphabet_size_, digits);
  return digits;
}

State RuleTable::eval_word(std::span<const State> word, int origin) const {
  std::size_t index = 0;
  for (const Offset& o : neighborhood_) index = index * alphabet_size_ + word[origin + o.x];
  return table_[index];
}

void require_compatible(const RuleTable& a, const RuleTable& b, const char* op) {
  if (a.dimension() != b.dimension())
    throw MismatchError(std::string(op) + ": dimension mismatch");
  if (a.sidedness() != b.sidedness())
    throw MismatchError(std::string(op) + ": sidedness mismatch");
  if (a.alphabet_size() != b.alphabet_size())
    throw MismatchError(std::string(op) + ": alphabet mismatch (" +
                        std::to_string(a.alphabet_size()) + " vs " +
                        std::to_string(b.alphabet_size()) + ")");
}

RuleTable identity_rule(int dimension, std::uint32_t alphabet_size, Sidedness sidedness) {
  std::vector<State> table(alphabet_size);
  for (std::uint32_t s = 0; s < alphabet_size; ++s) table[s] = static_cast<State>(s);
  return RuleTable(dimension, alphabet_size, sidedness, {Offset{0, 0}}, std::move(table));
}

RuleTable constant_rule(std::uint32_t alphabet_size, State value, Sidedness sidedness) {
  std::vector<State> table(static_cast<std::size_t>(alphabet_size) * alphabet_size, value);
  return RuleTable(1, alphabet_size, sidedness, {Offset{0, 0}, Offset{1, 0}}, std::move(table));
}

RuleTable compose(const RuleTable& outer, const RuleTable& inner, const Budget& budget,
                  Exec exec) {
  require_compatible(outer, inner, "compose");
  std::set<Offset> sum;
  for (const Offset& a : outer.neighborhood())
    for (const Offset& b : inner.neighborhood()) sum.insert(a + b);
  std::vector<Offset> hood(sum.begin(), sum.end());

  // pos[i][j]: index in `hood` of outer offset i plus inner offset j.
  std::vector<std::vector<int>> pos;
  for (const Offset& a : outer.neighborhood()) {
    std::vector<Offset> shifted;
    for (const Offset& b : inner.neighborhood()) shifted.push_back(a + b);
    pos.push_back(positions_in(shifted, hood));
  }

  const std::uint32_t k = outer.alphabet_size();
  std::vector<State> table(table_size_or_throw(k, hood.size(), budget, "compose"));
  const std::size_t m_out = outer.neighborhood().size();
  kernels::fill_table(
      k, static_cast<int>(hood.size()), table,
      [&](std::span<const State> pattern) {
        std::size_t outer_index = 0;
        for (std::size_t i = 0; i < m_out; ++i) {
          std::size_t inner_index = 0;
          for (int p : pos[i]) inner_index = inner_index * k + pattern[p];
          outer_index = outer_index * k + inner.at(inner_index);
        }
        return outer.at(outer_index);
      },
      exec);
  return RuleTable(outer.dimension(), k, outer.sidedness(), std::move(hood), std::move(table));
}

RuleTable power(const RuleTable& rule, int times, const Budget& budget, Exec exec) {
  if (times < 1) throw Error("power: exponent must be at least 1");
  RuleTable result = rule;
  for (int i = 1; i < times; ++i) result = compose(rule, result, budget, exec);
  return result;
}

RuleTable product(const RuleTable& first, const RuleTable& second, const Budget& budget,
                  Exec exec) {
  if (first.dimension() != second.dimension())
    throw MismatchError("product: dimension mismatch");
  if (first.sidedness() != second.sidedness())
    throw MismatchError("product: sidedness mismatch");
  const std::uint64_t k64 =
      static_cast<std::uint64_t>(first.alphabet_size()) * second.alphabet_size();
  if (k64 > kMaxAlphabet) throw Error("product: alphabet too large");
  const auto k = static_cast<std::uint32_t>(k64);
  const std::uint32_t k2 = second.alphabet_size();
  std::vector<Offset> hood = sorted_union(first.neighborhood(), second.neighborhood());
  const std::vector<int> pos1 = positions_in(first.neighborhood(), hood);
  const std::vector<int> pos2 = positions_in(second.neighborhood(), hood);

  std::vector<State> table(table_size_or_throw(k, hood.size(), budget, "product"));
  kernels::fill_table(
      k, static_cast<int>(hood.size()), table,
      [&](std::span<const State> pattern) {
        std::size_t i1 = 0;
        std::size_t i2 = 0;
        for (int p : pos1) i1 = i1 * first.alphabet_size() + pattern[p] / k2;
        for (int p : pos2) i2 = i2 * k2 + pattern[p] % k2;
        return static_cast<State>(first.at(i1) * k2 + second.at(i2));
      },
      exec);
  return RuleTable(first.dimension(), k, first.sidedness(), std::move(hood), std::move(table));
}

bool equal_ca(const RuleTable& a, const RuleTable& b, const Budget& budget, Exec exec) {
  require_compatible(a, b, "equal_ca");
  const std::vector<Offset> hood = sorted_union(a.neighborhood(), b.neighborhood());
  const std::uint32_t k = a.alphabet_size();
  table_size_or_throw(k, hood.size(), budget, "equal_ca");
  const std::vector<int> pa = positions_in(a.neighborhood(), hood);
  const std::vector<int> pb = positions_in(b.neighborhood(), hood);
  return kernels::all_words(
      k, static_cast<int>(hood.size()),
      [&](std::span<const State> pattern) {
        std::size_t ia = 0;
        std::size_t ib = 0;
        for (int p : pa) ia = ia * k + pattern[p];
        for (int p : pb) ib = ib * k + pattern[p];
        return a.at(ia) == b.at(ib);
      },
      exec);
}

RuleTable extend_to(const RuleTable& rule, std::vector<Offset> neighborhood,
                    const Budget& budget) {
  const std::vector<int> pos = positions_in(rule.neighborhood(), neighborhood);
  const std::uint32_t k = rule.alphabet_size();
  std::vector<State> table(table_size_or_throw(k, neighborhood.size(), budget, "extend_to"));
  kernels::fill_table(
      k, static_cast<int>(neighborhood.size()), table,
      [&](std::span<const State> pattern) {
        std::size_t i = 0;
        for (int p : pos) i = i * k + pattern[p];
        return rule.at(i);
      },
      Exec::Serial);
  return RuleTable(rule.dimension(), k, rule.sidedness(), std::move(neighborhood),
                   std::move(table));
}

}  // namespace cadyn
