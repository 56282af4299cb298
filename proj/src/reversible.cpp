#include "cadyn/reversible.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "cadyn/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cadyn {

namespace {

constexpr State kUnset = 0xFFFF;

// Attempts to build g with neighborhood [lo, hi] such that g∘f = id, by
// enumerating every word over the span of g∘f. Returns nullopt on a
// conflicting entry or an entry no image reaches.
std::optional<RuleTable> solve_left_inverse(const RuleTable& f, int lo, int hi,
                                            const Budget& budget, Exec exec) {
  int fmin = 0;
  int fmax = 0;
  for (const Offset& o : f.neighborhood()) {
    fmin = std::min(fmin, o.x);
    fmax = std::max(fmax, o.x);
  }
  // word covers offsets [span_lo, span_hi]; origin is cell 0
  const int span_lo = std::min(0, lo + fmin);
  const int span_hi = std::max(0, hi + fmax);
  const int length = span_hi - span_lo + 1;
  const int origin = -span_lo;
  const std::uint32_t k = f.alphabet_size();
  const std::uint64_t words = saturating_pow(k, static_cast<std::uint64_t>(length));
  budget.require(words, "inverse search");
  const int g_size = hi - lo + 1;
  const std::uint64_t entries = saturating_pow(k, static_cast<std::uint64_t>(g_size));
  budget.require(entries, "inverse table");

  std::vector<State> table(entries, kUnset);
  std::atomic<bool> conflict{false};
  const auto total = static_cast<std::int64_t>(words);
  int threads = 1;
#ifdef _OPENMP
  if (exec == Exec::Parallel) threads = omp_get_max_threads();
#else
  (void)exec;
#endif
  const std::int64_t chunk = (total + threads - 1) / threads;
  std::vector<std::vector<State>> locals(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    auto& local = locals[static_cast<std::size_t>(tid)];
    local.assign(entries, kUnset);
    const std::int64_t begin = std::min<std::int64_t>(total, tid * chunk);
    const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
    std::vector<State> word(static_cast<std::size_t>(length));
    if (begin < end) kernels::decode_word(static_cast<std::uint64_t>(begin), k, word);
    for (std::int64_t i = begin; i < end && !conflict.load(std::memory_order_relaxed); ++i) {
      std::size_t image = 0;
      for (int p = lo; p <= hi; ++p) image = image * k + f.eval_word(word, origin + p);
      const State want = word[static_cast<std::size_t>(origin)];
      State& slot = local[image];
      if (slot == kUnset) {
        slot = want;
      } else if (slot != want) {
        conflict.store(true, std::memory_order_relaxed);
      }
      kernels::next_word(k, word);
    }
  }
  if (conflict) return std::nullopt;
  for (const auto& local : locals) {
    for (std::size_t i = 0; i < entries; ++i) {
      if (local[i] == kUnset) continue;
      if (table[i] == kUnset) {
        table[i] = local[i];
      } else if (table[i] != local[i]) {
        return std::nullopt;
      }
    }
  }
  if (std::find(table.begin(), table.end(), kUnset) != table.end()) return std::nullopt;

  std::vector<Offset> hood;
  for (int p = lo; p <= hi; ++p) hood.push_back({p, 0});
  return RuleTable(1, k, f.sidedness(), std::move(hood), std::move(table));
}

}  // namespace

void PermutationFamily::validate() const {
  if (alphabet_size == 0) throw Error("permutation family: empty alphabet");
  if (perms.size() != alphabet_size)
    throw Error("permutation family: expected " + std::to_string(alphabet_size) +
                " permutations, got " + std::to_string(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    if (perms[a].size() != alphabet_size)
      throw Error("permutation family: perm " + std::to_string(a) + " has wrong length");
    std::vector<bool> hit(alphabet_size, false);
    for (State s : perms[a]) {
      if (s >= alphabet_size || hit[s])
        throw Error("permutation family: perm " + std::to_string(a) + " is not a bijection");
      hit[s] = true;
    }
  }
}

PermutationFamily zeta_family() {
  return {3, {{0, 2, 1}, {1, 2, 0}, {0, 2, 1}}};
}

RuleTable zeta_rule() { return family_to_rule(zeta_family()); }

RuleTable family_to_rule(const PermutationFamily& family) {
  family.validate();
  const std::uint32_t k = family.alphabet_size;
  std::vector<State> table(static_cast<std::size_t>(k) * k);
  for (std::uint32_t x = 0; x < k; ++x)
    for (std::uint32_t a = 0; a < k; ++a) table[x * k + a] = family.perms[a][x];
  return RuleTable(1, k, Sidedness::One, {Offset{0, 0}, Offset{1, 0}}, std::move(table));
}

std::optional<PermutationFamily> rule_to_family(const RuleTable& rule) {
  if (rule.dimension() != 1 || rule.neighborhood() != std::vector<Offset>{{0, 0}, {1, 0}})
    return std::nullopt;
  const std::uint32_t k = rule.alphabet_size();
  PermutationFamily family{k, std::vector<std::vector<State>>(k, std::vector<State>(k))};
  for (std::uint32_t x = 0; x < k; ++x)
    for (std::uint32_t a = 0; a < k; ++a) family.perms[a][x] = rule.at(x * k + a);
  try {
    family.validate();
  } catch (const Error&) {
    return std::nullopt;
  }
  return family;
}

std::optional<RuleTable> invert_up_to_radius(const RuleTable& rule, int max_radius,
                                             const Budget& budget, Exec exec) {
  if (rule.dimension() != 1) throw MismatchError("invert_up_to_radius: rule must be 1D");
  if (max_radius < 0) throw Error("invert_up_to_radius: negative radius bound");
  const RuleTable id = identity_rule(1, rule.alphabet_size(), rule.sidedness());
  for (int r = 0; r <= max_radius; ++r) {
    const int lo = rule.sidedness() == Sidedness::One ? 0 : -r;
    auto g = solve_left_inverse(rule, lo, r, budget, exec);
    if (!g) continue;
    // g∘f = id holds by construction; f∘g = id needs checking.
    if (equal_ca(compose(rule, *g, budget, exec), id, budget, exec)) return g;
  }
  return std::nullopt;
}

std::vector<State> rho_step(std::span<const State> word) {
  if (word.empty()) throw Error("rho_step: empty word");
  static const PermutationFamily zeta = zeta_family();
  std::vector<State> out(word.size());
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] > 2 || word[i + 1] > 2) throw Error("rho_step: letter outside {0,1,2}");
    out[i] = zeta.perms[word[i + 1]][word[i]];
  }
  if (word.back() > 2) throw Error("rho_step: letter outside {0,1,2}");
  out.back() = zeta.perms[1][word.back()];
  return out;
}

RhoOrbit rho_orbit(int n) {
  if (n < 1 || n > kRhoMaxLength)
    throw Error("rho_orbit: length must be in 1.." + std::to_string(kRhoMaxLength));
  const std::uint64_t words = saturating_pow(3, static_cast<std::uint64_t>(n));
  std::vector<bool> seen(words, false);
  auto index = [](const std::vector<State>& w) {
    std::uint64_t i = 0;
    for (State s : w) i = i * 3 + s;
    return i;
  };
  const std::vector<State> start(static_cast<std::size_t>(n), 0);
  std::vector<State> w = start;
  RhoOrbit orbit;
  bool repeated = false;
  do {
    const std::uint64_t i = index(w);
    if (seen[i]) {
      // entered a cycle not containing 0^n; cannot happen for a permutation
      repeated = true;
      break;
    }
    seen[i] = true;
    w = rho_step(w);
    ++orbit.length;
  } while (w != start);
  orbit.visits_all = !repeated && orbit.length == words &&
                     std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  return orbit;
}

std::uint64_t rho_orbit_length(int n) { return rho_orbit(n).length; }

}  // namespace cadyn
