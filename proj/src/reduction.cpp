#include "cadyn/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "cadyn/kernels.hpp"
#include "cadyn/reversible.hpp"

namespace cadyn {

namespace {

const std::vector<Offset> kPairHood = {{0, 0}, {1, 0}};

State h_on_pair(const RuleTable& h, State b0, State b1) {
  const State word[2] = {b0, b1};
  return h.eval_word(word, 0);
}

void require_valid(const ReductionSpec& spec) { (void)validate(spec); }

}  // namespace

std::vector<std::string> validate(const ReductionSpec& spec) {
  const RuleTable& h = spec.h;
  if (h.dimension() != 1 || h.sidedness() != Sidedness::One)
    throw Error("reduction: H must be a one-sided 1D rule");
  if (h.radius() > 1) throw Error("reduction: H must have radius at most 1");
  if (spec.q >= h.alphabet_size()) throw Error("reduction: q outside the alphabet of H");
  if (h_on_pair(h, spec.q, spec.q) != spec.q) throw Error("reduction: q is not quiescent for H");
  if (spec.k < 1) throw Error("reduction: k must be at least 1");
  if (spec.n < 1) throw Error("reduction: n must be at least 1");
  std::vector<std::string> warnings;
  if (static_cast<double>(spec.k) <= std::log2(static_cast<double>(h.alphabet_size())))
    warnings.push_back("k=" + std::to_string(spec.k) + " does not exceed log2|B|=" +
                       std::to_string(std::log2(static_cast<double>(h.alphabet_size()))) +
                       "; the entropy separation is not guaranteed");
  return warnings;
}

RuleTable zeta_product(int factors) {
  if (factors < 1) throw Error("zeta_product: need at least one factor");
  RuleTable result = zeta_rule();
  for (int i = 1; i < factors; ++i) result = product(zeta_rule(), result);
  return result;
}

RuleTable build_G(const ReductionSpec& spec) {
  require_valid(spec);
  const std::uint32_t a_size = zeta_product(2 * spec.k).alphabet_size();
  const TrackCodec codec{spec.h.alphabet_size()};
  const std::uint32_t k = a_size * codec.b_size;
  if (k > kMaxAlphabet) throw Error("build_G: product alphabet too large");
  std::vector<State> table(static_cast<std::size_t>(k) * k);
  for (std::uint32_t s0 = 0; s0 < k; ++s0)
    for (std::uint32_t s1 = 0; s1 < k; ++s1) {
      const State b = h_on_pair(spec.h, codec.b_of(static_cast<State>(s0)),
                                codec.b_of(static_cast<State>(s1)));
      table[s0 * k + s1] = codec.pack(codec.a_of(static_cast<State>(s0)), b);
    }
  return RuleTable(1, k, Sidedness::One, kPairHood, std::move(table));
}

RuleTable build_F(const ReductionSpec& spec) {
  require_valid(spec);
  const RuleTable zeta = zeta_product(2 * spec.k);
  const TrackCodec codec{spec.h.alphabet_size()};
  const std::uint32_t k = zeta.alphabet_size() * codec.b_size;
  if (k > kMaxAlphabet) throw Error("build_F: product alphabet too large");
  std::vector<State> table(static_cast<std::size_t>(k) * k);
  for (std::uint32_t s0 = 0; s0 < k; ++s0)
    for (std::uint32_t s1 = 0; s1 < k; ++s1) {
      const State a0 = codec.a_of(static_cast<State>(s0));
      const State a1 = codec.a_of(static_cast<State>(s1));
      const State b = h_on_pair(spec.h, codec.b_of(static_cast<State>(s0)),
                                codec.b_of(static_cast<State>(s1)));
      const State a = b != spec.q ? zeta.at(static_cast<std::size_t>(a0) * zeta.alphabet_size() + a1)
                                  : a0;
      table[s0 * k + s1] = codec.pack(a, b);
    }
  return RuleTable(1, k, Sidedness::One, kPairHood, std::move(table));
}

RuleTable build_phi(const ReductionSpec& spec, const Budget& budget, Exec exec) {
  const RuleTable f = build_F(spec);
  const RuleTable fn = power(f, spec.n, budget, exec);
  const TrackCodec codec{spec.h.alphabet_size()};
  // fn has neighborhood {0..n}; cell 0 is the most significant digit
  const std::uint64_t low = saturating_pow(f.alphabet_size(), fn.neighborhood().size() - 1);
  std::vector<State> table(fn.pattern_count());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto own = static_cast<State>(i / low);
    table[i] = codec.pack(codec.a_of(fn.at(i)), codec.b_of(own));
  }
  return RuleTable(1, f.alphabet_size(), Sidedness::One, fn.neighborhood(), std::move(table));
}

WitnessReport verify_witness(const RuleTable& phi, const RuleTable& f, const RuleTable& g,
                             int max_inverse_radius, const Budget& budget, Exec exec) {
  WitnessReport report;
  try {
    require_compatible(phi, f, "verify_witness");
    require_compatible(phi, g, "verify_witness");
    report.homomorphism =
        equal_ca(compose(phi, f, budget, exec), compose(g, phi, budget, exec), budget, exec);
  } catch (const Error& e) {
    report.note = std::string("homomorphism check: ") + e.what();
    return report;
  }
  try {
    const auto inverse = invert_up_to_radius(phi, max_inverse_radius, budget, exec);
    report.invertible = inverse.has_value();
    if (inverse) report.inverse_radius = inverse->radius();
  } catch (const Error& e) {
    report.note = std::string("inverse search: ") + e.what();
  }
  return report;
}

bool GraphSubshift::allows(std::span<const State> pair_word) const {
  const auto w = static_cast<std::size_t>(width);
  for (std::size_t start = 0; start + w <= pair_word.size(); ++start) {
    const auto window = pair_word.subspan(start, w);
    for (std::size_t i = 0; i < forbidden_count(); ++i)
      if (std::equal(window.begin(), window.end(), forbidden.begin() + static_cast<std::ptrdiff_t>(i * w)))
        return false;
  }
  return true;
}

GraphSubshift graph_subshift(const RuleTable& rule, const Budget& budget) {
  if (rule.dimension() != 1) throw MismatchError("graph_subshift: rule must be 1D");
  int lo = 0;
  int hi = 0;
  for (const Offset& o : rule.neighborhood()) {
    lo = std::min(lo, o.x);
    hi = std::max(hi, o.x);
  }
  const std::uint32_t k = rule.alphabet_size();
  const std::uint32_t pair = k * k;
  if (pair > kMaxAlphabet) throw Error("graph_subshift: pair alphabet too large");
  GraphSubshift sft;
  sft.base_alphabet = k;
  sft.width = hi - lo + 1;
  sft.anchor = -lo;
  const std::uint64_t blocks = saturating_pow(pair, static_cast<std::uint64_t>(sft.width));
  budget.require(blocks, "graph_subshift");
  std::vector<State> block(static_cast<std::size_t>(sft.width));
  std::vector<State> top(block.size());
  for (std::uint64_t i = 0; i < blocks; ++i) {
    for (std::size_t j = 0; j < block.size(); ++j) top[j] = static_cast<State>(block[j] / k);
    const State image = rule.eval_word(top, sft.anchor);
    if (block[static_cast<std::size_t>(sft.anchor)] % k != image)
      sft.forbidden.insert(sft.forbidden.end(), block.begin(), block.end());
    kernels::next_word(pair, block);
  }
  return sft;
}

}  // namespace cadyn
