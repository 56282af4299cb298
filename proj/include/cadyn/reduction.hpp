#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cadyn/rule_table.hpp"

namespace cadyn {

/// Input of the two-track construction: a one-sided radius-1 rule H on B
/// with quiescent state q, the number k of zeta pairs on the A-track
/// (A = {0,1,2}^(2k)), and the nilpotency bound n used by phi.
struct ReductionSpec {
  RuleTable h;
  State q = 0;
  int k = 1;
  int n = 1;
};

/// Checks the hard invariants (one-sided 1D radius ≤ 1 rule, q in range,
/// H(q, q) = q, k ≥ 1, n ≥ 1) and returns soft warnings such as
/// k <= log2|B|.
std::vector<std::string> validate(const ReductionSpec& spec);

/// The 2k-fold direct product of zeta; alphabet 9^k.
RuleTable zeta_product(int factors);

/// Two-track state encoding: (a, b) -> a * |B| + b.
struct TrackCodec {
  std::uint32_t b_size = 1;
  State pack(State a, State b) const { return static_cast<State>(a * b_size + b); }
  State a_of(State s) const { return static_cast<State>(s / b_size); }
  State b_of(State s) const { return static_cast<State>(s % b_size); }
};

/// G = id_A × H.
RuleTable build_G(const ReductionSpec& spec);
/// F: B-track is H; A-track is zeta_{2k} unless H(b0 b1) = q, then identity.
RuleTable build_F(const ReductionSpec& spec);
/// phi: B-track identity, A-track equal to the A-track of F^n.
RuleTable build_phi(const ReductionSpec& spec, const Budget& budget = {},
                    Exec exec = Exec::Parallel);

struct WitnessReport {
  bool homomorphism = false;           ///< phi∘F = G∘phi as rules
  bool invertible = false;             ///< an inverse of radius ≤ R was found
  std::optional<int> inverse_radius;
  std::string note;                    ///< reason when a check could not run
  bool witnessed() const { return homomorphism && invertible; }
};

/// Never throws on check failure; problems end up in the report.
WitnessReport verify_witness(const RuleTable& phi, const RuleTable& f, const RuleTable& g,
                             int max_inverse_radius, const Budget& budget = {},
                             Exec exec = Exec::Parallel);

/// The graph subshift {(c, F(c))} of a 1D rule as an SFT over the pair
/// alphabet A×A (pair (u, v) encoded u * |A| + v). A block of `width`
/// pairs is forbidden iff the second track at `anchor` differs from the
/// image of the first track.
struct GraphSubshift {
  std::uint32_t base_alphabet = 0;
  int width = 0;
  int anchor = 0;
  std::vector<State> forbidden;  ///< sorted, stride = width

  std::size_t forbidden_count() const {
    return width == 0 ? 0 : forbidden.size() / static_cast<std::size_t>(width);
  }
  /// True iff no width-sized window of the pair word is forbidden.
  bool allows(std::span<const State> pair_word) const;
};

GraphSubshift graph_subshift(const RuleTable& rule, const Budget& budget = {});

}  // namespace cadyn
