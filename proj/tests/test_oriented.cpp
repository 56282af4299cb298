#include <doctest.h>

#include <set>

#include "cadyn/oriented.hpp"
#include "cadyn/reversible.hpp"
#include "support.hpp"

using namespace cadyn;

namespace {

const Offset kRight{1, 0};
const Offset kDown{0, 1};
const Offset kLeft{-1, 0};
const Offset kUp{0, -1};

// R = 0 (valid, right); X = 1 (invalid, down).
Orientation rx() {
  Orientation o;
  o.alphabet_size = 2;
  o.pattern_size = 1;
  o.valid_patterns = {{0}};
  o.direction = {kRight, kDown};
  return o;
}

Orientation loop() {
  Orientation o;
  o.alphabet_size = 4;
  o.pattern_size = 1;
  o.valid_patterns = {{0}, {1}, {2}, {3}};
  o.direction = {kRight, kDown, kLeft, kUp};
  return o;
}

Grid row(const std::string& digits) {
  return Grid{static_cast<int>(digits.size()), 1, testing::word(digits)};
}

PathLayerConfig tuple_layer(const Grid& g, std::uint32_t b2 = 2) {
  PathLayerConfig cfg;
  cfg.a_layer = g;
  cfg.b2_size = b2;
  cfg.b_layer = std::vector<BTuple>(g.cells.size(), BTuple{0, 0, 0, 0});
  return cfg;
}

PathLayerConfig single_layer(const Grid& g) {
  PathLayerConfig cfg;
  cfg.a_layer = g;
  cfg.b_layer = std::vector<State>(g.cells.size(), 0);
  return cfg;
}

std::vector<TwoTrackWord> all_words(std::size_t length, State b2) {
  std::vector<TwoTrackWord> out;
  std::vector<State> digits(2 * length);
  const std::uint64_t total = saturating_pow(b2, 2 * length);
  for (std::uint64_t i = 0; i < total; ++i) {
    kernels::decode_word(i, b2, digits);
    TwoTrackWord w(length);
    for (std::size_t j = 0; j < length; ++j) w[j] = {digits[2 * j], digits[2 * j + 1]};
    out.push_back(w);
  }
  return out;
}

template <class F>
TwoTrackWord repeat(F f, TwoTrackWord w, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) w = f(w);
  return w;
}

std::uint64_t order_of(const Orientation& o, const PathLayerConfig& start, PathVariant v) {
  PathLayerConfig cur = start;
  std::uint64_t steps = 0;
  do {
    cur = apply_path_ca(o, cur, v);
    ++steps;
  } while (!(cur == start));
  return steps;
}

}  // namespace

TEST_CASE("roles on a row of right arrows") {
  const Orientation o = rx();
  using R = CellRole;
  CHECK(classify_cells(o, row("000")) == std::vector<R>{R::Begin, R::Middle, R::End});
  CHECK(classify_cells(o, row("0")) == std::vector<R>{R::BeginAndEnd});
  CHECK(classify_cells(o, row("010")) == std::vector<R>{R::BeginAndEnd, R::Invalid, R::BeginAndEnd});
  CHECK(classify_cells(o, row("111")) == std::vector<R>{R::Invalid, R::Invalid, R::Invalid});
}

TEST_CASE("paths and cycles") {
  const auto d = extract_paths(rx(), row("000"));
  REQUIRE(d.paths.size() == 1);
  CHECK(d.paths[0] == std::vector<Cell>{{0, 0}, {1, 0}, {2, 0}});
  CHECK(d.acyclic);
  const auto none = extract_paths(rx(), row("111"));
  CHECK(none.paths.empty());
  CHECK(none.acyclic);
  const auto l = extract_paths(loop(), Grid{2, 2, testing::word("0132")});
  CHECK_FALSE(l.acyclic);
  REQUIRE(l.cycles.size() == 1);
  CHECK(l.cycles[0].size() == 4);
  CHECK(l.paths.empty());
}

TEST_CASE("branching successor invalidates its sources") {
  // (1,0) points down and (0,1) points right, both at (1,1)
  const auto roles = classify_cells(loop(), Grid{2, 2, testing::word("01" "00")});
  CHECK(roles[0] == CellRole::BeginAndEnd);
  CHECK(roles[1] == CellRole::Invalid);
  CHECK(roles[2] == CellRole::Invalid);
  CHECK(roles[3] == CellRole::BeginAndEnd);
}

TEST_CASE("valid-cells-only branching ignores invalid sources") {
  Orientation o = loop();
  o.valid_patterns = {{0}, {2}, {3}};  // down arrows are not valid
  o.normalize();
  const Grid g{2, 2, testing::word("01" "00")};
  // the down arrow at (1,0) is invalid but still points at (1,1)
  const auto literal = classify_cells(o, g);
  CHECK(literal[2] == CellRole::Invalid);
  PathOptions relaxed;
  relaxed.branching = BranchRule::ValidCellsOnly;
  const auto alt = classify_cells(o, g, relaxed);
  CHECK(alt[2] != CellRole::Invalid);
}

TEST_CASE("paths are vertex-disjoint on random windows") {
  std::mt19937_64 rng(testing::seed());
  const Orientation o = loop();
  for (int trial = 0; trial < 200; ++trial) {
    Grid g{4, 3, {}};
    for (int i = 0; i < 12; ++i) g.cells.push_back(static_cast<State>(rng() % 4));
    const auto d = extract_paths(o, g);
    std::set<Cell> seen;
    for (const auto& p : d.paths)
      for (const Cell& c : p) CHECK(seen.insert(c).second);
    for (const auto& c : d.cycles)
      for (const Cell& cell : c) CHECK(seen.insert(cell).second);
    for (const auto& p : d.paths) {
      CHECK((d.role(p.front().x, p.front().y) == CellRole::Begin ||
             d.role(p.front().x, p.front().y) == CellRole::BeginAndEnd));
      if (p.size() > 1) CHECK(d.role(p.back().x, p.back().y) == CellRole::End);
    }
  }
}

TEST_CASE("periodic boundary can close artificial cycles") {
  PathOptions periodic;
  periodic.boundary = Boundary::Periodic;
  const auto d = extract_paths(rx(), row("000"), periodic);
  CHECK_FALSE(d.acyclic);
  CHECK(d.paths.empty());
}

TEST_CASE("orientation validation") {
  Orientation o = rx();
  o.direction = {kRight};
  CHECK_THROWS_AS(o.validate(), Error);
  o = rx();
  o.direction[0] = Offset{1, 1};
  CHECK_THROWS_AS(o.validate(), Error);
  o = rx();
  o.valid_patterns = {{0, 0}};
  CHECK_THROWS_AS(o.validate(), Error);
}

TEST_CASE("word maps") {
  const TwoTrackWord w{{0, 1}, {2, 3}, {4, 5}};
  CHECK(word_shift(w) == TwoTrackWord{{2, 3}, {4, 5}, {0, 1}});
  CHECK(word_shift(TwoTrackWord{{1, 0}}) == TwoTrackWord{{1, 0}});
  CHECK(word_mobius(TwoTrackWord{{0, 1}, {2, 3}}) == TwoTrackWord{{2, 3}, {1, 0}});
  CHECK(word_mobius(TwoTrackWord{{0, 1}}) == TwoTrackWord{{1, 0}});
  CHECK(word_phi(TwoTrackWord{{0, 1}, {2, 3}}) == TwoTrackWord{{0, 2}, {1, 3}});
  CHECK_THROWS_AS(word_shift(TwoTrackWord{}), Error);
  CHECK_THROWS_AS(word_mobius(TwoTrackWord{}), Error);
  CHECK_THROWS_AS(word_phi(w), Error);
}

TEST_CASE("word map orders") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& w : all_words(n, 2)) {
      CHECK(repeat(word_shift, w, n) == w);
      CHECK(repeat(word_mobius, w, 2 * n) == w);
    }
}

TEST_CASE("word_phi conjugates shift to mobius squared") {
  for (std::size_t n : {2u, 4u}) {
    std::set<TwoTrackWord> images;
    for (const auto& w : all_words(n, 2)) {
      CHECK(word_phi_inverse(word_phi(w)) == w);
      images.insert(word_phi(w));
      CHECK(word_phi_inverse(word_mobius(word_mobius(word_phi(w)))) == word_shift(w));
    }
    CHECK(images.size() == saturating_pow(2, 2 * n));
  }
}

TEST_CASE("path automaton cases") {
  const Orientation o = rx();
  PathLayerConfig one = tuple_layer(row("0"), 4);
  one.tuples()[0] = {0, 1, 2, 3};
  CHECK(apply_path_ca(o, one, PathVariant::Shift).tuples()[0] == BTuple{2, 3, 0, 1});
  CHECK(apply_path_ca(o, one, PathVariant::Mobius).tuples()[0] == BTuple{3, 2, 0, 1});

  PathLayerConfig three = tuple_layer(row("000"), 4);
  three.tuples() = {BTuple{0, 0, 1, 1}, BTuple{2, 2, 3, 3}, BTuple{1, 2, 3, 0}};
  const auto s = apply_path_ca(o, three, PathVariant::Shift).tuples();
  CHECK(s[0] == BTuple{2, 2, 0, 0});  // begin: (a2, b2, a1, b1)
  CHECK(s[1] == BTuple{1, 2, 1, 1});  // middle: (a3, b3, x1, y1)
  CHECK(s[2] == BTuple{3, 0, 3, 3});  // end: (x3, y3, x2, y2)
  CHECK(apply_path_ca(o, three, PathVariant::Mobius).tuples()[2] == BTuple{0, 3, 3, 3});

  PathLayerConfig with_invalid = tuple_layer(row("010"));
  with_invalid.tuples()[1] = {1, 1, 0, 1};
  CHECK(apply_path_ca(o, with_invalid, PathVariant::Shift).tuples()[1] == BTuple{1, 1, 0, 1});
  CHECK_THROWS_AS(apply_path_ca(o, single_layer(row("0")), PathVariant::Shift), MismatchError);
  CHECK_THROWS_AS(apply_path_ca(o, tuple_layer(row("0")), PathVariant::Zeta), MismatchError);
}

TEST_CASE("path automata are bijections with the expected orders") {
  const Orientation o = rx();
  for (int k = 1; k <= 3; ++k) {
    PathLayerConfig cfg = tuple_layer(row(std::string(static_cast<std::size_t>(k), '0')));
    const std::uint64_t total = b_layer_count(cfg);
    for (PathVariant v : {PathVariant::Shift, PathVariant::Mobius}) {
      std::vector<bool> seen(total, false);
      for (std::uint64_t i = 0; i < total; ++i) {
        set_b_layer(cfg, i);
        CHECK(b_layer_index(cfg) == i);
        const auto img = b_layer_index(apply_path_ca(o, cfg, v));
        CHECK_FALSE(seen[img]);
        seen[img] = true;
        const std::uint64_t order = order_of(o, cfg, v);
        CHECK((v == PathVariant::Shift ? 2 * k : 4 * k) % order == 0);
      }
    }
  }
}

TEST_CASE("zeta path automaton follows rho along the path") {
  const Orientation o = rx();
  for (int k = 1; k <= 6; ++k) {
    PathLayerConfig cfg = single_layer(row(std::string(static_cast<std::size_t>(k), '0')));
    CHECK(order_of(o, cfg, PathVariant::Zeta) == saturating_pow(3, k));
    for (std::uint64_t i = 0; i < b_layer_count(cfg); i += 7) {
      set_b_layer(cfg, i);
      CHECK(apply_path_ca(o, cfg, PathVariant::Zeta).singles() == rho_step(cfg.singles()));
    }
  }
}

TEST_CASE("hphi on a single cell") {
  const Orientation o = rx();
  PathLayerConfig cfg = tuple_layer(row("0"), 4);
  cfg.tuples()[0] = {0, 1, 2, 3};
  // W = (x a / y b), word_phi(W) = (x y / a b)
  CHECK(apply_hphi(o, cfg).tuples()[0] == BTuple{3, 1, 2, 0});
  const TwoTrackWord w{{2, 3}, {0, 1}};
  const auto img = word_phi(w);
  CHECK(apply_hphi(o, cfg).tuples()[0] == BTuple{img[1].first, img[1].second, img[0].first, img[0].second});
  CHECK(apply_hphi(o, cfg, {}, HphiReading::Literal) == apply_hphi(o, cfg));
}

TEST_CASE("hphi is a bijection and conjugates F_shift to F_mobius squared") {
  const Orientation o = rx();
  for (int k = 1; k <= 3; ++k) {
    PathLayerConfig cfg = tuple_layer(row(std::string(static_cast<std::size_t>(k), '0')));
    const std::uint64_t total = b_layer_count(cfg);
    std::vector<bool> seen(total, false);
    bool literal_conjugates = true;
    for (std::uint64_t i = 0; i < total; ++i) {
      set_b_layer(cfg, i);
      const auto h = apply_hphi(o, cfg);
      CHECK(apply_hphi_inverse(o, h) == cfg);
      const auto idx = b_layer_index(h);
      CHECK_FALSE(seen[idx]);
      seen[idx] = true;
      const auto lhs = apply_hphi(o, apply_path_ca(o, cfg, PathVariant::Shift));
      const auto rhs = apply_path_ca(o, apply_path_ca(o, h, PathVariant::Mobius), PathVariant::Mobius);
      CHECK(lhs == rhs);

      const auto hl = apply_hphi(o, cfg, {}, HphiReading::Literal);
      CHECK(apply_hphi_inverse(o, hl, {}, HphiReading::Literal) == cfg);
      const auto lhs_l = apply_hphi(o, apply_path_ca(o, cfg, PathVariant::Shift), {}, HphiReading::Literal);
      const auto rhs_l = apply_path_ca(o, apply_path_ca(o, hl, PathVariant::Mobius), PathVariant::Mobius);
      literal_conjugates = literal_conjugates && lhs_l == rhs_l;
    }
    CHECK(literal_conjugates == (k == 1));
  }
}

TEST_CASE("hphi leaves cells off paths alone and rejects cycles") {
  const Orientation o = rx();
  PathLayerConfig cfg = tuple_layer(row("010"));
  cfg.tuples()[1] = {1, 0, 1, 1};
  CHECK(apply_hphi(o, cfg).tuples()[1] == BTuple{1, 0, 1, 1});
  PathLayerConfig cyc = tuple_layer(Grid{2, 2, testing::word("0132")});
  CHECK_THROWS_AS(apply_hphi(loop(), cyc), Error);
}

TEST_CASE("contained paths") {
  PathOptions strict;
  strict.require_contained = true;
  // the end of "00" points out of the window, so the path may continue
  CHECK_THROWS_AS(extract_paths(rx(), row("00"), strict), Error);
  // sea cells point up in the top rows and down in the bottom row
  Orientation o = rx();
  o.alphabet_size = 3;
  o.direction = {kRight, kUp, kDown};
  const Grid inner{4, 3, testing::word("1111" "1001" "2222")};
  const auto d = extract_paths(o, inner, strict);
  REQUIRE(d.paths.size() == 1);
  CHECK(d.paths[0].size() == 2);
}

TEST_CASE("layer validation") {
  const Orientation o = rx();
  PathLayerConfig cfg = tuple_layer(row("00"));
  cfg.tuples()[0][2] = 2;
  CHECK_THROWS_AS(cfg.validate(o), Error);
  PathLayerConfig z = single_layer(row("00"));
  z.singles()[1] = 3;
  CHECK_THROWS_AS(z.validate(o), Error);
  PathLayerConfig wrong = tuple_layer(row("02"));
  CHECK_THROWS_AS(wrong.validate(o), MismatchError);
}
