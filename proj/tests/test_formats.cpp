#include <doctest.h>

#include <filesystem>

#include "cadyn/formats.hpp"
#include "cadyn/reversible.hpp"
#include "support.hpp"

using namespace cadyn;

namespace {

std::string error_of(auto fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

const char* kZetaRule = R"(kind: ca1d
alphabet: 3
sided: one
neighborhood: 0 1
rule:
0 0 -> 0
0 1 -> 1
0 2 -> 0
1 0 -> 2
1 1 -> 2
1 2 -> 2
2 0 -> 1
2 1 -> 0
2 2 -> 1
)";

}  // namespace

TEST_CASE("zeta files") {
  CHECK(parse_rule(kZetaRule) == zeta_rule());
  CHECK(serialize(zeta_rule()) == kZetaRule);
  const Model m = parse_model(read_file(testing::data("zeta.perm")));
  REQUIRE(std::holds_alternative<PermutationFamily>(m));
  CHECK(std::get<PermutationFamily>(m) == zeta_family());
  CHECK(testing::load("zeta.perm") == testing::load("zeta.rule"));
}

TEST_CASE("rule file errors") {
  std::string missing = kZetaRule;
  missing.erase(missing.find("2 2 -> 1\n"));
  CHECK(error_of([&] { parse_rule(missing); }).find("missing pattern '2 2'") != std::string::npos);
  std::string dup = std::string(kZetaRule) + "0 1 -> 2\n";
  CHECK(error_of([&] { parse_rule(dup); }).find("duplicate pattern '0 1'") != std::string::npos);
  std::string bad_state = kZetaRule;
  bad_state.replace(bad_state.find("2 2 -> 1"), 8, "2 2 -> 3");
  CHECK(error_of([&] { parse_rule(bad_state); }).find("outside alphabet") != std::string::npos);
  CHECK_THROWS_AS(parse_model("kind: tiles\n"), ParseError);
  CHECK_THROWS_AS(parse_rule("kind: ca1d\nalphabet: 0\n"), ParseError);
  CHECK_THROWS_AS(parse_rule("kind: ca1d\nalphabet: 2\nsided: both\n"), ParseError);
  try {
    parse_rule(dup);
  } catch (const ParseError& e) {
    CHECK(e.line() == 15);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text = "# zeta\n\n" + std::string(kZetaRule).replace(0, 10, "kind: ca1d # one-sided\n");
  CHECK(parse_rule(text) == zeta_rule());
}

TEST_CASE("permutation family errors") {
  CHECK_THROWS_AS(parse_permfam("kind: permfam\nalphabet: 2\nperm 0: 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_permfam("kind: permfam\nalphabet: 2\nperm 0: 0 1\nperm 1: 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_permfam("kind: permfam\nalphabet: 2\nperm 0: 0 1\nperm 0: 1 0\n"), ParseError);
}

TEST_CASE("orientation errors") {
  const std::string no_dir = "kind: orientation\nalphabet: 2\npattern_size: 1\ndir 0: 1 0\nvalid:\n0\n";
  CHECK(error_of([&] { parse_orientation(no_dir); }).find("state 1 has no dir line") != std::string::npos);
  CHECK_THROWS_AS(parse_orientation("kind: orientation\nalphabet: 1\npattern_size: 1\ndir 0: 1 1\nvalid:\n0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_orientation("kind: orientation\nalphabet: 1\npattern_size: 2\ndir 0: 1 0\nvalid:\n00\n"),
                  ParseError);
}

TEST_CASE("every shipped file round-trips") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CADYN_DATA_DIR)) {
    if (!entry.is_regular_file()) continue;
    const std::string text = read_file(entry.path().string());
    CAPTURE(entry.path().string());
    ++files;
    if (entry.path().extension() == ".layer") {
      const PathLayerConfig cfg = parse_path_layer(text);
      CHECK(parse_path_layer(serialize(cfg)) == cfg);
      CHECK(serialize(parse_path_layer(serialize(cfg))) == serialize(cfg));
    } else {
      const Model m = parse_model(text);
      CHECK(parse_model(serialize(m)) == m);
      CHECK(serialize(parse_model(serialize(m))) == serialize(m));
    }
  }
  CHECK(files >= 10);
}

TEST_CASE("random rules round-trip") {
  std::mt19937_64 rng(testing::seed());
  for (std::uint32_t k : {2u, 3u, 11u}) {
    const auto r = testing::random_rule(rng, k, {{-1, 0}, {1, 0}}, Sidedness::Two);
    CHECK(parse_rule(serialize(r)) == r);
  }
  const RuleTable two_d(2, 2, Sidedness::Two, {{0, 0}, {1, 0}, {0, -1}}, testing::word("01101001"));
  CHECK(parse_rule(serialize(two_d)) == two_d);
  CHECK(parse_rule("kind: ca2d\nalphabet: 2\nneighborhood: ( 0 , 0 )\nrule:\n0 -> 1\n1 -> 0\n") ==
        RuleTable(2, 2, Sidedness::Two, {{0, 0}}, {1, 0}));
}

TEST_CASE("trace sets round-trip") {
  const TraceSet t = trace_words(zeta_rule(), 1, 3);
  const std::string text = serialize(t);
  CHECK(text.rfind("trace n=1 t=3 count=7\n000\n001\n", 0) == 0);
  CHECK(parse_trace_set(text, 3) == t);
  const TraceSet st = spacetime_patterns(zeta_rule(), 2, 2);
  CHECK(parse_trace_set(serialize(st), 3).same_patterns(st));
  CHECK_THROWS_AS(parse_trace_set("trace n=1 t=1 count=2\n0\n", 3), ParseError);
  CHECK_THROWS_AS(parse_trace_set("trace n=1 t=1 count=2\n1\n0\n", 3), ParseError);
  CHECK_THROWS_AS(parse_trace_set("trace n=1 t=2 count=1\n0\n", 3), ParseError);
  TraceSet wide;
  wide.alphabet_size = 12;
  wide.n = 1;
  wide.t = 2;
  wide.data = {0, 11, 10, 3};
  CHECK(serialize(wide) == "trace n=1 t=2 count=2\n0 11\n10 3\n");
  CHECK(parse_trace_set(serialize(wide), 12) == wide);
}

TEST_CASE("path layers round-trip") {
  const PathLayerConfig cfg = parse_path_layer(read_file(testing::data("rrr_tuple.layer")));
  REQUIRE(cfg.has_tuples());
  CHECK(cfg.tuples()[0] == BTuple{1, 0, 0, 0});
  CHECK(cfg.tuples()[2] == BTuple{0, 0, 0, 1});
  const PathLayerConfig z = parse_path_layer(read_file(testing::data("rrr_zeta.layer")));
  CHECK_FALSE(z.has_tuples());
  CHECK(z.singles().size() == 3);
  CHECK_THROWS_AS(parse_path_layer("kind: pathlayer\nwidth: 2\nheight: 1\nb2: 2\nblayer: tuple\na_layer:\n00\n"
                                   "b_layer:\n0,0,0 0,0,0,0\n"),
                  ParseError);
}
