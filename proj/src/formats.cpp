#include "cadyn/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "cadyn/kernels.hpp"

namespace cadyn {

namespace {

constexpr std::uint64_t kMaxFileTable = std::uint64_t{1} << 24;

struct Line {
  int number = 0;
  std::string text;  // comment stripped, trimmed
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    lines.push_back({number, trim(raw)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long to_int(std::string_view s, int line, const char* what) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'", line);
  return v;
}

State to_state(std::string_view s, std::uint32_t k, int line) {
  const long long v = to_int(s, line, "state");
  if (v < 0 || static_cast<std::uint64_t>(v) >= k)
    throw ParseError("state " + std::string(s) + " outside alphabet of size " + std::to_string(k), line);
  return static_cast<State>(v);
}

// A row of states: bare digits ("0120") or whitespace-separated numbers.
std::vector<State> parse_row(const std::string& text, std::uint32_t k, int line,
                             bool bare_digits = false) {
  std::vector<State> row;
  if (text.find_first_of(" \t") == std::string::npos && (k <= 10 || bare_digits)) {
    for (char c : text) row.push_back(to_state(std::string_view(&c, 1), k, line));
  } else {
    for (const auto& tok : tokens(text)) row.push_back(to_state(tok, k, line));
  }
  return row;
}

std::string format_row(std::span<const State> row, std::uint32_t k) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (k > 10 && i > 0) out += ' ';
    out += std::to_string(row[i]);
  }
  return out;
}

// Sequential reader over non-comment lines with `key: value` helpers.
class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(split_lines(text)) {}

  bool done() {
    skip_blank();
    return pos_ >= lines_.size();
  }
  void skip_blank() {
    while (pos_ < lines_.size() && lines_[pos_].text.empty()) ++pos_;
  }
  const Line& peek() {
    skip_blank();
    if (pos_ >= lines_.size()) throw ParseError("unexpected end of file", last_line());
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  // Next raw line including blank ones; nullptr at end.
  const Line* next_raw() { return pos_ < lines_.size() ? &lines_[pos_++] : nullptr; }

  std::string expect_key(const std::string& key) {
    const Line& l = next();
    const auto colon = l.text.find(':');
    if (colon == std::string::npos || trim(l.text.substr(0, colon)) != key)
      throw ParseError("expected '" + key + ":'", l.number);
    return trim(l.text.substr(colon + 1));
  }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }
  int line_number() { return peek().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::string kind_of(std::string_view text) {
  Reader r(text);
  return r.expect_key("kind");
}

std::uint32_t parse_alphabet(Reader& r) {
  const int line = r.line_number();
  const long long k = to_int(r.expect_key("alphabet"), line, "alphabet");
  if (k < 1 || k > kMaxAlphabet) throw ParseError("alphabet out of range", line);
  return static_cast<std::uint32_t>(k);
}

Offset parse_offset_2d(const std::string& tok, int line) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw ParseError("bad 2D offset '" + tok + "'", line);
  const auto comma = tok.find(',');
  if (comma == std::string::npos) throw ParseError("bad 2D offset '" + tok + "'", line);
  return {static_cast<int>(to_int(trim(tok.substr(1, comma - 1)), line, "offset")),
          static_cast<int>(to_int(trim(tok.substr(comma + 1, tok.size() - comma - 2)), line, "offset"))};
}

std::string join_pattern(std::span<const State> p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace

RuleTable parse_rule(std::string_view text) {
  Reader r(text);
  const int kind_line = r.line_number();
  const std::string kind = r.expect_key("kind");
  if (kind != "ca1d" && kind != "ca2d") throw ParseError("unknown rule kind '" + kind + "'", kind_line);
  const int dim = kind == "ca1d" ? 1 : 2;
  const std::uint32_t k = parse_alphabet(r);
  Sidedness sided = Sidedness::Two;
  if (dim == 1) {
    const int line = r.line_number();
    const std::string s = r.expect_key("sided");
    if (s == "one") {
      sided = Sidedness::One;
    } else if (s != "two") {
      throw ParseError("sided must be 'one' or 'two'", line);
    }
  }
  const int hood_line = r.line_number();
  std::vector<Offset> hood;
  // (x, y) pairs may contain spaces after the comma; normalise first
  std::string hood_text = r.expect_key("neighborhood");
  if (dim == 2) {
    std::string compact;
    int depth = 0;
    for (char c : hood_text) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth > 0 && (c == ' ' || c == '\t')) continue;
      compact += c;
    }
    hood_text = compact;
  }
  for (const auto& tok : tokens(hood_text))
    hood.push_back(dim == 1 ? Offset{static_cast<int>(to_int(tok, hood_line, "offset")), 0}
                            : parse_offset_2d(tok, hood_line));
  if (hood.empty()) throw ParseError("empty neighborhood", hood_line);

  const std::size_t m = hood.size();
  const std::uint64_t size = saturating_pow(k, m);
  if (size > kMaxFileTable) throw ParseError("rule table too large for a rule file", hood_line);
  r.expect_key("rule");

  std::vector<State> table(size, kUndetermined);
  std::vector<State> pattern(m);
  while (!r.done()) {
    const Line& l = r.next();
    const auto arrow = l.text.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'pattern -> state'", l.number);
    const auto lhs = tokens(l.text.substr(0, arrow));
    const auto rhs = tokens(l.text.substr(arrow + 2));
    if (lhs.size() != m)
      throw ParseError("pattern has " + std::to_string(lhs.size()) + " states, neighborhood has " +
                           std::to_string(m),
                       l.number);
    if (rhs.size() != 1) throw ParseError("expected a single image state", l.number);
    std::size_t index = 0;
    for (std::size_t i = 0; i < m; ++i) {
      pattern[i] = to_state(lhs[i], k, l.number);
      index = index * k + pattern[i];
    }
    if (table[index] != kUndetermined)
      throw ParseError("duplicate pattern '" + join_pattern(pattern) + "'", l.number);
    table[index] = to_state(rhs[0], k, l.number);
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] != kUndetermined) continue;
    kernels::decode_word(i, k, pattern);
    throw ParseError("missing pattern '" + join_pattern(pattern) + "'", 0);
  }
  try {
    return RuleTable(dim, k, sided, std::move(hood), std::move(table));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), hood_line);
  }
}

PermutationFamily parse_permfam(std::string_view text) {
  Reader r(text);
  const int kind_line = r.line_number();
  if (r.expect_key("kind") != "permfam") throw ParseError("expected kind: permfam", kind_line);
  PermutationFamily fam;
  fam.alphabet_size = parse_alphabet(r);
  fam.perms.assign(fam.alphabet_size, {});
  std::vector<bool> seen(fam.alphabet_size, false);
  while (!r.done()) {
    const Line& l = r.next();
    const auto colon = l.text.find(':');
    const auto head = tokens(l.text.substr(0, colon == std::string::npos ? 0 : colon));
    if (colon == std::string::npos || head.size() != 2 || head[0] != "perm")
      throw ParseError("expected 'perm <a>: ...'", l.number);
    const State a = to_state(head[1], fam.alphabet_size, l.number);
    if (seen[a]) throw ParseError("duplicate perm " + head[1], l.number);
    seen[a] = true;
    for (const auto& tok : tokens(l.text.substr(colon + 1)))
      fam.perms[a].push_back(to_state(tok, fam.alphabet_size, l.number));
  }
  for (std::uint32_t a = 0; a < fam.alphabet_size; ++a)
    if (!seen[a]) throw ParseError("missing perm " + std::to_string(a), 0);
  try {
    fam.validate();
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return fam;
}

Orientation parse_orientation(std::string_view text) {
  Reader r(text);
  const int kind_line = r.line_number();
  if (r.expect_key("kind") != "orientation") throw ParseError("expected kind: orientation", kind_line);
  Orientation o;
  o.alphabet_size = parse_alphabet(r);
  const int size_line = r.line_number();
  const long long n = to_int(r.expect_key("pattern_size"), size_line, "pattern size");
  if (n < 1 || n > 16) throw ParseError("pattern size out of range", size_line);
  o.pattern_size = static_cast<int>(n);

  std::vector<bool> have(o.alphabet_size, false);
  o.direction.assign(o.alphabet_size, Offset{});
  while (true) {
    const Line& l = r.peek();
    if (l.text.rfind("dir", 0) != 0) break;
    r.next();
    const auto colon = l.text.find(':');
    const auto head = tokens(l.text.substr(0, colon == std::string::npos ? 0 : colon));
    if (colon == std::string::npos || head.size() != 2)
      throw ParseError("expected 'dir <state>: <dx> <dy>'", l.number);
    const State s = to_state(head[1], o.alphabet_size, l.number);
    if (have[s]) throw ParseError("duplicate dir for state " + head[1], l.number);
    const auto d = tokens(l.text.substr(colon + 1));
    if (d.size() != 2) throw ParseError("expected two direction components", l.number);
    const Offset off{static_cast<int>(to_int(d[0], l.number, "direction")),
                     static_cast<int>(to_int(d[1], l.number, "direction"))};
    if (std::abs(off.x) + std::abs(off.y) != 1)
      throw ParseError("direction must be one of (±1,0), (0,±1)", l.number);
    o.direction[s] = off;
    have[s] = true;
  }
  for (std::uint32_t s = 0; s < o.alphabet_size; ++s)
    if (!have[s]) throw ParseError("state " + std::to_string(s) + " has no dir line", 0);
  r.expect_key("valid");

  std::vector<State> block;
  int rows = 0;
  int block_line = 0;
  auto flush = [&](int line) {
    if (rows == 0) return;
    if (rows != o.pattern_size)
      throw ParseError("valid block has " + std::to_string(rows) + " rows, expected " +
                           std::to_string(o.pattern_size),
                       line);
    o.valid_patterns.push_back(block);
    block.clear();
    rows = 0;
  };
  while (const Line* l = r.next_raw()) {
    if (l->text.empty()) {
      flush(block_line);
      continue;
    }
    if (rows == 0) block_line = l->number;
    if (rows == o.pattern_size) flush(block_line), block_line = l->number;
    const auto row = parse_row(l->text, o.alphabet_size, l->number);
    if (row.size() != static_cast<std::size_t>(o.pattern_size))
      throw ParseError("valid row has wrong width", l->number);
    block.insert(block.end(), row.begin(), row.end());
    ++rows;
  }
  flush(block_line);
  o.normalize();
  return o;
}

PathLayerConfig parse_path_layer(std::string_view text) {
  Reader r(text);
  const int kind_line = r.line_number();
  if (r.expect_key("kind") != "pathlayer") throw ParseError("expected kind: pathlayer", kind_line);
  PathLayerConfig cfg;
  int line = r.line_number();
  cfg.a_layer.width = static_cast<int>(to_int(r.expect_key("width"), line, "width"));
  line = r.line_number();
  cfg.a_layer.height = static_cast<int>(to_int(r.expect_key("height"), line, "height"));
  if (cfg.a_layer.width < 1 || cfg.a_layer.height < 1) throw ParseError("empty window", line);
  line = r.line_number();
  const long long b2 = to_int(r.expect_key("b2"), line, "b2");
  if (b2 < 2 || b2 > kMaxAlphabet) throw ParseError("b2 must be at least 2", line);
  cfg.b2_size = static_cast<std::uint32_t>(b2);
  line = r.line_number();
  const std::string kind = r.expect_key("blayer");
  if (kind != "tuple" && kind != "single") throw ParseError("blayer must be tuple or single", line);
  const bool tuples = kind == "tuple";

  r.expect_key("a_layer");
  for (int y = 0; y < cfg.a_layer.height; ++y) {
    const Line& l = r.next();
    const auto row = parse_row(l.text, kMaxAlphabet, l.number, true);
    if (row.size() != static_cast<std::size_t>(cfg.a_layer.width))
      throw ParseError("a_layer row has wrong width", l.number);
    cfg.a_layer.cells.insert(cfg.a_layer.cells.end(), row.begin(), row.end());
  }
  r.expect_key("b_layer");
  std::vector<BTuple> tup;
  std::vector<State> single;
  for (int y = 0; y < cfg.a_layer.height; ++y) {
    const Line& l = r.next();
    const auto entries = tokens(l.text);
    if (entries.size() != static_cast<std::size_t>(cfg.a_layer.width))
      throw ParseError("b_layer row has wrong width", l.number);
    for (const auto& e : entries) {
      if (!tuples) {
        single.push_back(to_state(e, 3, l.number));
        continue;
      }
      BTuple t{};
      std::size_t start = 0;
      for (int c = 0; c < 4; ++c) {
        const auto comma = e.find(',', start);
        if ((c < 3) == (comma == std::string::npos))
          throw ParseError("expected a,b,x,y tuple, got '" + e + "'", l.number);
        const std::string part = e.substr(start, c < 3 ? comma - start : std::string::npos);
        t[static_cast<std::size_t>(c)] = to_state(part, cfg.b2_size, l.number);
        start = comma + 1;
      }
      tup.push_back(t);
    }
  }
  if (!r.done()) throw ParseError("trailing content", r.line_number());
  if (tuples) {
    cfg.b_layer = std::move(tup);
  } else {
    cfg.b_layer = std::move(single);
  }
  return cfg;
}

TraceSet parse_trace_set(std::string_view text, std::uint32_t alphabet_size) {
  Reader r(text);
  const Line& head = r.next();
  const auto parts = tokens(head.text);
  if (parts.size() != 4 || parts[0] != "trace")
    throw ParseError("expected 'trace n=<n> t=<t> count=<p>'", head.number);
  std::map<std::string, long long> kv;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw ParseError("bad header field '" + parts[i] + "'", head.number);
    kv[parts[i].substr(0, eq)] = to_int(parts[i].substr(eq + 1), head.number, "header value");
  }
  if (!kv.count("n") || !kv.count("t") || !kv.count("count"))
    throw ParseError("header needs n, t and count", head.number);
  TraceSet set;
  set.alphabet_size = alphabet_size;
  set.n = static_cast<int>(kv["n"]);
  set.t = static_cast<int>(kv["t"]);
  if (set.n < 1 || set.t < 1) throw ParseError("n and t must be positive", head.number);
  long long count = 0;
  std::vector<State> prev;
  while (!r.done()) {
    const Line& l = r.next();
    const auto row = parse_row(l.text, alphabet_size, l.number);
    if (row.size() != set.stride()) throw ParseError("pattern has wrong length", l.number);
    if (!prev.empty() && !std::lexicographical_compare(prev.begin(), prev.end(), row.begin(), row.end()))
      throw ParseError("patterns must be strictly increasing", l.number);
    set.data.insert(set.data.end(), row.begin(), row.end());
    prev = row;
    ++count;
  }
  if (count != kv["count"])
    throw ParseError("header count " + std::to_string(kv["count"]) + " but " +
                         std::to_string(count) + " patterns listed",
                     head.number);
  return set;
}

Model parse_model(std::string_view text) {
  const std::string kind = kind_of(text);
  if (kind == "ca1d" || kind == "ca2d") return parse_rule(text);
  if (kind == "permfam") return parse_permfam(text);
  if (kind == "orientation") return parse_orientation(text);
  throw ParseError("unknown kind '" + kind + "'", 0);
}

RuleTable parse_rule_or_family(std::string_view text) {
  const Model m = parse_model(text);
  if (const auto* rule = std::get_if<RuleTable>(&m)) return *rule;
  if (const auto* fam = std::get_if<PermutationFamily>(&m)) return family_to_rule(*fam);
  throw ParseError("expected a rule or permutation family, got an orientation", 0);
}

std::string serialize(const RuleTable& rule) {
  std::ostringstream out;
  out << "kind: " << (rule.dimension() == 1 ? "ca1d" : "ca2d") << '\n';
  out << "alphabet: " << rule.alphabet_size() << '\n';
  if (rule.dimension() == 1) out << "sided: " << (rule.sidedness() == Sidedness::One ? "one" : "two") << '\n';
  out << "neighborhood:";
  for (const Offset& o : rule.neighborhood()) {
    if (rule.dimension() == 1) {
      out << ' ' << o.x;
    } else {
      out << " (" << o.x << ',' << o.y << ')';
    }
  }
  out << "\nrule:\n";
  std::vector<State> pattern(rule.neighborhood().size());
  for (std::size_t i = 0; i < rule.pattern_count(); ++i) {
    out << join_pattern(pattern) << " -> " << rule.at(i) << '\n';
    kernels::next_word(rule.alphabet_size(), pattern);
  }
  return out.str();
}

std::string serialize(const PermutationFamily& family) {
  std::ostringstream out;
  out << "kind: permfam\nalphabet: " << family.alphabet_size << '\n';
  for (std::size_t a = 0; a < family.perms.size(); ++a)
    out << "perm " << a << ": " << join_pattern(family.perms[a]) << '\n';
  return out.str();
}

std::string serialize(const Orientation& o) {
  std::ostringstream out;
  out << "kind: orientation\nalphabet: " << o.alphabet_size << "\npattern_size: " << o.pattern_size << '\n';
  for (std::size_t s = 0; s < o.direction.size(); ++s)
    out << "dir " << s << ": " << o.direction[s].x << ' ' << o.direction[s].y << '\n';
  out << "valid:\n";
  const auto n = static_cast<std::size_t>(o.pattern_size);
  for (std::size_t b = 0; b < o.valid_patterns.size(); ++b) {
    if (b > 0) out << '\n';
    for (std::size_t y = 0; y < n; ++y)
      out << format_row(std::span<const State>(o.valid_patterns[b]).subspan(y * n, n), o.alphabet_size)
          << '\n';
  }
  return out.str();
}

std::string serialize(const PathLayerConfig& cfg) {
  std::ostringstream out;
  const Grid& g = cfg.a_layer;
  out << "kind: pathlayer\nwidth: " << g.width << "\nheight: " << g.height << "\nb2: " << cfg.b2_size
      << "\nblayer: " << (cfg.has_tuples() ? "tuple" : "single") << "\na_layer:\n";
  const State a_max = g.cells.empty() ? 0 : *std::max_element(g.cells.begin(), g.cells.end());
  for (int y = 0; y < g.height; ++y)
    out << format_row(std::span<const State>(g.cells).subspan(static_cast<std::size_t>(y * g.width),
                                                              static_cast<std::size_t>(g.width)),
                      a_max < 10 ? 10 : kMaxAlphabet)
        << '\n';
  out << "b_layer:\n";
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const auto i = static_cast<std::size_t>(y * g.width + x);
      if (x > 0) out << ' ';
      if (cfg.has_tuples()) {
        const BTuple& t = cfg.tuples()[i];
        out << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3];
      } else {
        out << cfg.singles()[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize(const TraceSet& set) {
  std::ostringstream out;
  out << "trace n=" << set.n << " t=" << set.t << " count=" << set.count() << '\n';
  for (std::size_t i = 0; i < set.count(); ++i) out << format_row(set.pattern(i), set.alphabet_size) << '\n';
  return out.str();
}

std::string serialize(const Model& model) {
  return std::visit([](const auto& m) { return serialize(m); }, model);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace cadyn
