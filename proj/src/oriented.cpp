#include "cadyn/oriented.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cadyn/reversible.hpp"

namespace cadyn {

namespace {

int wrap(int v, int size) {
  const int m = v % size;
  return m < 0 ? m + size : m;
}

struct Analysis {
  std::vector<CellRole> roles;
  std::vector<int> succ;  // index of in-window successor, -1 if outside
  std::vector<int> pred;  // index of the valid predecessor, -1 if none
};

Analysis analyze(const Orientation& o, const Grid& grid, const PathOptions& opts) {
  o.validate();
  if (grid.width < 1 || grid.height < 1 ||
      grid.cells.size() != static_cast<std::size_t>(grid.width) * grid.height)
    throw Error("orientation: malformed A-layer");
  for (State s : grid.cells)
    if (s >= o.alphabet_size) throw MismatchError("A-layer state outside the orientation alphabet");

  const int w = grid.width;
  const int h = grid.height;
  const std::size_t cells = grid.cells.size();
  const bool periodic = opts.boundary == Boundary::Periodic;
  const int n = o.pattern_size;

  std::vector<bool> pattern_ok(cells, false);
  std::vector<State> pattern(static_cast<std::size_t>(n) * n);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool inside = true;
      for (int dy = 0; dy < n && inside; ++dy)
        for (int dx = 0; dx < n && inside; ++dx) {
          int px = x + dx;
          int py = y + dy;
          if (periodic) {
            px = wrap(px, w);
            py = wrap(py, h);
          } else if (px >= w || py >= h) {
            inside = false;
            break;
          }
          pattern[static_cast<std::size_t>(dy * n + dx)] = grid.at(px, py);
        }
      pattern_ok[static_cast<std::size_t>(y * w + x)] = inside && o.is_valid_pattern(pattern);
    }

  std::vector<Cell> target(cells);
  std::map<Cell, int> incoming;
  Analysis a;
  a.succ.assign(cells, -1);
  a.pred.assign(cells, -1);
  a.roles.assign(cells, CellRole::Invalid);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y * w + x);
      const Offset d = o.direction[grid.cells[i]];
      Cell t{x + d.x, y + d.y};
      if (periodic) t = {wrap(t.x, w), wrap(t.y, h)};
      target[i] = t;
      if (t.x >= 0 && t.y >= 0 && t.x < w && t.y < h) a.succ[i] = t.y * w + t.x;
      if (opts.branching == BranchRule::AllCells || pattern_ok[i]) ++incoming[t];
    }

  std::vector<bool> valid(cells, false);
  for (std::size_t i = 0; i < cells; ++i) valid[i] = pattern_ok[i] && incoming[target[i]] == 1;
  for (std::size_t i = 0; i < cells; ++i)
    if (valid[i] && a.succ[i] >= 0) a.pred[static_cast<std::size_t>(a.succ[i])] = static_cast<int>(i);

  for (std::size_t i = 0; i < cells; ++i) {
    if (!valid[i]) continue;
    const bool begin = a.pred[i] < 0;
    const bool end = a.succ[i] < 0 || !valid[static_cast<std::size_t>(a.succ[i])];
    a.roles[i] = begin && end ? CellRole::BeginAndEnd
                 : begin      ? CellRole::Begin
                 : end        ? CellRole::End
                              : CellRole::Middle;
  }
  return a;
}

bool is_end(CellRole r) { return r == CellRole::End || r == CellRole::BeginAndEnd; }
bool is_begin(CellRole r) { return r == CellRole::Begin || r == CellRole::BeginAndEnd; }

PathDecomposition decompose(const Grid& grid, const Analysis& a) {
  PathDecomposition d;
  d.width = grid.width;
  d.height = grid.height;
  d.roles = a.roles;
  const std::size_t cells = a.roles.size();
  std::vector<bool> seen(cells, false);
  auto cell_of = [&](std::size_t i) {
    return Cell{static_cast<int>(i) % grid.width, static_cast<int>(i) / grid.width};
  };
  for (std::size_t i = 0; i < cells; ++i) {
    if (!is_begin(a.roles[i])) continue;
    std::vector<Cell> path;
    std::size_t p = i;
    while (true) {
      if (seen[p]) throw Error("path decomposition: paths are not disjoint");
      seen[p] = true;
      path.push_back(cell_of(p));
      if (is_end(a.roles[p])) break;
      p = static_cast<std::size_t>(a.succ[p]);
    }
    d.paths.push_back(std::move(path));
  }
  for (std::size_t i = 0; i < cells; ++i) {
    if (a.roles[i] == CellRole::Invalid || seen[i]) continue;
    // a valid cell not reachable from a beginning lies on a cycle
    std::vector<Cell> cycle;
    std::size_t p = i;
    while (!seen[p]) {
      seen[p] = true;
      cycle.push_back(cell_of(p));
      p = static_cast<std::size_t>(a.succ[p]);
    }
    d.cycles.push_back(std::move(cycle));
  }
  d.acyclic = d.cycles.empty();
  return d;
}

void check_contained(const Grid& grid, const PathDecomposition& d, const Analysis& a) {
  for (const auto& path : d.paths) {
    const Cell first = path.front();
    const Cell last = path.back();
    if (a.succ[static_cast<std::size_t>(last.y * grid.width + last.x)] < 0)
      throw Error("path ending at (" + std::to_string(last.x) + "," + std::to_string(last.y) +
                  ") points out of the window; its extent is ambiguous");
    if (first.x == 0 || first.y == 0 || first.x == grid.width - 1 || first.y == grid.height - 1)
      throw Error("path beginning at (" + std::to_string(first.x) + "," + std::to_string(first.y) +
                  ") touches the window border; its extent is ambiguous");
  }
}

const PermutationFamily& zeta() {
  static const PermutationFamily family = zeta_family();
  return family;
}

// Builds the length-2k word (x_k..x_1 a_1..a_k / y_k..y_1 b_1..b_k).
TwoTrackWord path_word(const std::vector<BTuple>& tuples, const std::vector<std::size_t>& idx) {
  const std::size_t k = idx.size();
  TwoTrackWord w(2 * k);
  for (std::size_t m = 0; m < k; ++m) {
    const BTuple& back = tuples[idx[k - 1 - m]];
    const BTuple& fwd = tuples[idx[m]];
    w[m] = {back[2], back[3]};
    w[k + m] = {fwd[0], fwd[1]};
  }
  return w;
}

std::vector<std::size_t> indices(const Grid& grid, const std::vector<Cell>& path) {
  std::vector<std::size_t> idx;
  for (const Cell& c : path) idx.push_back(static_cast<std::size_t>(c.y * grid.width + c.x));
  return idx;
}

}  // namespace

void Orientation::normalize() {
  std::sort(valid_patterns.begin(), valid_patterns.end());
  valid_patterns.erase(std::unique(valid_patterns.begin(), valid_patterns.end()),
                       valid_patterns.end());
}

void Orientation::validate() const {
  if (alphabet_size == 0 || alphabet_size > kMaxAlphabet)
    throw Error("orientation: bad alphabet size");
  if (pattern_size < 1) throw Error("orientation: pattern size must be positive");
  if (direction.size() != alphabet_size)
    throw Error("orientation: direction must be given for every state");
  for (const Offset& d : direction)
    if (std::abs(d.x) + std::abs(d.y) != 1)
      throw Error("orientation: directions must be unit vectors");
  const auto cells = static_cast<std::size_t>(pattern_size) * pattern_size;
  for (const auto& p : valid_patterns) {
    if (p.size() != cells) throw Error("orientation: valid pattern of wrong size");
    for (State s : p)
      if (s >= alphabet_size) throw Error("orientation: pattern state outside alphabet");
  }
  if (!std::is_sorted(valid_patterns.begin(), valid_patterns.end()) ||
      std::adjacent_find(valid_patterns.begin(), valid_patterns.end()) != valid_patterns.end())
    throw Error("orientation: valid patterns must be sorted and unique");
}

bool Orientation::is_valid_pattern(std::span<const State> pattern) const {
  const std::vector<State> p(pattern.begin(), pattern.end());
  return std::binary_search(valid_patterns.begin(), valid_patterns.end(), p);
}

void PathLayerConfig::validate(const Orientation& o) const {
  const std::size_t cells = a_layer.cells.size();
  if (a_layer.width < 1 || a_layer.height < 1 ||
      cells != static_cast<std::size_t>(a_layer.width) * a_layer.height)
    throw Error("path layer: malformed A-layer");
  for (State s : a_layer.cells)
    if (s >= o.alphabet_size) throw MismatchError("path layer: A-layer state outside alphabet");
  if (has_tuples()) {
    if (b2_size < 2) throw Error("path layer: |B2| must be at least 2");
    if (tuples().size() != cells) throw Error("path layer: B-layer shape differs from A-layer");
    for (const BTuple& t : tuples())
      for (State s : t)
        if (s >= b2_size) throw Error("path layer: B-layer entry outside B2");
  } else {
    if (singles().size() != cells) throw Error("path layer: B-layer shape differs from A-layer");
    for (State s : singles())
      if (s > 2) throw Error("path layer: zeta B-layer entry outside {0,1,2}");
  }
}

std::uint64_t b_layer_count(const PathLayerConfig& cfg) {
  const std::size_t cells = cfg.a_layer.cells.size();
  return cfg.has_tuples() ? saturating_pow(cfg.b2_size, 4 * cells) : saturating_pow(3, cells);
}

std::uint64_t b_layer_index(const PathLayerConfig& cfg) {
  std::uint64_t index = 0;
  if (cfg.has_tuples()) {
    for (const BTuple& t : cfg.tuples())
      for (State s : t) index = index * cfg.b2_size + s;
  } else {
    for (State s : cfg.singles()) index = index * 3 + s;
  }
  return index;
}

void set_b_layer(PathLayerConfig& cfg, std::uint64_t index) {
  if (cfg.has_tuples()) {
    auto& t = cfg.tuples();
    for (std::size_t c = t.size(); c-- > 0;)
      for (std::size_t j = 4; j-- > 0;) {
        t[c][j] = static_cast<State>(index % cfg.b2_size);
        index /= cfg.b2_size;
      }
  } else {
    auto& s = cfg.singles();
    for (std::size_t c = s.size(); c-- > 0;) {
      s[c] = static_cast<State>(index % 3);
      index /= 3;
    }
  }
}

std::vector<CellRole> classify_cells(const Orientation& o, const Grid& grid,
                                     const PathOptions& opts) {
  return analyze(o, grid, opts).roles;
}

PathDecomposition extract_paths(const Orientation& o, const Grid& grid, const PathOptions& opts) {
  const Analysis a = analyze(o, grid, opts);
  PathDecomposition d = decompose(grid, a);
  if (opts.require_contained) check_contained(grid, d, a);
  return d;
}

TwoTrackWord word_shift(const TwoTrackWord& w) {
  if (w.empty()) throw Error("word_shift: empty word");
  TwoTrackWord out(w.begin() + 1, w.end());
  out.push_back(w.front());
  return out;
}

TwoTrackWord word_mobius(const TwoTrackWord& w) {
  if (w.empty()) throw Error("word_mobius: empty word");
  TwoTrackWord out(w.begin() + 1, w.end());
  out.push_back({w.front().second, w.front().first});
  return out;
}

TwoTrackWord word_phi(const TwoTrackWord& w) {
  if (w.size() % 2 != 0) throw Error("word_phi: word length must be even");
  const std::size_t n = w.size() / 2;
  // top row: u_0 v_0 ... u_{n-1} v_{n-1}; bottom row: u_n v_n ... u_{2n-1} v_{2n-1}
  TwoTrackWord out(w.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i].first = w[i].first;
    out[2 * i + 1].first = w[i].second;
    out[2 * i].second = w[n + i].first;
    out[2 * i + 1].second = w[n + i].second;
  }
  return out;
}

TwoTrackWord word_phi_inverse(const TwoTrackWord& w) {
  if (w.size() % 2 != 0) throw Error("word_phi_inverse: word length must be even");
  const std::size_t n = w.size() / 2;
  TwoTrackWord out(w.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {w[2 * i].first, w[2 * i + 1].first};
    out[n + i] = {w[2 * i].second, w[2 * i + 1].second};
  }
  return out;
}

PathLayerConfig apply_path_ca(const Orientation& o, const PathLayerConfig& cfg,
                              PathVariant variant, const PathOptions& opts) {
  cfg.validate(o);
  if ((variant == PathVariant::Zeta) == cfg.has_tuples())
    throw MismatchError(variant == PathVariant::Zeta
                            ? "zeta path variant needs a single-state B-layer"
                            : "shift/mobius path variants need a 4-tuple B-layer");
  const Analysis a = analyze(o, cfg.a_layer, opts);
  PathLayerConfig out = cfg;
  const std::size_t cells = a.roles.size();

  if (variant == PathVariant::Zeta) {
    const auto& in = cfg.singles();
    auto& res = out.singles();
    for (std::size_t i = 0; i < cells; ++i) {
      const CellRole r = a.roles[i];
      if (r == CellRole::Invalid) continue;
      res[i] = is_end(r) ? zeta().perms[1][in[i]]
                         : zeta().perms[in[static_cast<std::size_t>(a.succ[i])]][in[i]];
    }
    return out;
  }

  const auto& in = cfg.tuples();
  auto& res = out.tuples();
  const bool mobius = variant == PathVariant::Mobius;
  for (std::size_t i = 0; i < cells; ++i) {
    const BTuple& self = in[i];
    switch (a.roles[i]) {
      case CellRole::Invalid:
        break;
      case CellRole::Begin: {
        const BTuple& next = in[static_cast<std::size_t>(a.succ[i])];
        res[i] = {next[0], next[1], self[0], self[1]};
        break;
      }
      case CellRole::Middle: {
        const BTuple& next = in[static_cast<std::size_t>(a.succ[i])];
        const BTuple& prev = in[static_cast<std::size_t>(a.pred[i])];
        res[i] = {next[0], next[1], prev[2], prev[3]};
        break;
      }
      case CellRole::End: {
        const BTuple& prev = in[static_cast<std::size_t>(a.pred[i])];
        res[i] = mobius ? BTuple{self[3], self[2], prev[2], prev[3]}
                        : BTuple{self[2], self[3], prev[2], prev[3]};
        break;
      }
      case CellRole::BeginAndEnd:
        res[i] = mobius ? BTuple{self[3], self[2], self[0], self[1]}
                        : BTuple{self[2], self[3], self[0], self[1]};
        break;
    }
  }
  return out;
}

PathLayerConfig apply_hphi(const Orientation& o, const PathLayerConfig& cfg,
                           const PathOptions& opts, HphiReading reading) {
  cfg.validate(o);
  if (!cfg.has_tuples()) throw MismatchError("apply_hphi needs a 4-tuple B-layer");
  const Analysis a = analyze(o, cfg.a_layer, opts);
  const PathDecomposition d = decompose(cfg.a_layer, a);
  if (!d.acyclic) throw Error("apply_hphi: a valid cycle has no beginning");
  if (opts.require_contained) check_contained(cfg.a_layer, d, a);
  PathLayerConfig out = cfg;
  for (const auto& path : d.paths) {
    const auto idx = indices(cfg.a_layer, path);
    const std::size_t k = idx.size();
    const TwoTrackWord image = word_phi(path_word(cfg.tuples(), idx));
    for (std::size_t i = 0; i < k; ++i) {
      const TrackPair hi = image[k + i];
      const TrackPair lo = reading == HphiReading::Literal ? image[i] : image[k - 1 - i];
      out.tuples()[idx[i]] = {hi.first, hi.second, lo.first, lo.second};
    }
  }
  return out;
}

PathLayerConfig apply_hphi_inverse(const Orientation& o, const PathLayerConfig& cfg,
                                   const PathOptions& opts, HphiReading reading) {
  cfg.validate(o);
  if (!cfg.has_tuples()) throw MismatchError("apply_hphi_inverse needs a 4-tuple B-layer");
  const Analysis a = analyze(o, cfg.a_layer, opts);
  const PathDecomposition d = decompose(cfg.a_layer, a);
  if (!d.acyclic) throw Error("apply_hphi_inverse: a valid cycle has no beginning");
  if (opts.require_contained) check_contained(cfg.a_layer, d, a);
  PathLayerConfig out = cfg;
  for (const auto& path : d.paths) {
    const auto idx = indices(cfg.a_layer, path);
    const std::size_t k = idx.size();
    TwoTrackWord image(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      const BTuple& t = cfg.tuples()[idx[i]];
      image[k + i] = {t[0], t[1]};
      image[reading == HphiReading::Literal ? i : k - 1 - i] = {t[2], t[3]};
    }
    const TwoTrackWord w = word_phi_inverse(image);
    for (std::size_t m = 0; m < k; ++m) {
      BTuple& fwd = out.tuples()[idx[m]];
      fwd[0] = w[k + m].first;
      fwd[1] = w[k + m].second;
      BTuple& back = out.tuples()[idx[k - 1 - m]];
      back[2] = w[m].first;
      back[3] = w[m].second;
    }
  }
  return out;
}

}  // namespace cadyn
