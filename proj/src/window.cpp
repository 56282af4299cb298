#include "cadyn/window.hpp"

#include <algorithm>

namespace cadyn {

namespace {

int wrap(int v, int size) {
  const int m = v % size;
  return m < 0 ? m + size : m;
}

Extent bounding_box(const WindowConfig& cfg) {
  Extent e{cfg.width, 0, cfg.height, 0};
  for (int y = 0; y < cfg.height; ++y)
    for (int x = 0; x < cfg.width; ++x)
      if (cfg.at(x, y) != kUndetermined) {
        e.x0 = std::min(e.x0, x);
        e.x1 = std::max(e.x1, x + 1);
        e.y0 = std::min(e.y0, y);
        e.y1 = std::max(e.y1, y + 1);
      }
  if (e.x1 == 0) e = Extent{};
  return e;
}

}  // namespace

std::size_t WindowConfig::determined_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](State s) { return s != kUndetermined; }));
}

WindowConfig WindowConfig::from_digits(std::string_view digits, Boundary boundary) {
  WindowConfig cfg;
  cfg.width = static_cast<int>(digits.size());
  cfg.boundary = boundary;
  for (char c : digits) {
    if (c == '.') {
      cfg.cells.push_back(kUndetermined);
    } else if (c >= '0' && c <= '9') {
      cfg.cells.push_back(static_cast<State>(c - '0'));
    } else {
      throw Error(std::string("bad window digit '") + c + "'");
    }
  }
  return cfg;
}

std::string WindowConfig::to_string() const {
  std::string out;
  for (int y = 0; y < height; ++y) {
    if (y > 0) out += '\n';
    for (int x = 0; x < width; ++x) {
      const State s = at(x, y);
      if (s == kUndetermined) {
        out += '.';
      } else if (s < 10) {
        out += static_cast<char>('0' + s);
      } else {
        if (x > 0) out += ' ';
        out += std::to_string(s);
      }
    }
  }
  return out;
}

WindowConfig apply(const RuleTable& rule, const WindowConfig& cfg) {
  if (cfg.dimension != rule.dimension()) throw MismatchError("apply: dimension mismatch");
  if (cfg.width < 1 || cfg.height < 1 ||
      cfg.cells.size() != static_cast<std::size_t>(cfg.width) * cfg.height)
    throw Error("apply: malformed window");
  for (State s : cfg.cells)
    if (s != kUndetermined && s >= rule.alphabet_size())
      throw MismatchError("apply: cell state " + std::to_string(s) + " outside alphabet of size " +
                          std::to_string(rule.alphabet_size()));

  WindowConfig out = cfg;
  const auto& hood = rule.neighborhood();
  std::vector<State> pattern(hood.size());
  for (int y = 0; y < cfg.height; ++y) {
    for (int x = 0; x < cfg.width; ++x) {
      bool determined = true;
      for (std::size_t i = 0; i < hood.size() && determined; ++i) {
        int nx = x + hood[i].x;
        int ny = y + hood[i].y;
        if (cfg.boundary == Boundary::Periodic) {
          nx = wrap(nx, cfg.width);
          ny = wrap(ny, cfg.height);
        } else if (nx < 0 || ny < 0 || nx >= cfg.width || ny >= cfg.height) {
          determined = false;
          break;
        }
        pattern[i] = cfg.at(nx, ny);
        if (pattern[i] == kUndetermined) determined = false;
      }
      out.at(x, y) = determined ? rule(pattern) : kUndetermined;
    }
  }
  if (out.determined_count() == 0)
    throw Error("apply: no cell of the window is determined after the step");
  return out;
}

SpaceTimeDiagram iterate(const RuleTable& rule, const WindowConfig& cfg, int steps) {
  if (steps < 0) throw Error("iterate: negative step count");
  SpaceTimeDiagram d;
  d.alphabet_size = rule.alphabet_size();
  d.rows.push_back(cfg);
  d.valid_region.push_back(bounding_box(cfg));
  for (int i = 0; i < steps; ++i) {
    d.rows.push_back(apply(rule, d.rows.back()));
    d.valid_region.push_back(bounding_box(d.rows.back()));
  }
  return d;
}

WindowConfig rotate(const WindowConfig& cfg, int k) {
  WindowConfig out = cfg;
  for (int y = 0; y < cfg.height; ++y)
    for (int x = 0; x < cfg.width; ++x) out.at(x, y) = cfg.at(wrap(x + k, cfg.width), y);
  return out;
}

}  // namespace cadyn
