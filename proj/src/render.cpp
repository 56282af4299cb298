#include "cadyn/render.hpp"

#include <sstream>

#include "cadyn/error.hpp"

namespace cadyn {

std::string render_spacetime(const SpaceTimeDiagram& diagram, RenderFormat format) {
  if (diagram.rows.empty()) throw Error("render_spacetime: empty diagram");
  const WindowConfig& first = diagram.rows.front();
  if (first.dimension != 1) throw MismatchError("render_spacetime: only 1D diagrams");
  const int width = first.width;
  const auto height = diagram.rows.size();
  const std::uint32_t k = diagram.alphabet_size;
  std::ostringstream out;
  if (format == RenderFormat::Text) {
    for (const WindowConfig& row : diagram.rows) {
      for (int x = 0; x < width; ++x) {
        const State s = row.at(x);
        if (s == kUndetermined) {
          out << '.';
        } else if (k > 10) {
          out << (x > 0 ? " " : "") << s;
        } else {
          out << static_cast<char>('0' + s);
        }
      }
      out << '\n';
    }
    return out.str();
  }
  if (k > 256) throw Error("render_spacetime: PGM needs an alphabet of at most 256 states");
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (const WindowConfig& row : diagram.rows) {
    for (int x = 0; x < width; ++x) {
      const State s = row.at(x);
      const unsigned gray = (s == kUndetermined || k <= 1) ? 0u : 255u * s / (k - 1);
      out << (x > 0 ? " " : "") << gray;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cadyn
