#pragma once

#include <string>

#include "cadyn/window.hpp"

namespace cadyn {

enum class RenderFormat { Text, Pgm };

/// Text: one row per time step, '.' for undetermined cells (1D only).
/// Pgm: plain P2 image, gray level floor(255 s / (k - 1)).
std::string render_spacetime(const SpaceTimeDiagram& diagram, RenderFormat format);

}  // namespace cadyn
