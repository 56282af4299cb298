#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cadyn/rule_table.hpp"

namespace cadyn {

/// Marks a cell of an absent-boundary window whose value is not determined
/// by the initial window.
inline constexpr State kUndetermined = 0xFFFF;

enum class Boundary { Periodic, Absent };

/// Finite surrogate for a configuration: a width×height window (height 1
/// in 1D) stored row-major.
struct WindowConfig {
  int dimension = 1;
  int width = 0;
  int height = 1;
  Boundary boundary = Boundary::Periodic;
  std::vector<State> cells;

  State& at(int x, int y = 0) { return cells[static_cast<std::size_t>(y * width + x)]; }
  State at(int x, int y = 0) const { return cells[static_cast<std::size_t>(y * width + x)]; }
  std::size_t determined_count() const;

  /// 1D window from a string of digits ("012").
  static WindowConfig from_digits(std::string_view digits, Boundary boundary);
  /// Digits for states < 10, '.' for undetermined cells; 2D rows joined by '\n'.
  std::string to_string() const;

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

/// Inclusive-exclusive bounding box of determined cells.
struct Extent {
  int x0 = 0;
  int x1 = 0;
  int y0 = 0;
  int y1 = 0;
  friend bool operator==(const Extent&, const Extent&) = default;
};

struct SpaceTimeDiagram {
  std::uint32_t alphabet_size = 0;
  std::vector<WindowConfig> rows;
  std::vector<Extent> valid_region;
};

/// One application of the global map. Under absent boundary a cell whose
/// neighborhood leaves the window (or touches an undetermined cell)
/// becomes undetermined; it is an error only if no cell stays determined.
WindowConfig apply(const RuleTable& rule, const WindowConfig& cfg);

/// t applications; rows[0] = cfg.
SpaceTimeDiagram iterate(const RuleTable& rule, const WindowConfig& cfg, int steps);

/// Cyclic rotation by k cells along x (1D helper for equivariance checks).
WindowConfig rotate(const WindowConfig& cfg, int k);

}  // namespace cadyn
