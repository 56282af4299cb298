#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cadyn/rule_table.hpp"
#include "cadyn/window.hpp"

namespace cadyn {

/// Valid n×n patterns plus one unit direction per state. Patterns are
/// row-major, index dy * n + dx, anchored at their top-left cell.
struct Orientation {
  std::uint32_t alphabet_size = 0;
  int pattern_size = 1;
  std::vector<std::vector<State>> valid_patterns;  ///< kept sorted and unique
  std::vector<Offset> direction;

  /// Sorts and deduplicates valid_patterns.
  void normalize();
  void validate() const;
  bool is_valid_pattern(std::span<const State> pattern) const;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// A-layer of a 2D window, row-major (y grows downwards).
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<State> cells;

  State at(int x, int y) const { return cells[static_cast<std::size_t>(y * width + x)]; }
  friend bool operator==(const Grid&, const Grid&) = default;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  auto operator<=>(const Cell&) const = default;
};

enum class CellRole { Invalid, Begin, Middle, End, BeginAndEnd };

/// Which cells count when checking that a successor has a unique incoming
/// arrow: every in-window cell (literal reading) or only cells whose
/// pattern is valid.
enum class BranchRule { AllCells, ValidCellsOnly };

struct PathOptions {
  Boundary boundary = Boundary::Absent;  ///< Periodic can create artificial cycles
  BranchRule branching = BranchRule::AllCells;
  /// Reject paths whose extent could continue outside the window (an end
  /// pointing out of the window, or a begin on the window border).
  bool require_contained = false;
};

struct PathDecomposition {
  int width = 0;
  int height = 0;
  std::vector<CellRole> roles;
  std::vector<std::vector<Cell>> paths;   ///< begin to end
  std::vector<std::vector<Cell>> cycles;  ///< valid cells on closed loops
  bool acyclic = true;

  CellRole role(int x, int y) const { return roles[static_cast<std::size_t>(y * width + x)]; }
};

std::vector<CellRole> classify_cells(const Orientation& o, const Grid& grid,
                                     const PathOptions& opts = {});
PathDecomposition extract_paths(const Orientation& o, const Grid& grid,
                                const PathOptions& opts = {});

// Two-track words: element i is the column (u_i, v_i).
using TrackPair = std::pair<State, State>;
using TwoTrackWord = std::vector<TrackPair>;

/// Rotates both tracks left, the ends glued straight.
TwoTrackWord word_shift(const TwoTrackWord& w);
/// Rotates left with the tracks crossed at the seam (Möbius strip).
TwoTrackWord word_mobius(const TwoTrackWord& w);
/// Even-length re-blocking that conjugates word_shift to word_mobius².
TwoTrackWord word_phi(const TwoTrackWord& w);
TwoTrackWord word_phi_inverse(const TwoTrackWord& w);

using BTuple = std::array<State, 4>;  ///< (a, b, x, y) over B2

/// A-layer plus B-layer. The B-layer is either 4-tuples over B2 (shift and
/// Möbius variants) or bare {0,1,2} states (zeta variant).
struct PathLayerConfig {
  Grid a_layer;
  std::uint32_t b2_size = 2;
  std::variant<std::vector<BTuple>, std::vector<State>> b_layer;

  bool has_tuples() const { return std::holds_alternative<std::vector<BTuple>>(b_layer); }
  const std::vector<BTuple>& tuples() const { return std::get<std::vector<BTuple>>(b_layer); }
  std::vector<BTuple>& tuples() { return std::get<std::vector<BTuple>>(b_layer); }
  const std::vector<State>& singles() const { return std::get<std::vector<State>>(b_layer); }
  std::vector<State>& singles() { return std::get<std::vector<State>>(b_layer); }

  void validate(const Orientation& o) const;
  friend bool operator==(const PathLayerConfig&, const PathLayerConfig&) = default;
};

/// Number of B-layers with this shape: |B2|^(4 cells) for tuples, 3^cells
/// otherwise (saturating).
std::uint64_t b_layer_count(const PathLayerConfig& cfg);
/// Index of the B-layer in base |B2| (or 3), first cell most significant.
std::uint64_t b_layer_index(const PathLayerConfig& cfg);
/// Inverse of b_layer_index; overwrites the B-layer in place.
void set_b_layer(PathLayerConfig& cfg, std::uint64_t index);

enum class PathVariant { Shift, Mobius, Zeta };

/// One step of the path automaton. A-layer and cells off valid paths are
/// unchanged.
PathLayerConfig apply_path_ca(const Orientation& o, const PathLayerConfig& cfg,
                              PathVariant variant, const PathOptions& opts = {});

/// How the x/y half of word_phi(W) is written back onto a path of length
/// k, with W = (x_k..x_1 a_1..a_k / y_k..y_1 b_1..b_k). PathOrder gives
/// (x_i, y_i) component k-i, so the new path word is exactly word_phi(W).
/// Literal gives it component i-1, which agrees with PathOrder only for
/// k = 1 and does not conjugate F_shift to F_mobius² for k >= 2.
enum class HphiReading { PathOrder, Literal };

/// The conjugacy map built from word_phi applied along each whole path.
PathLayerConfig apply_hphi(const Orientation& o, const PathLayerConfig& cfg,
                           const PathOptions& opts = {},
                           HphiReading reading = HphiReading::PathOrder);
PathLayerConfig apply_hphi_inverse(const Orientation& o, const PathLayerConfig& cfg,
                                   const PathOptions& opts = {},
                                   HphiReading reading = HphiReading::PathOrder);

}  // namespace cadyn
