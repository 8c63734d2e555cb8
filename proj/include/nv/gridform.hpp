#pragma once

// Grid diagrams built on the range pattern, global subdivisions and
// reductions, and the canonical form they give.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/cantor.hpp"
#include "nv/element.hpp"

namespace nv {

/// A pattern is a grid iff it equals {(v, h)} for two one-dimensional
/// partitions {v} and {h}.
bool is_grid_pattern(const Pattern& p);

/// Column words and row words of a grid pattern (sorted).
struct GridAxes {
  std::vector<BinaryWord> columns;
  std::vector<BinaryWord> rows;
};
std::optional<GridAxes> grid_axes(const Pattern& p);

struct GridDiagram {
  /// Pairs sorted by range rectangle; the range pattern is a grid.
  Element element;
  bool reduced = false;
};

GridDiagram to_grid_diagram(const Element& g);
/// Splits every cell of column (vertical) or row (horizontal) `strip`,
/// counted in sorted order. Throws StripNotFound.
GridDiagram global_subdivide(const GridDiagram& gd, Axis axis, std::size_t strip);
/// Global reductions until none applies, scanning in sorted order.
GridDiagram reduce_grid(const GridDiagram& gd);
/// Same, choosing among applicable reductions with a seeded generator.
GridDiagram reduce_grid(const GridDiagram& gd, std::uint64_t seed);
/// Number of global reductions currently applicable.
std::size_t applicable_reductions(const GridDiagram& gd);

GridDiagram normal_form(const Element& g);
/// Serialization of the normal form; equal keys iff equal elements.
std::string canonical_key(const Element& g);
bool equals(const Element& f, const Element& g);
/// Exact test through f g^{-1}; does not build grids, so it scales to
/// elements whose grids would be too large.
bool equals_pointwise(const Element& f, const Element& g);

std::size_t element_fineness(const Element& g);

struct EssentialWitness {
  DyadicRect rect;
  std::optional<DyadicRect> rv;
  std::optional<DyadicRect> rh;
  /// Whether conditions (1) (vertical merge) and (2) (horizontal merge) hold.
  bool vertical_condition = false;
  bool horizontal_condition = false;
};

/// Checks both merge conditions for a rectangle of some range pattern of g.
/// Returns the witness when neither holds (the rectangle is essential).
/// Throws RectNotInRange if g^{-1} is not a single prefix map on r.
std::optional<EssentialWitness> is_essential(const Element& g, const DyadicRect& r);

/// ceil(fineness / 8).
std::size_t length_lower_bound(const Element& g);
/// ceil(size(r) / 8) for an essential rectangle r.
std::size_t essential_lower_bound(const DyadicRect& r);

}  // namespace nv
