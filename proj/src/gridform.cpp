#include "nv/gridform.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "nv/error.hpp"

namespace nv {

namespace {

// Coarsest one-dimensional partition refining every word in `words`.
std::vector<BinaryWord> coarsest_partition(const std::set<BinaryWord>& words) {
  std::set<BinaryWord> internal;
  for (const auto& w : words) {
    for (std::size_t len = 0; len < w.size(); ++len) internal.insert(w.substr(0, len));
  }
  if (internal.empty()) return {BinaryWord{}};
  std::vector<BinaryWord> out;
  for (const auto& u : internal) {
    for (char b : {'0', '1'}) {
      auto c = u + b;
      if (!internal.count(c)) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_partition_1d(const std::vector<BinaryWord>& words) {
  std::vector<DyadicRect> rects;
  for (const auto& w : words) rects.emplace_back(w, BinaryWord{});
  return validate_partition(rects).ok;
}

// Grid diagram as cells keyed by (column, row) mapped to domain rectangles.
struct Grid {
  std::set<BinaryWord> columns;
  std::set<BinaryWord> rows;
  std::map<std::pair<BinaryWord, BinaryWord>, DyadicRect> cells;

  static Grid from(const GridDiagram& gd) {
    Grid g;
    for (const auto& p : gd.element.pairs()) {
      g.columns.insert(p.ran[0]);
      g.rows.insert(p.ran[1]);
      g.cells[{p.ran[0], p.ran[1]}] = p.dom;
    }
    return g;
  }

  GridDiagram diagram(bool reduced) const {
    std::vector<RectPair> pairs;
    pairs.reserve(cells.size());
    for (const auto& [key, dom] : cells) pairs.push_back({dom, DyadicRect(key.first, key.second)});
    std::sort(pairs.begin(), pairs.end(),
              [](const RectPair& a, const RectPair& b) { return a.ran < b.ran; });
    return {Element(std::move(pairs)), reduced};
  }

  const DyadicRect& cell(std::size_t axis, const BinaryWord& strip, const BinaryWord& other) const {
    return axis == 0 ? cells.at({strip, other}) : cells.at({other, strip});
  }

  // Parent strip u such that u0 and u1 can be merged along `axis`.
  bool mergeable(std::size_t axis, const BinaryWord& u) const {
    const auto& strips = axis == 0 ? columns : rows;
    const auto& others = axis == 0 ? rows : columns;
    if (!strips.count(u + '0') || !strips.count(u + '1')) return false;
    for (const auto& o : others) {
      const DyadicRect& d0 = cell(axis, u + '0', o);
      const DyadicRect& d1 = cell(axis, u + '1', o);
      if (d0[axis].empty() || d0[axis].back() != '0') return false;
      DyadicRect want = d0;
      want[axis].back() = '1';
      if (d1 != want) return false;
    }
    return true;
  }

  void merge(std::size_t axis, const BinaryWord& u) {
    auto& strips = axis == 0 ? columns : rows;
    const auto& others = axis == 0 ? rows : columns;
    for (const auto& o : others) {
      auto k0 = axis == 0 ? std::make_pair(u + '0', o) : std::make_pair(o, u + '0');
      auto k1 = axis == 0 ? std::make_pair(u + '1', o) : std::make_pair(o, u + '1');
      auto k = axis == 0 ? std::make_pair(u, o) : std::make_pair(o, u);
      DyadicRect d = cells.at(k0);
      d[axis].pop_back();
      cells.erase(k0);
      cells.erase(k1);
      cells[k] = d;
    }
    strips.erase(u + '0');
    strips.erase(u + '1');
    strips.insert(u);
  }

  std::vector<std::pair<std::size_t, BinaryWord>> applicable() const {
    std::vector<std::pair<std::size_t, BinaryWord>> out;
    for (std::size_t axis = 0; axis < kDim; ++axis) {
      const auto& strips = axis == 0 ? columns : rows;
      for (const auto& s : strips) {
        if (s.empty() || s.back() != '0') continue;
        auto u = s.substr(0, s.size() - 1);
        if (mergeable(axis, u)) out.emplace_back(axis, u);
      }
    }
    return out;
  }
};

}  // namespace

std::optional<GridAxes> grid_axes(const Pattern& p) {
  std::set<BinaryWord> cols, rows;
  for (const auto& r : p.rects()) {
    cols.insert(r[0]);
    rows.insert(r[1]);
  }
  GridAxes axes{{cols.begin(), cols.end()}, {rows.begin(), rows.end()}};
  if (axes.columns.size() * axes.rows.size() != p.size()) return std::nullopt;
  if (!is_partition_1d(axes.columns) || !is_partition_1d(axes.rows)) return std::nullopt;
  for (const auto& c : axes.columns) {
    for (const auto& r : axes.rows) {
      if (!p.contains_rect(DyadicRect(c, r))) return std::nullopt;
    }
  }
  return axes;
}

bool is_grid_pattern(const Pattern& p) { return grid_axes(p).has_value(); }

GridDiagram to_grid_diagram(const Element& g) {
  std::set<BinaryWord> firsts, seconds;
  std::vector<DyadicRect> rans;
  for (const auto& p : g.pairs()) {
    firsts.insert(p.ran[0]);
    seconds.insert(p.ran[1]);
    rans.push_back(p.ran);
  }
  auto cols = coarsest_partition(firsts);
  auto rows = coarsest_partition(seconds);
  RectIndex index(rans);
  std::vector<RectPair> pairs;
  pairs.reserve(cols.size() * rows.size());
  for (const auto& c : cols) {
    for (const auto& r : rows) {
      DyadicRect cell(c, r);
      auto hit = index.containing(cell);
      if (!hit) throw Error(ErrorCode::kInvalidElement, "range pattern does not cover " + format_rect(cell));
      const auto& pr = g.pairs()[*hit];
      DyadicRect dom;
      for (std::size_t i = 0; i < kDim; ++i) dom[i] = pr.dom[i] + cell[i].substr(pr.ran[i].size());
      pairs.push_back({dom, cell});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const RectPair& a, const RectPair& b) { return a.ran < b.ran; });
  return {Element(std::move(pairs)), false};
}

GridDiagram global_subdivide(const GridDiagram& gd, Axis axis, std::size_t strip) {
  Grid grid = Grid::from(gd);
  auto a = static_cast<std::size_t>(axis);
  auto& strips = a == 0 ? grid.columns : grid.rows;
  if (strip >= strips.size()) {
    throw Error(ErrorCode::kStripNotFound, "strip " + std::to_string(strip) + " does not exist");
  }
  BinaryWord u = *std::next(strips.begin(), static_cast<std::ptrdiff_t>(strip));
  const auto& others = a == 0 ? grid.rows : grid.columns;
  for (const auto& o : others) {
    auto k = a == 0 ? std::make_pair(u, o) : std::make_pair(o, u);
    DyadicRect d = grid.cells.at(k);
    grid.cells.erase(k);
    for (char b : {'0', '1'}) {
      auto kb = a == 0 ? std::make_pair(u + b, o) : std::make_pair(o, u + b);
      grid.cells[kb] = child(d, axis, b);
    }
  }
  strips.erase(u);
  strips.insert(u + '0');
  strips.insert(u + '1');
  return grid.diagram(false);
}

GridDiagram reduce_grid(const GridDiagram& gd) {
  Grid grid = Grid::from(gd);
  for (;;) {
    auto moves = grid.applicable();
    if (moves.empty()) break;
    grid.merge(moves.front().first, moves.front().second);
  }
  return grid.diagram(true);
}

GridDiagram reduce_grid(const GridDiagram& gd, std::uint64_t seed) {
  Grid grid = Grid::from(gd);
  std::mt19937_64 rng(seed);
  for (;;) {
    auto moves = grid.applicable();
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    const auto& m = moves[pick(rng)];
    grid.merge(m.first, m.second);
  }
  return grid.diagram(true);
}

std::size_t applicable_reductions(const GridDiagram& gd) { return Grid::from(gd).applicable().size(); }

GridDiagram normal_form(const Element& g) { return reduce_grid(to_grid_diagram(reduce_pair(g))); }

std::string canonical_key(const Element& g) { return format_element(normal_form(g).element); }

bool equals(const Element& f, const Element& g) { return canonical_key(f) == canonical_key(g); }

bool equals_pointwise(const Element& f, const Element& g) { return compose(f, inverse(g)).is_identity(); }

std::size_t element_fineness(const Element& g) { return fineness(normal_form(g).element.range_pattern()); }

std::optional<EssentialWitness> is_essential(const Element& g, const DyadicRect& r) {
  std::vector<DyadicRect> rans;
  for (const auto& p : g.pairs()) rans.push_back(p.ran);
  RectIndex index(rans);
  if (!preimage_rect(g, index, r)) {
    throw Error(ErrorCode::kRectNotInRange, format_rect(r) + " is not a range rectangle of any representative");
  }
  EssentialWitness w;
  w.rect = r;
  for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
    auto i = static_cast<std::size_t>(axis);
    auto par = parent(r, axis);
    if (!par) continue;
    DyadicRect nb = r;
    nb[i].back() = r[i].back() == '0' ? '1' : '0';
    bool holds = preimage_rect(g, index, *par).has_value();
    if (axis == Axis::kVertical) {
      w.rv = nb;
      w.vertical_condition = holds;
    } else {
      w.rh = nb;
      w.horizontal_condition = holds;
    }
  }
  if (w.vertical_condition || w.horizontal_condition) return std::nullopt;
  return w;
}

std::size_t length_lower_bound(const Element& g) { return (element_fineness(g) + 7) / 8; }

std::size_t essential_lower_bound(const DyadicRect& r) { return (rect_size(r) + 7) / 8; }

}  // namespace nv
