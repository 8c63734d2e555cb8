#pragma once

// Binary words, dyadic rectangles and exact partitions of the square of the
// Cantor set. Geometry is prefix arithmetic on words; nothing here touches
// floating point.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nv {

/// Number of Cantor factors. The algorithms are written for 2.
inline constexpr std::size_t kDim = 2;

/// Finite word over {0,1}, stored as a string of '0'/'1' characters.
using BinaryWord = std::string;

bool is_prefix(std::string_view prefix, std::string_view word) noexcept;
bool comparable(std::string_view a, std::string_view b) noexcept;
bool is_binary_word(std::string_view w) noexcept;

enum class Axis { kVertical = 0, kHorizontal = 1 };

/// Rectangle {w1 ζ} x {w2 ζ'}; words[0] refines the first coordinate.
struct DyadicRect {
  std::array<BinaryWord, kDim> words;

  DyadicRect() = default;
  DyadicRect(BinaryWord w1, BinaryWord w2) : words{std::move(w1), std::move(w2)} {}

  const BinaryWord& operator[](std::size_t i) const { return words[i]; }
  BinaryWord& operator[](std::size_t i) { return words[i]; }

  auto operator<=>(const DyadicRect&) const = default;
  bool operator==(const DyadicRect&) const = default;
};

std::size_t rect_size(const DyadicRect& r) noexcept;

/// r contains s (as subsets of the square).
bool contains(const DyadicRect& r, const DyadicRect& s) noexcept;
bool overlap(const DyadicRect& r, const DyadicRect& s) noexcept;
/// Intersection of two overlapping rectangles.
DyadicRect intersection(const DyadicRect& r, const DyadicRect& s);

DyadicRect child(const DyadicRect& r, Axis axis, char bit);
/// The rectangle obtained by dropping the last letter on `axis`, if any.
std::optional<DyadicRect> parent(const DyadicRect& r, Axis axis);

/// Text form `w1,w2` with `-` standing for the empty word.
std::string format_rect(const DyadicRect& r);
DyadicRect parse_rect(std::string_view text);

/// A finite set of rectangles, kept sorted lexicographically on (w1, w2).
/// Construction sorts but does not validate; see validate_partition.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<DyadicRect> rects);

  static Pattern trivial();

  const std::vector<DyadicRect>& rects() const noexcept { return rects_; }
  std::size_t size() const noexcept { return rects_.size(); }
  bool contains_rect(const DyadicRect& r) const;

  bool operator==(const Pattern&) const = default;

 private:
  std::vector<DyadicRect> rects_;
};

/// Finds rectangles of a fixed set overlapping a query rectangle. Lookups go
/// through the first-coordinate word: prefixes of the query word are probed
/// directly and extensions are a contiguous range of the sorted map.
class RectIndex {
 public:
  RectIndex() = default;
  explicit RectIndex(const std::vector<DyadicRect>& rects);

  /// Indices (into the constructor argument) of rectangles overlapping q.
  std::vector<std::size_t> overlapping(const DyadicRect& q) const;
  /// Index of the rectangle containing q, if one does.
  std::optional<std::size_t> containing(const DyadicRect& q) const;

 private:
  template <class F>
  void for_each_prefix_key(std::string_view w, bool inclusive, F&& f) const;

  const std::vector<DyadicRect>* rects_ = nullptr;
  std::map<BinaryWord, std::vector<std::size_t>, std::less<>> by_first_;
  // Polynomial hash of each distinct first word; lets prefix probes of a long
  // query run in linear total time.
  std::unordered_map<std::uint64_t, std::vector<const BinaryWord*>> by_hash_;
};

struct PartitionReport {
  bool ok = true;
  std::string message;
};

/// ok iff the measures sum to exactly one and no two rectangles overlap.
PartitionReport validate_partition(const std::vector<DyadicRect>& rects);

Pattern subdivide(const Pattern& p, const DyadicRect& r, Axis axis);
Pattern common_refinement(const Pattern& p, const Pattern& q);
/// Every rectangle of `fine` lies inside some rectangle of `coarse`.
bool refines(const Pattern& fine, const Pattern& coarse);
std::size_t fineness(const Pattern& p) noexcept;
DyadicRect rect_at_origin(const Pattern& p);

std::string format_pattern(const Pattern& p);
Pattern parse_pattern(std::string_view text);

}  // namespace nv
