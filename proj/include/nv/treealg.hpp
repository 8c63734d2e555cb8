#pragma once

// Colored binary trees: carets colored `a` split the first coordinate,
// carets colored `b` split the second. Leaves are numbered left to right.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nv/cantor.hpp"
#include "nv/element.hpp"

namespace nv {

class GeneratorTable;
struct GroupWord;

enum class CaretColor { kLeaf, kA, kB };

class ColoredTree {
 public:
  struct Node {
    CaretColor color = CaretColor::kLeaf;
    int left = -1;
    int right = -1;
  };

  /// A single vertex.
  ColoredTree();

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int root() const noexcept { return 0; }

  std::size_t carets() const noexcept;
  std::size_t leaves() const noexcept { return carets() + 1; }
  std::size_t depth() const noexcept;

  /// Attaches a caret to the leaf `node`; returns the indices of its children.
  std::pair<int, int> attach(int node, CaretColor color);

  /// Pre-order: `a(`/`b(` open a caret, `.` is a leaf, `)` closes.
  std::string to_string() const;
  static ColoredTree parse(std::string_view text);

  bool operator==(const ColoredTree& other) const { return to_string() == other.to_string(); }

 private:
  std::vector<Node> nodes_;
};

/// Leaf rectangles in left-to-right leaf order.
std::vector<DyadicRect> tree_leaf_rects(const ColoredTree& t);
Pattern tree_to_pattern(const ColoredTree& t);

/// Greedy inverse of tree_to_pattern: split along x = 1/2 of the current
/// rectangle when that line separates the rectangles, else along y = 1/2.
/// Throws NotRealizable when neither line separates.
ColoredTree pattern_to_tree(const Pattern& p);
bool is_realizable(const Pattern& p);

/// Source tree, target tree, and perm[i] = target leaf receiving source leaf i.
struct TreePair {
  ColoredTree source;
  ColoredTree target;
  std::vector<std::size_t> perm;
};

Element tree_pair_to_element(const TreePair& tp);
/// Tree pair read off a representative whose two patterns are realizable.
TreePair element_to_tree_pair(const Element& g);

/// Target depth of a tree pair.
inline std::size_t target_depth(const TreePair& tp) { return tp.target.depth(); }

/// A shallow pair with the fewest carets: minimizes target depth, then
/// carets. Throws BudgetExceeded when the minimal depth exceeds `budget`.
TreePair minimal_pair(const Element& g, std::size_t budget);
/// Only the minimal target depth (cheaper than building the pair).
std::size_t minimal_target_depth(const Element& g, std::size_t budget);

/// Letters of the P Π Q^{-1} form are family letters: base in
/// {A, B, C, pi, pib} with a nonnegative index.
struct FamilyLetter {
  std::string base;
  std::size_t index = 0;

  bool operator==(const FamilyLetter&) const = default;
};

struct PPiQ {
  std::vector<FamilyLetter> p;
  std::vector<FamilyLetter> pi;
  std::vector<FamilyLetter> q;
};

/// Positive word on {C_i, A_i, B_i} sending the leaves of t, in order, onto
/// the leaves of the all-`a` right vine with the same leaf count.
std::vector<FamilyLetter> vine_word(const ColoredTree& t);
PPiQ decompose_ppiq(const TreePair& tp);

/// Indices m1 < ... < mp of the maximal C-prefix of a word in the
/// C...W... shape. Throws MalformedWord when a C letter follows a non-C
/// letter or indices do not increase.
std::vector<std::size_t> extract_c_prefix(const std::vector<FamilyLetter>& q);

std::string format_family_word(const std::vector<FamilyLetter>& w);

}  // namespace nv
