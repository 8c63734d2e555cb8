#pragma once

// Word metric over X_2V: breadth-first search of the Cayley graph (right
// multiplication) with nodes deduplicated by canonical key.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nv/element.hpp"
#include "nv/genset.hpp"

namespace nv {

inline constexpr std::size_t kDefaultNodeCap = 5'000'000;
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// The 2|X| letters s and s^-1 in a fixed order (symbol order, + before -).
struct LetterSet {
  std::vector<Letter> letters;
  std::vector<Element> elements;

  static LetterSet of(const GeneratorTable& table);
};

struct BallNode {
  std::string key;
  std::size_t distance = 0;
  GroupWord witness;
  Element element;  // reduced grid representative
};

class BallTable {
 public:
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<BallNode>& nodes() const noexcept { return nodes_; }
  /// Node ids at exactly distance d, in discovery order.
  const std::vector<std::size_t>& sphere(std::size_t d) const;

  std::optional<std::size_t> find_key(const std::string& key) const;
  const BallNode* find(const Element& g) const;

 private:
  friend BallTable ball(std::size_t, const GeneratorTable&, std::size_t);
  std::size_t radius_ = 0;
  std::vector<BallNode> nodes_;
  std::vector<std::vector<std::size_t>> spheres_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Throws ResourceBudgetExceeded once more than node_cap nodes are found.
BallTable ball(std::size_t radius, const GeneratorTable& table, std::size_t node_cap = kDefaultNodeCap);

struct LengthCertificate {
  std::size_t lower = 0;
  std::size_t upper = kUnbounded;  // kUnbounded when no witness is known
  bool exact = false;
  std::optional<GroupWord> witness;
};

/// Exact when g lies in the ball; otherwise lower = max(radius + 1, grid
/// bound) and upper = length of known_witness if given.
LengthCertificate exact_length(const Element& g, const BallTable& ball_table,
                               const std::optional<GroupWord>& known_witness = std::nullopt);
LengthCertificate exact_length(const Element& g, std::size_t max_radius, const GeneratorTable& table);

/// A witness of exactly the distance. Throws NotWithinRadius.
GroupWord geodesic_word(const Element& g, const BallTable& ball_table);
GroupWord geodesic_word(const Element& g, std::size_t max_radius, const GeneratorTable& table);

}  // namespace nv
