#pragma once

// Elements of 2V as pairs of numbered patterns.
//
// Convention: products act on the right. compose(f, g) is "apply f, then g",
// so a word s1 s2 ... sk sends a point through s1 first.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nv/cantor.hpp"

namespace nv {

/// Rectangle `dom` is sent onto `ran` by prefix replacement.
struct RectPair {
  DyadicRect dom;
  DyadicRect ran;

  auto operator<=>(const RectPair&) const = default;
  bool operator==(const RectPair&) const = default;
};

/// Finite cylinder {u1 ζ} x {u2 ζ'} standing for a point of the square.
struct PrefixPoint {
  BinaryWord u1;
  BinaryWord u2;

  bool operator==(const PrefixPoint&) const = default;
};

class Element {
 public:
  /// The identity: one rectangle mapped to itself.
  Element();
  /// Takes the pairs in numbering order. Does not validate.
  explicit Element(std::vector<RectPair> pairs);

  /// Throws InvalidElement unless both sides are valid, realizable patterns.
  static Element validated(std::vector<RectPair> pairs);

  const std::vector<RectPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  Pattern domain_pattern() const;
  Pattern range_pattern() const;

  /// Every pair maps its rectangle to itself. Any representative of the
  /// identity map has this form, so the test is exact.
  bool is_identity() const noexcept;

  bool operator==(const Element&) const = default;

 private:
  std::vector<RectPair> pairs_;
};

Element identity();

/// Error message when the element is not a valid pair of numbered patterns.
std::optional<std::string> check_element(const std::vector<RectPair>& pairs);

PrefixPoint evaluate(const Element& g, const PrefixPoint& p);

/// Evaluates many points against one element without re-indexing.
class Evaluator {
 public:
  explicit Evaluator(const Element& g);
  PrefixPoint operator()(const PrefixPoint& p) const;

 private:
  const Element* g_;
  std::vector<DyadicRect> doms_;
  RectIndex index_;
};

/// f then g. The result is not reduced.
Element compose(const Element& f, const Element& g);
Element inverse(const Element& g);
/// Merges sibling pairs in lexicographic order until none applies.
Element reduce_pair(const Element& g);
/// reduce_pair(compose(f, g)).
Element multiply(const Element& f, const Element& g);
/// g^k for any integer k, by repeated squaring with reduction.
Element power(const Element& g, long long k);

/// The rectangle g^{-1}(r) when g^{-1} is a single prefix map on r.
std::optional<DyadicRect> preimage_rect(const Element& g, const DyadicRect& r);
/// Same, with a prebuilt index over the range rectangles of g.
std::optional<DyadicRect> preimage_rect(const Element& g, const RectIndex& range_index,
                                        const DyadicRect& r);

/// Rectangles at refinement depth `depth` on which g is not the identity.
/// A rectangle of that depth counts as moved unless g fixes it pointwise.
std::vector<DyadicRect> moved_rects(const Element& g, std::size_t depth);
/// True iff the rectangles moved by f and by g (at the given depth) are
/// disjoint. Disjoint supports imply f and g commute.
bool support_disjoint(const Element& f, const Element& g, std::size_t depth);

/// g is the identity on the rectangle r.
bool is_identity_on(const Element& g, const DyadicRect& r);

/// Exchanges the two coordinates of every rectangle: the conjugate of g by
/// the coordinate swap.
Element mirror(const Element& g);

/// `n=2 m=<count>` followed by one `d1,d2 -> r1,r2` line per pair.
std::string format_element(const Element& g);
Element parse_element(std::string_view text);

}  // namespace nv
