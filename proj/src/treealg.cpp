#include "nv/treealg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

#include "nv/error.hpp"

namespace nv {

ColoredTree::ColoredTree() : nodes_{Node{}} {}

std::size_t ColoredTree::carets() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.color != CaretColor::kLeaf; }));
}

std::size_t ColoredTree::depth() const noexcept {
  std::size_t best = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[n];
    if (node.color == CaretColor::kLeaf) {
      best = std::max(best, d);
    } else {
      stack.push_back({node.left, d + 1});
      stack.push_back({node.right, d + 1});
    }
  }
  return best;
}

std::pair<int, int> ColoredTree::attach(int node, CaretColor color) {
  if (node < 0 || node >= static_cast<int>(nodes_.size()) || nodes_[node].color != CaretColor::kLeaf ||
      color == CaretColor::kLeaf) {
    throw Error(ErrorCode::kInvalidArgument, "can only attach a colored caret to a leaf");
  }
  int l = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_.push_back(Node{});
  nodes_[node] = Node{color, l, l + 1};
  return {l, l + 1};
}

std::string ColoredTree::to_string() const {
  std::string out;
  std::function<void(int)> rec = [&](int n) {
    const Node& node = nodes_[n];
    if (node.color == CaretColor::kLeaf) {
      out.push_back('.');
      return;
    }
    out += node.color == CaretColor::kA ? "a(" : "b(";
    rec(node.left);
    rec(node.right);
    out.push_back(')');
  };
  rec(0);
  return out;
}

ColoredTree ColoredTree::parse(std::string_view text) {
  ColoredTree t;
  std::size_t pos = 0;
  std::function<void(int)> rec = [&](int n) {
    if (pos >= text.size()) throw Error(ErrorCode::kParseError, "tree string ends early");
    char c = text[pos];
    if (c == '.') {
      ++pos;
      return;
    }
    if ((c != 'a' && c != 'b') || pos + 1 >= text.size() || text[pos + 1] != '(') {
      throw Error(ErrorCode::kParseError, "unexpected character in tree string at " + std::to_string(pos));
    }
    pos += 2;
    auto [l, r] = t.attach(n, c == 'a' ? CaretColor::kA : CaretColor::kB);
    rec(l);
    rec(r);
    if (pos >= text.size() || text[pos] != ')') throw Error(ErrorCode::kParseError, "missing `)` in tree string");
    ++pos;
  };
  rec(0);
  if (pos != text.size()) throw Error(ErrorCode::kParseError, "trailing characters in tree string");
  return t;
}

std::vector<DyadicRect> tree_leaf_rects(const ColoredTree& t) {
  std::vector<DyadicRect> out;
  std::function<void(int, const DyadicRect&)> rec = [&](int n, const DyadicRect& r) {
    const auto& node = t.nodes()[n];
    if (node.color == CaretColor::kLeaf) {
      out.push_back(r);
      return;
    }
    Axis axis = node.color == CaretColor::kA ? Axis::kVertical : Axis::kHorizontal;
    rec(node.left, child(r, axis, '0'));
    rec(node.right, child(r, axis, '1'));
  };
  rec(0, DyadicRect{});
  return out;
}

Pattern tree_to_pattern(const ColoredTree& t) { return Pattern(tree_leaf_rects(t)); }

namespace {

// Builds the subtree for rectangle `r` covering `rects` (all inside r).
void split_into(ColoredTree& t, int node, const DyadicRect& r, std::vector<DyadicRect> rects) {
  if (rects.size() == 1 && rects.front() == r) return;
  for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
    auto i = static_cast<std::size_t>(axis);
    bool separates = std::all_of(rects.begin(), rects.end(),
                                 [&](const DyadicRect& s) { return s[i].size() > r[i].size(); });
    if (!separates) continue;
    std::vector<DyadicRect> lo, hi;
    for (auto& s : rects) (s[i][r[i].size()] == '0' ? lo : hi).push_back(std::move(s));
    if (lo.empty() || hi.empty()) break;
    auto [l, h] = t.attach(node, axis == Axis::kVertical ? CaretColor::kA : CaretColor::kB);
    split_into(t, l, child(r, axis, '0'), std::move(lo));
    split_into(t, h, child(r, axis, '1'), std::move(hi));
    return;
  }
  throw Error(ErrorCode::kNotRealizable, "no full splitting line inside " + format_rect(r));
}

}  // namespace

ColoredTree pattern_to_tree(const Pattern& p) {
  if (p.size() == 0) throw Error(ErrorCode::kNotRealizable, "empty pattern");
  ColoredTree t;
  split_into(t, 0, DyadicRect{}, p.rects());
  return t;
}

bool is_realizable(const Pattern& p) {
  try {
    (void)pattern_to_tree(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Element tree_pair_to_element(const TreePair& tp) {
  auto src = tree_leaf_rects(tp.source);
  auto tgt = tree_leaf_rects(tp.target);
  if (src.size() != tgt.size() || tp.perm.size() != src.size()) {
    throw Error(ErrorCode::kInvalidElement, "tree pair has mismatched leaf counts");
  }
  std::vector<bool> seen(tgt.size(), false);
  std::vector<RectPair> pairs;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (tp.perm[i] >= tgt.size() || seen[tp.perm[i]]) {
      throw Error(ErrorCode::kInvalidElement, "tree pair permutation is not a bijection");
    }
    seen[tp.perm[i]] = true;
    pairs.push_back({src[i], tgt[tp.perm[i]]});
  }
  return Element(std::move(pairs));
}

TreePair element_to_tree_pair(const Element& g) {
  TreePair tp;
  tp.source = pattern_to_tree(g.domain_pattern());
  tp.target = pattern_to_tree(g.range_pattern());
  auto src = tree_leaf_rects(tp.source);
  auto tgt = tree_leaf_rects(tp.target);
  std::map<DyadicRect, std::size_t> tgt_pos;
  for (std::size_t i = 0; i < tgt.size(); ++i) tgt_pos[tgt[i]] = i;
  std::map<DyadicRect, DyadicRect> image;
  for (const auto& p : g.pairs()) image[p.dom] = p.ran;
  for (const auto& s : src) tp.perm.push_back(tgt_pos.at(image.at(s)));
  return tp;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Memoized search over target rectangles: a rectangle may be a leaf of the
// target tree iff g^{-1} is a single prefix map on it.
class TargetSearch {
 public:
  explicit TargetSearch(const Element& g) : g_(g), rans_(), index_() {
    for (const auto& p : g.pairs()) rans_.push_back(p.ran);
    index_ = RectIndex(rans_);
  }

  const std::optional<DyadicRect>& preimage(const DyadicRect& r) {
    auto key = format_rect(r);
    auto it = good_.find(key);
    if (it == good_.end()) it = good_.emplace(key, preimage_rect(g_, index_, r)).first;
    return it->second;
  }

  bool feasible(const DyadicRect& r, std::size_t d) {
    if (preimage(r)) return true;
    if (d == 0) return false;
    auto key = format_rect(r) + "|" + std::to_string(d);
    if (auto it = feasible_.find(key); it != feasible_.end()) return it->second;
    bool ok = false;
    for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
      if (feasible(child(r, axis, '0'), d - 1) && feasible(child(r, axis, '1'), d - 1)) {
        ok = true;
        break;
      }
    }
    feasible_[key] = ok;
    return ok;
  }

  std::size_t carets(const DyadicRect& r, std::size_t d) {
    if (preimage(r)) return 0;
    if (d == 0) return kInf;
    auto key = format_rect(r) + "|" + std::to_string(d);
    if (auto it = carets_.find(key); it != carets_.end()) return it->second;
    std::size_t best = kInf;
    for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
      auto c0 = carets(child(r, axis, '0'), d - 1);
      if (c0 == kInf) continue;
      auto c1 = carets(child(r, axis, '1'), d - 1);
      if (c1 == kInf) continue;
      best = std::min(best, 1 + c0 + c1);
    }
    carets_[key] = best;
    return best;
  }

  void build(ColoredTree& t, int node, const DyadicRect& r, std::size_t d) {
    if (preimage(r)) return;
    std::size_t want = carets(r, d);
    for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
      auto c0 = carets(child(r, axis, '0'), d - 1);
      auto c1 = carets(child(r, axis, '1'), d - 1);
      if (c0 == kInf || c1 == kInf || 1 + c0 + c1 != want) continue;
      auto [l, h] = t.attach(node, axis == Axis::kVertical ? CaretColor::kA : CaretColor::kB);
      build(t, l, child(r, axis, '0'), d - 1);
      build(t, h, child(r, axis, '1'), d - 1);
      return;
    }
  }

 private:
  const Element& g_;
  std::vector<DyadicRect> rans_;
  RectIndex index_;
  std::unordered_map<std::string, std::optional<DyadicRect>> good_;
  std::unordered_map<std::string, bool> feasible_;
  std::unordered_map<std::string, std::size_t> carets_;
};

}  // namespace

std::size_t minimal_target_depth(const Element& g, std::size_t budget) {
  TargetSearch search(g);
  for (std::size_t d = 0; d <= budget; ++d) {
    if (search.feasible(DyadicRect{}, d)) return d;
  }
  throw Error(ErrorCode::kBudgetExceeded,
              "minimal target depth exceeds the budget " + std::to_string(budget));
}

TreePair minimal_pair(const Element& g, std::size_t budget) {
  TargetSearch search(g);
  std::size_t depth = kInf;
  for (std::size_t d = 0; d <= budget; ++d) {
    if (search.feasible(DyadicRect{}, d)) {
      depth = d;
      break;
    }
  }
  if (depth == kInf) {
    throw Error(ErrorCode::kBudgetExceeded,
                "minimal target depth exceeds the budget " + std::to_string(budget));
  }
  TreePair tp;
  search.build(tp.target, 0, DyadicRect{}, depth);
  auto tgt = tree_leaf_rects(tp.target);
  std::vector<DyadicRect> pre;
  for (const auto& r : tgt) pre.push_back(*search.preimage(r));
  tp.source = pattern_to_tree(Pattern(pre));
  auto src = tree_leaf_rects(tp.source);
  std::map<DyadicRect, std::size_t> tgt_of_pre;
  for (std::size_t i = 0; i < pre.size(); ++i) tgt_of_pre[pre[i]] = i;
  for (const auto& s : src) tp.perm.push_back(tgt_of_pre.at(s));
  return tp;
}

std::vector<FamilyLetter> vine_word(const ColoredTree& t) {
  // Work on a copy; nodes are rewired in place as letters are emitted.
  std::vector<ColoredTree::Node> nodes = t.nodes();
  std::vector<FamilyLetter> word;

  // Recolor b-carets on the right spine, top down.
  std::size_t depth = 0;
  for (int n = 0; nodes[n].color != CaretColor::kLeaf; n = nodes[n].right, ++depth) {
    if (nodes[n].color == CaretColor::kB) {
      word.push_back({"C", depth});
      nodes[n].color = CaretColor::kA;
    }
  }

  // Rotate left subtrees onto the spine.
  depth = 0;
  for (int n = 0; nodes[n].color != CaretColor::kLeaf; n = nodes[n].right, ++depth) {
    while (nodes[nodes[n].left].color != CaretColor::kLeaf) {
      int l = nodes[n].left;
      word.push_back({nodes[l].color == CaretColor::kA ? "A" : "B", depth});
      int ll = nodes[l].left, lr = nodes[l].right, rest = nodes[n].right;
      // Reuse node l as the new spine caret below n.
      nodes[l] = ColoredTree::Node{CaretColor::kA, lr, rest};
      nodes[n].left = ll;
      nodes[n].right = l;
    }
  }
  return word;
}

PPiQ decompose_ppiq(const TreePair& tp) {
  PPiQ out;
  out.p = vine_word(tp.source);
  out.q = vine_word(tp.target);
  std::size_t n = tp.perm.size();
  std::vector<std::size_t> token(n);
  for (std::size_t i = 0; i < n; ++i) token[i] = i;
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    for (std::size_t j = 0; j + 1 < n - pass; ++j) {
      if (tp.perm[token[j]] > tp.perm[token[j + 1]]) {
        std::swap(token[j], token[j + 1]);
        out.pi.push_back({j + 2 < n ? "pi" : "pib", j});
      }
    }
  }
  return out;
}

std::vector<std::size_t> extract_c_prefix(const std::vector<FamilyLetter>& q) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  for (; i < q.size() && q[i].base == "C"; ++i) {
    if (!out.empty() && q[i].index <= out.back()) {
      throw Error(ErrorCode::kMalformedWord, "C indices must increase strictly");
    }
    out.push_back(q[i].index);
  }
  for (; i < q.size(); ++i) {
    if (q[i].base == "C") throw Error(ErrorCode::kMalformedWord, "C letter after the C-prefix");
  }
  return out;
}

std::string format_family_word(const std::vector<FamilyLetter>& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out.push_back(' ');
    out += l.base + "_" + std::to_string(l.index);
  }
  return out;
}

}  // namespace nv
