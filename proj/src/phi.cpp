#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <unordered_map>

#include "nv/divergence.hpp"
#include "nv/error.hpp"
#include "nv/gridform.hpp"

namespace nv {

namespace {

constexpr std::size_t kWitnessAttempts = 4;
constexpr std::size_t kMaxSearchLength = 32;

struct PairValue {
  std::size_t a = 0, b = 0;  // node ids of the ball table
  std::size_t value = 0;
};

// Part of the Cayley graph discovered so far. A node keeps its element only
// once it has been expanded; otherwise the element is rebuilt from the node
// that discovered it.
class CayleyCache {
 public:
  CayleyCache(const LetterSet& letters, std::size_t node_cap) : letters_(letters), cap_(node_cap) {}

  std::uint32_t id_of(const Element& g) {
    GridDiagram nf = normal_form(g);
    auto id = insert(format_element(nf.element), kNone, 0);
    if (!nodes_[id].element) nodes_[id].element = std::make_unique<Element>(std::move(nf.element));
    return id;
  }

  std::optional<std::uint32_t> find(const std::string& key) const {
    auto it = ids_.find(key);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<std::uint32_t>& neighbors(std::uint32_t id) {
    if (!nodes_[id].expanded) {
      Element g = element(id);
      std::vector<std::uint32_t> out;
      out.reserve(letters_.elements.size());
      for (std::size_t j = 0; j < letters_.elements.size(); ++j) {
        GridDiagram nf = normal_form(compose(g, letters_.elements[j]));
        out.push_back(insert(format_element(nf.element), id, static_cast<std::uint32_t>(j)));
      }
      nodes_[id].nbrs = std::move(out);
      nodes_[id].expanded = true;
      if (!nodes_[id].element) nodes_[id].element = std::make_unique<Element>(std::move(g));
    }
    return nodes_[id].nbrs;
  }

 private:
  static constexpr std::uint32_t kNone = ~0U;

  struct Node {
    std::uint32_t parent = kNone;
    std::uint32_t letter = 0;
    bool expanded = false;
    std::unique_ptr<Element> element;
    std::vector<std::uint32_t> nbrs;
  };

  std::uint32_t insert(std::string key, std::uint32_t parent, std::uint32_t letter) {
    auto [it, fresh] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(nodes_.size()));
    if (fresh) {
      if (nodes_.size() >= cap_) {
        throw Error(ErrorCode::kResourceBudgetExceeded,
                    "avoiding search exceeds the node cap " + std::to_string(cap_));
      }
      nodes_.push_back({parent, letter, false, nullptr, {}});
    }
    return it->second;
  }

  Element element(std::uint32_t id) {
    if (nodes_[id].element) return *nodes_[id].element;
    const Node& n = nodes_[id];
    return normal_form(compose(element(n.parent), letters_.elements[n.letter])).element;
  }

  const LetterSet& letters_;
  std::size_t cap_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Node> nodes_;
};

std::optional<std::size_t> search(CayleyCache& cache, std::uint32_t a, std::uint32_t b,
                                  const std::unordered_set<std::uint32_t>& excluded, std::size_t max_len) {
  if (excluded.count(a) || excluded.count(b)) return std::nullopt;
  if (a == b) return 0;
  struct Side {
    std::unordered_map<std::uint32_t, std::size_t> dist;
    std::vector<std::uint32_t> frontier;
    std::size_t radius = 0;
  } sides[2];
  sides[0].dist.emplace(a, 0);
  sides[0].frontier.push_back(a);
  sides[1].dist.emplace(b, 0);
  sides[1].frontier.push_back(b);
  while (sides[0].radius + sides[1].radius < max_len) {
    int i = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    auto& me = sides[i];
    const auto& other = sides[1 - i];
    if (me.frontier.empty()) return std::nullopt;
    std::vector<std::uint32_t> next;
    std::optional<std::size_t> best;
    for (auto v : me.frontier) {
      for (auto w : cache.neighbors(v)) {
        if (excluded.count(w) || me.dist.count(w)) continue;
        if (auto it = other.dist.find(w); it != other.dist.end()) {
          std::size_t len = me.radius + 1 + it->second;
          if (!best || len < *best) best = len;
        }
        me.dist.emplace(w, me.radius + 1);
        next.push_back(w);
      }
    }
    me.frontier = std::move(next);
    ++me.radius;
    if (best) return *best <= max_len ? best : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> avoiding_distance(const Element& g1, const Element& g2,
                                             const std::unordered_set<std::string>& excluded, std::size_t max_len,
                                             const LetterSet& letters, std::size_t node_cap) {
  CayleyCache cache(letters, node_cap);
  auto a = cache.id_of(g1), b = cache.id_of(g2);
  std::unordered_set<std::uint32_t> ex;
  for (const auto& key : excluded) ex.insert(cache.id_of(parse_element(key)));
  return search(cache, a, b, ex, max_len);
}

namespace {

// Points of the square cut to 128 digits per coordinate, left aligned. A print
// hashes the leading digits of the images of a fixed set of points. Equal
// elements have equal prints; every print match is confirmed exactly.
using Bits = unsigned __int128;
constexpr unsigned kBits = 128;
constexpr unsigned kPrintBits = 64;
constexpr std::size_t kPointDepth = 192;
constexpr std::size_t kCornerRuns = 12;
constexpr std::size_t kRandomPoints = 4;

struct BitWord {
  Bits bits = 0;
  unsigned len = 0;
};

struct BitPoint {
  Bits w[2];
  unsigned valid[2];
};

using Images = std::vector<BitPoint>;

BitWord to_bits(const BinaryWord& s) {
  if (s.size() > kPrintBits) throw Error(ErrorCode::kResourceBudgetExceeded, "letter rectangle too deep for prints");
  BitWord b;
  for (char c : s) {
    b.bits |= static_cast<Bits>(c == '1') << (kBits - 1 - b.len);
    ++b.len;
  }
  return b;
}

struct LetterMap {
  // dom1, dom2, ran1, ran2 per pair
  std::vector<std::array<BitWord, 4>> pairs;
};

bool starts_with(Bits x, const BitWord& d) {
  if (d.len == 0) return true;
  Bits mask = ~static_cast<Bits>(0) << (kBits - d.len);
  return (x & mask) == d.bits;
}

void replace(BitPoint& p, int i, const BitWord& dom, const BitWord& ran) {
  Bits tail = dom.len ? p.w[i] << dom.len : p.w[i];
  p.w[i] = ran.bits | (ran.len ? tail >> ran.len : tail);
  p.valid[i] = std::min(kBits, p.valid[i] - dom.len + ran.len);
  if (p.valid[i] < kPrintBits) throw Error(ErrorCode::kPrefixTooShort, "print point is not deep enough");
}

void push(const LetterMap& s, const Images& in, Images& out) {
  out.resize(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    const BitPoint& p = in[k];
    bool hit = false;
    for (const auto& pr : s.pairs) {
      if (starts_with(p.w[0], pr[0]) && starts_with(p.w[1], pr[1])) {
        out[k] = p;
        replace(out[k], 0, pr[0], pr[2]);
        replace(out[k], 1, pr[1], pr[3]);
        hit = true;
        break;
      }
    }
    if (!hit) throw Error(ErrorCode::kInvalidElement, "letter domains do not cover a print point");
  }
}

std::uint64_t print_of(const Images& im) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  };
  for (const auto& p : im) {
    mix(static_cast<std::uint64_t>(p.w[0] >> kPrintBits));
    mix(static_cast<std::uint64_t>(p.w[1] >> kPrintBits));
  }
  return h;
}

// Corner points (a run of one digit then the other, in either coordinate)
// tell apart elements that differ only near the edges; a few are random.
const std::vector<PrefixPoint>& print_base() {
  static const std::vector<PrefixPoint> base = [] {
    std::mt19937_64 rng(0x5eed);
    auto random = [&](std::size_t n) {
      std::string s;
      for (std::size_t j = 0; j < n; ++j) s.push_back((rng() & 1) ? '1' : '0');
      return s;
    };
    std::vector<PrefixPoint> out;
    for (std::size_t k = 0; k < kCornerRuns; ++k) {
      for (char c : {'0', '1'}) {
        std::string run(k, c);
        run.push_back(c == '0' ? '1' : '0');
        out.push_back({run + random(kPointDepth - run.size()), random(kPointDepth)});
        out.push_back({random(kPointDepth), run + random(kPointDepth - run.size())});
      }
    }
    for (std::size_t k = 0; k < kRandomPoints; ++k) out.push_back({random(kPointDepth), random(kPointDepth)});
    return out;
  }();
  return base;
}

BitPoint to_point(const PrefixPoint& p) {
  BitPoint b{};
  for (int i = 0; i < 2; ++i) {
    const auto& s = i == 0 ? p.u1 : p.u2;
    for (unsigned j = 0; j < kBits && j < s.size(); ++j) b.w[i] |= static_cast<Bits>(s[j] == '1') << (kBits - 1 - j);
    b.valid[i] = static_cast<unsigned>(std::min<std::size_t>(kBits, s.size()));
    if (b.valid[i] < kPrintBits) throw Error(ErrorCode::kPrefixTooShort, "print point is not deep enough");
  }
  return b;
}

// Images of the base points under an arbitrary element, through full words.
Images images_of(const Element& g) {
  Images out;
  for (const auto& p : print_base()) {
    bool done = false;
    for (const auto& pr : g.pairs()) {
      if (is_prefix(pr.dom[0], p.u1) && is_prefix(pr.dom[1], p.u2)) {
        out.push_back(to_point({pr.ran[0] + p.u1.substr(pr.dom[0].size()),
                                pr.ran[1] + p.u2.substr(pr.dom[1].size())}));
        done = true;
        break;
      }
    }
    if (!done) throw Error(ErrorCode::kPrefixTooShort, "print point is not deep enough");
  }
  return out;
}

// Spheres of the ball of radius r around g in the graph without `excluded`.
std::vector<std::vector<Element>> avoiding_ball(const Element& g, const std::unordered_set<std::string>& excluded,
                                                std::size_t r, const LetterSet& letters, std::size_t node_cap) {
  GridDiagram start = normal_form(g);
  std::unordered_set<std::string> seen{format_element(start.element)};
  std::vector<std::vector<Element>> spheres{{start.element}};
  for (std::size_t d = 1; d <= r; ++d) {
    std::vector<Element> next;
    for (const auto& v : spheres.back()) {
      for (const auto& s : letters.elements) {
        GridDiagram nf = normal_form(compose(v, s));
        auto key = format_element(nf.element);
        if (excluded.count(key) || !seen.insert(std::move(key)).second) continue;
        if (seen.size() > node_cap) {
          throw Error(ErrorCode::kResourceBudgetExceeded, "avoiding ball exceeds the node cap");
        }
        next.push_back(std::move(nf.element));
      }
    }
    spheres.push_back(std::move(next));
  }
  return spheres;
}

}  // namespace

bool avoiding_gap(const Element& g1, const Element& g2, const std::unordered_set<std::string>& excluded,
                  std::size_t max_len, const LetterSet& letters, std::size_t node_cap) {
  if (excluded.count(canonical_key(g1)) || excluded.count(canonical_key(g2))) return true;
  // A path of length <= max_len passes a vertex within a of g1 and b of g2.
  std::size_t b = max_len / 2, a = max_len - b;
  std::size_t b_exact = b == 0 ? 0 : b - 1;
  std::size_t a_exact = std::min<std::size_t>(a, 3);
  const std::size_t nl = letters.elements.size();
  std::vector<LetterMap> maps(nl);
  for (std::size_t j = 0; j < nl; ++j) {
    for (const auto& pr : letters.elements[j].pairs()) {
      maps[j].pairs.push_back({to_bits(pr.dom[0]), to_bits(pr.dom[1]), to_bits(pr.ran[0]), to_bits(pr.ran[1])});
    }
  }

  std::unordered_set<std::uint64_t> excluded_prints;
  for (const auto& key : excluded) excluded_prints.insert(print_of(images_of(parse_element(key))));
  auto is_excluded = [&](std::uint64_t pr, const Element& g) {
    return excluded_prints.count(pr) && excluded.count(canonical_key(g));
  };

  // Near side: exact ball around g2, then prints of one more layer. Each
  // print keeps its origin, node * (nl + 1) + letter + 1, to confirm matches.
  auto side2 = avoiding_ball(g2, excluded, b_exact, letters, node_cap);
  std::vector<const Element*> near_nodes;
  for (const auto& sphere : side2) {
    for (const auto& v : sphere) near_nodes.push_back(&v);
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> near;
  Images next;
  const std::size_t outer = near_nodes.size() - side2.back().size();
  for (std::size_t i = 0; i < near_nodes.size(); ++i) {
    Images im = images_of(*near_nodes[i]);
    near.emplace_back(print_of(im), i * (nl + 1));
    if (b == b_exact || i < outer) continue;
    for (std::size_t j = 0; j < nl; ++j) {
      push(maps[j], im, next);
      auto pr = print_of(next);
      if (is_excluded(pr, compose(*near_nodes[i], letters.elements[j]))) continue;
      near.emplace_back(pr, i * (nl + 1) + j + 1);
    }
  }
  std::sort(near.begin(), near.end());
  auto element_of = [&](std::uint64_t origin) {
    const Element& v = *near_nodes[origin / (nl + 1)];
    auto j = origin % (nl + 1);
    return j == 0 ? v : compose(v, letters.elements[j - 1]);
  };
  // Whether g, with print pr, lies on the near side.
  auto meets = [&](std::uint64_t pr, const std::function<Element()>& g) {
    auto [lo, hi] = std::equal_range(near.begin(), near.end(), std::make_pair(pr, std::uint64_t{0}),
                                     [](const auto& x, const auto& y) { return x.first < y.first; });
    if (lo == hi) return false;
    auto key = canonical_key(g());
    for (auto it = lo; it != hi; ++it) {
      if (canonical_key(element_of(it->second)) == key) return true;
    }
    return false;
  };

  auto side1 = avoiding_ball(g1, excluded, a_exact, letters, node_cap);
  std::vector<Images> starts;
  for (const auto& sphere : side1) {
    for (const auto& v : sphere) {
      Images im = images_of(v);
      if (meets(print_of(im), [&] { return v; })) return false;
      if (&sphere == &side1.back()) starts.push_back(std::move(im));
    }
  }
  // Walks of the remaining length out of the outer exact sphere.
  std::size_t extra = a - a_exact;
  if (extra == 0) return true;
  std::vector<Images> level(extra + 1);
  std::vector<std::size_t> trail;
  const Element* from = nullptr;
  auto walk_element = [&] {
    Element g = *from;
    for (auto t : trail) g = compose(g, letters.elements[t]);
    return g;
  };
  std::function<bool(std::size_t)> walk = [&](std::size_t depth) {
    for (std::size_t j = 0; j < nl; ++j) {
      push(maps[j], level[depth], level[depth + 1]);
      auto pr = print_of(level[depth + 1]);
      trail.push_back(j);
      bool blocked = excluded_prints.count(pr) && excluded.count(canonical_key(walk_element()));
      bool found = !blocked && (meets(pr, walk_element) || (depth + 1 < extra && walk(depth + 1)));
      trail.pop_back();
      if (found) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < starts.size(); ++i) {
    from = &side1.back()[i];
    level[0] = std::move(starts[i]);
    if (walk(0)) return false;
  }
  return true;
}

namespace {

std::unordered_set<std::string> excluded_keys(std::size_t x, Rational delta, const BallTable& b) {
  // Open ball of radius delta x: distances d with d < delta x.
  std::unordered_set<std::string> out;
  for (std::size_t d = 0; d <= b.radius(); ++d) {
    if (static_cast<long long>(d) * delta.den >= delta.num * static_cast<long long>(x)) break;
    if (d == b.radius()) throw Error(ErrorCode::kResourceBudgetExceeded, "excluded ball exceeds the table radius");
    for (auto id : b.sphere(d)) out.insert(b.nodes()[id].key);
  }
  return out;
}

std::vector<PairValue> all_pairs(std::size_t x, const std::unordered_set<std::uint32_t>& excluded,
                                 const BallTable& b, CayleyCache& cache) {
  const auto& sphere = b.sphere(x);
  std::vector<std::uint32_t> ids;
  for (auto s : sphere) ids.push_back(cache.id_of(b.nodes()[s].element));
  std::vector<PairValue> out;
  for (std::size_t i = 0; i < sphere.size(); ++i) {
    for (std::size_t j = i + 1; j < sphere.size(); ++j) {
      auto d = search(cache, ids[i], ids[j], excluded, kMaxSearchLength);
      if (!d) {
        throw Error(ErrorCode::kResourceBudgetExceeded,
                    "no avoiding path of length at most " + std::to_string(kMaxSearchLength));
      }
      out.push_back({sphere[i], sphere[j], *d});
    }
  }
  return out;
}

}  // namespace

DivergenceValue empirical_divergence(std::size_t x, Rational delta, const BallTable& ball_table,
                                     const GeneratorTable& table, std::size_t node_cap) {
  if (x == 0) throw Error(ErrorCode::kInvalidArgument, "x must be positive");
  if (delta.num <= 0 || delta.den <= 0 || delta.num >= delta.den) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (ball_table.radius() < x) {
    throw Error(ErrorCode::kResourceBudgetExceeded, "ball radius " + std::to_string(ball_table.radius()) +
                                                        " is below x = " + std::to_string(x));
  }
  LetterSet letters = LetterSet::of(table);
  CayleyCache cache(letters, node_cap);
  std::unordered_set<std::uint32_t> excluded;
  for (const auto& key : excluded_keys(x, delta, ball_table)) {
    excluded.insert(cache.id_of(ball_table.nodes()[*ball_table.find_key(key)].element));
  }
  const auto& nodes = ball_table.nodes();
  DivergenceValue v;
  v.x = x;
  bool only_identity = excluded.size() == 1;
  if (x == 1 || !only_identity) {
    auto pairs = all_pairs(x, excluded, ball_table, cache);
    v.pairs = pairs.size();
    v.method = "exhaustive";
    v.exact = true;
    for (const auto& p : pairs) {
      if (p.value > v.lower) {
        v.lower = v.upper = p.value;
        v.witness_g1 = format_word(nodes[p.a].witness);
        v.witness_g2 = format_word(nodes[p.b].witness);
      }
    }
    return v;
  }

  // Each end of a pair on the sphere of radius y steps in to the sphere of
  // radius y - 1, so phi(y) <= phi(y - 1) + 2. At y = 2 the bound is taken
  // per pair from the exact unit values, and the pairs it leaves above the
  // best value found are certified one by one; that makes phi(2) exact.
  auto unit = all_pairs(1, excluded, ball_table, cache);
  auto ex_keys = excluded_keys(x, delta, ball_table);
  std::unordered_map<std::uint64_t, std::size_t> unit_value;
  auto pair_key = [&](std::size_t a, std::size_t b) {
    return static_cast<std::uint64_t>(std::min(a, b)) * nodes.size() + std::max(a, b);
  };
  std::size_t L = 0;
  for (const auto& p : unit) {
    unit_value[pair_key(p.a, p.b)] = p.value;
    L = std::max(L, p.value);
  }
  auto unit_of = [&](std::size_t a, std::size_t b) { return a == b ? 0 : unit_value.at(pair_key(a, b)); };

  // Value of a pair when it exceeds `floor`, else nullopt.
  auto value_above = [&](std::size_t a, std::size_t b, std::size_t floor,
                         std::size_t bound) -> std::optional<std::size_t> {
    const Element& g1 = nodes[a].element;
    const Element& g2 = nodes[b].element;
    if (!avoiding_gap(g1, g2, ex_keys, floor, letters, node_cap)) return std::nullopt;
    for (std::size_t len = floor + 1; len < bound; ++len) {
      if (!avoiding_gap(g1, g2, ex_keys, len, letters, node_cap)) return len;
    }
    return bound;
  };

  // Candidates: extend a pair realising phi(1) outward along its letters.
  auto candidates = [&](std::size_t y) {
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    auto extend = [&](std::size_t id) -> std::vector<std::size_t> {
      // Sphere-y nodes whose geodesic starts with the letter of node id.
      std::vector<std::size_t> out;
      const Letter& first = nodes[id].witness.letters.front();
      GroupWord straight;
      for (std::size_t k = 0; k < y; ++k) straight.letters.push_back(first);
      if (const BallNode* n = ball_table.find(word_to_element(straight, table)); n && n->distance == y) {
        out.push_back(static_cast<std::size_t>(n - nodes.data()));
      }
      for (auto s : ball_table.sphere(y)) {
        if (nodes[s].witness.letters.front() == first && (out.empty() || out.front() != s)) out.push_back(s);
        if (out.size() >= kWitnessAttempts) break;
      }
      return out;
    };
    for (const auto& p : unit) {
      if (p.value != L) continue;
      auto as = extend(p.a), bs = extend(p.b);
      for (std::size_t k = 0; k < std::min(as.size(), bs.size()); ++k) cands.emplace_back(as[k], bs[k]);
      if (cands.size() >= kWitnessAttempts) break;
    }
    if (cands.size() > kWitnessAttempts) cands.resize(kWitnessAttempts);
    return cands;
  };

  // phi(2): per-pair bounds through the unit sphere.
  const auto& s2 = ball_table.sphere(2);
  std::vector<std::vector<std::size_t>> pred(s2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) {
    for (const auto& s : letters.elements) {
      const BallNode* n = ball_table.find(multiply(nodes[s2[i]].element, s));
      if (n && n->distance == 1) pred[i].push_back(static_cast<std::size_t>(n - nodes.data()));
    }
    std::sort(pred[i].begin(), pred[i].end());
    pred[i].erase(std::unique(pred[i].begin(), pred[i].end()), pred[i].end());
  }
  struct Open {
    std::size_t i, j, bound;
  };
  std::vector<Open> open;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    for (std::size_t j = i + 1; j < s2.size(); ++j) {
      std::size_t bound = kMaxSearchLength;
      for (auto a : pred[i]) {
        for (auto b : pred[j]) bound = std::min(bound, unit_of(a, b) + 2);
      }
      open.push_back({i, j, bound});
    }
  }
  std::size_t phi2 = 0;
  std::pair<std::size_t, std::size_t> witness2{s2[0], s2[0]};
  for (auto [a, b] : candidates(2)) {
    std::size_t bound = L + 2;
    if (auto val = value_above(a, b, phi2, bound); val && *val > phi2) {
      phi2 = *val;
      witness2 = {a, b};
    }
  }
  std::sort(open.begin(), open.end(), [](const Open& p, const Open& q) { return p.bound > q.bound; });
  std::size_t certified = 0;
  for (const auto& o : open) {
    if (o.bound <= phi2) break;
    ++certified;
    if (auto val = value_above(s2[o.i], s2[o.j], phi2, o.bound)) {
      phi2 = *val;
      witness2 = {s2[o.i], s2[o.j]};
    }
  }
  v.method = "pairwise-bound";
  v.pairs = open.size();
  v.certified = certified;
  if (x == 2) {
    v.lower = v.upper = phi2;
    v.witness_g1 = format_word(nodes[witness2.first].witness);
    v.witness_g2 = format_word(nodes[witness2.second].witness);
    v.exact = true;
    return v;
  }

  // Larger x: the chain bound, with candidates grown from the previous
  // witness. At y = 3 a candidate is kept only when every pair of its
  // predecessors has the largest bound at y = 2.
  std::vector<std::size_t> index2(nodes.size(), s2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) index2[s2[i]] = i;
  auto bound2 = [&](std::size_t u, std::size_t w) {
    std::size_t bound = kMaxSearchLength;
    for (auto a : pred[index2[u]]) {
      for (auto b : pred[index2[w]]) bound = std::min(bound, unit_of(a, b) + 2);
    }
    return bound;
  };
  auto neighbours_at = [&](std::size_t id, std::size_t d) {
    std::vector<std::size_t> out;
    for (const auto& s : letters.elements) {
      const BallNode* n = ball_table.find(multiply(nodes[id].element, s));
      if (n && n->distance == d) out.push_back(static_cast<std::size_t>(n - nodes.data()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::size_t upper = phi2;
  auto wit = witness2;
  bool exact = true;
  for (std::size_t y = 3; y <= x; ++y) {
    upper += 2;
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    auto outs1 = neighbours_at(wit.first, y), outs2 = neighbours_at(wit.second, y);
    for (auto c1 : outs1) {
      auto p1 = neighbours_at(c1, y - 1);
      for (auto c2 : outs2) {
        if (c1 == c2 || cands.size() >= kWitnessAttempts) continue;
        bool keep = true;
        if (y == 3) {
          for (auto a : p1) {
            for (auto b : neighbours_at(c2, y - 1)) keep = keep && a != b && bound2(a, b) == phi2;
          }
        }
        if (keep) cands.emplace_back(c1, c2);
      }
    }
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (auto [a, b] : cands) {
      ++v.certified;
      if (value_above(a, b, upper - 1, upper)) {
        found = std::make_pair(a, b);
        break;
      }
    }
    if (found) {
      wit = *found;
      continue;
    }
    exact = false;
    if (!cands.empty()) wit = cands.front();
  }
  v.method = "bound+witness";
  v.upper = upper;
  v.witness_g1 = format_word(nodes[wit.first].witness);
  v.witness_g2 = format_word(nodes[wit.second].witness);
  if (exact) {
    v.lower = upper;
  } else {
    // Largest length the last candidate is certified to need.
    for (std::size_t len = upper - 1; len-- > 0;) {
      if (avoiding_gap(nodes[wit.first].element, nodes[wit.second].element, ex_keys, len, letters, node_cap)) {
        v.lower = len + 1;
        break;
      }
    }
  }
  v.exact = v.lower == v.upper;
  return v;
}

}  // namespace nv
