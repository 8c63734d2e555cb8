#include "nv/metric.hpp"

#include <algorithm>
#include <thread>

#include "nv/error.hpp"
#include "nv/gridform.hpp"

namespace nv {

LetterSet LetterSet::of(const GeneratorTable& table) {
  table.require_complete();
  LetterSet out;
  for (const auto& def : table.generators()) {
    out.letters.push_back({def.symbol, 1});
    out.elements.push_back(def.element);
    out.letters.push_back({def.symbol, -1});
    out.elements.push_back(inverse(def.element));
  }
  return out;
}

const std::vector<std::size_t>& BallTable::sphere(std::size_t d) const {
  static const std::vector<std::size_t> empty;
  return d < spheres_.size() ? spheres_[d] : empty;
}

std::optional<std::size_t> BallTable::find_key(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const BallNode* BallTable::find(const Element& g) const {
  auto id = find_key(canonical_key(g));
  return id ? &nodes_[*id] : nullptr;
}

namespace {

struct Candidate {
  std::string key;
  Element element;
};

// Normal forms of every frontier node times every letter, computed in
// parallel; the result is laid out in (frontier, letter) order.
std::vector<Candidate> expand(const std::vector<BallNode>& nodes, const std::vector<std::size_t>& frontier,
                              const LetterSet& ls) {
  std::size_t per = ls.elements.size();
  std::vector<Candidate> out(frontier.size() * per);
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, frontier.size()));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < frontier.size(); i += workers) {
      const Element& g = nodes[frontier[i]].element;
      for (std::size_t j = 0; j < per; ++j) {
        GridDiagram nf = normal_form(compose(g, ls.elements[j]));
        out[i * per + j] = {format_element(nf.element), std::move(nf.element)};
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

BallTable ball(std::size_t radius, const GeneratorTable& table, std::size_t node_cap) {
  LetterSet ls = LetterSet::of(table);
  BallTable b;
  GridDiagram id = normal_form(Element());
  b.nodes_.push_back({format_element(id.element), 0, {}, id.element});
  b.index_.emplace(b.nodes_[0].key, 0);
  b.spheres_.push_back({0});
  for (std::size_t d = 1; d <= radius; ++d) {
    const auto frontier = b.spheres_[d - 1];
    auto cands = expand(b.nodes_, frontier, ls);
    std::vector<std::size_t> next;
    std::size_t per = ls.elements.size();
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (b.index_.count(cands[c].key)) continue;
      if (b.nodes_.size() >= node_cap) {
        throw Error(ErrorCode::kResourceBudgetExceeded,
                    "ball of radius " + std::to_string(radius) + " exceeds the node cap " + std::to_string(node_cap));
      }
      GroupWord w = b.nodes_[frontier[c / per]].witness;
      w.letters.push_back(ls.letters[c % per]);
      b.index_.emplace(cands[c].key, b.nodes_.size());
      next.push_back(b.nodes_.size());
      b.nodes_.push_back({std::move(cands[c].key), d, std::move(w), std::move(cands[c].element)});
    }
    b.spheres_.push_back(std::move(next));
    b.radius_ = d;
    if (b.spheres_.back().empty()) {
      b.radius_ = radius;
      break;
    }
  }
  b.radius_ = radius;
  return b;
}

LengthCertificate exact_length(const Element& g, const BallTable& ball_table,
                               const std::optional<GroupWord>& known_witness) {
  LengthCertificate c;
  if (const BallNode* n = ball_table.find(g)) {
    c.lower = c.upper = n->distance;
    c.exact = true;
    c.witness = n->witness;
    return c;
  }
  c.lower = std::max(ball_table.radius() + 1, length_lower_bound(g));
  if (known_witness) {
    c.upper = known_witness->length();
    c.witness = known_witness;
    if (c.upper < c.lower) {
      throw Error(ErrorCode::kInvalidArgument, "witness word does not represent the element");
    }
    c.exact = c.upper == c.lower;
  }
  return c;
}

LengthCertificate exact_length(const Element& g, std::size_t max_radius, const GeneratorTable& table) {
  return exact_length(g, ball(max_radius, table));
}

GroupWord geodesic_word(const Element& g, const BallTable& ball_table) {
  const BallNode* n = ball_table.find(g);
  if (!n) {
    throw Error(ErrorCode::kNotWithinRadius,
                "element is not within radius " + std::to_string(ball_table.radius()));
  }
  return n->witness;
}

GroupWord geodesic_word(const Element& g, std::size_t max_radius, const GeneratorTable& table) {
  return geodesic_word(g, ball(max_radius, table));
}

}  // namespace nv
