#include "nv/element.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "nv/error.hpp"
#include "nv/treealg.hpp"

namespace nv {

namespace {

std::vector<DyadicRect> doms_of(const Element& g) {
  std::vector<DyadicRect> out;
  out.reserve(g.size());
  for (const auto& pr : g.pairs()) out.push_back(pr.dom);
  return out;
}

std::vector<DyadicRect> rans_of(const Element& g) {
  std::vector<DyadicRect> out;
  out.reserve(g.size());
  for (const auto& pr : g.pairs()) out.push_back(pr.ran);
  return out;
}

// Image under the prefix map from -> to of a rectangle inside `from`.
DyadicRect transport(const DyadicRect& inside, const DyadicRect& from, const DyadicRect& to) {
  DyadicRect out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = to[i] + inside[i].substr(from[i].size());
  return out;
}

}  // namespace

Element::Element() : pairs_{RectPair{DyadicRect{}, DyadicRect{}}} {}

Element::Element(std::vector<RectPair> pairs) : pairs_(std::move(pairs)) {}

Element Element::validated(std::vector<RectPair> pairs) {
  if (auto err = check_element(pairs)) throw Error(ErrorCode::kInvalidElement, *err);
  return Element(std::move(pairs));
}

Pattern Element::domain_pattern() const { return Pattern(doms_of(*this)); }
Pattern Element::range_pattern() const { return Pattern(rans_of(*this)); }

bool Element::is_identity() const noexcept {
  return std::all_of(pairs_.begin(), pairs_.end(), [](const RectPair& p) { return p.dom == p.ran; });
}

Element identity() { return Element(); }

std::optional<std::string> check_element(const std::vector<RectPair>& pairs) {
  if (pairs.empty()) return "element has no rectangles";
  std::vector<DyadicRect> doms, rans;
  for (const auto& p : pairs) {
    doms.push_back(p.dom);
    rans.push_back(p.ran);
  }
  if (auto rep = validate_partition(doms); !rep.ok) return "domain pattern: " + rep.message;
  if (auto rep = validate_partition(rans); !rep.ok) return "range pattern: " + rep.message;
  if (!is_realizable(Pattern(doms))) return "domain pattern is not realizable";
  if (!is_realizable(Pattern(rans))) return "range pattern is not realizable";
  return std::nullopt;
}

Evaluator::Evaluator(const Element& g) : g_(&g), doms_(doms_of(g)), index_(doms_) {}

PrefixPoint Evaluator::operator()(const PrefixPoint& p) const {
  auto hit = index_.containing(DyadicRect(p.u1, p.u2));
  if (!hit) {
    throw Error(ErrorCode::kPrefixTooShort,
                "point " + format_rect(DyadicRect(p.u1, p.u2)) + " is not inside a domain rectangle");
  }
  const auto& pr = g_->pairs()[*hit];
  auto img = transport(DyadicRect(p.u1, p.u2), pr.dom, pr.ran);
  return {img[0], img[1]};
}

PrefixPoint evaluate(const Element& g, const PrefixPoint& p) { return Evaluator(g)(p); }

Element compose(const Element& f, const Element& g) {
  auto gdoms = doms_of(g);
  RectIndex index(gdoms);
  std::vector<RectPair> out;
  out.reserve(f.size() + g.size());
  for (const auto& fp : f.pairs()) {
    for (auto j : index.overlapping(fp.ran)) {
      const auto& gp = g.pairs()[j];
      DyadicRect mid = intersection(fp.ran, gp.dom);
      out.push_back({transport(mid, fp.ran, fp.dom), transport(mid, gp.dom, gp.ran)});
    }
  }
  std::sort(out.begin(), out.end());
  return Element(std::move(out));
}

Element inverse(const Element& g) {
  std::vector<RectPair> out;
  out.reserve(g.size());
  for (const auto& p : g.pairs()) out.push_back({p.ran, p.dom});
  return Element(std::move(out));
}

Element reduce_pair(const Element& g) {
  std::map<DyadicRect, DyadicRect> map;
  for (const auto& p : g.pairs()) map.emplace(p.dom, p.ran);
  std::set<DyadicRect> work;
  for (const auto& [d, r] : map) work.insert(d);
  while (!work.empty()) {
    DyadicRect d = *work.begin();
    work.erase(work.begin());
    auto it = map.find(d);
    if (it == map.end()) continue;
    for (Axis axis : {Axis::kVertical, Axis::kHorizontal}) {
      auto i = static_cast<std::size_t>(axis);
      const DyadicRect& r = it->second;
      if (d[i].empty() || r[i].empty() || d[i].back() != r[i].back()) continue;
      DyadicRect ds = d, rs = r;
      ds[i].back() = d[i].back() == '0' ? '1' : '0';
      rs[i].back() = ds[i].back();
      auto sib = map.find(ds);
      if (sib == map.end() || sib->second != rs) continue;
      DyadicRect dp = *parent(d, axis), rp = *parent(r, axis);
      map.erase(sib);
      map.erase(it);
      work.erase(ds);
      map.emplace(dp, rp);
      work.insert(dp);
      break;
    }
  }
  std::vector<RectPair> out;
  out.reserve(map.size());
  for (auto& [d, r] : map) out.push_back({d, r});
  return Element(std::move(out));
}

Element multiply(const Element& f, const Element& g) { return reduce_pair(compose(f, g)); }

Element power(const Element& g, long long k) {
  Element base = k < 0 ? inverse(g) : g;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Element acc;
  while (e) {
    if (e & 1ULL) acc = multiply(acc, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return acc;
}

std::optional<DyadicRect> preimage_rect(const Element& g, const RectIndex& range_index,
                                        const DyadicRect& r) {
  auto hits = range_index.overlapping(r);
  if (hits.empty()) return std::nullopt;
  std::optional<DyadicRect> pre;
  for (auto j : hits) {
    const auto& p = g.pairs()[j];
    DyadicRect mid = intersection(p.ran, r);
    DyadicRect mid_pre = transport(mid, p.ran, p.dom);
    // The suffix of `mid` past r must also end mid_pre.
    DyadicRect cand;
    for (std::size_t i = 0; i < kDim; ++i) {
      std::size_t tail = mid[i].size() - r[i].size();
      if (mid_pre[i].size() < tail ||
          mid_pre[i].compare(mid_pre[i].size() - tail, tail, mid[i], r[i].size(), tail) != 0) {
        return std::nullopt;
      }
      cand[i] = mid_pre[i].substr(0, mid_pre[i].size() - tail);
    }
    if (!pre) {
      pre = std::move(cand);
    } else if (*pre != cand) {
      return std::nullopt;
    }
  }
  return pre;
}

std::optional<DyadicRect> preimage_rect(const Element& g, const DyadicRect& r) {
  auto rans = rans_of(g);
  RectIndex index(rans);
  return preimage_rect(g, index, r);
}

std::vector<DyadicRect> moved_rects(const Element& g, std::size_t /*depth*/) {
  std::vector<DyadicRect> out;
  Element r = reduce_pair(g);
  for (const auto& p : r.pairs()) {
    if (p.dom != p.ran) out.push_back(p.dom);
  }
  return out;
}

bool support_disjoint(const Element& f, const Element& g, std::size_t depth) {
  auto mf = moved_rects(f, depth);
  auto mg = moved_rects(g, depth);
  RectIndex index(mg);
  for (const auto& r : mf) {
    if (!index.overlapping(r).empty()) return false;
  }
  return true;
}

bool is_identity_on(const Element& g, const DyadicRect& r) {
  auto doms = doms_of(g);
  RectIndex index(doms);
  for (auto j : index.overlapping(r)) {
    if (g.pairs()[j].dom != g.pairs()[j].ran) return false;
  }
  return true;
}

Element mirror(const Element& g) {
  std::vector<RectPair> out;
  out.reserve(g.size());
  for (const auto& p : g.pairs()) {
    out.push_back({DyadicRect(p.dom[1], p.dom[0]), DyadicRect(p.ran[1], p.ran[0])});
  }
  std::sort(out.begin(), out.end());
  return Element(std::move(out));
}

std::string format_element(const Element& g) {
  std::string out = "n=" + std::to_string(kDim) + " m=" + std::to_string(g.size()) + "\n";
  for (const auto& p : g.pairs()) {
    out += format_rect(p.dom);
    out += " -> ";
    out += format_rect(p.ran);
    out.push_back('\n');
  }
  return out;
}

Element parse_element(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long expected = -1;
  std::vector<RectPair> pairs;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (expected < 0) {
      std::istringstream hdr(line);
      std::string n_tok, m_tok;
      hdr >> n_tok >> m_tok;
      if (n_tok != "n=" + std::to_string(kDim) || m_tok.rfind("m=", 0) != 0) {
        throw Error(ErrorCode::kParseError, "expected header `n=2 m=<count>`, got `" + line + "`");
      }
      try {
        expected = std::stoll(m_tok.substr(2));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParseError, "bad rectangle count in `" + line + "`");
      }
      if (expected <= 0) throw Error(ErrorCode::kParseError, "rectangle count must be positive");
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::kParseError, "expected `dom -> ran`, got `" + line + "`");
    pairs.push_back({parse_rect(std::string_view(line).substr(0, arrow)),
                     parse_rect(std::string_view(line).substr(arrow + 2))});
  }
  if (expected < 0) throw Error(ErrorCode::kParseError, "missing element header");
  if (static_cast<long long>(pairs.size()) != expected) {
    throw Error(ErrorCode::kParseError, "header announces " + std::to_string(expected) + " pairs, found " +
                                            std::to_string(pairs.size()));
  }
  return Element(std::move(pairs));
}

}  // namespace nv
