#include "nv/cantor.hpp"

#include <algorithm>
#include <sstream>

#include "nv/error.hpp"

namespace nv {

bool is_prefix(std::string_view prefix, std::string_view word) noexcept {
  return prefix.size() <= word.size() && word.substr(0, prefix.size()) == prefix;
}

bool comparable(std::string_view a, std::string_view b) noexcept {
  return a.size() <= b.size() ? is_prefix(a, b) : is_prefix(b, a);
}

bool is_binary_word(std::string_view w) noexcept {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

std::size_t rect_size(const DyadicRect& r) noexcept {
  std::size_t s = 0;
  for (const auto& w : r.words) s += w.size();
  return s;
}

bool contains(const DyadicRect& r, const DyadicRect& s) noexcept {
  for (std::size_t i = 0; i < kDim; ++i) {
    if (!is_prefix(r[i], s[i])) return false;
  }
  return true;
}

bool overlap(const DyadicRect& r, const DyadicRect& s) noexcept {
  for (std::size_t i = 0; i < kDim; ++i) {
    if (!comparable(r[i], s[i])) return false;
  }
  return true;
}

DyadicRect intersection(const DyadicRect& r, const DyadicRect& s) {
  DyadicRect out;
  for (std::size_t i = 0; i < kDim; ++i) {
    out[i] = r[i].size() >= s[i].size() ? r[i] : s[i];
  }
  return out;
}

DyadicRect child(const DyadicRect& r, Axis axis, char bit) {
  DyadicRect c = r;
  c[static_cast<std::size_t>(axis)].push_back(bit);
  return c;
}

std::optional<DyadicRect> parent(const DyadicRect& r, Axis axis) {
  auto i = static_cast<std::size_t>(axis);
  if (r[i].empty()) return std::nullopt;
  DyadicRect p = r;
  p[i].pop_back();
  return p;
}

std::string format_rect(const DyadicRect& r) {
  std::string out;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (i) out.push_back(',');
    out += r[i].empty() ? std::string("-") : r[i];
  }
  return out;
}

DyadicRect parse_rect(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "expected `w1,w2`, got `" + std::string(text) + "`");
  }
  DyadicRect r;
  std::string_view parts[2] = {trim(text.substr(0, comma)), trim(text.substr(comma + 1))};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (parts[i] == "-") continue;
    if (parts[i].empty() || !is_binary_word(parts[i])) {
      throw Error(ErrorCode::kParseError, "bad binary word `" + std::string(parts[i]) + "`");
    }
    r[i] = std::string(parts[i]);
  }
  return r;
}

Pattern::Pattern(std::vector<DyadicRect> rects) : rects_(std::move(rects)) {
  std::sort(rects_.begin(), rects_.end());
}

Pattern Pattern::trivial() { return Pattern({DyadicRect{}}); }

bool Pattern::contains_rect(const DyadicRect& r) const {
  return std::binary_search(rects_.begin(), rects_.end(), r);
}

namespace {

constexpr std::uint64_t kHashBase = 0x100000001b3ULL;

std::uint64_t hash_step(std::uint64_t h, char c) { return h * kHashBase + static_cast<std::uint64_t>(c - '0' + 1); }

std::uint64_t hash_word(std::string_view w) {
  std::uint64_t h = 0;
  for (char c : w) h = hash_step(h, c);
  return h;
}

}  // namespace

RectIndex::RectIndex(const std::vector<DyadicRect>& rects) : rects_(&rects) {
  for (std::size_t i = 0; i < rects.size(); ++i) {
    auto [it, fresh] = by_first_.try_emplace(rects[i][0]);
    it->second.push_back(i);
    if (fresh) by_hash_[hash_word(it->first)].push_back(&it->first);
  }
}

template <class F>
void RectIndex::for_each_prefix_key(std::string_view w, bool inclusive, F&& f) const {
  std::size_t count = inclusive ? w.size() + 1 : w.size();
  std::uint64_t h = 0;
  for (std::size_t len = 0; len < count; ++len) {
    if (len > 0) h = hash_step(h, w[len - 1]);
    auto hit = by_hash_.find(h);
    if (hit == by_hash_.end()) continue;
    for (const BinaryWord* key : hit->second) {
      if (key->size() == len && w.substr(0, len) == *key) f(by_first_.find(*key)->second);
    }
  }
}

std::vector<std::size_t> RectIndex::overlapping(const DyadicRect& q) const {
  std::vector<std::size_t> out;
  const auto& rs = *rects_;
  const std::string& w = q[0];
  // Strict prefixes of the query's first word.
  for_each_prefix_key(w, false, [&](const std::vector<std::size_t>& ids) {
    for (auto i : ids) {
      if (comparable(rs[i][1], q[1])) out.push_back(i);
    }
  });
  // The word itself and all its extensions form a sorted range.
  for (auto it = by_first_.lower_bound(w); it != by_first_.end() && is_prefix(w, it->first); ++it) {
    for (auto i : it->second) {
      if (comparable(rs[i][1], q[1])) out.push_back(i);
    }
  }
  return out;
}

std::optional<std::size_t> RectIndex::containing(const DyadicRect& q) const {
  const auto& rs = *rects_;
  std::optional<std::size_t> found;
  for_each_prefix_key(q[0], true, [&](const std::vector<std::size_t>& ids) {
    if (found) return;
    for (auto i : ids) {
      if (is_prefix(rs[i][1], q[1])) {
        found = i;
        return;
      }
    }
  });
  return found;
}

namespace {

// Exact test of sum 2^-size == 1 by binary carrying. Returns the total as a
// fraction when it fits in 64 bits, for diagnostics.
struct MeasureResult {
  bool is_one;
  std::string text;
};

MeasureResult total_measure(const std::vector<DyadicRect>& rects) {
  std::map<std::size_t, unsigned long long> counts;
  for (const auto& r : rects) ++counts[rect_size(r)];
  if (counts.empty()) return {false, "0"};
  std::size_t max_size = counts.rbegin()->first;
  bool fractional = false;
  for (std::size_t s = max_size; s > 0; --s) {
    auto it = counts.find(s);
    if (it == counts.end()) continue;
    if (it->second % 2) fractional = true;
    counts[s - 1] += it->second / 2;
  }
  bool one = !fractional && counts[0] == 1;
  std::string text;
  if (max_size <= 62) {
    unsigned long long num = 0;
    for (const auto& r : rects) num += 1ULL << (max_size - rect_size(r));
    unsigned long long den = 1ULL << max_size;
    while (den > 1 && num % 2 == 0) {
      num /= 2;
      den /= 2;
    }
    text = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  } else {
    text = one ? "1" : "not 1";
  }
  return {one, text};
}

}  // namespace

PartitionReport validate_partition(const std::vector<DyadicRect>& rects) {
  for (const auto& r : rects) {
    for (const auto& w : r.words) {
      if (!is_binary_word(w)) return {false, "rectangle " + format_rect(r) + " has a non-binary word"};
    }
  }
  RectIndex index(rects);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (auto j : index.overlapping(rects[i])) {
      if (j != i) {
        return {false, "overlap: " + format_rect(rects[i]) + " and " + format_rect(rects[j])};
      }
    }
  }
  auto measure = total_measure(rects);
  if (!measure.is_one) return {false, "total measure " + measure.text};
  return {true, {}};
}

Pattern subdivide(const Pattern& p, const DyadicRect& r, Axis axis) {
  if (!p.contains_rect(r)) {
    throw Error(ErrorCode::kRectNotInPattern, "rectangle " + format_rect(r) + " is not in the pattern");
  }
  std::vector<DyadicRect> out;
  out.reserve(p.size() + 1);
  for (const auto& s : p.rects()) {
    if (s == r) {
      out.push_back(child(r, axis, '0'));
      out.push_back(child(r, axis, '1'));
    } else {
      out.push_back(s);
    }
  }
  return Pattern(std::move(out));
}

Pattern common_refinement(const Pattern& p, const Pattern& q) {
  RectIndex index(q.rects());
  std::vector<DyadicRect> out;
  for (const auto& r : p.rects()) {
    for (auto j : index.overlapping(r)) out.push_back(intersection(r, q.rects()[j]));
  }
  return Pattern(std::move(out));
}

bool refines(const Pattern& fine, const Pattern& coarse) {
  RectIndex index(coarse.rects());
  for (const auto& r : fine.rects()) {
    if (!index.containing(r)) return false;
  }
  return true;
}

std::size_t fineness(const Pattern& p) noexcept {
  std::size_t best = 0;
  for (const auto& r : p.rects()) best = std::max(best, rect_size(r));
  return best;
}

DyadicRect rect_at_origin(const Pattern& p) {
  for (const auto& r : p.rects()) {
    bool zeros = true;
    for (const auto& w : r.words) zeros = zeros && w.find('1') == std::string::npos;
    if (zeros) return r;
  }
  throw Error(ErrorCode::kInvalidArgument, "pattern has no rectangle at the origin");
}

std::string format_pattern(const Pattern& p) {
  std::string out;
  for (const auto& r : p.rects()) {
    out += format_rect(r);
    out.push_back('\n');
  }
  return out;
}

Pattern parse_pattern(std::string_view text) {
  std::vector<DyadicRect> rects;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rects.push_back(parse_rect(line));
  }
  return Pattern(std::move(rects));
}

}  // namespace nv
