#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "nv/cantor.hpp"
#include "nv/error.hpp"
#include "support.hpp"

using namespace nv;
using nvtest::Rng;

namespace {

// Cells of depth d x d covered by r.
std::set<std::pair<std::string, std::string>> cells(const DyadicRect& r, std::size_t d) {
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < (1u << d); ++a) {
    for (std::size_t b = 0; b < (1u << d); ++b) {
      std::string u, v;
      for (std::size_t i = 0; i < d; ++i) {
        u.push_back((a >> (d - 1 - i)) & 1 ? '1' : '0');
        v.push_back((b >> (d - 1 - i)) & 1 ? '1' : '0');
      }
      if (is_prefix(r[0], u) && is_prefix(r[1], v)) out.emplace(u, v);
    }
  }
  return out;
}

DyadicRect random_rect(Rng& rng, std::size_t max_len) {
  return {nvtest::random_bits(rng, rng() % (max_len + 1)), nvtest::random_bits(rng, rng() % (max_len + 1))};
}

Pattern random_pattern(Rng& rng, std::size_t steps) {
  Pattern p = Pattern::trivial();
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& r = p.rects()[rng() % p.size()];
    p = subdivide(p, r, (rng() & 1) ? Axis::kVertical : Axis::kHorizontal);
  }
  return p;
}

}  // namespace

TEST_CASE("prefix predicates") {
  CHECK(is_prefix("", "0"));
  CHECK(is_prefix("01", "011"));
  CHECK_FALSE(is_prefix("011", "01"));
  CHECK(comparable("011", "01"));
  CHECK_FALSE(comparable("00", "01"));
  CHECK(is_binary_word("0101"));
  CHECK_FALSE(is_binary_word("012"));
}

TEST_CASE("containment and overlap agree with cell sets") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    auto r = random_rect(rng, 3), s = random_rect(rng, 3);
    auto cr = cells(r, 3), cs = cells(s, 3);
    bool sub = std::includes(cr.begin(), cr.end(), cs.begin(), cs.end());
    std::set<std::pair<std::string, std::string>> meet;
    std::set_intersection(cr.begin(), cr.end(), cs.begin(), cs.end(), std::inserter(meet, meet.end()));
    CHECK(contains(r, s) == sub);
    CHECK(overlap(r, s) == !meet.empty());
    if (!meet.empty()) CHECK(cells(intersection(r, s), 3) == meet);
    CHECK(rect_size(r) == r[0].size() + r[1].size());
  }
}

TEST_CASE("children and parents") {
  DyadicRect r("01", "1");
  CHECK(child(r, Axis::kVertical, '0') == DyadicRect("010", "1"));
  CHECK(child(r, Axis::kHorizontal, '1') == DyadicRect("01", "11"));
  CHECK(*parent(r, Axis::kHorizontal) == DyadicRect("01", ""));
  CHECK_FALSE(parent(DyadicRect("", "1"), Axis::kVertical).has_value());
}

TEST_CASE("rect text round trip") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto r = random_rect(rng, 5);
    CHECK(parse_rect(format_rect(r)) == r);
  }
  CHECK(format_rect(DyadicRect("", "")) == "-,-");
  CHECK(nvtest::error_of([] { parse_rect("0,2"); }) == ErrorCode::kParseError);
}

TEST_CASE("subdivisions are partitions, broken sets are not") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto p = random_pattern(rng, rng() % 12);
    CHECK(validate_partition(p.rects()).ok);
    CHECK(parse_pattern(format_pattern(p)) == p);
    auto rects = p.rects();
    if (rects.size() > 1) {
      rects.pop_back();
      CHECK_FALSE(validate_partition(rects).ok);
      rects.push_back(rects.front());
      CHECK_FALSE(validate_partition(rects).ok);
    }
  }
  CHECK_FALSE(validate_partition({DyadicRect("", ""), DyadicRect("0", "")}).ok);
}

TEST_CASE("common refinement refines both sides") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto p = random_pattern(rng, 6), q = random_pattern(rng, 6);
    auto r = common_refinement(p, q);
    CHECK(validate_partition(r.rects()).ok);
    CHECK(refines(r, p));
    CHECK(refines(r, q));
    CHECK(refines(p, Pattern::trivial()));
    // Every cell of a refinement lies in the meet of one rectangle from each.
    for (const auto& c : r.rects()) {
      std::size_t hits = 0;
      for (const auto& a : p.rects()) hits += contains(a, c);
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("subdivide rejects foreign rectangles") {
  CHECK(nvtest::error_of([] { subdivide(Pattern::trivial(), DyadicRect("0", ""), Axis::kVertical); }) ==
        ErrorCode::kRectNotInPattern);
}

TEST_CASE("fineness and the origin rectangle") {
  Pattern p({DyadicRect("00", "0"), DyadicRect("00", "1"), DyadicRect("01", ""), DyadicRect("1", "")});
  CHECK(fineness(p) == 3);
  CHECK(rect_at_origin(p) == DyadicRect("00", "0"));
}

TEST_CASE("rect index matches a linear scan") {
  Rng rng(13);
  for (int round = 0; round < 50; ++round) {
    std::vector<DyadicRect> rects;
    for (int i = 0; i < 40; ++i) rects.push_back(random_rect(rng, 6));
    RectIndex index(rects);
    for (int q = 0; q < 40; ++q) {
      auto query = random_rect(rng, 7);
      std::vector<std::size_t> want;
      std::optional<std::size_t> holder;
      for (std::size_t i = 0; i < rects.size(); ++i) {
        if (overlap(rects[i], query)) want.push_back(i);
        if (contains(rects[i], query) && !holder) holder = i;
      }
      auto got = index.overlapping(query);
      std::sort(got.begin(), got.end());
      CHECK(got == want);
      auto c = index.containing(query);
      CHECK(c.has_value() == holder.has_value());
      if (c) CHECK(contains(rects[*c], query));
    }
  }
}
