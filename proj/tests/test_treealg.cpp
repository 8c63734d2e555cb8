#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nv/gridform.hpp"
#include "nv/genset.hpp"
#include "nv/treealg.hpp"
#include "support.hpp"

using namespace nv;
using nvtest::Rng;

namespace {

const GeneratorTable& table() { return GeneratorTable::builtin(); }

ColoredTree random_tree(Rng& rng, std::size_t carets) {
  ColoredTree t;
  std::vector<int> leaves{0};
  for (std::size_t i = 0; i < carets; ++i) {
    std::size_t k = rng() % leaves.size();
    int leaf = leaves[k];
    leaves.erase(leaves.begin() + static_cast<long>(k));
    auto [l, r] = t.attach(leaf, (rng() & 1) ? CaretColor::kA : CaretColor::kB);
    leaves.push_back(l);
    leaves.push_back(r);
  }
  return t;
}

ColoredTree right_vine(std::size_t leaves) {
  ColoredTree t;
  int at = 0;
  for (std::size_t i = 1; i < leaves; ++i) at = t.attach(at, CaretColor::kA).second;
  return t;
}

}  // namespace

TEST_CASE("tree text round trip and counts") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    auto t = random_tree(rng, rng() % 10);
    CHECK(ColoredTree::parse(t.to_string()) == t);
    CHECK(tree_leaf_rects(t).size() == t.leaves());
  }
  CHECK(ColoredTree().to_string() == ".");
  CHECK(ColoredTree::parse("a(.b(..))").carets() == 2);
  CHECK(ColoredTree::parse("a(.b(..))").depth() == 2);
  CHECK(nvtest::error_of([] { ColoredTree::parse("a(."); }) == ErrorCode::kParseError);
}

TEST_CASE("leaf rectangles: a splits the first coordinate, b the second") {
  auto rects = tree_leaf_rects(ColoredTree::parse("a(b(..).)"));
  REQUIRE(rects.size() == 3);
  CHECK(rects[0] == DyadicRect("0", "0"));
  CHECK(rects[1] == DyadicRect("0", "1"));
  CHECK(rects[2] == DyadicRect("1", ""));
}

TEST_CASE("trees and patterns") {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    auto t = random_tree(rng, rng() % 12);
    auto p = tree_to_pattern(t);
    CHECK(validate_partition(p.rects()).ok);
    CHECK(is_realizable(p));
    CHECK(tree_to_pattern(pattern_to_tree(p)) == p);
  }
  // The right half is only half covered.
  Pattern holed({DyadicRect("0", "0"), DyadicRect("00", "1"), DyadicRect("01", "1"), DyadicRect("1", "00"),
                 DyadicRect("1", "01")});
  CHECK_FALSE(is_realizable(holed));
  CHECK(nvtest::error_of([&] { pattern_to_tree(holed); }) == ErrorCode::kNotRealizable);
}

TEST_CASE("tree pairs describe the element") {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    auto g = word_to_element(nvtest::random_word(rng, 1 + rng() % 4), table());
    auto tp = element_to_tree_pair(g);
    CHECK(tp.perm.size() == tp.source.leaves());
    CHECK(tp.source.leaves() == tp.target.leaves());
    CHECK(equals(tree_pair_to_element(tp), g));
  }
}

TEST_CASE("minimal pairs") {
  Rng rng(34);
  for (int i = 0; i < 40; ++i) {
    auto g = word_to_element(nvtest::random_word(rng, 1 + rng() % 3), table());
    auto tp = minimal_pair(g, 12);
    CHECK(equals(tree_pair_to_element(tp), g));
    CHECK(target_depth(tp) == minimal_target_depth(g, 12));
    CHECK(target_depth(tp) <= element_to_tree_pair(normal_form(g).element).target.depth());
  }
  CHECK(minimal_target_depth(identity(), 4) == 0);
  auto deep = power(table().element_of("x_0"), 20);
  CHECK(nvtest::error_of([&] { minimal_pair(deep, 2); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("vine words send leaves onto the right vine") {
  Rng rng(35);
  for (int i = 0; i < 60; ++i) {
    auto t = random_tree(rng, 1 + rng() % 6);
    auto w = vine_word(t);
    for (const auto& l : w) CHECK((l.base == "A" || l.base == "B" || l.base == "C"));
    auto g = word_to_element(family_word(w), table());
    auto from = tree_leaf_rects(t);
    auto to = tree_leaf_rects(right_vine(t.leaves()));
    for (std::size_t k = 0; k < from.size(); ++k) {
      for (int j = 0; j < 5; ++j) {
        nv::PrefixPoint p{from[k][0] + nvtest::random_bits(rng, 20), from[k][1] + nvtest::random_bits(rng, 20)};
        auto q = nvtest::apply(g, p);
        CHECK(is_prefix(to[k][0], q.u1));
        CHECK(is_prefix(to[k][1], q.u2));
      }
    }
  }
}

TEST_CASE("P Pi Q^-1 decomposition") {
  Rng rng(36);
  for (int i = 0; i < 40; ++i) {
    auto g = word_to_element(nvtest::random_word(rng, 1 + rng() % 3), table());
    auto tp = element_to_tree_pair(g);
    auto d = decompose_ppiq(tp);
    GroupWord w = family_word(d.p);
    w.append(family_word(d.pi));
    w.append(inverse_word(family_word(d.q)));
    CHECK(equals(word_to_element(w, table()), g));
  }
}

TEST_CASE("C-prefix extraction") {
  std::vector<FamilyLetter> q{{"C", 1}, {"C", 3}, {"A", 2}, {"B", 0}};
  CHECK(extract_c_prefix(q) == std::vector<std::size_t>{1, 3});
  CHECK(extract_c_prefix({{"A", 0}}).empty());
  CHECK(nvtest::error_of([] { extract_c_prefix({{"A", 0}, {"C", 2}}); }) == ErrorCode::kMalformedWord);
  CHECK(nvtest::error_of([] { extract_c_prefix({{"C", 2}, {"C", 2}}); }) == ErrorCode::kMalformedWord);
  CHECK(format_family_word(q) == "C_1 C_3 A_2 B_0");
}
