#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "nv/gridform.hpp"
#include "nv/genset.hpp"
#include "support.hpp"

using namespace nv;
using nvtest::Rng;

namespace {

const GeneratorTable& table() { return GeneratorTable::builtin(); }

Element random_element(Rng& rng, std::size_t len) {
  return word_to_element(nvtest::random_word(rng, len), table());
}

}  // namespace

TEST_CASE("grid patterns") {
  Pattern grid({DyadicRect("0", "0"), DyadicRect("0", "1"), DyadicRect("1", "0"), DyadicRect("1", "1")});
  CHECK(is_grid_pattern(grid));
  auto axes = grid_axes(grid);
  REQUIRE(axes.has_value());
  CHECK(axes->columns == std::vector<BinaryWord>{"0", "1"});
  CHECK(axes->rows == std::vector<BinaryWord>{"0", "1"});
  Pattern l_shape({DyadicRect("0", ""), DyadicRect("1", "0"), DyadicRect("1", "1")});
  CHECK_FALSE(is_grid_pattern(l_shape));
  CHECK(is_grid_pattern(Pattern::trivial()));
}

TEST_CASE("normal forms keep the map and are idempotent") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    auto g = random_element(rng, 1 + rng() % 6);
    auto nf = normal_form(g);
    CHECK(nf.reduced);
    CHECK(is_grid_pattern(nf.element.range_pattern()));
    CHECK(applicable_reductions(nf) == 0);
    CHECK(nvtest::same_map(nf.element, g, rng));
    CHECK(normal_form(nf.element).element == nf.element);
    auto gd = to_grid_diagram(g);
    CHECK(is_grid_pattern(gd.element.range_pattern()));
    CHECK(nvtest::same_map(gd.element, g, rng, 30));
  }
}

TEST_CASE("keys separate exactly the distinct maps") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    auto w = nvtest::random_word(rng, 1 + rng() % 5);
    auto f = word_to_element(w, table());
    // Same map through a longer word: insert s s^-1 somewhere.
    auto padded = w;
    auto extra = nvtest::random_word(rng, 1);
    std::size_t at = rng() % (w.length() + 1);
    padded.letters.insert(padded.letters.begin() + static_cast<long>(at), extra.letters[0]);
    padded.letters.insert(padded.letters.begin() + static_cast<long>(at) + 1,
                          Letter{extra.letters[0].symbol, -extra.letters[0].exponent});
    auto g = word_to_element(padded, table());
    CHECK(equals(f, g));
    CHECK(canonical_key(f) == canonical_key(g));
    auto h = random_element(rng, 1 + rng() % 5);
    bool oracle = nvtest::same_map(f, h, rng);
    CHECK(equals(f, h) == oracle);
    CHECK(equals_pointwise(f, h) == oracle);
  }
}

TEST_CASE("reduction order does not matter") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    auto g = random_element(rng, 2 + rng() % 4);
    // Refine the grid a few times so that many reductions are applicable.
    auto gd = to_grid_diagram(g);
    for (int k = 0; k < 3; ++k) {
      const auto axes = *grid_axes(gd.element.range_pattern());
      bool vertical = rng() & 1;
      std::size_t n = vertical ? axes.columns.size() : axes.rows.size();
      gd = global_subdivide(gd, vertical ? Axis::kVertical : Axis::kHorizontal, rng() % n);
    }
    CHECK(nvtest::same_map(gd.element, g, rng, 30));
    auto base = reduce_grid(gd).element;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) CHECK(reduce_grid(gd, seed).element == base);
    CHECK(base == normal_form(g).element);
  }
  CHECK(nvtest::error_of([] { global_subdivide(to_grid_diagram(identity()), Axis::kVertical, 3); }) ==
        ErrorCode::kStripNotFound);
}

TEST_CASE("fineness bounds") {
  CHECK(element_fineness(identity()) == 0);
  CHECK(length_lower_bound(identity()) == 0);
  for (const auto& d : table().generators()) {
    CHECK(length_lower_bound(d.element) <= 1);
  }
  CHECK(essential_lower_bound(DyadicRect("0000", "0000")) == 1);
  CHECK(essential_lower_bound(DyadicRect("00000", "0000")) == 2);
}

TEST_CASE("essential rectangles") {
  // The identity has no mergeable neighbours for its single rectangle.
  auto w = is_essential(identity(), DyadicRect("", ""));
  CHECK(w.has_value());
  const auto& x0 = table().element_of("x_0");
  CHECK(nvtest::error_of([&] { is_essential(x0, DyadicRect("", "")); }) == ErrorCode::kRectNotInRange);
  // Both halves of the range of x_0 merge vertically back into 1.
  bool both = is_essential(x0, DyadicRect("110", "")).has_value() && is_essential(x0, DyadicRect("111", "")).has_value();
  CHECK_FALSE(both);
}
