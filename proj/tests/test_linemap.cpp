#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nv/divergence.hpp"
#include "nv/gridform.hpp"
#include "nv/linemap.hpp"
#include "support.hpp"

using namespace nv;

namespace {

const GeneratorTable& table() { return GeneratorTable::builtin(); }

GroupWord random_line_word(nvtest::Rng& rng, std::size_t len) {
  static const char* syms[] = {"x_0", "x_1", "x_2"};
  GroupWord w;
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back({syms[rng() % 3], (rng() & 1) ? 1 : -1});
  return w;
}

}  // namespace

TEST_CASE("dyadic arithmetic") {
  auto a = Dyadic::of_word("011");  // 3/8
  auto b = Dyadic::of_word("1");    // 1/2
  CHECK(a.num == 3);
  CHECK(a.exp == 3);
  CHECK(compare(a, b) < 0);
  CHECK(a + b == Dyadic::of_word("111"));
  CHECK(b - a == Dyadic::of_word("001"));
  CHECK(scale(a, 1) == Dyadic::of_word("11"));
  CHECK(Dyadic::of_word("0100") == Dyadic::of_word("01"));
  CHECK(Dyadic::of_word("") == Dyadic{});
}

TEST_CASE("line maps follow the square elements") {
  nvtest::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    auto w = random_line_word(rng, 1 + rng() % 8);
    auto g = word_to_element(w, table());
    CHECK(word_to_line(w, table()) == LineMap::of(g));
    CHECK(compose(LineMap::of(g), inverse(LineMap::of(g))).is_identity());
  }
  for (long long k = -6; k <= 6; ++k) {
    CHECK(power(LineMap::of(table().element_of("x_1")), k) == LineMap::of(power(table().element_of("x_1"), k)));
  }
  CHECK(nvtest::error_of([] { LineMap::of(table().element_of("y_0")); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("strip restrictions") {
  // The strip copies of x_0 and x_1 are generators.
  CHECK(equals(restrict_to_strip(table().element_of("x_0"), "0"), table().element_of("hxh_1")));
  CHECK(equals(restrict_to_strip(table().element_of("x_1"), "0"), table().element_of("hxh_2")));
  CHECK(equals(restrict_to_strip(table().element_of("x_0"), "1"), table().element_of("hx_1")));
  CHECK(equals(restrict_to_strip(table().element_of("x_1"), "1"), table().element_of("hx_2")));
  auto r = restrict_to_strip(table().element_of("x_2"), "01");
  CHECK(is_identity_on(r, DyadicRect("", "1")));
  CHECK(is_identity_on(r, DyadicRect("", "00")));
  CHECK_FALSE(is_identity_on(r, DyadicRect("", "01")));
}

TEST_CASE("product identity through line maps matches direct composition") {
  for (long long k = 0; k <= 6; ++k) {
    CHECK(strip_product_identity(k, table()));
    auto lhs = word_to_element(concat(omega4_word('A', k), omega4_word('B', k)), table());
    auto rhs = word_to_element(omega4_word('D', k), table());
    CHECK(equals(lhs, rhs));
  }
  CHECK(strip_product_identity(2000, table()));
}
