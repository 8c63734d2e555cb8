#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "nv/gridform.hpp"
#include "nv/metric.hpp"
#include "nv/treealg.hpp"
#include "support.hpp"

using namespace nv;

namespace {

const GeneratorTable& table() { return GeneratorTable::builtin(); }

const BallTable& ball2() {
  static const BallTable b = ball(2, table());
  return b;
}

// Images of fixed random points; equal maps give equal fingerprints.
std::string fingerprint(const Element& g) {
  static const std::vector<PrefixPoint> points = [] {
    nvtest::Rng rng(99);
    std::vector<PrefixPoint> out;
    for (int i = 0; i < 64; ++i) out.push_back(nvtest::random_point(rng, 24));
    return out;
  }();
  std::string s;
  for (const auto& p : points) {
    auto q = nvtest::apply(g, p);
    s += q.u1 + "," + q.u2 + ";";
  }
  return s;
}

}  // namespace

TEST_CASE("letters") {
  auto letters = LetterSet::of(table());
  CHECK(letters.letters.size() == 2 * x2v_symbols().size());
  CHECK(letters.letters[0] == Letter{letters.letters[0].symbol, 1});
  CHECK(letters.letters[1] == Letter{letters.letters[0].symbol, -1});
}

TEST_CASE("sphere sizes agree with a fingerprint search") {
  auto letters = LetterSet::of(table());
  std::map<std::string, std::size_t> seen{{fingerprint(identity()), 0}};
  std::vector<Element> frontier{identity()};
  std::vector<std::size_t> sizes{1};
  for (std::size_t d = 1; d <= 2; ++d) {
    std::vector<Element> next;
    for (const auto& g : frontier) {
      for (const auto& s : letters.elements) {
        auto h = multiply(g, s);
        if (seen.emplace(fingerprint(h), d).second) next.push_back(h);
      }
    }
    sizes.push_back(next.size());
    frontier = std::move(next);
  }
  const auto& b = ball2();
  REQUIRE(b.radius() == 2);
  for (std::size_t d = 0; d <= 2; ++d) CHECK(b.sphere(d).size() == sizes[d]);
  CHECK(b.size() == 1 + sizes[1] + sizes[2]);
  // Every node agrees with the fingerprint distance.
  for (const auto& n : b.nodes()) CHECK(seen.at(fingerprint(n.element)) == n.distance);
}

TEST_CASE("witnesses are geodesic words") {
  const auto& b = ball2();
  for (const auto& n : b.nodes()) {
    CHECK(n.witness.length() == n.distance);
    CHECK(equals(word_to_element(n.witness, table()), n.element));
    CHECK(canonical_key(n.element) == n.key);
  }
  auto g = word_to_element(parse_word("x_0 y_0"), table());
  auto w = geodesic_word(g, b);
  CHECK(w.length() <= 2);
  CHECK(equals(word_to_element(w, table()), g));
}

TEST_CASE("length certificates") {
  const auto& b = ball2();
  auto inside = exact_length(word_to_element(parse_word("C_0 x_1"), table()), b);
  CHECK(inside.exact);
  CHECK(inside.lower == inside.upper);
  CHECK(exact_length(identity(), b).upper == 0);
  nvtest::Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    auto w = nvtest::random_word(rng, 6);
    auto g = word_to_element(w, table());
    auto c = exact_length(g, b, w);
    CHECK(c.lower <= c.upper);
    CHECK(c.upper <= w.length());
    if (!c.exact) {
      CHECK(c.lower >= 3);
      CHECK(c.upper == w.length());
      CHECK(nvtest::error_of([&] { geodesic_word(g, b); }) == ErrorCode::kNotWithinRadius);
    }
  }
  auto far = power(table().element_of("x_0"), 5);
  auto c = exact_length(far, b);
  CHECK(c.lower == 3);
  CHECK(c.upper == kUnbounded);
}

TEST_CASE("grid bounds hold inside the ball") {
  for (const auto& n : ball2().nodes()) {
    CHECK(length_lower_bound(n.element) <= n.distance);
    CHECK(minimal_target_depth(n.element, 12) <= 4 * n.distance);
  }
}

TEST_CASE("node cap") {
  CHECK(nvtest::error_of([] { ball(2, table(), 100); }) == ErrorCode::kResourceBudgetExceeded);
}
