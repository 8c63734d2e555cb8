#pragma once

// Elements of the square that only move the first coordinate, viewed as
// piecewise-linear maps of the unit interval with exact dyadic breakpoints.
// Breakpoints are big integers, so powers with exponents in the tens of
// thousands stay cheap where the prefix-pair form would need words of that
// length in every piece.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "nv/element.hpp"
#include "nv/genset.hpp"

namespace nv {

/// num * 2^-exp with num odd (or zero, exp 0).
struct Dyadic {
  mpz_class num = 0;
  long exp = 0;

  static Dyadic of_word(const BinaryWord& w);
  static Dyadic one();
};

bool operator==(const Dyadic& a, const Dyadic& b);
int compare(const Dyadic& a, const Dyadic& b);
Dyadic operator+(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a, const Dyadic& b);
/// a * 2^s.
Dyadic scale(const Dyadic& a, long s);

class LineMap {
 public:
  struct Piece {
    Dyadic x;
    Dyadic y;
    long slope = 0;  // log2 of the slope
  };

  LineMap();  // identity

  /// Throws InvalidArgument unless every pair of g leaves the second word empty.
  static LineMap of(const Element& g);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool is_identity() const;

  friend LineMap compose(const LineMap& f, const LineMap& g);
  friend LineMap inverse(const LineMap& f);
  friend bool operator==(const LineMap& a, const LineMap& b);

 private:
  explicit LineMap(std::vector<Piece> pieces);
  void merge();

  std::vector<Piece> pieces_;
};

LineMap power(const LineMap& f, long long k);

/// Product of the first-coordinate maps of the letters of w.
LineMap word_to_line(const GroupWord& w, const GeneratorTable& table);

/// The element acting as `lift` on {w ζ} x {strip ζ'} and as the identity
/// elsewhere. `lift` must leave the second word empty in every pair.
Element restrict_to_strip(const Element& lift, const BinaryWord& strip);

}  // namespace nv
