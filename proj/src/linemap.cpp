#include "nv/linemap.hpp"

#include <algorithm>
#include <map>

#include "nv/error.hpp"

namespace nv {

namespace {

Dyadic normalized(mpz_class num, long exp) {
  Dyadic d;
  if (num == 0) return d;
  if (exp < 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp));
    exp = 0;
  }
  auto tz = static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
  tz = std::min(tz, exp);
  if (tz > 0) mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
  d.num = std::move(num);
  d.exp = exp - tz;
  return d;
}

mpz_class lifted(const Dyadic& a, long e) {
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), a.num.get_mpz_t(), static_cast<mp_bitcnt_t>(e - a.exp));
  return out;
}

}  // namespace

Dyadic Dyadic::of_word(const BinaryWord& w) {
  if (w.empty()) return {};
  return normalized(mpz_class(w, 2), static_cast<long>(w.size()));
}

Dyadic Dyadic::one() { return normalized(1, 0); }

bool operator==(const Dyadic& a, const Dyadic& b) { return a.exp == b.exp && a.num == b.num; }

int compare(const Dyadic& a, const Dyadic& b) {
  long e = std::max(a.exp, b.exp);
  return cmp(lifted(a, e), lifted(b, e));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  long e = std::max(a.exp, b.exp);
  return normalized(lifted(a, e) + lifted(b, e), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  long e = std::max(a.exp, b.exp);
  return normalized(lifted(a, e) - lifted(b, e), e);
}

Dyadic scale(const Dyadic& a, long s) {
  if (a.num == 0) return a;
  return normalized(a.num, a.exp - s);
}

LineMap::LineMap() : pieces_{{Dyadic{}, Dyadic{}, 0}} {}

LineMap::LineMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) { merge(); }

void LineMap::merge() {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    if (!out.empty() && out.back().slope == p.slope &&
        out.back().y + scale(p.x - out.back().x, p.slope) == p.y) {
      continue;
    }
    out.push_back(std::move(p));
  }
  pieces_ = std::move(out);
}

bool LineMap::is_identity() const { return pieces_.size() == 1 && pieces_[0].slope == 0; }

LineMap LineMap::of(const Element& g) {
  std::vector<Piece> ps;
  for (const auto& p : g.pairs()) {
    if (!p.dom[1].empty() || !p.ran[1].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "element moves the second coordinate");
    }
    ps.push_back({Dyadic::of_word(p.dom[0]), Dyadic::of_word(p.ran[0]),
                  static_cast<long>(p.dom[0].size()) - static_cast<long>(p.ran[0].size())});
  }
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return compare(a.x, b.x) < 0; });
  return LineMap(std::move(ps));
}

LineMap compose(const LineMap& f, const LineMap& g) {
  const auto& fp = f.pieces_;
  const auto& gp = g.pieces_;
  std::vector<LineMap::Piece> out;
  const Dyadic one = Dyadic::one();
  std::size_t j = 0;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const Dyadic& xb = i + 1 < fp.size() ? fp[i + 1].x : one;
    Dyadic ya = fp[i].y;
    Dyadic yb = ya + scale(xb - fp[i].x, fp[i].slope);
    // Last g piece starting at or before ya. Images come in order for
    // monotone maps, so the search usually lands near j.
    if (j >= gp.size() || compare(gp[j].x, ya) > 0) {
      auto it = std::upper_bound(gp.begin(), gp.end(), ya,
                                 [](const Dyadic& v, const LineMap::Piece& p) { return compare(v, p.x) < 0; });
      j = static_cast<std::size_t>(it - gp.begin()) - 1;
    }
    while (j + 1 < gp.size() && compare(gp[j + 1].x, ya) <= 0) ++j;
    for (;;) {
      const Dyadic& ub = j + 1 < gp.size() ? gp[j + 1].x : one;
      const Dyadic& start = compare(gp[j].x, ya) > 0 ? gp[j].x : ya;
      out.push_back({fp[i].x + scale(start - ya, -fp[i].slope), gp[j].y + scale(start - gp[j].x, gp[j].slope),
                     fp[i].slope + gp[j].slope});
      if (compare(ub, yb) >= 0) break;
      ++j;
    }
  }
  return LineMap(std::move(out));
}

LineMap inverse(const LineMap& f) {
  std::vector<LineMap::Piece> out;
  out.reserve(f.pieces_.size());
  for (const auto& p : f.pieces_) out.push_back({p.y, p.x, -p.slope});
  std::sort(out.begin(), out.end(),
            [](const LineMap::Piece& a, const LineMap::Piece& b) { return compare(a.x, b.x) < 0; });
  return LineMap(std::move(out));
}

bool operator==(const LineMap& a, const LineMap& b) {
  if (a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
    const auto& p = a.pieces_[i];
    const auto& q = b.pieces_[i];
    if (p.slope != q.slope || !(p.x == q.x) || !(p.y == q.y)) return false;
  }
  return true;
}

LineMap power(const LineMap& f, long long k) {
  LineMap base = k < 0 ? inverse(f) : f;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  LineMap acc;
  while (e) {
    if (e & 1ULL) acc = compose(acc, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return acc;
}

LineMap word_to_line(const GroupWord& w, const GeneratorTable& table) {
  std::map<std::string, LineMap> cache;
  LineMap acc;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const auto& sym = w.letters[i].symbol;
    auto it = cache.find(sym);
    if (it == cache.end()) it = cache.emplace(sym, LineMap::of(table.element_of(sym))).first;
    long long run = static_cast<long long>(j - i) * w.letters[i].exponent;
    acc = compose(acc, power(it->second, run));
    i = j;
  }
  return acc;
}

Element restrict_to_strip(const Element& lift, const BinaryWord& strip) {
  std::vector<RectPair> out;
  for (const auto& p : lift.pairs()) {
    if (!p.dom[1].empty() || !p.ran[1].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "element moves the second coordinate");
    }
    out.push_back({DyadicRect(p.dom[0], strip), DyadicRect(p.ran[0], strip)});
  }
  for (std::size_t i = 0; i < strip.size(); ++i) {
    BinaryWord off = strip.substr(0, i) + (strip[i] == '0' ? '1' : '0');
    out.push_back({DyadicRect("", off), DyadicRect("", off)});
  }
  std::sort(out.begin(), out.end());
  return Element(std::move(out));
}

}  // namespace nv
