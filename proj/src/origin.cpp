#include <algorithm>

#include "nv/divergence.hpp"
#include "nv/error.hpp"
#include "nv/gridform.hpp"

namespace nv {

void DivergenceParams::validate() const {
  if (M < 100) throw Error(ErrorCode::kInvalidArgument, "M must be at least 100");
  if (Q < 48 * M) throw Error(ErrorCode::kInvalidArgument, "Q must be at least 48 M");
  if (delta.num <= 0 || delta.den <= 0 || delta.num >= delta.den) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (exponent_cap && *exponent_cap < 1) throw Error(ErrorCode::kInvalidArgument, "exponent cap must be positive");
}

Letter lemma_letter(LemmaMove m) {
  switch (m) {
    case LemmaMove::kX0Inv: return {"x_0", -1};
    case LemmaMove::kBh0: return {"Bh_0", 1};
    case LemmaMove::kC0: return {"C_0", 1};
    case LemmaMove::kY0Inv: return {"y_0", -1};
    case LemmaMove::kGamma0: return {"gamma_0", 1};
    case LemmaMove::kC0Inv: return {"C_0", -1};
  }
  return {};
}

std::optional<LemmaMove> lemma_move_of(const Letter& l) {
  for (auto m : {LemmaMove::kX0Inv, LemmaMove::kBh0, LemmaMove::kC0, LemmaMove::kY0Inv, LemmaMove::kGamma0,
                 LemmaMove::kC0Inv}) {
    if (lemma_letter(m) == l) return m;
  }
  return std::nullopt;
}

int lemma_size_delta(LemmaMove m) { return m == LemmaMove::kC0 || m == LemmaMove::kC0Inv ? 0 : 1; }

namespace {

bool vertical_move(LemmaMove m) {
  return m == LemmaMove::kX0Inv || m == LemmaMove::kBh0 || m == LemmaMove::kC0;
}

bool zeros(const BinaryWord& w) { return std::all_of(w.begin(), w.end(), [](char c) { return c == '0'; }); }

bool starts_with(const BinaryWord& w, std::string_view p) { return is_prefix(p, w); }

// Image of r under s when s is a single prefix map on r.
std::optional<DyadicRect> image_rect(const Element& s, const DyadicRect& r) {
  for (const auto& p : s.pairs()) {
    if (!contains(p.dom, r)) continue;
    DyadicRect out;
    for (std::size_t i = 0; i < kDim; ++i) out[i] = p.ran[i] + r[i].substr(p.dom[i].size());
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::vector<DyadicRect> essential_origin_rects(const Element& g) {
  std::vector<DyadicRect> rans;
  std::size_t max1 = 0, max2 = 0;
  for (const auto& p : g.pairs()) {
    rans.push_back(p.ran);
    max1 = std::max(max1, p.ran[0].size());
    max2 = std::max(max2, p.ran[1].size());
  }
  RectIndex index(rans);
  std::vector<DyadicRect> out;
  std::size_t best = max2 + 1;
  for (std::size_t a = 0; a <= max1; ++a) {
    for (std::size_t b = 0; b < best; ++b) {
      DyadicRect r(std::string(a, '0'), std::string(b, '0'));
      if (preimage_rect(g, index, r)) {
        out.push_back(r);
        best = b;
        break;
      }
    }
    if (best == 0) break;
  }
  return out;
}

OriginTracker make_tracker(const Element& g, const DyadicRect& r0) {
  if (!zeros(r0[0]) || !zeros(r0[1])) {
    throw Error(ErrorCode::kPreconditionViolated, format_rect(r0) + " does not contain the origin");
  }
  OriginTracker t;
  t.element = g;
  t.r0 = r0;
  try {
    t.essential = is_essential(g, r0).has_value();
  } catch (const Error&) {
    t.essential = false;
  }
  t.sizes.push_back(rect_size(r0));
  return t;
}

OriginTracker lemma31_step(const OriginTracker& state, LemmaMove m, const GeneratorTable& table) {
  const DyadicRect& r = state.r0;
  bool pre = state.essential;
  switch (m) {
    case LemmaMove::kX0Inv:
    case LemmaMove::kBh0: pre = pre && starts_with(r[0], "00"); break;
    case LemmaMove::kC0: pre = pre && starts_with(r[0], "00") && starts_with(r[1], "0"); break;
    case LemmaMove::kY0Inv:
    case LemmaMove::kGamma0: pre = pre && starts_with(r[1], "00"); break;
    case LemmaMove::kC0Inv: pre = pre && starts_with(r[0], "0") && starts_with(r[1], "00"); break;
  }
  Letter l = lemma_letter(m);
  std::string name = format_word(GroupWord{{l}});
  if (!pre) {
    throw Error(ErrorCode::kPreconditionViolated, "precondition of " + name + " fails at " + format_rect(r));
  }
  const Element& gen = table.element_of(l.symbol);
  Element s = l.exponent > 0 ? gen : inverse(gen);
  auto img = image_rect(s, r);
  auto lost = [&](const std::string& why) {
    return Error(ErrorCode::kEssentialityLost, name + " at " + format_rect(r) + ": " + why);
  };
  if (!img) throw lost("letter is not a single prefix map on the rectangle");
  if (!zeros((*img)[0]) || !zeros((*img)[1])) throw lost("image leaves the origin");
  if (!starts_with((*img)[vertical_move(m) ? 0 : 1], "000")) throw lost("image not in the 1/8 strip");
  if (rect_size(*img) != rect_size(r) + static_cast<std::size_t>(lemma_size_delta(m))) throw lost("size change");
  OriginTracker next;
  next.element = multiply(state.element, s);
  next.r0 = *img;
  try {
    next.essential = is_essential(next.element, *img).has_value();
  } catch (const Error&) {
    next.essential = false;
  }
  if (!next.essential) throw lost("image rectangle is not essential");
  next.sizes = state.sizes;
  next.sizes.push_back(rect_size(*img));
  return next;
}

}  // namespace nv
