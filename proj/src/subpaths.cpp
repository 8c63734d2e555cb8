#include <algorithm>
#include <map>
#include <set>

#include "nv/divergence.hpp"
#include "nv/error.hpp"
#include "nv/gridform.hpp"
#include "nv/linemap.hpp"

namespace nv {

namespace {

std::optional<DyadicRect> image_of(const Element& s, const DyadicRect& r) {
  for (const auto& p : s.pairs()) {
    if (!contains(p.dom, r)) continue;
    DyadicRect out;
    for (std::size_t i = 0; i < kDim; ++i) out[i] = p.ran[i] + r[i].substr(p.dom[i].size());
    return out;
  }
  return std::nullopt;
}

bool essential_at(const Element& g, const DyadicRect& r) {
  try {
    return is_essential(g, r).has_value();
  } catch (const Error&) {
    return false;
  }
}

// Essential origin rectangle inside the left quarter column, preferring one
// that also lies in the lower half (needed before C_0).
std::optional<DyadicRect> quarter_origin(const Element& h) {
  std::optional<DyadicRect> any;
  for (const auto& r : essential_origin_rects(h)) {
    if (r[0].size() < 2) continue;
    if (!r[1].empty()) return r;
    if (!any) any = r;
  }
  return any;
}

}  // namespace

GroupWord mirror_word(const GroupWord& w) {
  static const std::map<std::string, std::string> partner = {
      {"x_0", "y_0"},         {"y_0", "x_0"},         {"x_1", "y_1"},     {"y_1", "x_1"},
      {"xh_1", "yh_1"},       {"yh_1", "xh_1"},       {"alpha_0", "beta_0"}, {"beta_0", "alpha_0"},
      {"alpha_1", "beta_1"},  {"beta_1", "alpha_1"},  {"Bh_0", "gamma_0"}, {"gamma_0", "Bh_0"}};
  GroupWord out;
  for (const auto& l : w.letters) {
    if (l.symbol == "C_0") {
      out.letters.push_back({"C_0", -l.exponent});
      continue;
    }
    auto it = partner.find(l.symbol);
    if (it == partner.end()) throw Error(ErrorCode::kInvalidArgument, "no mirror partner for " + l.symbol);
    out.letters.push_back({it->second, l.exponent});
  }
  return out;
}

Subpath1Result subpath1(const Element& g, const GeneratorTable& table) {
  Subpath1Result res;
  Element h = g;
  auto rects = essential_origin_rects(h);
  auto pick = [](const std::vector<DyadicRect>& rs) -> std::optional<DyadicRect> {
    std::optional<DyadicRect> out;
    for (const auto& r : rs) {
      if (!r[0].empty()) out = r;
    }
    return out;
  };
  auto r0 = pick(rects);
  if (!r0) {
    res.orientation = Orientation::kHorizontal;
    h = mirror(g);
    r0 = pick(essential_origin_rects(h));
  }
  if (!r0) throw Error(ErrorCode::kNoEssentialOrigin, "no essential origin rectangle off the axis");
  bool vertical = res.orientation == Orientation::kVertical;
  res.r0 = *r0;

  GroupWord w;
  std::size_t a = (*r0)[0].size(), b = (*r0)[1].size();
  if (a >= 2) {
    res.case_label = 'a';
  } else if (b == 0) {
    res.case_label = 'b';
    w.letters.push_back({"xh_1", 1});
  } else {
    const Element& alpha = table.element_of("alpha_0");
    auto img = image_of(alpha, *r0);
    bool keeps = img && essential_at(multiply(h, alpha), *img);
    if (keeps) {
      res.case_label = b == 1 ? 'c' : 'e';
      w.letters.push_back({"alpha_0", 1});
    } else if (b == 1 && vertical) {
      res.case_label = 'd';
      w = parse_word("B_0 pi_1 x_0^-1");
    } else {
      res.case_label = b == 1 ? 'd' : 'f';
      w.letters.push_back({"alpha_1", 1});
    }
  }
  Element h1 = multiply(h, word_to_element(w, table));
  auto after = quarter_origin(h1);
  if (!after) {
    throw Error(ErrorCode::kNoEssentialOrigin,
                std::string("case (") + res.case_label + ") leaves no essential origin rectangle in the quarter strip");
  }
  res.r0_after = *after;
  res.word = vertical ? w : mirror_word(w);
  res.g1 = vertical ? h1 : mirror(h1);
  return res;
}

Subpath2Result subpath2(const Element& g1, std::size_t n1, const DivergenceParams& params,
                        const GeneratorTable& table, Orientation orientation,
                        const std::optional<TreePair>& tree_pair, std::size_t search_budget) {
  bool vertical = orientation == Orientation::kVertical;
  Element h1 = vertical ? g1 : mirror(g1);
  Subpath2Result res;
  TreePair tp;
  if (tree_pair) {
    tp = *tree_pair;
    res.minimal_pair = false;
  } else {
    try {
      tp = minimal_pair(h1, std::max(search_budget, 4 * n1));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExceeded) throw;
      throw Error(ErrorCode::kDecompositionUnavailable, std::string("minimal pair search failed: ") + e.what());
    }
  }
  PPiQ d = decompose_ppiq(tp);
  res.c_indices = extract_c_prefix(d.q);
  const auto& m = res.c_indices;
  long long mp = m.empty() ? 0 : static_cast<long long>(m.back());
  if (mp > 4 * static_cast<long long>(n1)) {
    throw Error(ErrorCode::kPreconditionViolated,
                "largest C index " + std::to_string(mp) + " exceeds 4 times the length bound");
  }
  long long k = params.M * static_cast<long long>(n1);
  if (params.exponent_cap) k = std::min(k, std::max(*params.exponent_cap, mp));
  res.exponent = k;

  GroupWord half;
  std::size_t first = 0;
  if (!m.empty() && m[0] == 0) {
    half.letters.push_back({"C_0", 1});
    first = 1;
  }
  for (std::size_t i = first; i < m.size(); ++i) {
    long long prev = i == 0 ? 0 : static_cast<long long>(m[i - 1]);
    long long gap = i == first ? static_cast<long long>(m[i]) - 1 : static_cast<long long>(m[i]) - prev - 1;
    half.append_power("x_0", -gap);
    half.letters.push_back({"Bh_0", 1});
  }
  half.append_power("x_0", -(k - mp));

  // Origin-rectangle bookkeeping along the first half.
  auto r0 = quarter_origin(h1);
  if (!r0) throw Error(ErrorCode::kPreconditionViolated, "no essential origin rectangle in the quarter strip");
  OriginTracker t = make_tracker(h1, *r0);
  for (std::size_t j = 0; j < half.letters.size(); ++j) {
    auto move = lemma_move_of(half.letters[j]);
    t = lemma31_step(t, *move, table);
    std::size_t len = j + 1;
    std::size_t lower = (t.sizes.back() + 7) / 8;
    res.evidence.emplace_back(len, lower);
    if (2 * len > n1 && 16 * lower <= n1) res.evidence_ok = false;
  }
  res.tracked_steps = half.letters.size();

  GroupWord w = half;
  w.letters.push_back({"x_1", 1});
  w.append(inverse_word(half));
  Element h2 = multiply(multiply(t.element, table.element_of("x_1")), inverse(word_to_element(half, table)));
  res.word = vertical ? w : mirror_word(w);
  res.g2 = vertical ? h2 : mirror(h2);
  return res;
}

GroupWord subpath3_5(const Element& h, const BallTable* ball_table, const std::optional<GroupWord>& known_word_for_h,
                     const GeneratorTable& table) {
  Element target = inverse(h);
  if (ball_table) {
    if (const BallNode* n = ball_table->find(target)) return n->witness;
  }
  if (known_word_for_h) {
    if (!equals_pointwise(word_to_element(*known_word_for_h, table), h)) {
      throw Error(ErrorCode::kInvalidArgument, "supplied word does not represent the element");
    }
    return free_reduce(inverse_word(*known_word_for_h));
  }
  throw Error(ErrorCode::kNotWithinRadius, "inverse is not within the ball and no word is known");
}

GroupWord omega4_word(char case_label, long long k) {
  std::string one, two;
  long long e = k;
  switch (case_label) {
    case 'A': one = "hxh_1"; two = "hxh_2"; e = k + 1; break;
    case 'B': one = "hx_1"; two = "hx_2"; e = k + 1; break;
    case 'C': one = "xh_1"; two = "xh_2"; break;
    case 'D': one = "x_1"; two = "x_2"; break;
    default: throw Error(ErrorCode::kInvalidArgument, std::string("unknown case ") + case_label);
  }
  GroupWord w;
  w.append_power(one, -e);
  w.letters.push_back({two, 1});
  w.append_power(one, e);
  return w;
}

GroupWord target_word(long long k) { return concat(omega4_word('C', k), omega4_word('D', k)); }

DyadicRect omega4_half(char case_label) {
  switch (case_label) {
    case 'A': return DyadicRect("", "0");
    case 'B': return DyadicRect("", "1");
    case 'C': return DyadicRect("0", "");
    case 'D': return DyadicRect("1", "");
    default: throw Error(ErrorCode::kInvalidArgument, std::string("unknown case ") + case_label);
  }
}

bool letters_supported_in(const GroupWord& w, const DyadicRect& half, const GeneratorTable& table) {
  DyadicRect rest = half;
  for (auto& word : rest.words) {
    if (word.size() != 1) continue;
    word[0] = word[0] == '0' ? '1' : '0';
  }
  if (rest == half) throw Error(ErrorCode::kInvalidArgument, "not a half: " + format_rect(half));
  std::set<std::string> seen;
  for (const auto& l : w.letters) {
    if (!seen.insert(l.symbol).second) continue;
    if (!is_identity_on(table.element_of(l.symbol), rest)) return false;
  }
  return true;
}

bool strip_product_identity(long long k, const GeneratorTable& table) {
  try {
    const Element& x0 = table.element_of("x_0");
    const Element& x1 = table.element_of("x_1");
    const std::pair<const char*, Element> strips[] = {{"hxh_1", restrict_to_strip(x0, "0")},
                                                      {"hxh_2", restrict_to_strip(x1, "0")},
                                                      {"hx_1", restrict_to_strip(x0, "1")},
                                                      {"hx_2", restrict_to_strip(x1, "1")}};
    for (const auto& [sym, e] : strips) {
      if (!equals(table.element_of(sym), e)) return false;
    }
    GroupWord conj;
    conj.append_power("x_0", -(k + 1));
    conj.letters.push_back({"x_1", 1});
    conj.append_power("x_0", k + 1);
    return word_to_line(conj, table) == word_to_line(omega4_word('D', k), table);
  } catch (const Error&) {
    return false;
  }
}

Subpath4Result subpath4(const Element& g3, long long k) {
  const std::pair<char, DyadicRect> halves[] = {
      {'C', DyadicRect("0", "")}, {'D', DyadicRect("1", "")}, {'A', DyadicRect("", "0")}, {'B', DyadicRect("", "1")}};
  for (const auto& [label, half] : halves) {
    if (is_identity_on(g3, half)) return {omega4_word(label, k), label};
  }
  throw Error(ErrorCode::kNoIdentityHalf, "the element moves points in every half");
}

GroupWord subpath6(char case_label, long long k) {
  switch (case_label) {
    case 'A': return concat(omega4_word('B', k), omega4_word('C', k));
    case 'B': return concat(omega4_word('A', k), omega4_word('C', k));
    case 'C': return omega4_word('D', k);
    case 'D': return omega4_word('C', k);
    default: throw Error(ErrorCode::kInvalidArgument, std::string("unknown case ") + case_label);
  }
}

}  // namespace nv
