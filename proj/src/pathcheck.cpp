#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "nv/divergence.hpp"
#include "nv/error.hpp"
#include "nv/gridform.hpp"

namespace nv {

namespace {

enum class Match { kYes, kNo, kShort };

Match match_prefix(const std::deque<char>& img, const BinaryWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i >= img.size()) return Match::kShort;
    if (img[i] != w[i]) return Match::kNo;
  }
  return Match::kYes;
}

// A point of the Cantor square followed along the path. `orig` holds the
// known bits of the point, `img` those of its current image; both share the
// same unread tail, so extending them by equal bits keeps them consistent.
struct Probe {
  std::array<std::string, kDim> orig;
  std::array<std::deque<char>, kDim> img;
};

class ProbeSet {
 public:
  explicit ProbeSet(std::uint64_t seed) : rng_(seed) {}

  void add_random(std::size_t count, const DyadicRect& region = DyadicRect()) {
    for (std::size_t n = 0; n < count; ++n) {
      Probe p;
      for (std::size_t c = 0; c < kDim; ++c) {
        p.orig[c] = region[c] + bits(32);
        p.img[c].assign(p.orig[c].begin(), p.orig[c].end());
      }
      probes_.push_back(std::move(p));
    }
  }

  // Adds points of `region` certified to move under h, taken from its
  // moving pairs.
  // With `mapped` false the points start unmoved instead.
  void add_moved(const Element& h, std::size_t count, const DyadicRect& region = DyadicRect(), bool mapped = true) {
    std::vector<RectPair> moving;
    for (const auto& p : h.pairs()) {
      if (p.dom == p.ran || !comparable(p.dom[0], region[0]) || !comparable(p.dom[1], region[1])) continue;
      RectPair q = p;
      for (std::size_t c = 0; c < kDim; ++c) {
        if (region[c].size() <= p.dom[c].size()) continue;
        q.dom[c] = region[c];
        q.ran[c] = p.ran[c] + region[c].substr(p.dom[c].size());
      }
      moving.push_back(std::move(q));
    }
    if (moving.empty()) return;
    for (std::size_t n = 0; n < count && probes_.size() < kMaxProbes; ++n) {
      const RectPair& rp = moving[(n * (moving.size() - 1)) / std::max<std::size_t>(1, count - 1)];
      Probe p;
      for (std::size_t c = 0; c < kDim; ++c) {
        std::string tail = bits(24);
        p.orig[c] = rp.dom[c] + tail;
        std::string im = (mapped ? rp.ran[c] : rp.dom[c]) + tail;
        p.img[c].assign(im.begin(), im.end());
      }
      if (!mapped || moved(p)) probes_.push_back(std::move(p));
    }
  }

  void apply(const Element& s) {
    for (auto& p : probes_) apply_one(p, s);
  }

  // True when some probe is certified to have moved.
  bool any_moved() {
    for (std::size_t n = 0; n < probes_.size(); ++n) {
      std::size_t i = (last_ + n) % probes_.size();
      if (moved(probes_[i])) {
        last_ = i;
        return true;
      }
    }
    return false;
  }

 private:
  static constexpr std::size_t kMaxProbes = 64;

  std::string bits(std::size_t n) {
    std::string out(n, '0');
    for (auto& ch : out) ch = (rng_() & 1) ? '1' : '0';
    return out;
  }

  void extend(Probe& p, std::size_t c, std::size_t n) {
    std::string b = bits(n);
    p.orig[c] += b;
    p.img[c].insert(p.img[c].end(), b.begin(), b.end());
  }

  void apply_one(Probe& p, const Element& s) {
    for (;;) {
      bool need[kDim] = {false, false};
      for (const auto& rp : s.pairs()) {
        Match m[kDim];
        for (std::size_t c = 0; c < kDim; ++c) m[c] = match_prefix(p.img[c], rp.dom[c]);
        if (m[0] == Match::kNo || m[1] == Match::kNo) continue;
        if (m[0] == Match::kYes && m[1] == Match::kYes) {
          for (std::size_t c = 0; c < kDim; ++c) {
            p.img[c].erase(p.img[c].begin(), p.img[c].begin() + static_cast<std::ptrdiff_t>(rp.dom[c].size()));
            p.img[c].insert(p.img[c].begin(), rp.ran[c].begin(), rp.ran[c].end());
          }
          return;
        }
        for (std::size_t c = 0; c < kDim; ++c) need[c] = need[c] || m[c] == Match::kShort;
      }
      if (!need[0] && !need[1]) throw Error(ErrorCode::kInvalidElement, "domain pattern does not cover the point");
      for (std::size_t c = 0; c < kDim; ++c) {
        if (need[c]) extend(p, c, 16);
      }
    }
  }

  bool moved(Probe& p) {
    for (int round = 0; round < 4; ++round) {
      bool undecided = false;
      for (std::size_t c = 0; c < kDim; ++c) {
        const auto& o = p.orig[c];
        const auto& im = p.img[c];
        std::size_t n = std::min(o.size(), im.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (o[i] != im[i]) return true;
        }
        if (o.size() != im.size()) undecided = true;
      }
      if (!undecided) return false;
      for (std::size_t c = 0; c < kDim; ++c) {
        if (p.orig[c].size() != p.img[c].size()) extend(p, c, 16);
      }
    }
    return false;
  }

  std::mt19937_64 rng_;
  std::vector<Probe> probes_;
  std::size_t last_ = 0;
};

GroupWord slice(const GroupWord& w, std::size_t from, std::size_t to) {
  GroupWord out;
  out.letters.assign(w.letters.begin() + static_cast<std::ptrdiff_t>(from),
                     w.letters.begin() + static_cast<std::ptrdiff_t>(to));
  return out;
}

std::string fmt_half(Orientation o) { return o == Orientation::kVertical ? "vertical" : "horizontal"; }

}  // namespace

PrefixScan scan_prefixes(const std::vector<Element>& checkpoints, const std::vector<std::size_t>& offsets,
                         const GroupWord& word, const GeneratorTable& table, std::uint64_t seed) {
  if (checkpoints.empty() || checkpoints.size() != offsets.size() || offsets.front() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "checkpoints must start at offset 0");
  }
  std::map<std::pair<std::string, int>, Element> letter_elements;
  for (const auto& l : word.letters) {
    auto key = std::make_pair(l.symbol, l.exponent);
    if (!letter_elements.count(key)) {
      const Element& g = table.element_of(l.symbol);
      letter_elements.emplace(key, l.exponent > 0 ? g : inverse(g));
    }
  }
  // Probes always follow the exact element last computed, then the letters
  // read since.
  ProbeSet probes(seed);
  auto restart = [&](const Element& h, std::size_t i) {
    probes = ProbeSet(seed + i);
    probes.add_random(16);
    probes.apply(h);
    probes.add_moved(h, 4);
  };
  PrefixScan scan;
  std::size_t cp = 0;
  for (std::size_t i = 0; i <= word.length(); ++i) {
    while (cp + 1 < offsets.size() && offsets[cp + 1] <= i) ++cp;
    ++scan.prefixes;
    if (offsets[cp] == i) {
      if (checkpoints[cp].is_identity()) {
        ++scan.identity;
      } else {
        ++scan.exact;
      }
      restart(checkpoints[cp], i);
    } else if (probes.any_moved()) {
      ++scan.by_probe;
    } else {
      Element h = compose(checkpoints[cp], word_to_element(slice(word, offsets[cp], i), table));
      if (h.is_identity()) {
        ++scan.identity;
      } else {
        ++scan.exact;
      }
      restart(h, i);
    }
    if (i < word.length()) {
      const auto& l = word.letters[i];
      probes.apply(letter_elements.at({l.symbol, l.exponent}));
    }
  }
  return scan;
}

namespace {

// Points of H moved by u, pushed through omega_4 and then u.
bool moved_through(const Element& u, const GroupWord& w4, const DyadicRect& half, const GeneratorTable& table,
                   std::uint64_t seed) {
  ProbeSet probes(seed);
  probes.add_moved(u, 8, half, false);
  for (const auto& l : w4.letters) {
    const Element& e = table.element_of(l.symbol);
    probes.apply(l.exponent > 0 ? e : inverse(e));
  }
  probes.apply(u);
  return probes.any_moved();
}

PrefixScan scan_off_half(const Element& g3, const DyadicRect& half, const GroupWord& w4, const GroupWord& w5,
                         const GeneratorTable& table, std::uint64_t seed) {
  DyadicRect rest = half;
  for (auto& word : rest.words) {
    if (word.size() == 1) word[0] = word[0] == '0' ? '1' : '0';
  }
  ProbeSet probes(seed);
  probes.add_random(16, rest);
  probes.apply(g3);
  probes.add_moved(g3, 8, rest);
  PrefixScan scan;
  for (std::size_t j = 1; j <= w5.length(); ++j) {
    const auto& l = w5.letters[j - 1];
    const Element& e = table.element_of(l.symbol);
    probes.apply(l.exponent > 0 ? e : inverse(e));
    ++scan.prefixes;
    if (probes.any_moved()) {
      ++scan.by_probe;
      continue;
    }
    Element u = multiply(g3, word_to_element(slice(w5, 0, j), table));
    if (!is_identity_on(u, rest)) {
      ++scan.exact;
      probes.add_moved(u, 4, rest);
    } else if (u.is_identity()) {
      ++scan.exact;  // the prefix is omega_4 itself
    } else if (moved_through(u, w4, half, table, seed + j)) {
      ++scan.exact;
    } else {
      ++scan.unresolved;
    }
  }
  return scan;
}

}  // namespace

PathCertificate build_path(const Element& g, const DivergenceParams& params, const LengthInput& length,
                           const GeneratorTable& table) {
  params.validate();
  table.require_complete();
  PathCertificate c;
  c.element = format_element(reduce_pair(g));

  GroupWord wg;
  if (length.ball && length.ball->find(g)) {
    c.length = exact_length(g, *length.ball);
    wg = *c.length.witness;
  } else if (length.word) {
    if (!equals_pointwise(word_to_element(*length.word, table), g)) {
      throw Error(ErrorCode::kInvalidArgument, "supplied word does not represent the element");
    }
    wg = *length.word;
    if (length.ball) {
      c.length = exact_length(g, *length.ball, wg);
    } else {
      c.length.lower = length_lower_bound(g);
      c.length.upper = wg.length();
      c.length.exact = c.length.lower == c.length.upper;
      c.length.witness = wg;
    }
  } else {
    throw Error(ErrorCode::kPreconditionViolated, "no ball and no word to certify the length of the element");
  }
  c.n_hat = c.length.exact ? c.length.lower : wg.length();
  c.length_mode = c.length.exact ? "exact" : "upper";
  if (c.n_hat < 4) {
    throw Error(ErrorCode::kPreconditionViolated, "certified length " + std::to_string(c.n_hat) + " is below 4");
  }
  long long n = static_cast<long long>(c.n_hat);

  Subpath1Result s1 = subpath1(g, table);
  c.orientation = s1.orientation;
  c.case1 = s1.case_label;
  std::size_t n1 = c.n_hat + s1.word.length();

  Subpath2Result s2;
  try {
    s2 = subpath2(s1.g1, n1, params, table, s1.orientation);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDecompositionUnavailable) throw;
    Element h1 = s1.orientation == Orientation::kVertical ? s1.g1 : mirror(s1.g1);
    s2 = subpath2(s1.g1, n1, params, table, s1.orientation, element_to_tree_pair(h1));
  }
  c.c_indices = s2.c_indices;
  c.minimal_pair = s2.minimal_pair;
  c.exponent2 = s2.exponent;
  c.lemma_evidence_ok = s2.evidence_ok;

  GroupWord w1 = concat(wg, s1.word);
  GroupWord w3 = subpath3_5(s1.g1, length.ball, w1, table);
  Element g3 = multiply(s2.g2, word_to_element(w3, table));

  long long k4 = params.Q * n;
  if (params.exponent_cap) k4 = std::min(k4, *params.exponent_cap);
  c.capped = params.exponent_cap.has_value();
  c.exponent4 = k4;
  Subpath4Result s4 = subpath4(g3, k4);
  c.case4 = s4.case_label;
  GroupWord known3 = concat(concat(inverse_word(w3), s2.word), w3);
  GroupWord w5 = subpath3_5(g3, nullptr, known3, table);
  GroupWord w6 = subpath6(s4.case_label, k4);

  c.subwords = {s1.word, s2.word, w3, s4.word, w5, w6};
  c.boundaries = {0};
  GroupWord omega;
  for (const auto& w : c.subwords) {
    omega.append(w);
    c.boundaries.push_back(omega.length());
  }
  c.total_length = omega.length();

  // Endpoint from exact facts that do not need the Q n sized elements:
  // g3 is supported off the half H of omega_4, so they commute; omega_5
  // inverts g3; what remains is omega_4 omega_6, which equals the target
  // by disjoint supports and, in cases A and B, the strip identity.
  const char label = s4.case_label;
  DyadicRect half = omega4_half(label);
  bool g3_ok = !g3.is_identity() && is_identity_on(g3, half);
  bool omega4_ok = letters_supported_in(s4.word, half, table) &&
                   !table.element_of(s4.word.letters[s4.word.length() / 2].symbol).is_identity();
  c.commute_ok = g3_ok && omega4_ok;
  Element e5 = word_to_element(w5, table);
  bool inverse_ok = multiply(g3, e5).is_identity();
  auto supported = [&](char l) { return letters_supported_in(omega4_word(l, k4), omega4_half(l), table); };
  bool tail_ok = supported('C') && supported('D');
  if (label == 'A' || label == 'B') {
    tail_ok = tail_ok && supported('A') && supported('B') && strip_product_identity(k4, table);
  }
  tail_ok = tail_ok && concat(omega4_word('C', k4), omega4_word('D', k4)) == target_word(k4);
  c.endpoint_ok = c.commute_ok && inverse_ok && tail_ok;

  // Prefixes up to g3 are walked with probes against exact checkpoints.
  std::size_t b3 = c.boundaries[3], b4 = c.boundaries[4], b5 = c.boundaries[5], b6 = c.boundaries[6];
  PrefixScan scan = scan_prefixes({g, s1.g1, s2.g2, g3}, {0, c.boundaries[1], c.boundaries[2], b3},
                                  slice(omega, 0, b3), table, params.seed);
  // Inside omega_4 and omega_6 every prefix is a product of two elements
  // with disjoint supports, the first of which is not the identity.
  std::size_t support_prefixes = (b4 - b3) + (b6 - b5);
  if (c.commute_ok && tail_ok) {
    c.certified_by_support = support_prefixes;
  } else {
    scan.unresolved += support_prefixes;
  }
  scan.prefixes += support_prefixes;
  // Inside omega_5 the prefix is omega_4 u with u = g3 omega_5'; a point off
  // H moved by u is moved by the prefix.
  PrefixScan tail = scan_off_half(g3, half, s4.word, w5, table, params.seed + 1);
  scan.prefixes += tail.prefixes;
  scan.by_probe += tail.by_probe;
  scan.exact += tail.exact;
  scan.identity += tail.identity;
  scan.unresolved += tail.unresolved;

  if (k4 <= kDirectLimit) {
    c.direct_checked = true;
    Element e4 = word_to_element(s4.word, table);
    c.commute_ok = c.commute_ok && equals_pointwise(compose(g3, e4), compose(e4, g3));
    Element g4 = multiply(g3, e4);
    Element g5 = multiply(g4, e5);
    Element fin = multiply(g5, word_to_element(w6, table));
    c.endpoint_ok = c.endpoint_ok && equals_pointwise(fin, word_to_element(target_word(k4), table));
    PrefixScan direct = scan_prefixes({g, s1.g1, s2.g2, g3, g4, g5, fin},
                                      std::vector<std::size_t>(c.boundaries.begin(), c.boundaries.end()), omega,
                                      table, params.seed);
    scan.identity += direct.identity;
  }

  long long M = params.M, Q = params.Q;
  auto line = [&](std::string name, std::size_t len, long long bound, bool strict) {
    bool ok = strict ? static_cast<long long>(len) < bound : static_cast<long long>(len) <= bound;
    c.budgets.push_back({std::move(name), len, bound, strict, ok});
  };
  line("omega_1 <= 3", s1.word.length(), 3, false);
  line("omega_2 < 4Mn", s2.word.length(), 4 * M * n, true);
  bool zero_branch = !s2.c_indices.empty() && s2.c_indices.front() == 0;
  long long shape = 2 * s2.exponent + 1 + (zero_branch ? 2 : 0);
  c.budgets.push_back({"omega_2 letter count", s2.word.length(), shape, false,
                       static_cast<long long>(s2.word.length()) == shape});
  line("omega_3 <= 2n", w3.length(), 2 * n, false);
  line("omega_4 <= 3Qn", s4.word.length(), 3 * Q * n, false);
  line("omega_5 <= 5Mn", w5.length(), 5 * M * n, false);
  line("omega_6 <= 6Qn", w6.length(), 6 * Q * n, false);
  c.budgets_ok = std::all_of(c.budgets.begin(), c.budgets.end(), [](const BudgetLine& b) { return b.ok; });
  c.length_ok = static_cast<long long>(c.total_length) < params.D() * n;

  c.prefixes = scan.prefixes;
  c.certified_by_probe = scan.by_probe;
  c.certified_exact = scan.exact;
  c.identity_prefixes = scan.identity;
  c.unresolved_prefixes = scan.unresolved;
  // A non-identity prefix has length at least 1, which exceeds delta n
  // exactly when delta n < 1.
  bool small_radius = params.delta.num * n < params.delta.den;
  c.avoidance_ok = scan.identity == 0 && scan.unresolved == 0 && small_radius;

  for (std::size_t j = 0; j <= s1.word.length(); ++j) {
    Element h = multiply(g, word_to_element(slice(s1.word, 0, j), table));
    PrefixEvidence ev{j, h.is_identity() ? 0u : 1u, std::nullopt};
    if (length.ball) {
      if (const BallNode* node = length.ball->find(h)) {
        ev.exact = node->distance;
      } else {
        ev.lower = std::max(ev.lower, length.ball->radius() + 1);
      }
    }
    c.evidence.push_back(ev);
  }
  for (const auto& [len, lower] : s2.evidence) {
    c.evidence.push_back({c.boundaries[1] + len, lower, std::nullopt});
  }
  return c;
}

std::string format_certificate(const PathCertificate& c) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "true" : "false"; };
  out << "element:\n" << c.element;
  out << "length_mode: " << c.length_mode << "\n";
  out << "length_lower: " << c.length.lower << "\n";
  out << "length_upper: " << c.length.upper << "\n";
  out << "n_hat: " << c.n_hat << "\n";
  out << "orientation: " << fmt_half(c.orientation) << "\n";
  out << "subpath1_case: " << c.case1 << "\n";
  out << "tree_pair: " << (c.minimal_pair ? "minimal" : "derived") << "\n";
  out << "c_indices:";
  for (auto m : c.c_indices) out << " " << m;
  out << "\n";
  out << "exponent_2: " << c.exponent2 << "\n";
  out << "exponent_4: " << c.exponent4 << (c.capped ? " (capped)" : "") << "\n";
  out << "subpath4_case: " << c.case4 << "\n";
  for (std::size_t i = 0; i < c.subwords.size(); ++i) {
    out << "omega_" << i + 1 << ": [" << c.subwords[i].length() << "] " << format_word(c.subwords[i]) << "\n";
  }
  out << "boundaries:";
  for (auto b : c.boundaries) out << " " << b;
  out << "\n";
  out << "total_length: " << c.total_length << "\n";
  for (const auto& b : c.budgets) {
    out << "budget: " << b.name << " : " << b.length << (b.strict ? " < " : " <= ") << b.bound << " "
        << (b.ok ? "ok" : "FAIL") << "\n";
  }
  out << "length_check: " << yes(c.length_ok) << "\n";
  out << "endpoint_check: " << yes(c.endpoint_ok) << "\n";
  out << "commute_check: " << yes(c.commute_ok) << "\n";
  out << "endpoint_mode: " << (c.direct_checked ? "factored+direct" : "factored") << "\n";
  out << "prefixes: " << c.prefixes << " probe=" << c.certified_by_probe << " exact=" << c.certified_exact
      << " support=" << c.certified_by_support << " identity=" << c.identity_prefixes
      << " unresolved=" << c.unresolved_prefixes << "\n";
  out << "avoidance_check: " << yes(c.avoidance_ok) << "\n";
  out << "lemma_evidence_check: " << yes(c.lemma_evidence_ok) << "\n";
  for (const auto& e : c.evidence) {
    out << "evidence: prefix=" << e.prefix << " lower=" << e.lower;
    if (e.exact) out << " exact=" << *e.exact;
    out << "\n";
  }
  out << "certificate: " << (c.ok() ? "valid" : "INVALID") << "\n";
  return out.str();
}

}  // namespace nv
