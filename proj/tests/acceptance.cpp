// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "nv/divergence.hpp"
#include "nv/gridform.hpp"
#include "nv/metric.hpp"
#include "nv/treealg.hpp"
#include "support.hpp"

using namespace nv;

namespace {

// Pinned sizes and limits.
constexpr std::size_t kLawWords = 10000;
constexpr std::size_t kLawMaxLength = 8;
constexpr double kLawSeconds = 300.0;
constexpr std::size_t kEqualPairs = 10000;
constexpr std::size_t kOraclePoints = 100;
constexpr std::size_t kOracleDepth = 24;
constexpr std::size_t kOracleSecondPass = 2000;
constexpr std::size_t kOracleDeepDepth = 40;
constexpr std::size_t kSchedules = 200;
constexpr std::size_t kBallRadius = 3;
constexpr std::size_t kLemmaStates = 1000;
constexpr std::size_t kLemmaWordLimit = 20000;
constexpr std::size_t kRewriteMaxP = 3;
constexpr std::size_t kRewriteMaxIndex = 6;
constexpr long long kCappedExponent = 6;
constexpr std::size_t kDistanceFourSamples = 100;
constexpr std::size_t kLongWords = 20;
constexpr std::size_t kLongLength = 12;
constexpr std::size_t kPhiMaxX = 3;

const GeneratorTable& table() { return GeneratorTable::builtin(); }

Element w(const GroupWord& word) { return word_to_element(word, table()); }

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GroupWord short_word(nvtest::Rng& rng) { return nvtest::random_word(rng, 1 + rng() % kLawMaxLength); }

bool comparable_words(const std::string& a, const std::string& b) {
  auto n = std::min(a.size(), b.size());
  return a.compare(0, n, b, 0, n) == 0;
}

bool differ_at(const GroupWord& a, const GroupWord& b, const PrefixPoint& p) {
  auto pa = nvtest::apply_word(a, table(), p);
  auto pb = nvtest::apply_word(b, table(), p);
  return !comparable_words(pa.u1, pb.u1) || !comparable_words(pa.u2, pb.u2);
}

// Evaluates both words letter by letter at the same points. If uniform
// points agree, a second pass pulls uniform points back through a random
// prefix of a word, so differences in small compressed regions show up.
bool oracle_same(const GroupWord& a, const GroupWord& b, nvtest::Rng& rng) {
  for (std::size_t i = 0; i < kOraclePoints; ++i) {
    if (differ_at(a, b, nvtest::random_point(rng, kOracleDepth))) return false;
  }
  for (std::size_t i = 0; i < kOracleSecondPass; ++i) {
    const GroupWord& src = i % 2 ? a : b;
    GroupWord prefix;
    auto cut = rng() % (src.letters.size() + 1);
    prefix.letters.assign(src.letters.begin(), src.letters.begin() + static_cast<long>(cut));
    auto p = nvtest::apply_word(inverse_word(prefix), table(), nvtest::random_point(rng, kOracleDeepDepth));
    if (differ_at(a, b, p)) return false;
  }
  return true;
}

void group_laws() {
  auto t0 = std::chrono::steady_clock::now();
  nvtest::Rng rng(1001);
  std::size_t bad = 0;
  const std::string e = canonical_key(identity());
  for (std::size_t i = 0; i < kLawWords; ++i) {
    auto f = w(short_word(rng)), g = w(short_word(rng)), h = w(short_word(rng));
    if (canonical_key(multiply(multiply(f, g), h)) != canonical_key(multiply(f, multiply(g, h)))) ++bad;
    auto kf = canonical_key(f);
    if (canonical_key(multiply(f, identity())) != kf || canonical_key(multiply(identity(), f)) != kf) ++bad;
    if (canonical_key(multiply(f, inverse(f))) != e || canonical_key(multiply(inverse(f), f)) != e) ++bad;
  }
  double s = seconds_since(t0);
  std::ostringstream d;
  d << kLawWords << " triples, " << bad << " violations, " << s << " s";
  report(1, "group laws", bad == 0 && s < kLawSeconds, d.str());
}

void normal_form_soundness() {
  nvtest::Rng rng(1002);
  std::size_t disagree = 0, equal_pairs = 0;
  for (std::size_t i = 0; i < kEqualPairs; ++i) {
    GroupWord a = short_word(rng), b;
    switch (i % 3) {
      case 0:
        b = short_word(rng);
        break;
      case 1: {
        // a with a cancelling detour spliced in
        auto u = nvtest::random_word(rng, 1 + rng() % 3);
        std::size_t at = rng() % (a.length() + 1);
        b.letters.assign(a.letters.begin(), a.letters.begin() + static_cast<long>(at));
        b.append(u);
        b.append(inverse_word(u));
        b.letters.insert(b.letters.end(), a.letters.begin() + static_cast<long>(at), a.letters.end());
        break;
      }
      default:
        b = a;
        b.append(nvtest::random_word(rng, 1));
        break;
    }
    bool lib = equals(w(a), w(b));
    equal_pairs += lib;
    if (lib != oracle_same(a, b, rng)) ++disagree;
  }
  // Reduction schedules: subdivide, then reduce in seeded random orders.
  std::size_t split = 0;
  for (std::size_t i = 0; i < kSchedules; ++i) {
    auto g = w(nvtest::random_word(rng, 1 + rng() % 3));
    GridDiagram nf = normal_form(g);
    GridDiagram big = global_subdivide(global_subdivide(nf, Axis::kVertical, 0), Axis::kHorizontal, 0);
    GridDiagram r = reduce_grid(big, rng());
    if (format_element(r.element) != format_element(nf.element)) ++split;
  }
  std::ostringstream d;
  d << kEqualPairs << " pairs (" << equal_pairs << " equal), " << disagree << " disagreements; " << kSchedules
    << " schedules, " << split << " non-confluent";
  report(2, "normal-form soundness", disagree == 0 && split == 0, d.str());
}

void metric_bounds(const BallTable& b) {
  std::size_t bad = 0;
  for (const auto& n : b.nodes()) {
    if (length_lower_bound(n.element) > n.distance) ++bad;
    auto code = nvtest::error_of([&] { minimal_target_depth(n.element, 4 * n.distance); });
    if (code != ErrorCode::kOk) ++bad;
  }
  std::ostringstream d;
  d << b.size() << " elements within radius " << b.radius() << ", " << bad << " violations";
  report(3, "metric bounds", bad == 0, d.str());
}

void lemma_table() {
  nvtest::Rng rng(1004);
  std::array<std::size_t, 6> ok{};
  std::size_t bad = 0, words = 0;
  auto done = [&] { return *std::min_element(ok.begin(), ok.end()) >= kLemmaStates; };
  for (; words < kLemmaWordLimit && !done(); ++words) {
    auto word = nvtest::random_word(rng, 1 + rng() % 8);
    word.append_power("x_0", -static_cast<long long>(rng() % 4));
    word.append_power("y_0", -static_cast<long long>(rng() % 4));
    auto g = w(word);
    for (const auto& r : essential_origin_rects(g)) {
      auto st = make_tracker(g, r);
      for (int m = 0; m < 6; ++m) {
        auto move = static_cast<LemmaMove>(m);
        OriginTracker next;
        auto code = nvtest::error_of([&] { next = lemma31_step(st, move, table()); });
        if (code == ErrorCode::kPreconditionViolated) continue;
        if (code != ErrorCode::kOk) {
          ++bad;
          continue;
        }
        ++ok[m];
        // Independent checks: the letter carries r onto next.r0 by prefix
        // replacement, inside the 1/8 strip at the origin, still essential.
        GroupWord letter{{lemma_letter(move)}};
        bool vertical = move == LemmaMove::kX0Inv || move == LemmaMove::kBh0 || move == LemmaMove::kC0;
        bool good = next.r0[vertical ? 0 : 1].rfind("000", 0) == 0;
        good = good && next.r0[0].find('1') == std::string::npos && next.r0[1].find('1') == std::string::npos;
        good = good && rect_size(next.r0) == rect_size(r) + static_cast<std::size_t>(lemma_size_delta(move));
        good = good && equals(next.element, multiply(g, w(letter)));
        good = good && is_essential(next.element, next.r0).has_value();
        for (int k = 0; k < 8 && good; ++k) {
          auto t1 = nvtest::random_bits(rng, 20), t2 = nvtest::random_bits(rng, 20);
          auto q = nvtest::apply_word(letter, table(), {r[0] + t1, r[1] + t2});
          good = q.u1 == next.r0[0] + t1 && q.u2 == next.r0[1] + t2;
        }
        if (!good) ++bad;
      }
    }
  }
  std::ostringstream d;
  d << words << " words, states per move";
  for (auto c : ok) d << ' ' << c;
  d << ", " << bad << " violations";
  report(4, "origin rectangle table", done() && bad == 0, d.str());
}

GroupWord c_word(std::size_t m) { return parse_word("C_" + std::to_string(m)); }

// x_0^-(m1-1) Bh_0 x_0^-(m2-m1-1) ... Bh_0 x_0^mp, with C_0 in front when m1 = 0.
GroupWord rewritten(const std::vector<std::size_t>& ms) {
  GroupWord out;
  std::size_t start = 0;
  if (ms.front() == 0) {
    out.append(c_word(0));
    start = 1;
  }
  if (start == ms.size()) return out;
  long long prev = 0;
  bool first = true;
  for (std::size_t i = start; i < ms.size(); ++i) {
    auto m = static_cast<long long>(ms[i]);
    out.append_power("x_0", first ? -(m - 1) : -(m - prev - 1));
    out.append(parse_word("Bh_0"));
    prev = m;
    first = false;
  }
  out.append_power("x_0", prev);
  return out;
}

void rewriting_identity() {
  std::size_t sets = 0, bad = 0;
  std::function<void(std::vector<std::size_t>&, std::size_t)> each = [&](std::vector<std::size_t>& ms,
                                                                         std::size_t from) {
    if (!ms.empty()) {
      ++sets;
      GroupWord lhs, conj;
      for (auto m : ms) {
        lhs.append(c_word(m));
        if (m == 0) {
          conj.append(c_word(0));
        } else {
          conj.append_power("x_0", -static_cast<long long>(m - 1));
          conj.append(c_word(1));
          conj.append_power("x_0", static_cast<long long>(m - 1));
        }
      }
      auto key = canonical_key(w(lhs));
      if (canonical_key(w(conj)) != key || canonical_key(w(rewritten(ms))) != key) ++bad;
    }
    if (ms.size() == kRewriteMaxP) return;
    for (std::size_t m = from; m <= kRewriteMaxIndex; ++m) {
      ms.push_back(m);
      each(ms, m + 1);
      ms.pop_back();
    }
  };
  std::vector<std::size_t> ms;
  each(ms, 0);
  std::ostringstream d;
  d << sets << " index sets, " << bad << " failures";
  report(5, "C-word rewriting", bad == 0, d.str());
}

void product_identities() {
  std::size_t bad = 0;
  for (long long k = 0; k <= kCappedExponent; ++k) {
    if (!equals(w(concat(omega4_word('A', k), omega4_word('B', k))), w(omega4_word('D', k)))) ++bad;
    if (!equals(w(concat(omega4_word('C', k), omega4_word('D', k))), w(target_word(k)))) ++bad;
  }
  std::ostringstream d;
  d << "exponents 0.." << kCappedExponent << ", " << bad << " failures";
  report(6, "product identities", bad == 0, d.str());
}

void full_scale(const BallTable& b) {
  auto t0 = std::chrono::steady_clock::now();
  nvtest::Rng rng(1007);
  LetterSet letters = LetterSet::of(table());
  DivergenceParams p;  // M = 100, Q = 4800
  const long long bound = p.D() * 4;
  std::size_t bad = 0, d4 = 0, longer = 0;
  std::string first_bad;
  auto note = [&](const GroupWord& word, const std::string& why) {
    ++bad;
    if (first_bad.empty()) first_bad = format_word(word) + ": " + why;
  };
  const auto& s3 = b.sphere(3);
  while (d4 < kDistanceFourSamples) {
    auto id = s3[rng() % s3.size()];
    auto j = rng() % letters.letters.size();
    Element g = multiply(b.nodes()[id].element, letters.elements[j]);
    if (b.find(g)) continue;
    GroupWord word = b.nodes()[id].witness;
    word.letters.push_back(letters.letters[j]);
    ++d4;
    PathCertificate c;
    auto code = nvtest::error_of([&] { c = build_path(g, p, {&b, word}, table()); });
    if (code != ErrorCode::kOk) {
      note(word, error_code_name(code));
      continue;
    }
    bool good = c.n_hat == 4 && c.length_mode == "exact" && c.endpoint_ok && c.budgets_ok && c.length_ok &&
                static_cast<long long>(c.total_length) < bound && c.identity_prefixes == 0 &&
                c.unresolved_prefixes == 0 && c.ok();
    if (!good) note(word, "certificate checks");
  }
  while (longer < kLongWords) {
    GroupWord word;
    while (word.length() < kLongLength) {
      auto j = rng() % letters.letters.size();
      const auto& l = letters.letters[j];
      if (!word.letters.empty() && word.letters.back().symbol == l.symbol && word.letters.back().exponent == -l.exponent) {
        continue;
      }
      word.letters.push_back(l);
    }
    Element g = w(word);
    if (b.find(g)) continue;
    ++longer;
    PathCertificate c;
    auto code = nvtest::error_of([&] { c = build_path(g, p, {nullptr, word}, table()); });
    if (code != ErrorCode::kOk) {
      note(word, error_code_name(code));
      continue;
    }
    if (!(c.length_mode == "upper" && c.n_hat == word.length() && c.endpoint_ok && c.budgets_ok)) {
      note(word, "certificate checks");
    }
  }
  std::ostringstream d;
  d << d4 << " elements at distance 4, " << longer << " words of length " << kLongLength << ", " << bad
    << " failures, " << seconds_since(t0) << " s";
  if (!first_bad.empty()) d << "; first: " << first_bad;
  report(7, "full-scale paths", bad == 0, d.str());
}

struct PhiRow {
  std::size_t lower = 0, upper = 0;
  bool exact = false;
};

std::map<std::size_t, PhiRow> read_fixture() {
  std::map<std::size_t, PhiRow> out;
  std::ifstream in(std::string(NV_SOURCE_DIR) + "/tests/fixtures/phi.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream s(line);
    std::string x, lo, hi, ex;
    std::getline(s, x, ',');
    std::getline(s, lo, ',');
    std::getline(s, hi, ',');
    std::getline(s, ex, ',');
    if (x.empty()) continue;
    out[std::stoul(x)] = {std::stoul(lo), std::stoul(hi), ex == "1"};
  }
  return out;
}

void divergence(const BallTable& b) {
  auto t0 = std::chrono::steady_clock::now();
  DivergenceParams p;
  auto fixture = read_fixture();
  bool pass = true;
  std::ostringstream d;
  std::size_t prev_lower = 0;
  for (std::size_t x = 1; x <= kPhiMaxX; ++x) {
    auto v = empirical_divergence(x, p.delta, b, table());
    d << "phi(" << x << ")";
    if (v.exact) {
      d << "=" << v.lower;
    } else {
      d << " in [" << v.lower << "," << v.upper << "]";
    }
    d << " " << v.method << "; ";
    auto it = fixture.find(x);
    bool matches = it != fixture.end() && it->second.lower == v.lower && it->second.upper == v.upper &&
                   it->second.exact == v.exact;
    if (!matches) d << "fixture mismatch; ";
    // phi(x) >= phi(x-1) is contradicted only if this interval ends below the last one.
    bool monotone = v.upper >= prev_lower;
    if (!monotone) d << "not monotone; ";
    bool bounded = static_cast<long long>(v.upper) <= p.D() * static_cast<long long>(x);
    if (!bounded) d << "exceeds D x; ";
    if (!v.exact) d << "not exact; ";
    pass = pass && matches && monotone && bounded && v.exact;
    prev_lower = v.lower;
  }
  d << seconds_since(t0) << " s";
  report(8, "empirical divergence", pass, d.str());
}

}  // namespace

int main() {
  std::printf("acceptance run\n");
  group_laws();
  normal_form_soundness();
  BallTable b = ball(kBallRadius, table());
  metric_bounds(b);
  lemma_table();
  rewriting_identity();
  product_identities();
  full_scale(b);
  divergence(b);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
