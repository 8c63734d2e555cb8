#pragma once

// The path from g to the fixed target element built from six subwords, the
// origin-rectangle bookkeeping it relies on, and a brute-force estimate of
// the delta-divergence function for small radii.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "nv/element.hpp"
#include "nv/genset.hpp"
#include "nv/metric.hpp"
#include "nv/treealg.hpp"

namespace nv {

struct Rational {
  long long num = 1;
  long long den = 64;
};

struct DivergenceParams {
  long long M = 100;
  long long Q = 4800;
  Rational delta{1, 64};
  /// When set, the M n and Q n exponents are capped (reduced-exponent runs).
  std::optional<long long> exponent_cap;
  std::uint64_t seed = 1;

  long long D() const noexcept { return 10 * Q; }
  /// Throws InvalidArgument unless M >= 100 and Q >= 48 M.
  void validate() const;
};

enum class Orientation { kVertical, kHorizontal };

// ---------------------------------------------------------------------------
// Origin rectangle tracking.

/// The letters whose effect on the origin rectangle is tabulated.
enum class LemmaMove { kX0Inv, kBh0, kC0, kY0Inv, kGamma0, kC0Inv };

Letter lemma_letter(LemmaMove m);
std::optional<LemmaMove> lemma_move_of(const Letter& l);
/// Size change of the origin rectangle: +1, or 0 for C_0 and C_0^-1.
int lemma_size_delta(LemmaMove m);

/// Minimal rectangles (0^a, 0^b) on which g^{-1} is a single prefix map,
/// ordered by increasing a. Each is essential.
std::vector<DyadicRect> essential_origin_rects(const Element& g);

struct OriginTracker {
  Element element;
  DyadicRect r0;
  bool essential = false;
  std::vector<std::size_t> sizes;
};

/// Checks that r0 contains the origin and is essential for g.
OriginTracker make_tracker(const Element& g, const DyadicRect& r0);
/// Throws PreconditionViolated or EssentialityLost.
OriginTracker lemma31_step(const OriginTracker& state, LemmaMove m, const GeneratorTable& table);

// ---------------------------------------------------------------------------
// Subpaths.

/// Maps a vertical-orientation word to its coordinate mirror.
GroupWord mirror_word(const GroupWord& w);

struct Subpath1Result {
  GroupWord word;
  Element g1;
  char case_label = 'a';
  Orientation orientation = Orientation::kVertical;
  DyadicRect r0;        // origin rectangle of g (in the working orientation)
  DyadicRect r0_after;  // essential origin rectangle of g1 (same)
};

/// Throws NoEssentialOrigin when no case applies.
Subpath1Result subpath1(const Element& g, const GeneratorTable& table);

struct Subpath2Result {
  GroupWord word;
  Element g2;
  std::vector<std::size_t> c_indices;
  long long exponent = 0;  // the M n exponent actually used
  bool minimal_pair = true;
  std::size_t tracked_steps = 0;
  /// (prefix length, lower bound from the essential origin rectangle)
  std::vector<std::pair<std::size_t, std::size_t>> evidence;
  bool evidence_ok = true;
};

/// The conjugating word around x_1 built from the C-prefix of the target
/// tree word of a minimal pair of g1. Throws DecompositionUnavailable when
/// no tree pair is given and the minimal-pair search runs out of budget.
Subpath2Result subpath2(const Element& g1, std::size_t n1, const DivergenceParams& params,
                        const GeneratorTable& table, Orientation orientation,
                        const std::optional<TreePair>& tree_pair = std::nullopt,
                        std::size_t search_budget = 12);

/// A word for h^{-1}: a geodesic when h^{-1} lies in the ball, else the
/// inverse of the known word for h. Throws NotWithinRadius.
GroupWord subpath3_5(const Element& h, const BallTable* ball_table, const std::optional<GroupWord>& known_word_for_h,
                     const GeneratorTable& table);

/// Cases A-D of the fourth subword; `k` is the conjugating exponent Q n.
GroupWord omega4_word(char case_label, long long k);
/// x̂_1^-k x̂_2 x̂_1^k x_1^-k x_2 x_1^k.
GroupWord target_word(long long k);
/// The half of the square on which the case-`label` subword is supported.
DyadicRect omega4_half(char case_label);
/// Every letter of w is the identity outside `half`.
bool letters_supported_in(const GroupWord& w, const DyadicRect& half, const GeneratorTable& table);
/// omega_4(A) omega_4(B) = omega_4(D) at exponent k, checked through the
/// strip restrictions of x_0, x_1 and exact line maps.
bool strip_product_identity(long long k, const GeneratorTable& table);

struct Subpath4Result {
  GroupWord word;
  char case_label = 'C';
};

/// Picks the first half (order c, d, a, b) on which g3 is the identity.
/// Throws NoIdentityHalf.
Subpath4Result subpath4(const Element& g3, long long k);
GroupWord subpath6(char case_label, long long k);

// ---------------------------------------------------------------------------
// Path certificate.

struct BudgetLine {
  std::string name;
  std::size_t length = 0;
  long long bound = 0;
  bool strict = false;  // length < bound instead of <=
  bool ok = false;
};

struct PrefixEvidence {
  std::size_t prefix = 0;
  std::size_t lower = 0;
  std::optional<std::size_t> exact;
};

struct PathCertificate {
  std::string element;
  LengthCertificate length;
  std::size_t n_hat = 0;
  std::string length_mode;  // "exact" or "upper"
  Orientation orientation = Orientation::kVertical;
  char case1 = 'a';
  char case4 = 'C';
  std::vector<std::size_t> c_indices;
  bool minimal_pair = true;
  long long exponent2 = 0;
  long long exponent4 = 0;
  bool capped = false;

  std::vector<GroupWord> subwords;       // omega_1 .. omega_6
  std::vector<std::size_t> boundaries;   // cumulative lengths, 7 entries
  std::size_t total_length = 0;

  std::vector<BudgetLine> budgets;
  bool budgets_ok = false;
  bool length_ok = false;  // ||omega|| < D n
  bool endpoint_ok = false;
  bool commute_ok = false;  // g3 omega_4 = omega_4 g3
  /// Exponents up to kDirectLimit are also checked by composing everything.
  bool direct_checked = false;

  std::size_t prefixes = 0;
  std::size_t certified_by_probe = 0;
  std::size_t certified_exact = 0;
  std::size_t certified_by_support = 0;
  std::size_t identity_prefixes = 0;
  std::size_t unresolved_prefixes = 0;
  bool avoidance_ok = false;
  bool lemma_evidence_ok = false;
  std::vector<PrefixEvidence> evidence;

  bool ok() const noexcept {
    return budgets_ok && length_ok && endpoint_ok && commute_ok && avoidance_ok && lemma_evidence_ok;
  }
};

/// How the length of g is certified: exact through the ball, or the length
/// of a supplied word as an upper bound.
struct LengthInput {
  const BallTable* ball = nullptr;
  std::optional<GroupWord> word;
};

inline constexpr long long kDirectLimit = 64;

/// Throws PreconditionViolated when the certified length is below 4.
PathCertificate build_path(const Element& g, const DivergenceParams& params, const LengthInput& length,
                           const GeneratorTable& table);

std::string format_certificate(const PathCertificate& c);

/// Walks g·omega' for every prefix omega' of `word` and counts prefixes
/// that are the identity. `checkpoints[i]` must equal g times the first
/// `offsets[i]` letters (offsets start at 0 with checkpoints[0] = g).
struct PrefixScan {
  std::size_t prefixes = 0;
  std::size_t by_probe = 0;
  std::size_t exact = 0;
  std::size_t identity = 0;
  std::size_t unresolved = 0;
};
PrefixScan scan_prefixes(const std::vector<Element>& checkpoints, const std::vector<std::size_t>& offsets,
                         const GroupWord& word, const GeneratorTable& table, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Empirical delta-divergence.

struct DivergenceValue {
  std::size_t x = 0;
  /// Exact value when `exact`; otherwise [lower, upper].
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = false;
  bool reachable = true;
  std::string witness_g1;
  std::string witness_g2;
  std::size_t pairs = 0;
  /// Pairs whose value was certified by a separate search.
  std::size_t certified = 0;
  std::string method;
};

/// Length of a shortest path from g1 to g2 in the Cayley graph that never
/// visits an element whose key is in `excluded`, or nullopt when it exceeds
/// max_len. Bidirectional search; throws ResourceBudgetExceeded once more
/// than node_cap elements are visited.
std::optional<std::size_t> avoiding_distance(const Element& g1, const Element& g2,
                                             const std::unordered_set<std::string>& excluded, std::size_t max_len,
                                             const LetterSet& letters, std::size_t node_cap = kDefaultNodeCap);

/// True when every path from g1 to g2 avoiding `excluded` is longer than
/// max_len. Elements near g2 and long walks from g1 are compared by the images
/// of a few deep points, so a false result may be spurious; a true result is
/// exact.
bool avoiding_gap(const Element& g1, const Element& g2, const std::unordered_set<std::string>& excluded,
                  std::size_t max_len, const LetterSet& letters, std::size_t node_cap = kDefaultNodeCap);

/// Needs a ball of radius at least x. For x = 1 every pair of the sphere is
/// searched. When only the identity is excluded, each pair at distance 2 is
/// bounded by 2 plus the unit values of its predecessors, and the pairs left
/// above the best value are certified separately, so phi(2) is exact. For
/// larger x the value is at most phi(2) + 2(x - 2); it is exact once a pair
/// is certified to need that many steps, otherwise [lower, upper].
DivergenceValue empirical_divergence(std::size_t x, Rational delta, const BallTable& ball_table,
                                     const GeneratorTable& table, std::size_t node_cap = kDefaultNodeCap);

}  // namespace nv
