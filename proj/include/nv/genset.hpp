#pragma once

// The generating set X_2V loaded from a data file, group words over it, and
// the indexed families A_i, B_i, C_i, pi_i, pib_i.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "nv/element.hpp"
#include "nv/treealg.hpp"

namespace nv {

struct Letter {
  std::string symbol;
  int exponent = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
};

struct GroupWord {
  std::vector<Letter> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }

  GroupWord& append(const GroupWord& w);
  /// Appends `symbol` |k| times with the sign of k.
  GroupWord& append_power(const std::string& symbol, long long k);

  bool operator==(const GroupWord&) const = default;
};

GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord inverse_word(const GroupWord& w);
/// Cancels adjacent s s^-1 pairs.
GroupWord free_reduce(const GroupWord& w);

/// Tokens `sym`, `sym^-1`, `sym^k`, `sym^-k` separated by spaces. Symbols
/// are normalized (`x0` and `x_0` are the same letter).
GroupWord parse_word(std::string_view text);
/// Run-length form, e.g. `x_0^-3 x_1`.
std::string format_word(const GroupWord& w);
std::string normalize_symbol(std::string_view raw);

/// The symbols of X_2V, in ASCII form.
const std::vector<std::string>& x2v_symbols();

enum class Provenance { kTextual, kFigure };

struct GeneratorDef {
  std::string symbol;
  Element element;
  Provenance provenance = Provenance::kFigure;
};

class GeneratorTable {
 public:
  GeneratorTable() = default;
  GeneratorTable(const GeneratorTable& other);
  GeneratorTable& operator=(const GeneratorTable& other);

  /// Parses a generator file. Throws ParseError, InvalidElement or
  /// DuplicateSymbol.
  static GeneratorTable parse(std::string_view text);
  static GeneratorTable load(const std::string& path);
  /// The generator file shipped with the library (compiled in).
  static const GeneratorTable& builtin();

  const std::vector<GeneratorDef>& generators() const noexcept { return defs_; }
  bool has(const std::string& symbol) const;
  const GeneratorDef& get(const std::string& symbol) const;

  /// Symbols of X_2V absent from the file. Non-empty means incomplete.
  std::vector<std::string> missing() const;
  bool complete() const { return missing().empty(); }
  /// Throws IncompleteTable unless complete.
  void require_complete() const;

  std::string source_hash() const { return hash_; }
  std::size_t dimension() const noexcept { return 2; }

  /// Element of a letter symbol, loaded or from a family (cached).
  const Element& element_of(const std::string& symbol) const;
  /// The X_2V word a family symbol stands for.
  GroupWord expand(const std::string& symbol) const;

 private:
  std::vector<GeneratorDef> defs_;
  std::map<std::string, std::size_t> by_symbol_;
  std::string hash_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::unique_ptr<Element>> cache_;
};

/// Left-to-right fold of the letters; the empty word is the identity.
Element word_to_element(const GroupWord& w, const GeneratorTable& table);

/// Conjugate x_0^{-(i-1)} X_1 x_0^{i-1} for base in {A, B, C, pi, pib};
/// index 0 (and 1) return the loaded generator.
Element family(const std::string& base, std::size_t i, const GeneratorTable& table);
std::string family_symbol(const std::string& base, std::size_t i);
GroupWord family_word(const std::vector<FamilyLetter>& w);

}  // namespace nv
