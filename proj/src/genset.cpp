#include "nv/genset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "builtin_generators.hpp"
#include "nv/error.hpp"

namespace nv {

GroupWord& GroupWord::append(const GroupWord& w) {
  letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  return *this;
}

GroupWord& GroupWord::append_power(const std::string& symbol, long long k) {
  int e = k < 0 ? -1 : 1;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) letters.push_back({symbol, e});
  return *this;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.append(b);
  return out;
}

GroupWord inverse_word(const GroupWord& w) {
  GroupWord out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back({it->symbol, -it->exponent});
  return out;
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (const auto& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().symbol == l.symbol && out.letters.back().exponent == -l.exponent) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::string normalize_symbol(std::string_view raw) {
  std::string s(raw);
  if (s.empty()) throw Error(ErrorCode::kParseError, "empty symbol");
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
      throw Error(ErrorCode::kParseError, "bad character in symbol `" + s + "`");
    }
  }
  if (s.find('_') != std::string::npos) return s;
  std::size_t d = s.size();
  while (d > 0 && std::isdigit(static_cast<unsigned char>(s[d - 1]))) --d;
  if (d == 0 || d == s.size()) return s;
  return s.substr(0, d) + "_" + s.substr(d);
}

GroupWord parse_word(std::string_view text) {
  GroupWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto caret = tok.find('^');
    std::string sym = normalize_symbol(tok.substr(0, caret));
    long long k = 1;
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      try {
        std::size_t used = 0;
        k = std::stoll(e, &used);
        if (used != e.size()) throw std::invalid_argument(e);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParseError, "bad exponent in `" + tok + "`");
      }
    }
    w.append_power(sym, k);
  }
  return w;
}

std::string format_word(const GroupWord& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    long long k = static_cast<long long>(j - i) * w.letters[i].exponent;
    if (!out.empty()) out.push_back(' ');
    out += w.letters[i].symbol;
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

const std::vector<std::string>& x2v_symbols() {
  static const std::vector<std::string> symbols = {
      "x_0",   "x_1",    "x_2",     "y_0",     "y_1",     "B_0",    "B_1",  "C_0",   "C_1",
      "xh_1",  "xh_2",   "yh_1",    "pi_0",    "pi_1",    "pib_0",  "pib_1", "alpha_0", "alpha_1",
      "beta_0", "beta_1", "Bh_0",   "gamma_0", "hx_1",    "hx_2",   "hxh_1", "hxh_2"};
  return symbols;
}

namespace {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool split_family(const std::string& symbol, std::string& base, std::size_t& index) {
  auto us = symbol.rfind('_');
  if (us == std::string::npos || us + 1 >= symbol.size()) return false;
  base = symbol.substr(0, us);
  auto digits = symbol.substr(us + 1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  if (base != "A" && base != "B" && base != "C" && base != "pi" && base != "pib") return false;
  if (digits.size() > 6) return false;
  index = static_cast<std::size_t>(std::stoul(digits));
  return true;
}

}  // namespace

GeneratorTable::GeneratorTable(const GeneratorTable& other)
    : defs_(other.defs_), by_symbol_(other.by_symbol_), hash_(other.hash_) {}

GeneratorTable& GeneratorTable::operator=(const GeneratorTable& other) {
  if (this != &other) {
    defs_ = other.defs_;
    by_symbol_ = other.by_symbol_;
    hash_ = other.hash_;
    std::lock_guard lock(cache_mutex_);
    cache_.clear();
  }
  return *this;
}

GeneratorTable GeneratorTable::parse(std::string_view text) {
  GeneratorTable table;
  table.hash_ = fnv1a_hex(text);
  std::istringstream in{std::string(text)};
  std::string line;
  std::string symbol;
  Provenance prov = Provenance::kFigure;
  std::string body;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (symbol.empty()) return;
    Element e = parse_element(body);
    if (auto err = check_element(e.pairs())) {
      throw Error(ErrorCode::kInvalidElement, "generator " + symbol + ": " + *err);
    }
    if (reduce_pair(e).is_identity()) {
      throw Error(ErrorCode::kInvalidElement, "generator " + symbol + " is the identity");
    }
    if (table.by_symbol_.count(symbol)) throw Error(ErrorCode::kDuplicateSymbol, "duplicate generator " + symbol);
    table.by_symbol_[symbol] = table.defs_.size();
    table.defs_.push_back({symbol, std::move(e), prov});
    symbol.clear();
    body.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "version") continue;
    if (head == "generator") {
      flush();
      std::string sym, p;
      if (!(ls >> sym)) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing symbol");
      symbol = normalize_symbol(sym);
      prov = Provenance::kFigure;
      if (ls >> p) {
        if (p == "textual") {
          prov = Provenance::kTextual;
        } else if (p != "figure") {
          throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": unknown provenance " + p);
        }
      }
      continue;
    }
    if (symbol.empty()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": data before any generator record");
    }
    body += line;
    body.push_back('\n');
  }
  flush();
  return table;
}

GeneratorTable GeneratorTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kParseError, "cannot open generator file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const GeneratorTable& GeneratorTable::builtin() {
  static const GeneratorTable table = parse(kBuiltinGenerators);
  return table;
}

bool GeneratorTable::has(const std::string& symbol) const { return by_symbol_.count(symbol) > 0; }

const GeneratorDef& GeneratorTable::get(const std::string& symbol) const {
  auto it = by_symbol_.find(symbol);
  if (it == by_symbol_.end()) throw Error(ErrorCode::kUnknownSymbol, "unknown generator " + symbol);
  return defs_[it->second];
}

std::vector<std::string> GeneratorTable::missing() const {
  std::vector<std::string> out;
  for (const auto& s : x2v_symbols()) {
    if (!has(s)) out.push_back(s);
  }
  return out;
}

void GeneratorTable::require_complete() const {
  auto miss = missing();
  if (miss.empty()) return;
  std::string list;
  for (const auto& s : miss) list += " " + s;
  throw Error(ErrorCode::kIncompleteTable, "generator table is missing:" + list);
}

GroupWord GeneratorTable::expand(const std::string& symbol) const {
  if (has(symbol)) return GroupWord{{{symbol, 1}}};
  std::string base;
  std::size_t i = 0;
  if (!split_family(symbol, base, i)) throw Error(ErrorCode::kUnknownSymbol, "unknown generator " + symbol);
  std::string one = base == "A" ? "x_1" : base + "_1";
  if (base == "A" && i == 0) return GroupWord{{{"x_0", 1}}};
  if (i <= 1) return GroupWord{{{i == 0 ? base + "_0" : one, 1}}};
  GroupWord w;
  w.append_power("x_0", -static_cast<long long>(i - 1));
  w.letters.push_back({one, 1});
  w.append_power("x_0", static_cast<long long>(i - 1));
  return w;
}

const Element& GeneratorTable::element_of(const std::string& symbol) const {
  if (has(symbol)) return get(symbol).element;
  std::lock_guard lock(cache_mutex_);
  auto it = cache_.find(symbol);
  if (it != cache_.end()) return *it->second;
  GroupWord w = expand(symbol);
  Element e;
  for (const auto& l : w.letters) {
    const Element& g = get(l.symbol).element;
    e = multiply(e, l.exponent > 0 ? g : inverse(g));
  }
  auto [pos, ok] = cache_.emplace(symbol, std::make_unique<Element>(std::move(e)));
  return *pos->second;
}

Element word_to_element(const GroupWord& w, const GeneratorTable& table) {
  Element acc;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const Element& g = table.element_of(w.letters[i].symbol);
    long long k = static_cast<long long>(j - i) * w.letters[i].exponent;
    acc = multiply(acc, k == 1 ? g : power(g, k));
    i = j;
  }
  return acc;
}

std::string family_symbol(const std::string& base, std::size_t i) {
  if (base == "A" && i <= 1) return i == 0 ? "x_0" : "x_1";
  return base + "_" + std::to_string(i);
}

Element family(const std::string& base, std::size_t i, const GeneratorTable& table) {
  if (base != "A" && base != "B" && base != "C" && base != "pi" && base != "pib") {
    throw Error(ErrorCode::kUnknownSymbol, "no generator family " + base);
  }
  if (i > 100000) throw Error(ErrorCode::kIndexOutOfRange, "family index too large");
  return table.element_of(family_symbol(base, i));
}

GroupWord family_word(const std::vector<FamilyLetter>& w) {
  GroupWord out;
  for (const auto& l : w) out.letters.push_back({family_symbol(l.base, l.index), 1});
  return out;
}

}  // namespace nv
