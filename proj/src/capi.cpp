#include "nv/nv.h"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "nv/divergence.hpp"
#include "nv/error.hpp"
#include "nv/gridform.hpp"

struct nv_table {
  nv::GeneratorTable table;
};

struct nv_element {
  nv::Element element;
};

struct nv_ball {
  nv::BallTable ball;
  // Kept alive for the lifetime of the ball (length queries look up letters).
  nv::GeneratorTable table;
};

namespace {

thread_local std::string last_error;

template <class F>
nv_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return NV_OK;
  } catch (const nv::Error& e) {
    last_error = e.what();
    return static_cast<nv_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NV_RESOURCE_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NV_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw nv::Error(nv::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

nv_element* wrap(nv::Element g) { return new nv_element{std::move(g)}; }

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (auto& c : s) {
    if (c == '\n') c = ';';
  }
  return s;
}

}  // namespace

extern "C" {

const char* nv_status_name(int status) {
  if (status == NV_INTERNAL) return "Internal";
  return nv::error_code_name(static_cast<nv::ErrorCode>(status));
}

int nv_status_is_budget(int status) { return nv::is_budget_error(static_cast<nv::ErrorCode>(status)) ? 1 : 0; }

const char* nv_last_error(void) { return last_error.c_str(); }

void nv_string_free(char* s) { std::free(s); }

nv_status nv_table_builtin(nv_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = new nv_table{nv::GeneratorTable::builtin()};
  });
}

nv_status nv_table_load(const char* path, nv_table** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new nv_table{nv::GeneratorTable::load(path)};
  });
}

nv_status nv_table_parse(const char* text, nv_table** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new nv_table{nv::GeneratorTable::parse(text)};
  });
}

void nv_table_free(nv_table* t) { delete t; }

nv_status nv_table_hash(const nv_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    *out = dup(t->table.source_hash());
  });
}

nv_status nv_table_list(const nv_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    std::string s;
    for (const auto& d : t->table.generators()) {
      s += d.symbol + "," + (d.provenance == nv::Provenance::kFigure ? "figure" : "textual") + "\n";
    }
    *out = dup(s);
  });
}

nv_status nv_table_show(const nv_table* t, const char* symbol, char** out) {
  return guarded([&] {
    need(t, "table");
    need(symbol, "symbol");
    *out = dup(nv::format_element(t->table.element_of(nv::normalize_symbol(symbol))));
  });
}

nv_status nv_table_missing(const nv_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    std::string s;
    for (const auto& m : t->table.missing()) s += m + "\n";
    *out = dup(s);
  });
}

nv_status nv_element_parse(const char* text, nv_element** out) {
  return guarded([&] {
    need(text, "text");
    auto g = nv::parse_element(text);
    if (auto why = nv::check_element(g.pairs())) throw nv::Error(nv::ErrorCode::kInvalidElement, *why);
    *out = wrap(std::move(g));
  });
}

nv_status nv_element_from_word(const nv_table* t, const char* word, nv_element** out) {
  return guarded([&] {
    need(t, "table");
    need(word, "word");
    *out = wrap(nv::word_to_element(nv::parse_word(word), t->table));
  });
}

void nv_element_free(nv_element* g) { delete g; }

nv_status nv_element_format(const nv_element* g, char** out) {
  return guarded([&] {
    need(g, "element");
    *out = dup(nv::format_element(g->element));
  });
}

nv_status nv_multiply(const nv_element* f, const nv_element* g, nv_element** out) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    *out = wrap(nv::multiply(f->element, g->element));
  });
}

nv_status nv_inverse(const nv_element* g, nv_element** out) {
  return guarded([&] {
    need(g, "element");
    *out = wrap(nv::inverse(g->element));
  });
}

nv_status nv_normal_form(const nv_element* g, nv_element** out) {
  return guarded([&] {
    need(g, "element");
    *out = wrap(nv::normal_form(g->element).element);
  });
}

nv_status nv_equals(const nv_element* f, const nv_element* g, int* out) {
  return guarded([&] {
    need(f, "f");
    need(g, "g");
    *out = nv::equals(f->element, g->element) ? 1 : 0;
  });
}

nv_status nv_evaluate(const nv_element* g, const char* u1, const char* u2, char** out) {
  return guarded([&] {
    need(g, "element");
    need(u1, "u1");
    need(u2, "u2");
    nv::PrefixPoint p{u1, u2};
    if (!nv::is_binary_word(p.u1) || !nv::is_binary_word(p.u2)) {
      throw nv::Error(nv::ErrorCode::kMalformedWord, "point words must be binary");
    }
    auto q = nv::evaluate(g->element, p);
    *out = dup(q.u1 + "," + q.u2);
  });
}

nv_status nv_ball_build(const nv_table* t, size_t radius, size_t node_cap, nv_ball** out) {
  return guarded([&] {
    need(t, "table");
    auto b = std::make_unique<nv_ball>();
    b->table = t->table;
    b->ball = nv::ball(radius, t->table, node_cap == 0 ? nv::kDefaultNodeCap : node_cap);
    *out = b.release();
  });
}

void nv_ball_free(nv_ball* b) { delete b; }

size_t nv_ball_size(const nv_ball* b) { return b ? b->ball.size() : 0; }

nv_status nv_ball_csv(const nv_ball* b, char** out) {
  return guarded([&] {
    need(b, "ball");
    std::ostringstream s;
    s << "key,distance,witness\n";
    for (const auto& n : b->ball.nodes()) {
      s << '"' << one_line(n.key) << "\"," << n.distance << ",\"" << nv::format_word(n.witness) << "\"\n";
    }
    *out = dup(s.str());
  });
}

nv_status nv_length(const nv_element* g, const nv_ball* b, const nv_table* t, const char* word, size_t* lower,
                    size_t* upper, int* exact, char** witness) {
  return guarded([&] {
    need(g, "element");
    need(b, "ball");
    std::optional<nv::GroupWord> w;
    if (word) {
      need(t, "table");
      w = nv::parse_word(word);
      if (!nv::equals_pointwise(nv::word_to_element(*w, t->table), g->element)) {
        throw nv::Error(nv::ErrorCode::kInvalidArgument, "word does not represent the element");
      }
    }
    auto c = nv::exact_length(g->element, b->ball, w);
    *lower = c.lower;
    *upper = c.upper == nv::kUnbounded ? SIZE_MAX : c.upper;
    *exact = c.exact ? 1 : 0;
    if (witness) *witness = c.witness ? dup(nv::format_word(*c.witness)) : nullptr;
  });
}

nv_status nv_divpath(const nv_element* g, const nv_table* t, const nv_ball* b, const char* word, long long M,
                     long long Q, long long cap, unsigned long long seed, char** certificate, int* valid) {
  return guarded([&] {
    need(g, "element");
    need(t, "table");
    nv::DivergenceParams p;
    p.M = M;
    p.Q = Q;
    if (cap > 0) p.exponent_cap = cap;
    p.seed = seed;
    nv::LengthInput in;
    if (b) in.ball = &b->ball;
    if (word) in.word = nv::parse_word(word);
    auto c = nv::build_path(g->element, p, in, t->table);
    *certificate = dup(nv::format_certificate(c));
    if (valid) *valid = c.ok() ? 1 : 0;
  });
}

nv_status nv_divmeasure(const nv_table* t, size_t x, long long delta_num, long long delta_den, size_t node_cap,
                        char** row) {
  return guarded([&] {
    need(t, "table");
    std::size_t cap = node_cap == 0 ? nv::kDefaultNodeCap : node_cap;
    auto b = nv::ball(x, t->table, cap);
    auto v = nv::empirical_divergence(x, {delta_num, delta_den}, b, t->table, cap);
    std::ostringstream s;
    s << v.x << "," << v.lower << "," << v.upper << "," << (v.exact ? 1 : 0) << ",\"" << v.witness_g1 << "\",\""
      << v.witness_g2 << "\"," << v.method << "\n";
    *row = dup(s.str());
  });
}

}  // extern "C"
