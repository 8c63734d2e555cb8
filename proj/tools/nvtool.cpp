// Command-line front end over the C interface.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nv/nv.h"

namespace {

struct Failure {
  nv_status status;
};

void check(nv_status s) {
  if (s != NV_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  nv_string_free(s);
  return out;
}

using TablePtr = std::unique_ptr<nv_table, decltype(&nv_table_free)>;
using ElementPtr = std::unique_ptr<nv_element, decltype(&nv_element_free)>;
using BallPtr = std::unique_ptr<nv_ball, decltype(&nv_ball_free)>;

TablePtr open_table(const std::string& path) {
  nv_table* t = nullptr;
  std::string p = path;
  if (p.empty()) {
    if (const char* env = std::getenv("NV_GENERATORS")) p = env;
  }
  check(p.empty() ? nv_table_builtin(&t) : nv_table_load(p.c_str(), &t));
  return TablePtr(t, nv_table_free);
}

// An element argument is a file holding pair text or a word, or a word.
struct ElementArg {
  ElementPtr element{nullptr, nv_element_free};
  std::string word;  // empty when given as pair text
};

ElementArg read_element(const std::string& arg, const nv_table* t) {
  std::string text = arg;
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  ElementArg out;
  nv_element* g = nullptr;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 2, "n=") == 0) {
    check(nv_element_parse(text.c_str(), &g));
  } else {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    out.word = text;
    check(nv_element_from_word(t, text.c_str(), &g));
  }
  out.element.reset(g);
  return out;
}

std::string format(const nv_element* g) {
  char* s = nullptr;
  check(nv_element_format(g, &s));
  return take(s);
}

BallPtr build_ball(const nv_table* t, std::size_t radius, std::size_t cap) {
  nv_ball* b = nullptr;
  check(nv_ball_build(t, radius, cap, &b));
  return BallPtr(b, nv_ball_free);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elements, word lengths and divergence paths in the group 2V"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string generators;
  unsigned long long seed = 1;
  std::size_t node_cap = 0;
  app.add_option("--generators", generators, "Generator file (default: $NV_GENERATORS, then the built-in set)");
  app.add_option("--seed", seed, "Seed for randomised probes");
  app.add_option("--node-cap", node_cap, "Node cap for breadth-first searches (0: library default)");

  std::string a, b, point;
  std::size_t radius = 3;
  std::string word;

  auto* nf = app.add_subcommand("nf", "Print the normal form");
  nf->add_option("element", a, "Pair-text file or word")->required();
  auto* mul = app.add_subcommand("mul", "Product f g (f first)");
  mul->add_option("f", a)->required();
  mul->add_option("g", b)->required();
  auto* inv = app.add_subcommand("inv", "Inverse");
  inv->add_option("element", a)->required();
  auto* eval = app.add_subcommand("eval", "Image of a point given by prefixes u1,u2");
  eval->add_option("element", a)->required();
  eval->add_option("--point", point, "u1,u2")->required();
  auto* len = app.add_subcommand("len", "Word length: exact inside the ball, else bounds");
  len->add_option("element", a)->required();
  len->add_option("--radius", radius, "Ball radius");
  len->add_option("--word", word, "Word for the element (upper bound)");
  auto* ballcmd = app.add_subcommand("ball", "Ball as CSV: key,distance,witness");
  ballcmd->add_option("--radius", radius)->required();

  auto* gen = app.add_subcommand("gen", "Generator table");
  gen->require_subcommand(1);
  auto* gen_list = gen->add_subcommand("list", "Symbols and provenance");
  auto* gen_show = gen->add_subcommand("show", "Element of a symbol");
  std::string symbol;
  gen_show->add_option("symbol", symbol)->required();
  auto* gen_validate = gen->add_subcommand("validate", "Parse and check a generator file");
  std::string gen_file;
  gen_validate->add_option("file", gen_file);

  auto* divpath = app.add_subcommand("divpath", "Path from g to the target word, with certificate");
  long long M = 100, Q = 4800, cap = 0;
  divpath->add_option("--element", a, "Pair-text file or word")->required();
  divpath->add_option("--M", M);
  divpath->add_option("--Q", Q);
  divpath->add_option("--cap-exponents", cap, "Cap the M n and Q n exponents");
  divpath->add_option("--radius", radius, "Ball radius for exact lengths");

  auto* divmeasure = app.add_subcommand("divmeasure", "Empirical divergence as a CSV row");
  std::size_t x = 1;
  std::string delta = "1/64";
  divmeasure->add_option("--x", x)->required();
  divmeasure->add_option("--delta", delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // usage errors count as domain errors
    app.exit(e);
    return 1;
  }

  try {
    if (gen_validate->parsed()) {
      std::string file = gen_file.empty() ? generators : gen_file;
      TablePtr t = open_table(file);
      char* missing = nullptr;
      check(nv_table_missing(t.get(), &missing));
      std::string m = take(missing);
      char* hash = nullptr;
      check(nv_table_hash(t.get(), &hash));
      std::cout << "hash: " << take(hash) << "\n";
      if (!m.empty()) {
        std::cout << "missing:\n" << m;
        std::cerr << "error: IncompleteTable\n";
        return 1;
      }
      std::cout << "ok\n";
      return 0;
    }
    TablePtr t = open_table(generators);
    if (nf->parsed()) {
      auto g = read_element(a, t.get());
      nv_element* h = nullptr;
      check(nv_normal_form(g.element.get(), &h));
      ElementPtr hp(h, nv_element_free);
      std::cout << format(h);
    } else if (mul->parsed()) {
      auto f = read_element(a, t.get());
      auto g = read_element(b, t.get());
      nv_element* h = nullptr;
      check(nv_multiply(f.element.get(), g.element.get(), &h));
      ElementPtr hp(h, nv_element_free);
      std::cout << format(h);
    } else if (inv->parsed()) {
      auto g = read_element(a, t.get());
      nv_element* h = nullptr;
      check(nv_inverse(g.element.get(), &h));
      ElementPtr hp(h, nv_element_free);
      std::cout << format(h);
    } else if (eval->parsed()) {
      auto g = read_element(a, t.get());
      auto comma = point.find(',');
      std::string u1 = point.substr(0, comma), u2 = comma == std::string::npos ? "" : point.substr(comma + 1);
      char* out = nullptr;
      check(nv_evaluate(g.element.get(), u1.c_str(), u2.c_str(), &out));
      std::cout << take(out) << "\n";
    } else if (len->parsed()) {
      auto g = read_element(a, t.get());
      BallPtr bp = build_ball(t.get(), radius, node_cap);
      std::string w = word.empty() ? g.word : word;
      std::size_t lo = 0, hi = 0;
      int exact = 0;
      char* witness = nullptr;
      check(nv_length(g.element.get(), bp.get(), t.get(), w.empty() ? nullptr : w.c_str(), &lo, &hi, &exact,
                      &witness));
      std::cout << "lower: " << lo << "\n";
      std::cout << "upper: " << (hi == SIZE_MAX ? std::string("unknown") : std::to_string(hi)) << "\n";
      std::cout << "exact: " << (exact ? "true" : "false") << "\n";
      if (witness) std::cout << "witness: " << take(witness) << "\n";
    } else if (ballcmd->parsed()) {
      BallPtr bp = build_ball(t.get(), radius, node_cap);
      char* csv = nullptr;
      check(nv_ball_csv(bp.get(), &csv));
      std::cout << take(csv);
    } else if (gen_list->parsed()) {
      char* s = nullptr;
      check(nv_table_list(t.get(), &s));
      std::cout << "symbol,provenance\n" << take(s);
    } else if (gen_show->parsed()) {
      char* s = nullptr;
      check(nv_table_show(t.get(), symbol.c_str(), &s));
      std::cout << take(s);
    } else if (divpath->parsed()) {
      auto g = read_element(a, t.get());
      BallPtr bp = build_ball(t.get(), radius, node_cap);
      char* cert = nullptr;
      int valid = 0;
      check(nv_divpath(g.element.get(), t.get(), bp.get(), g.word.empty() ? nullptr : g.word.c_str(), M, Q, cap, seed,
                       &cert, &valid));
      std::cout << take(cert);
      return valid ? 0 : 1;
    } else if (divmeasure->parsed()) {
      auto slash = delta.find('/');
      long long num = std::stoll(delta.substr(0, slash));
      long long den = slash == std::string::npos ? 1 : std::stoll(delta.substr(slash + 1));
      char* row = nullptr;
      check(nv_divmeasure(t.get(), x, num, den, node_cap, &row));
      std::cout << "x,phi_lower,phi_upper,exact,witness_g1,witness_g2,method\n" << take(row);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << nv_status_name(f.status) << ": " << nv_last_error() << "\n";
    return nv_status_is_budget(f.status) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
