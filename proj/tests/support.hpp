#pragma once

// Shared helpers for the test binaries. The oracles here deliberately avoid
// the library's index structures and reductions.

#include <random>
#include <string>
#include <vector>

#include "nv/element.hpp"
#include "nv/error.hpp"
#include "nv/genset.hpp"

namespace nvtest {

using Rng = std::mt19937_64;

inline std::string random_bits(Rng& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& c : s) c = (rng() & 1) ? '1' : '0';
  return s;
}

inline nv::PrefixPoint random_point(Rng& rng, std::size_t depth) {
  return {random_bits(rng, depth), random_bits(rng, depth)};
}

// Linear scan: the pair whose domain words are prefixes of the point.
inline nv::PrefixPoint apply(const nv::Element& g, const nv::PrefixPoint& p) {
  for (const auto& pr : g.pairs()) {
    if (p.u1.compare(0, pr.dom[0].size(), pr.dom[0]) == 0 && p.u1.size() >= pr.dom[0].size() &&
        p.u2.compare(0, pr.dom[1].size(), pr.dom[1]) == 0 && p.u2.size() >= pr.dom[1].size()) {
      return {pr.ran[0] + p.u1.substr(pr.dom[0].size()), pr.ran[1] + p.u2.substr(pr.dom[1].size())};
    }
  }
  throw std::runtime_error("oracle: point outside every domain rectangle");
}

inline nv::Element swapped(const nv::Element& g) {
  std::vector<nv::RectPair> out;
  for (const auto& pr : g.pairs()) out.push_back({pr.ran, pr.dom});
  return nv::Element(std::move(out));
}

// Applies the letters of w one by one to the point.
inline nv::PrefixPoint apply_word(const nv::GroupWord& w, const nv::GeneratorTable& t, nv::PrefixPoint p) {
  for (const auto& l : w.letters) {
    const nv::Element& g = t.element_of(l.symbol);
    p = l.exponent > 0 ? apply(g, p) : apply(swapped(g), p);
  }
  return p;
}

inline bool same_map(const nv::Element& f, const nv::Element& g, Rng& rng, std::size_t points = 100,
                     std::size_t depth = 24) {
  for (std::size_t i = 0; i < points; ++i) {
    auto p = random_point(rng, depth);
    if (!(apply(f, p) == apply(g, p))) return false;
  }
  return true;
}

inline nv::GroupWord random_word(Rng& rng, std::size_t len) {
  const auto& syms = nv::x2v_symbols();
  nv::GroupWord w;
  for (std::size_t i = 0; i < len; ++i) {
    w.letters.push_back({syms[rng() % syms.size()], (rng() & 1) ? 1 : -1});
  }
  return w;
}

template <class F>
nv::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const nv::Error& e) {
    return e.code();
  }
  return nv::ErrorCode::kOk;
}

}  // namespace nvtest
