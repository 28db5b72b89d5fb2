#pragma once

// S(u), T(u), diamond vertices, perfect factors and DOT output.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "upcycle/construct.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

/// Largest a^n for which S(u) is materialized.
inline constexpr std::uint64_t kGraphCap = std::uint64_t{1} << 16;

struct LabeledEdge {
  WordCode from;
  WordCode to;
  std::uint32_t label;
  auto operator<=>(const LabeledEdge&) const = default;
};

/// Subgraph of the De Bruijn graph B(a,n) on all of A^n.
struct LabeledDigraph {
  AlphabetSize a = 2;
  std::size_t n = 0;
  std::vector<LabeledEdge> edges;  ///< sorted, no duplicates

  std::uint64_t vertex_count() const { return WordSpace(a, n).size(); }

  std::vector<std::uint32_t> out_degrees() const {
    std::vector<std::uint32_t> d(vertex_count(), 0);
    for (const auto& e : edges) ++d[e.from];
    return d;
  }
  std::vector<std::uint32_t> in_degrees() const {
    std::vector<std::uint32_t> d(vertex_count(), 0);
    for (const auto& e : edges) ++d[e.to];
    return d;
  }
  std::set<std::pair<WordCode, WordCode>> edge_pairs() const {
    std::set<std::pair<WordCode, WordCode>> s;
    for (const auto& e : edges) s.emplace(e.from, e.to);
    return s;
  }
};

/// T(u): ordered pairs of consecutive B(a,n-1) edges (n-words), together with
/// the diamond vertices (words of length n-1).
struct EdgePairSet {
  AlphabetSize a = 2;
  std::size_t n = 0;
  std::set<std::pair<WordCode, WordCode>> pairs;
  std::set<WordCode> diamond_vertices;
};

namespace detail {

/// Calls fn(x, y, label) for each consecutive pair of covered words.
template <typename Fn>
void for_each_consecutive_cover(const CycPWord& u, std::size_t n, Fn&& fn) {
  WordSpace space(u.alphabet_size(), n);
  const AlphabetSize a = u.alphabet_size();
  const WordCode high = space.size() / a;
  std::vector<Char> buf(n);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = u[static_cast<std::ptrdiff_t>(i + j)];
    Char next = u[static_cast<std::ptrdiff_t>(i + n)];
    space.for_each_covered(buf, [&](WordCode x) {
      WordCode shifted = (x % high) * a;
      if (next.is_diamond()) {
        for (std::uint32_t c = 0; c < a; ++c) fn(x, shifted + c, c);
      } else {
        fn(x, shifted + next.value(), next.value());
      }
    });
  }
}

}  // namespace detail

/// S(u): edge x -> y whenever x is covered at some position and y at the next.
inline LabeledDigraph build_S(const CycPWord& u, std::size_t n) {
  detail::require_upcycle(u, n);
  if (!bounded_pow(u.alphabet_size(), n, kGraphCap)) {
    throw CapExceeded("S(u) is only materialized for a^n <= 2^16");
  }
  LabeledDigraph g{u.alphabet_size(), n, {}};
  detail::for_each_consecutive_cover(u, n, [&](WordCode x, WordCode y, std::uint32_t c) {
    g.edges.push_back({x, y, c});
  });
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

inline EdgePairSet build_T(const CycPWord& u, std::size_t n) {
  if (n < 2) throw std::invalid_argument("T(u) needs n >= 2");
  detail::require_upcycle(u, n);
  EdgePairSet t{u.alphabet_size(), n, {}, {}};
  detail::for_each_consecutive_cover(u, n, [&](WordCode x, WordCode y, std::uint32_t) {
    t.pairs.emplace(x, y);
  });
  WordSpace vspace(u.alphabet_size(), n - 1);
  std::vector<Char> buf(n - 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[static_cast<std::ptrdiff_t>(i + n - 1)].is_diamond()) continue;
    for (std::size_t j = 0; j + 1 < n; ++j) buf[j] = u[static_cast<std::ptrdiff_t>(i + j)];
    vspace.for_each_covered(buf, [&](WordCode v) { t.diamond_vertices.insert(v); });
  }
  return t;
}

/// a^d filled copies of u: the diamonds of each copy repeat, in order, the
/// letters that fill the diamonds of one word covered by the first window.
/// Their n-windows form a^d disjoint cycles partitioning A^n.
inline std::vector<CycPWord> perfect_factor(const CycPWord& u, std::size_t n) {
  const auto p = detail::require_upcycle(u, n);
  if (u.size() % n != 0) throw std::invalid_argument("perfect factor needs n | a^(n-d)");
  WordSpace space(p.a, n);
  std::vector<CycPWord> cycles;
  std::vector<bool> seen(space.size(), false);
  WordSpace fills(p.a, p.d);
  std::vector<Char> buf(n);
  for (WordCode f = 0; f < fills.size(); ++f) {
    auto fill = fills.decode(f);
    std::vector<Char> cs(u.chars().begin(), u.chars().end());
    std::size_t k = 0;
    for (auto& c : cs) {
      if (c.is_diamond()) c = fill[static_cast<std::ptrdiff_t>(k++ % p.d)];
    }
    CycPWord w(std::move(cs), p.a);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) buf[j] = w[static_cast<std::ptrdiff_t>(i + j)];
      auto c = space.encode(buf);
      if (seen[c]) throw std::logic_error("perfect factor cycles overlap");
      seen[c] = true;
    }
    cycles.push_back(std::move(w));
  }
  return cycles;
}

/// The n-words along a filled cycle, in order.
inline std::vector<WordCode> cycle_vertices(const CycPWord& w, std::size_t n) {
  WordSpace space(w.alphabet_size(), n);
  std::vector<WordCode> out;
  std::vector<Char> buf(n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = w[static_cast<std::ptrdiff_t>(i + j)];
    out.push_back(space.encode(buf));
  }
  return out;
}

inline std::string export_dot(const LabeledDigraph& g, std::string_view name = "S") {
  WordSpace space(g.a, g.n);
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (WordCode v = 0; v < space.size(); ++v) os << "  \"" << format(space.decode(v)) << "\";\n";
  for (const auto& e : g.edges) {
    os << "  \"" << format(space.decode(e.from)) << "\" -> \"" << format(space.decode(e.to))
       << "\" [label=\"" << letter_glyph(e.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

/// Nodes are the words of length n-1, edges the n-words of B(a,n-1);
/// diamond vertices are drawn as diamonds and the pairs listed as comments.
inline std::string export_dot(const EdgePairSet& t, std::string_view name = "T") {
  WordSpace vspace(t.a, t.n - 1);
  WordSpace espace(t.a, t.n);
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (WordCode v = 0; v < vspace.size(); ++v) {
    os << "  \"" << format(vspace.decode(v)) << "\"";
    if (t.diamond_vertices.count(v)) os << " [shape=diamond]";
    os << ";\n";
  }
  const WordCode high = vspace.size();
  for (WordCode e = 0; e < espace.size(); ++e) {
    os << "  \"" << format(vspace.decode(e / t.a)) << "\" -> \"" << format(vspace.decode(e % high))
       << "\" [label=\"" << format(espace.decode(e)) << "\"];\n";
  }
  for (const auto& [x, y] : t.pairs) {
    os << "  // " << format(espace.decode(x)) << " -> " << format(espace.decode(y)) << "\n";
  }
  os << "}\n";
  return os.str();
}

/// S(u) as DOT without materializing it; edges in position order.
inline void stream_dot_S(const CycPWord& u, std::size_t n, std::ostream& os) {
  WordSpace space(u.alphabet_size(), n);
  os << "digraph S {\n";
  detail::for_each_consecutive_cover(u, n, [&](WordCode x, WordCode y, std::uint32_t c) {
    os << "  \"" << format(space.decode(x)) << "\" -> \"" << format(space.decode(y))
       << "\" [label=\"" << letter_glyph(c) << "\"];\n";
  });
  os << "}\n";
}

}  // namespace upcycle
