#pragma once

// Perfect necklaces: astute graphs, deterministic Euler tours, and the
// De Bruijn-cycle expansions (stretch, rotate, reflect).

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

/// A cyclic total word certified as an (a,n,t)-perfect necklace.
class Necklace {
 public:
  Necklace(CycPWord word, AlphabetSize a, std::size_t n, std::size_t t)
      : word_(std::move(word)), a_(a), n_(n), t_(t) {
    if (!verify_perfect_necklace(word_, a_, n_, t_)) {
      throw std::invalid_argument(format(word_) + " is not an (" + std::to_string(a_) + "," +
                                  std::to_string(n_) + "," + std::to_string(t_) +
                                  ")-perfect necklace");
    }
  }

  const CycPWord& word() const { return word_; }
  AlphabetSize a() const { return a_; }
  std::size_t n() const { return n_; }
  std::size_t t() const { return t_; }

  std::string header() const {
    return "NECKLACE a=" + std::to_string(a_) + " n=" + std::to_string(n_) +
           " t=" + std::to_string(t_);
  }

  bool operator==(const Necklace&) const = default;

 private:
  CycPWord word_;
  AlphabetSize a_;
  std::size_t n_;
  std::size_t t_;
};

/// G(a,n,t): vertices (x in A^n, phase s), edge (xv,s) -> (vy,s+1) labelled y.
/// Vertex index is s*a^n + code(x). Edges are implicit.
class AstuteGraph {
 public:
  AstuteGraph(AlphabetSize a, std::size_t n, std::size_t t) : a_(a), n_(n), t_(t) {
    if (a == 0 || t == 0) throw std::invalid_argument("astute graph needs a, t >= 1");
    auto edges = bounded_pow(a, n + 1, kDenseWordCap);
    if (!edges || *edges > kDenseWordCap / t) {
      throw CapExceeded("astute graph G(" + std::to_string(a) + "," + std::to_string(n) + "," +
                        std::to_string(t) + ") exceeds the size cap");
    }
    words_ = *edges / a;
  }

  AlphabetSize a() const { return a_; }
  std::size_t n() const { return n_; }
  std::size_t t() const { return t_; }
  std::uint64_t vertex_count() const { return words_ * t_; }
  std::uint64_t edge_count() const { return vertex_count() * a_; }

  std::uint64_t vertex(WordCode word, std::size_t phase) const { return phase * words_ + word; }
  WordCode word_of(std::uint64_t v) const { return v % words_; }
  std::size_t phase_of(std::uint64_t v) const { return static_cast<std::size_t>(v / words_); }

  std::uint64_t successor(std::uint64_t v, std::uint32_t y) const {
    WordCode w = n_ == 0 ? 0 : (word_of(v) * a_ + y) % words_;
    return vertex(w, (phase_of(v) + 1) % t_);
  }

  /// Edge index v*a + y; edges out of a vertex are ordered by label.
  std::uint64_t edge(std::uint64_t v, std::uint32_t y) const { return v * a_ + y; }

  std::vector<std::uint64_t> out_neighbours(std::uint64_t v) const {
    std::vector<std::uint64_t> out;
    for (std::uint32_t y = 0; y < a_; ++y) out.push_back(successor(v, y));
    return out;
  }

  /// Per-vertex in-degrees, computed from the edge list.
  std::vector<std::uint32_t> in_degrees() const {
    std::vector<std::uint32_t> in(vertex_count(), 0);
    for (std::uint64_t v = 0; v < vertex_count(); ++v) {
      for (std::uint32_t y = 0; y < a_; ++y) ++in[successor(v, y)];
    }
    return in;
  }

 private:
  AlphabetSize a_;
  std::size_t n_;
  std::size_t t_;
  std::uint64_t words_ = 1;
};

inline AstuteGraph build_astute(AlphabetSize a, std::size_t n, std::size_t t) {
  return AstuteGraph(a, n, t);
}

namespace detail {

/// Hierholzer walk from `start` over the edges not yet marked in `used`,
/// taking labels in ascending order. Returns the letters of the trail.
inline std::vector<std::uint32_t> euler_trail(const AstuteGraph& g, std::uint64_t start,
                                              std::vector<bool>& used) {
  const AlphabetSize a = g.a();
  std::vector<std::uint32_t> next(g.vertex_count(), 0);
  struct Step {
    std::uint64_t v;
    std::uint32_t label;
  };
  std::vector<Step> stack{{start, 0}};
  std::vector<std::uint32_t> letters;
  while (!stack.empty()) {
    auto v = stack.back().v;
    auto& p = next[v];
    while (p < a && used[g.edge(v, p)]) ++p;
    if (p < a) {
      used[g.edge(v, p)] = true;
      stack.push_back({g.successor(v, p), p});
      ++p;
    } else {
      if (stack.size() > 1) letters.push_back(stack.back().label);
      stack.pop_back();
    }
  }
  std::reverse(letters.begin(), letters.end());
  return letters;
}

inline Necklace necklace_from_letters(const std::vector<std::uint32_t>& letters, AlphabetSize a,
                                      std::size_t n, std::size_t t) {
  return Necklace(CycPWord::from_letters(letters, a), a, n, t);
}

inline void require_all_used(const std::vector<bool>& used) {
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw std::logic_error("Euler trail did not exhaust the astute graph");
  }
}

}  // namespace detail

struct NoConstraint {};
/// The necklace starts with t zeros.
struct ZerosPrefix {};
/// The necklace contains the total word x of length n+1.
struct ContainWord {
  PWord x;
};
using NecklaceConstraint = std::variant<NoConstraint, ZerosPrefix, ContainWord>;

/// An (a,n,t)-perfect necklace read off an Euler tour of G(a,n-1,t).
inline Necklace euler_necklace(AlphabetSize a, std::size_t n, std::size_t t,
                               const NecklaceConstraint& constraint = NoConstraint{}) {
  if (n == 0) throw std::invalid_argument("necklace word length n must be positive");
  AstuteGraph g(a, n - 1, t);
  std::vector<bool> used(g.edge_count(), false);
  const std::uint64_t origin = g.vertex(0, 0);

  if (std::holds_alternative<NoConstraint>(constraint)) {
    auto letters = detail::euler_trail(g, origin, used);
    detail::require_all_used(used);
    return detail::necklace_from_letters(letters, a, n, t);
  }

  if (std::holds_alternative<ZerosPrefix>(constraint)) {
    std::vector<std::uint32_t> letters;
    std::uint64_t v = origin;
    for (std::size_t s = 0; s < t; ++s) {
      used[g.edge(v, 0)] = true;
      letters.push_back(0);
      v = g.successor(v, 0);
    }
    auto rest = detail::euler_trail(g, origin, used);
    detail::require_all_used(used);
    letters.insert(letters.end(), rest.begin(), rest.end());
    return detail::necklace_from_letters(letters, a, n, t);
  }

  const PWord& x = std::get<ContainWord>(constraint).x;
  if (a < 2 || n < 2 || t < n) {
    throw std::invalid_argument("ContainWord needs a >= 2, n >= 2 and t >= n");
  }
  if (x.size() != n + 1 || !x.is_total() || x.alphabet_size() != a) {
    throw std::invalid_argument("ContainWord needs a total word of length n+1 over the same alphabet");
  }
  WordCode start_word = 0;
  if (t == n) {
    // (x2' x3' ... xn', 0) with xi' the least letter different from xi
    for (std::size_t i = 1; i < n; ++i) {
      std::uint32_t xi = x[static_cast<std::ptrdiff_t>(i)].value();
      start_word = start_word * a + (xi == 0 ? 1 : 0);
    }
  }
  std::uint64_t v = g.vertex(start_word, 0);
  const std::uint64_t first = v;
  std::vector<std::uint32_t> letters;
  for (auto c : x.chars()) {
    auto e = g.edge(v, c.value());
    if (used[e]) throw std::logic_error("walk for ContainWord repeats an edge");
    used[e] = true;
    letters.push_back(c.value());
    v = g.successor(v, c.value());
  }
  auto rest = detail::euler_trail(g, v, used);
  detail::require_all_used(used);
  if (!rest.empty()) {
    // the trail must close the tour at the walk's first vertex
    std::uint64_t end = v;
    for (auto y : rest) end = g.successor(end, y);
    if (end != first) throw std::logic_error("trail does not return to the start of the walk");
  } else if (v != first) {
    throw std::logic_error("walk does not close the tour");
  }
  letters.insert(letters.end(), rest.begin(), rest.end());
  return detail::necklace_from_letters(letters, a, n, t);
}

/// Concatenation of A^n in lexicographic order: an (a,n,n)-necklace.
inline Necklace lex_necklace(AlphabetSize a, std::size_t n) {
  WordSpace space(a, n);
  if (space.size() > kDenseWordCap / std::max<std::size_t>(n, 1)) {
    throw CapExceeded("lex necklace exceeds the size cap");
  }
  std::vector<Char> cs;
  cs.reserve(space.size() * n);
  for (WordCode c = 0; c < space.size(); ++c) {
    auto w = space.decode(c);
    cs.insert(cs.end(), w.chars().begin(), w.chars().end());
  }
  return Necklace(CycPWord(std::move(cs), a), a, n, n);
}

/// From an (a,n,n+r)-necklace with 0 <= r < n, each block's first n letters
/// are repeated q times: an (a,n,nq+r)-necklace.
inline Necklace stretch_necklace(const Necklace& w, std::size_t q) {
  const std::size_t n = w.n(), t = w.t();
  if (q == 0) throw std::invalid_argument("stretch factor q must be at least 1");
  if (t < n || t >= 2 * n) {
    throw std::invalid_argument("stretch needs t = n + r with 0 <= r < n (got n=" +
                                std::to_string(n) + ", t=" + std::to_string(t) + ")");
  }
  const std::size_t r = t - n;
  const std::size_t blocks = w.word().size() / t;
  std::vector<Char> cs;
  cs.reserve(blocks * (n * q + r));
  for (std::size_t p = 0; p < blocks; ++p) {
    auto block = w.word().chars().subspan(p * t, t);
    for (std::size_t j = 0; j < q; ++j) cs.insert(cs.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(n));
    cs.insert(cs.end(), block.begin() + static_cast<std::ptrdiff_t>(n), block.end());
  }
  return Necklace(CycPWord(std::move(cs), w.a()), w.a(), n, n * q + r);
}

namespace detail {

/// n with a^n = |w|, after checking that w is a De Bruijn cycle.
inline std::size_t debruijn_order(const CycPWord& w) {
  const AlphabetSize a = w.alphabet_size();
  if (a < 2 || !w.is_total()) throw std::invalid_argument("input is not a De Bruijn cycle");
  std::size_t n = 0;
  std::uint64_t len = 1;
  while (len < w.size()) {
    len *= a;
    ++n;
  }
  if (len != w.size() || n == 0 || !verify_perfect_necklace(w, a, n, 1)) {
    throw std::invalid_argument(format(w) + " is not a De Bruijn cycle");
  }
  return n;
}

}  // namespace detail

/// Blocks w_{rp}..w_{rp+n-1} w_{rp}..w_{rp+r-1}, p = 0..a^n-1: an
/// (a,n,n+r)-necklace when gcd(a^n, r) = 1.
inline Necklace rotate_expand_necklace(const CycPWord& w, std::size_t r) {
  const std::size_t n = detail::debruijn_order(w);
  const std::uint64_t len = w.size();
  if (r < 1 || r > n) {
    throw std::invalid_argument("rotate expansion needs 1 <= r <= n (got r=" + std::to_string(r) + ")");
  }
  if (std::gcd(len, static_cast<std::uint64_t>(r)) != 1) {
    throw std::invalid_argument("rotate expansion needs gcd(a^n, r) = 1 (gcd(" + std::to_string(len) +
                                "," + std::to_string(r) + ") = " +
                                std::to_string(std::gcd(len, static_cast<std::uint64_t>(r))) + ")");
  }
  std::vector<Char> cs;
  cs.reserve(len * (n + r));
  for (std::uint64_t p = 0; p < len; ++p) {
    auto base = static_cast<std::ptrdiff_t>(r * p % len);
    for (std::size_t j = 0; j < n; ++j) cs.push_back(w[base + static_cast<std::ptrdiff_t>(j)]);
    for (std::size_t j = 0; j < r; ++j) cs.push_back(w[base + static_cast<std::ptrdiff_t>(j)]);
  }
  return Necklace(CycPWord(std::move(cs), w.alphabet_size()), w.alphabet_size(), n, n + r);
}

/// Blocks w_{-p}..w_{-p+n-1} w_{-p}..w_{-p+n-2}: an (a,n,2n-1)-necklace.
inline Necklace reflect_expand_necklace(const CycPWord& w) {
  const std::size_t n = detail::debruijn_order(w);
  const std::uint64_t len = w.size();
  std::vector<Char> cs;
  cs.reserve(len * (2 * n - 1));
  for (std::uint64_t p = 0; p < len; ++p) {
    auto base = -static_cast<std::ptrdiff_t>(p);
    for (std::size_t j = 0; j < n; ++j) cs.push_back(w[base + static_cast<std::ptrdiff_t>(j)]);
    for (std::size_t j = 0; j + 1 < n; ++j) cs.push_back(w[base + static_cast<std::ptrdiff_t>(j)]);
  }
  return Necklace(CycPWord(std::move(cs), w.alphabet_size()), w.alphabet_size(), n, 2 * n - 1);
}

}  // namespace upcycle
