#pragma once

// Certification of upcycles, upwords and perfect necklaces by exact coverage
// counting over A^n.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "upcycle/pword.hpp"

namespace upcycle {

struct UpcycleParams {
  AlphabetSize a = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  bool operator==(const UpcycleParams&) const = default;
};

enum class ViolationKind { periodicity, double_cover, uncovered, length };

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::periodicity: return "periodicity";
    case ViolationKind::double_cover: return "double-cover";
    case ViolationKind::uncovered: return "uncovered";
    case ViolationKind::length: return "length";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::optional<PWord> word;        ///< the offending member of A^n, if any
  std::vector<std::size_t> positions;  ///< 1-based window starts or breach index
};

struct VerifyReport {
  bool valid = false;
  bool trivial = false;   ///< no diamonds, or nothing but diamonds
  bool linear = false;    ///< produced by verify_upword
  std::optional<UpcycleParams> params;
  std::optional<Violation> violation;

  std::string to_string() const {
    std::ostringstream os;
    if (valid) {
      os << "VALID a=" << params->a << " n=" << params->n;
      if (!linear) os << " d=" << params->d;
      if (trivial) os << " trivial";
      return os.str();
    }
    os << "INVALID reason=" << upcycle::to_string(violation->kind) << " witness=";
    if (violation->word) os << format(*violation->word);
    if (!violation->positions.empty()) {
      os << (violation->word ? "@" : "");
      for (std::size_t i = 0; i < violation->positions.size(); ++i) {
        os << (i ? "," : "") << violation->positions[i];
      }
    }
    return os.str();
  }
};

/// Diamonds per n-window; throws PeriodicityBreach if diamonds are not
/// n-periodic.
inline std::size_t diamondicity(const CycPWord& u, std::size_t n) {
  require_n_periodic_diamonds(u, n);
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += u[static_cast<std::ptrdiff_t>(i)].is_diamond();
  return d;
}

namespace detail {

/// Counts coverage of every word in A^n by the windows starting at
/// `starts` (0-based) and fills the report verdict.
template <bool C>
void coverage_verdict(const BasicWord<C>& u, std::size_t n, std::size_t starts, VerifyReport& rep) {
  WordSpace space(u.alphabet_size(), n);
  std::vector<std::uint8_t> count(space.size(), 0);
  std::vector<Char> buf(n);
  std::optional<WordCode> twice;
  for (std::size_t i = 0; i < starts && !twice; ++i) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = u[static_cast<std::ptrdiff_t>(i + j)];
    space.for_each_covered(buf, [&](WordCode c) {
      if (count[c] < 2 && ++count[c] == 2 && !twice) twice = c;
    });
  }
  if (twice) {
    PWord w = space.decode(*twice);
    auto pos = covers(u, w);
    if constexpr (!C) {
      pos.erase(std::remove_if(pos.begin(), pos.end(), [&](std::size_t p) { return p > starts; }),
                pos.end());
    }
    rep.violation = Violation{ViolationKind::double_cover, w, std::move(pos)};
    return;
  }
  auto miss = std::find(count.begin(), count.end(), std::uint8_t{0});
  if (miss != count.end()) {
    rep.violation = Violation{ViolationKind::uncovered,
                              space.decode(static_cast<WordCode>(miss - count.begin())), {}};
    return;
  }
  rep.valid = true;
}

}  // namespace detail

/// Valid iff every word of A^n is covered by exactly one n-window of u.
/// Refuses (CapExceeded) when a^n exceeds the dense cap.
inline VerifyReport verify_upcycle(const CycPWord& u, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  VerifyReport rep;
  std::size_t d = 0;
  try {
    d = diamondicity(u, n);
  } catch (const PeriodicityBreach& e) {
    rep.violation = Violation{ViolationKind::periodicity, std::nullopt, {e.position()}};
    return rep;
  }
  const AlphabetSize a = u.alphabet_size();
  checked_pow(a, n);
  detail::coverage_verdict(u, n, u.size(), rep);
  if (rep.valid) {
    auto expected = checked_pow(a, n - d);
    if (u.size() != expected) {
      rep.valid = false;
      rep.violation = Violation{ViolationKind::length, std::nullopt, {u.size()}};
      return rep;
    }
    const auto dc = u.diamond_count();
    rep.trivial = dc == 0 || dc == u.size();
    rep.params = UpcycleParams{a, n, d};
  }
  return rep;
}

/// Linear variant: only the |w|-n+1 windows that fit are counted.
inline VerifyReport verify_upword(const PWord& w, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  VerifyReport rep;
  rep.linear = true;
  if (w.size() < n) {
    rep.violation = Violation{ViolationKind::length, std::nullopt, {w.size()}};
    return rep;
  }
  detail::coverage_verdict(w, n, w.size() - n + 1, rep);
  if (rep.valid) {
    const auto dc = w.diamond_count();
    rep.trivial = dc == 0 || dc == w.size();
    rep.params = UpcycleParams{w.alphabet_size(), n, 0};
  }
  return rep;
}

/// True iff |v| = t*a^n and, for each residue j mod t, the n-windows at
/// positions congruent to j run through A^n exactly once.
inline bool verify_perfect_necklace(const CycPWord& v, AlphabetSize a, std::size_t n, std::size_t t) {
  if (t == 0 || a == 0) return false;
  if (!v.is_total()) return false;
  for (auto c : v.chars()) {
    if (c.value() >= a) return false;
  }
  auto an = bounded_pow(a, n, kDenseWordCap);
  if (!an) throw CapExceeded("a^n exceeds the size cap");
  if (v.size() != t * *an) return false;
  WordSpace space(a, n);
  std::vector<bool> seen(*an);
  std::vector<Char> buf(n);
  for (std::size_t j = 0; j < t; ++j) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t i = j; i < v.size(); i += t) {
      for (std::size_t k = 0; k < n; ++k) buf[k] = v[static_cast<std::ptrdiff_t>(i + k)];
      auto c = space.encode(buf);
      if (seen[c]) return false;
      seen[c] = true;
    }
  }
  return true;
}

/// Sorted multiset of maximal diamond-free cyclic runs of u.
inline std::vector<PWord> boundary_words(const CycPWord& u) {
  const auto dc = u.diamond_count();
  if (dc == 0 || dc == u.size()) {
    throw std::invalid_argument("boundary words need at least one diamond and one letter");
  }
  const std::size_t len = u.size();
  std::size_t first = 0;
  while (!u[static_cast<std::ptrdiff_t>(first)].is_diamond()) ++first;
  std::vector<PWord> out;
  std::vector<Char> run;
  for (std::size_t k = 1; k <= len; ++k) {
    Char c = u[static_cast<std::ptrdiff_t>(first + k)];
    if (c.is_diamond()) {
      if (!run.empty()) out.emplace_back(std::move(run), u.alphabet_size());
      run.clear();
    } else {
      run.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<std::vector<std::uint32_t>> all_permutations(AlphabetSize a) {
  std::vector<std::uint32_t> p(a);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool same_boundary(const CycPWord& x, const CycPWord& y) {
  auto dx = x.diamond_count(), dy = y.diamond_count();
  if (dx != dy) return false;
  if (dx == 0 || dx == x.size()) return true;
  return boundary_words(x) == boundary_words(y);
}

}  // namespace detail

/// Searches letter permutation, then optional reversal, then rotation, for a
/// composition taking u to target. Identity steps are omitted from the
/// witness, so an empty witness means u == target. Without `candidates`, all
/// a! permutations are tried when a <= 5, else identity and complement.
inline std::optional<std::vector<SymmetryOp>> equivalent_under_symmetry(
    const CycPWord& u, const CycPWord& target,
    std::optional<std::vector<std::vector<std::uint32_t>>> candidates = std::nullopt) {
  if (u.size() != target.size() || u.alphabet_size() != target.alphabet_size()) return std::nullopt;
  const AlphabetSize a = u.alphabet_size();
  std::vector<std::vector<std::uint32_t>> perms;
  if (candidates) {
    perms = *candidates;
  } else if (a <= 5) {
    perms = detail::all_permutations(a);
  } else {
    std::vector<std::uint32_t> id(a), co(a);
    std::iota(id.begin(), id.end(), 0u);
    for (std::uint32_t x = 0; x < a; ++x) co[x] = a - 1 - x;
    perms = {id, co};
  }
  for (const auto& p : perms) {
    bool identity = true;
    for (std::uint32_t x = 0; x < p.size(); ++x) identity = identity && p[x] == x;
    CycPWord permuted = identity ? u : apply_symmetry(u, SymmetryOp{Permute{p}});
    for (int rev = 0; rev < 2; ++rev) {
      CycPWord x = rev ? apply_symmetry(permuted, SymmetryOp{Reverse{}}) : permuted;
      if (!detail::same_boundary(x, target)) continue;
      auto r = rotation_offset(x, target);
      if (!r) continue;
      std::vector<SymmetryOp> witness;
      if (!identity) witness.emplace_back(Permute{p});
      if (rev) witness.emplace_back(Reverse{});
      if (*r != 0) witness.emplace_back(Rotate{static_cast<std::ptrdiff_t>(*r)});
      return witness;
    }
  }
  return std::nullopt;
}

}  // namespace upcycle
