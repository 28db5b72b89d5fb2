#pragma once

// Lifts (fewer diamonds, longer cycle) and folds (the reverse).
// Diamond offsets are residues mod n of 1-based positions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "upcycle/construct.hpp"
#include "upcycle/necklace.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

using OffsetSet = std::set<std::size_t>;

/// Residues mod n (of 1-based positions) that hold diamonds in u.
inline OffsetSet diamond_offsets(const CycPWord& u, std::size_t n) {
  require_n_periodic_diamonds(u, n);
  OffsetSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[static_cast<std::ptrdiff_t>(i)].is_diamond()) out.insert((i + 1) % n);
  }
  return out;
}

struct LiftSpec {
  CycPWord base;
  std::size_t n;
  OffsetSet selected_offsets;
  Necklace filler;
};

namespace detail {

inline bool offset_selected(const OffsetSet& offs, std::size_t pos0, std::size_t n) {
  return offs.count((pos0 + 1) % n) != 0;
}

inline void require_offsets(const CycPWord& base, std::size_t n, const OffsetSet& offs) {
  auto have = diamond_offsets(base, n);
  for (auto o : offs) {
    if (o >= n || !have.count(o)) {
      throw std::invalid_argument("offset " + std::to_string(o) + " is not a diamond residue mod " +
                                  std::to_string(n));
    }
  }
}

}  // namespace detail

/// Necklace length t for a lift filler, delta*a^{n-d}/n.
inline std::size_t lift_filler_t(const UpcycleParams& p, std::size_t delta) {
  auto len = checked_pow(p.a, p.n - p.d);
  if (delta * len % p.n != 0) throw std::invalid_argument("n does not divide delta*a^(n-d)");
  return static_cast<std::size_t>(delta * len / p.n);
}

/// Replaces the selected diamonds of u^(a^delta) with the filler, the m-th
/// selected slot taking filler letter m.
inline CycPWord lift(const LiftSpec& spec) {
  const auto p = detail::require_upcycle(spec.base, spec.n);
  const std::size_t delta = spec.selected_offsets.size();
  if (delta == 0) return spec.base;
  detail::require_offsets(spec.base, spec.n, spec.selected_offsets);
  const std::size_t t = lift_filler_t(p, delta);
  const Necklace& f = spec.filler;
  if (f.a() != p.a || f.n() != delta || f.t() != t) {
    throw std::invalid_argument("filler must be an (" + std::to_string(p.a) + "," +
                                std::to_string(delta) + "," + std::to_string(t) +
                                ")-perfect necklace, got " + f.header());
  }
  const CycPWord big = power(spec.base, checked_pow(p.a, delta));
  std::vector<Char> out(big.chars().begin(), big.chars().end());
  const std::size_t len = out.size();
  std::size_t m = 0;
  for (std::size_t i = 0; i < len; ++i) {
    bool sel = big[static_cast<std::ptrdiff_t>(i)].is_diamond() && detail::offset_selected(spec.selected_offsets, i, spec.n);
    // the selection must be n-periodic around the whole cycle
    bool partner = big[static_cast<std::ptrdiff_t>(i + spec.n)].is_diamond() &&
                   detail::offset_selected(spec.selected_offsets, (i + spec.n) % len, spec.n);
    if (sel != partner) {
      throw std::invalid_argument("selected diamonds are not n-periodic in u^(a^delta)");
    }
    if (sel) out[i] = f.word()[static_cast<std::ptrdiff_t>(m++)];
  }
  if (m != f.word().size()) throw std::logic_error("filler length does not match slot count");
  CycPWord w(std::move(out), p.a);
  detail::certify_output(w, spec.n, p.d - delta);
  return w;
}

/// A single De Bruijn lift: all diamonds replaced via an Euler-tour necklace.
inline CycPWord debruijn_lift(const CycPWord& base, std::size_t n) {
  const auto p = detail::require_upcycle(base, n);
  if (p.d == 0) return base;
  auto offs = diamond_offsets(base, n);
  auto filler = euler_necklace(p.a, p.d, lift_filler_t(p, p.d));
  return lift({base, n, offs, std::move(filler)});
}

/// True iff lower^(a^delta) covers upper at some rotation, delta > 0.
inline bool is_lift(const CycPWord& upper, const CycPWord& lower, std::size_t n) {
  if (upper.alphabet_size() != lower.alphabet_size()) {
    throw std::invalid_argument("is_lift: alphabet sizes differ");
  }
  const auto pu = detail::require_upcycle(upper, n);
  const auto pl = detail::require_upcycle(lower, n);
  if (pu.d >= pl.d) return false;
  const auto delta = pl.d - pu.d;
  const CycPWord big = power(lower, checked_pow(pl.a, delta));
  if (big.size() != upper.size()) return false;
  const auto len = static_cast<std::ptrdiff_t>(upper.size());
  for (std::ptrdiff_t r = 0; r < len; ++r) {
    bool ok = true;
    for (std::ptrdiff_t i = 0; i < len && ok; ++i) ok = big[i + r].covers(upper[i]);
    if (ok) return true;
  }
  return false;
}

/// A u with |u| = |upper|/a^delta, diamonds at `offsets` plus upper's own,
/// whose power covers some rotation of upper; verified as an upcycle.
inline std::optional<CycPWord> try_fold(const CycPWord& upper, std::size_t n, std::size_t delta,
                                        const OffsetSet& offsets) {
  auto rep = verify_upcycle(upper, n);
  if (!rep.valid) return std::nullopt;
  if (delta == 0) return offsets.empty() ? std::optional<CycPWord>(upper) : std::nullopt;
  const auto a = upper.alphabet_size();
  auto copies = bounded_pow(a, delta, upper.size());
  if (!copies || upper.size() % *copies != 0) return std::nullopt;
  const std::size_t m = upper.size() / *copies;
  for (auto o : offsets) {
    if (o >= n) return std::nullopt;
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Char> cand(m);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (detail::offset_selected(offsets, i, n)) {
        cand[i] = kDiamond;
        continue;
      }
      Char first = upper[static_cast<std::ptrdiff_t>(r + i)];
      bool any_diamond = false;
      for (std::size_t j = 0; j < *copies; ++j) {
        Char c = upper[static_cast<std::ptrdiff_t>(r + i + j * m)];
        if (c.is_diamond()) any_diamond = true;
        else if (!any_diamond && c != first) ok = false;
      }
      if (any_diamond) {
        for (std::size_t j = 0; j < *copies; ++j) {
          if (!upper[static_cast<std::ptrdiff_t>(r + i + j * m)].is_diamond()) ok = false;
        }
      }
      cand[i] = any_diamond ? kDiamond : first;
    }
    if (!ok) continue;
    CycPWord u(std::move(cand), a);
    auto urep = verify_upcycle(u, n);
    if (urep.valid && urep.params->d == rep.params->d + delta) return u;
  }
  return std::nullopt;
}

struct LiftEnumeration {
  std::vector<CycPWord> cycles;  ///< canonical rotations, sorted
  bool complete = true;
};

inline constexpr std::uint64_t kLiftEnumerationBound = std::uint64_t{1} << 20;

/// Distinct (up to rotation) De Bruijn lifts of a d <= 1 upcycle. For d = 1
/// the fillers are exactly the words whose t columns are permutations of A,
/// so (a!)^t candidates are tried; above `bound` this refuses unless
/// `max_results` caps the output, in which case `complete` may be false.
inline LiftEnumeration enumerate_debruijn_lifts(const CycPWord& base, std::size_t n,
                                                std::optional<std::size_t> max_results = std::nullopt,
                                                std::uint64_t bound = kLiftEnumerationBound) {
  const auto p = detail::require_upcycle(base, n);
  checked_pow(p.a, n);
  LiftEnumeration res;
  if (p.d == 0) {
    res.cycles.push_back(canonical_rotation(base));
    return res;
  }
  if (p.d != 1) {
    throw std::invalid_argument("exhaustive De Bruijn lift enumeration supports diamondicity 1 only");
  }
  const std::size_t t = lift_filler_t(p, 1);
  auto perms = detail::all_permutations(p.a);
  if (!max_results) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < t; ++i) {
      if (total > bound / perms.size()) {
        throw CapExceeded("(a!)^t candidate fillers exceed the enumeration bound " +
                          std::to_string(bound));
      }
      total *= perms.size();
    }
  }
  const auto offs = diamond_offsets(base, n);
  std::set<CycPWord> found;
  std::vector<std::size_t> choice(t, 0);
  std::vector<std::uint32_t> letters(t * p.a);
  while (true) {
    for (std::size_t col = 0; col < t; ++col) {
      for (std::size_t row = 0; row < p.a; ++row) letters[row * t + col] = perms[choice[col]][row];
    }
    Necklace filler(CycPWord::from_letters(letters, p.a), p.a, 1, t);
    found.insert(canonical_rotation(lift({base, n, offs, std::move(filler)})));
    if (max_results && found.size() >= *max_results) {
      res.complete = false;
      break;
    }
    bool exhausted = true;
    for (std::size_t col = t; col-- > 0;) {
      if (++choice[col] < perms.size()) {
        exhausted = false;
        break;
      }
      choice[col] = 0;
    }
    if (exhausted) break;
  }
  res.cycles.assign(found.begin(), found.end());
  return res;
}

}  // namespace upcycle
