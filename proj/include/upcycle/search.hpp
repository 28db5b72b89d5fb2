#pragma once

// Backtracking search for upcycles with a fixed diamond frame, and the
// cross-join rearrangement.

#include <algorithm>
#include <atomic>
#include <map>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "upcycle/liftfold.hpp"
#include "upcycle/nonexist.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

inline constexpr std::uint64_t kSearchLengthCap = std::uint64_t{1} << 20;

struct SearchSpec {
  AlphabetSize a = 2;
  std::size_t n = 4;
  std::size_t d = 1;
  /// Residues mod n of 1-based diamond positions. Empty means the last d
  /// positions of each window.
  OffsetSet diamond_offsets;
  std::optional<PWord> seed_prefix;
  std::optional<std::size_t> limit;
  bool exhaustive = true;
  unsigned threads = 1;
};

struct SearchResult {
  std::vector<CycPWord> upcycles;  ///< canonical rotations, sorted, distinct
  bool complete = true;            ///< false when the limit cut the search short
  std::optional<FeasibilityVerdict> ruled_out;
};

namespace detail {

class UpcycleSearch {
 public:
  UpcycleSearch(const SearchSpec& spec, std::size_t len, std::vector<std::vector<Char>> candidates,
                std::size_t frame_period, bool break_symmetry)
      : spec_(spec),
        len_(len),
        cands_(std::move(candidates)),
        period_(frame_period),
        symmetry_(break_symmetry),
        space_(spec.a, spec.n) {
    top_ = space_.size() / spec.a;
    for (std::size_t j = 0; j < spec.n; ++j) place_of_.push_back(checked_pow(spec.a, spec.n - 1 - j));
    places_.resize(spec.n);
    for (std::size_t r = 0; r < spec.n; ++r) {
      for (std::size_t j = 0; j < spec.n; ++j) {
        if (cands_[(r + j) % len_].front().is_diamond()) {
          places_[r].push_back(place_of_[j]);
        }
      }
    }
  }

  /// All valid prefixes of length `depth`, in search order.
  std::vector<std::vector<std::uint32_t>> prefixes(std::size_t depth) {
    std::vector<std::vector<std::uint32_t>> out;
    reset();
    walk({}, depth, [&](const std::vector<std::uint32_t>& idx) { out.push_back(idx); return true; });
    return out;
  }

  /// Completed words extending `prefix`, at most `limit` of them.
  std::vector<CycPWord> complete_from(const std::vector<std::uint32_t>& prefix,
                                      std::optional<std::size_t> limit) {
    std::vector<CycPWord> found;
    reset();
    walk(prefix, len_, [&](const std::vector<std::uint32_t>&) {
      if (!close_cycle()) return true;
      found.emplace_back(word_, spec_.a);
      undo_to(closing_mark_);
      return !(limit && found.size() >= *limit);
    });
    return found;
  }

 private:
  void reset() {
    word_.assign(len_, Char::letter(0));
    covered_.assign((space_.size() + 63) / 64, 0);
    code_.assign(len_, 0);
    marks_.clear();
  }

  bool test(WordCode c) const { return (covered_[c >> 6] >> (c & 63)) & 1; }
  void set(WordCode c) { covered_[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void clear(WordCode c) { covered_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

  void undo_to(std::size_t mark) {
    while (marks_.size() > mark) {
      clear(marks_.back());
      marks_.pop_back();
    }
  }

  static std::uint64_t digit(Char c) { return c.is_diamond() ? 0 : c.value(); }

  /// Code of the window at s with diamonds read as 0.
  WordCode direct_code(std::size_t s) const {
    WordCode c = 0;
    for (std::size_t j = 0; j < spec_.n; ++j) c = c * spec_.a + digit(word_[(s + j) % len_]);
    return c;
  }

  /// Marks the words covered by the window starting at s; false on overlap.
  bool mark_window(std::size_t s, WordCode base) {
    const auto& places = places_[s % spec_.n];
    const std::size_t before = marks_.size();
    digits_.assign(places.size(), 0);
    WordCode c = base;
    while (true) {
      if (test(c)) {
        undo_to(before);
        return false;
      }
      set(c);
      marks_.push_back(c);
      std::size_t k = 0;
      for (; k < places.size(); ++k) {
        c += places[k];
        if (++digits_[k] < spec_.a) break;
        c -= places[k] * spec_.a;
        digits_[k] = 0;
      }
      if (k == places.size()) return true;
    }
  }

  /// Window at s must exceed window 0 when s is a frame-preserving shift.
  bool symmetry_ok(std::size_t s) const {
    if (!symmetry_ || s == 0 || s % period_ != 0) return true;
    for (std::size_t j = 0; j < spec_.n; ++j) {
      Char x = word_[j], y = word_[(s + j) % len_];
      if (x != y) return x < y;
    }
    return false;
  }

  bool place_ok(std::size_t pos) {
    if (pos + 1 < spec_.n) return true;
    const std::size_t s = pos + 1 - spec_.n;
    if (!symmetry_ok(s)) return false;
    code_[s] = s == 0 ? direct_code(0)
                      : (code_[s - 1] - digit(word_[s - 1]) * top_) * spec_.a + digit(word_[pos]);
    return mark_window(s, code_[s]);
  }

  /// Windows that wrap past the end; marks are kept until undone.
  bool close_cycle() {
    closing_mark_ = marks_.size();
    const std::size_t first = len_ >= spec_.n ? len_ - spec_.n + 1 : 0;
    for (std::size_t s = first; s < len_; ++s) {
      if (!symmetry_ok(s) || !mark_window(s, direct_code(s))) {
        undo_to(closing_mark_);
        return false;
      }
    }
    return true;
  }

  /// Iterative DFS over positions [0, depth). `prefix` choices are forced.
  /// `visit` is called at depth; returning false stops the walk.
  template <typename Visit>
  void walk(const std::vector<std::uint32_t>& prefix, std::size_t depth, Visit&& visit) {
    std::vector<std::uint32_t> idx;
    std::vector<std::size_t> mark_at;
    idx.reserve(depth);
    const std::size_t fixed = prefix.size();
    for (std::size_t p = 0; p < fixed; ++p) {
      word_[p] = cands_[p][prefix[p]];
      if (!place_ok(p)) return;
      idx.push_back(prefix[p]);
    }
    if (fixed == depth) {
      visit(idx);
      return;
    }
    std::size_t pos = fixed;
    mark_at.assign(depth + 1, 0);
    std::vector<std::int64_t> choice(depth + 1, -1);
    while (true) {
      if (pos == depth) {
        if (!visit(idx)) return;
        --pos;
        idx.pop_back();
        continue;
      }
      if (choice[pos] >= 0) undo_to(mark_at[pos]);
      ++choice[pos];
      if (choice[pos] >= static_cast<std::int64_t>(cands_[pos].size())) {
        choice[pos] = -1;
        if (pos == fixed) return;
        --pos;
        idx.pop_back();
        continue;
      }
      mark_at[pos] = marks_.size();
      word_[pos] = cands_[pos][static_cast<std::size_t>(choice[pos])];
      if (place_ok(pos)) {
        idx.push_back(static_cast<std::uint32_t>(choice[pos]));
        ++pos;
      }
    }
  }

  const SearchSpec& spec_;
  std::size_t len_;
  std::vector<std::vector<Char>> cands_;
  std::size_t period_;
  bool symmetry_;
  WordSpace space_;
  std::vector<Char> word_;
  std::vector<std::uint64_t> covered_;
  std::vector<WordCode> marks_;
  std::vector<WordCode> code_;
  std::vector<std::vector<WordCode>> places_;  ///< diamond place values by window start mod n
  std::vector<std::uint32_t> digits_;
  WordCode top_ = 1;
  std::vector<WordCode> place_of_;
  std::size_t closing_mark_ = 0;
};

}  // namespace detail

/// Upcycles with the requested (a,n,d) and diamond frame, as canonical
/// rotations in lexicographic order. Without a seed the first window is
/// forced below its frame-preserving shifts, which loses nothing up to
/// rotation. Ruled-out parameters give an empty result carrying the verdict.
inline SearchResult search_upcycles(const SearchSpec& spec) {
  SearchResult res;
  if (spec.a < 2 || spec.n < 1) throw std::invalid_argument("search needs a >= 2 and n >= 1");
  auto verdict = feasibility(spec.a, spec.n, spec.d);
  if (verdict.status == FeasibilityStatus::ruled_out) {
    res.ruled_out = std::move(verdict);
    return res;
  }
  const std::size_t n = spec.n, d = spec.d;
  const auto len = static_cast<std::size_t>(checked_pow(spec.a, n - d, kSearchLengthCap));
  checked_pow(spec.a, n);
  OffsetSet offs = spec.diamond_offsets;
  if (offs.empty()) {
    for (std::size_t i = n - d + 1; i <= n; ++i) offs.insert(i % n);
  }
  if (offs.size() != d) throw std::invalid_argument("diamond offsets must have exactly d elements");
  for (auto o : offs) {
    if (o >= n) throw std::invalid_argument("diamond offsets are residues mod n");
  }
  std::vector<bool> diamond(len);
  for (std::size_t i = 0; i < len; ++i) diamond[i] = offs.count((i + 1) % n) != 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (diamond[i] != diamond[(i + n) % len]) {
      throw std::invalid_argument("diamond offsets are not n-periodic on a cycle of length " +
                                  std::to_string(len));
    }
  }
  std::vector<std::vector<Char>> cands(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (diamond[i]) {
      cands[i] = {kDiamond};
    } else {
      for (std::uint32_t c = 0; c < spec.a; ++c) cands[i].push_back(Char::letter(c));
    }
  }
  if (spec.seed_prefix) {
    const auto& seed = *spec.seed_prefix;
    if (seed.alphabet_size() != spec.a || seed.size() > len) {
      throw std::invalid_argument("seed must use the search alphabet and fit in the cycle");
    }
    for (std::size_t i = 0; i < seed.size(); ++i) {
      Char c = seed[static_cast<std::ptrdiff_t>(i)];
      if (c.is_diamond() != diamond[i]) {
        throw std::invalid_argument("seed diamond at position " + std::to_string(i + 1) +
                                    " disagrees with the diamond offsets");
      }
      cands[i] = {c};
    }
  }
  std::size_t period = len;
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < len && ok; ++i) ok = diamond[i] == diamond[(i + p) % len];
    if (ok) {
      period = p;
      break;
    }
  }
  const bool symmetry = !spec.seed_prefix;
  const std::optional<std::size_t> limit = spec.exhaustive ? spec.limit : spec.limit.value_or(1);

  const unsigned threads = std::max(1u, spec.threads);
  std::vector<std::vector<CycPWord>> per_task;
  if (threads == 1) {
    detail::UpcycleSearch s(spec, len, cands, period, symmetry);
    per_task.push_back(s.complete_from({}, limit));
  } else {
    // split on a prefix long enough to give every worker several tasks
    std::size_t depth = 0;
    std::uint64_t branches = 1;
    while (depth < len && branches < 8ull * threads) branches *= cands[depth++].size();
    auto tasks = detail::UpcycleSearch(spec, len, cands, period, symmetry).prefixes(depth);
    per_task.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        detail::UpcycleSearch s(spec, len, cands, period, symmetry);
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
          per_task[i] = s.complete_from(tasks[i], limit);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<CycPWord> raw;
  for (auto& v : per_task) {
    for (auto& w : v) {
      if (limit && raw.size() >= *limit) {
        res.complete = false;
        break;
      }
      raw.push_back(std::move(w));
    }
  }
  if (limit && raw.size() >= *limit) res.complete = false;
  std::set<CycPWord> canon;
  for (const auto& w : raw) {
    auto rep = verify_upcycle(w, n);
    if (!rep.valid || rep.params->d != d) throw std::logic_error("search produced an invalid word");
    canon.insert(canonical_rotation(w));
  }
  res.upcycles.assign(canon.begin(), canon.end());
  return res;
}

// ---------------------------------------------------------------------------
// Cross-join
// ---------------------------------------------------------------------------

struct CrossJoinSites {
  std::size_t ix, iy, jx, jy;  ///< 1-based
};

namespace detail {

template <bool C>
bool occurs_at(const BasicWord<C>& w, const PWord& x, std::size_t pos1) {
  if (pos1 < 1) return false;
  if constexpr (!C) {
    if (pos1 - 1 + x.size() > w.size()) return false;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (w[static_cast<std::ptrdiff_t>(pos1 - 1 + j)] != x[static_cast<std::ptrdiff_t>(j)]) return false;
  }
  return true;
}

template <bool C>
std::vector<PWord> window_multiset(const BasicWord<C>& w, std::size_t n) {
  std::vector<PWord> out;
  const std::size_t starts = C ? w.size() : (w.size() >= n ? w.size() - n + 1 : 0);
  for (std::size_t i = 0; i < starts; ++i) {
    std::vector<Char> cs(n);
    for (std::size_t j = 0; j < n; ++j) cs[j] = w[static_cast<std::ptrdiff_t>(i + j)];
    out.emplace_back(std::move(cs), w.alphabet_size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Exchanges the blocks [iy, jx) and [jx, jy) ... as
/// u_1..u_{ix-1} u_{jx}..u_{jy-1} u_{iy}..u_{jx-1} u_{ix}..u_{iy-1} u_{jy}..
/// where x (length n-1) occurs at ix and jx and y at iy and jy. Cyclic
/// inputs whose sites wrap are rotated so that ix comes first.
template <bool C>
BasicWord<C> cross_join(const BasicWord<C>& w, std::size_t n, const PWord& x, const PWord& y,
                        CrossJoinSites s) {
  if (n < 2 || x.size() != n - 1 || y.size() != n - 1) {
    throw std::invalid_argument("cross-join words must have length n-1");
  }
  const std::size_t len = w.size();
  for (auto p : {s.ix, s.iy, s.jx, s.jy}) {
    if (p < 1 || p > len) throw std::invalid_argument("cross-join position out of range");
  }
  if (!detail::occurs_at(w, x, s.ix) || !detail::occurs_at(w, x, s.jx)) {
    throw std::invalid_argument("x does not occur at both given positions");
  }
  if (!detail::occurs_at(w, y, s.iy) || !detail::occurs_at(w, y, s.jy)) {
    throw std::invalid_argument("y does not occur at both given positions");
  }
  BasicWord<C> src = w;
  if constexpr (C) {
    auto rel = [&](std::size_t p) { return (p + len - s.ix) % len; };
    if (!(rel(s.iy) < rel(s.jx) && rel(s.jx) < rel(s.jy) && rel(s.iy) > 0)) {
      throw std::invalid_argument("cross-join needs ix < iy < jx < jy in cyclic order");
    }
    if (!(s.ix < s.iy && s.iy < s.jx && s.jx < s.jy)) {
      src = apply_symmetry(w, SymmetryOp{Rotate{static_cast<std::ptrdiff_t>(s.ix - 1)}});
      s = {1, rel(s.iy) + 1, rel(s.jx) + 1, rel(s.jy) + 1};
    }
  } else {
    if (!(s.ix < s.iy && s.iy < s.jx && s.jx < s.jy)) {
      throw std::invalid_argument("cross-join needs ix < iy < jx < jy");
    }
  }
  auto cs = src.chars();
  auto seg = [&](std::size_t from1, std::size_t to1) {  // [from, to) 1-based
    return std::vector<Char>(cs.begin() + static_cast<std::ptrdiff_t>(from1 - 1),
                             cs.begin() + static_cast<std::ptrdiff_t>(to1 - 1));
  };
  std::vector<Char> out = seg(1, s.ix);
  for (auto part : {seg(s.jx, s.jy), seg(s.iy, s.jx), seg(s.ix, s.iy), seg(s.jy, len + 1)}) {
    out.insert(out.end(), part.begin(), part.end());
  }
  BasicWord<C> result(std::move(out), w.alphabet_size());
  if (detail::window_multiset(result, n) != detail::window_multiset(w, n)) {
    throw std::logic_error("cross-join changed the window multiset");
  }
  return result;
}

struct CrossJoinCandidate {
  PWord x, y;
  CrossJoinSites sites;
};

/// Every (x, y, sites) with x != y repeated (n-1)-substrings of the cyclic
/// word interleaved as ix < iy < jx < jy (cyclically, ix is the anchor).
inline std::vector<CrossJoinCandidate> cross_join_candidates(const CycPWord& w, std::size_t n) {
  std::map<PWord, std::vector<std::size_t>> occ;
  for (std::size_t i = 0; i < w.size(); ++i) occ[window(w, i, n - 1)].push_back(i + 1);
  std::vector<CrossJoinCandidate> out;
  const std::size_t len = w.size();
  for (const auto& [x, xs] : occ) {
    if (xs.size() < 2) continue;
    for (const auto& [y, ys] : occ) {
      if (ys.size() < 2 || x == y) continue;
      for (auto ix : xs) {
        auto rel = [&](std::size_t p) { return (p + len - ix) % len; };
        for (auto jx : xs) {
          if (jx == ix) continue;
          for (auto iy : ys) {
            if (!(rel(iy) > 0 && rel(iy) < rel(jx))) continue;
            for (auto jy : ys) {
              if (rel(jy) > rel(jx)) out.push_back({x, y, {ix, iy, jx, jy}});
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace upcycle
