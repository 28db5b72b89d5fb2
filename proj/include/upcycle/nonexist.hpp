#pragma once

// Curtained frames, D(n), and the filter stack that rules out (a,n,d).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "upcycle/field.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

/// For each i in [k], f_i or f_{n-k+i} is a diamond (1-based).
inline bool is_k_curtained(const Frame& f, std::size_t k) {
  const std::size_t n = f.size();
  if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, |f|]");
  for (std::size_t i = 0; i < k; ++i) {
    if (!f.is_diamond(i) && !f.is_diamond(n - k + i)) return false;
  }
  return true;
}

/// Least k for which f is k-curtained.
inline std::optional<std::size_t> is_curtained(const Frame& f) {
  for (std::size_t k = 1; k <= f.size(); ++k) {
    if (is_k_curtained(f, k)) return k;
  }
  return std::nullopt;
}

inline Frame rotate_frame(const Frame& f, std::size_t r) {
  Frame g = f;
  if (!g.marks.empty()) {
    std::rotate(g.marks.begin(), g.marks.begin() + static_cast<std::ptrdiff_t>(r % g.size()), g.marks.end());
  }
  return g;
}

/// True iff some cyclic shift of f is not curtained.
inline bool has_uncurtained_shift(const Frame& f) {
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (!is_curtained(rotate_frame(f, r))) return true;
  }
  return false;
}

inline constexpr std::size_t kMaxDn = 26;

namespace detail {

/// Assigns position pairs (t, n-1-t) from both ends inward; once depth t is
/// complete every k <= t curtain test is decided, so curtained branches are
/// cut there. Maximizes the diamond count of a non-curtained frame.
class UncurtainedSearch {
 public:
  explicit UncurtainedSearch(std::size_t n) : n_(n), diamond_(n, false) {}

  std::size_t run() {
    best_ = 0;
    dfs(0, 0);
    return best_;
  }

 private:
  bool solid_pair(std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i) {
      if (!diamond_[i] && !diamond_[n_ - k + i]) return true;
    }
    return false;
  }

  void dfs(std::size_t t, std::size_t diamonds) {
    if (2 * t >= n_) {
      for (std::size_t k = t + 1; k <= n_; ++k) {
        if (!solid_pair(k)) return;
      }
      if (!found_ || diamonds > best_) best_ = diamonds;
      found_ = true;
      return;
    }
    const std::size_t left = t, right = n_ - 1 - t;
    const std::size_t open = right - left + 1;
    if (found_ && diamonds + open <= best_) return;
    const bool single = left == right;
    static constexpr std::array<std::array<bool, 2>, 4> kChoices{
        {{true, true}, {true, false}, {false, true}, {false, false}}};
    for (const auto& ch : kChoices) {
      if (single && ch[0] != ch[1]) continue;
      diamond_[left] = ch[0];
      diamond_[right] = ch[1];
      std::size_t add = single ? std::size_t{ch[0]} : std::size_t{ch[0]} + ch[1];
      if (solid_pair(t + 1)) dfs(t + 1, diamonds + add);
    }
    diamond_[left] = diamond_[right] = false;
  }

  std::size_t n_;
  std::vector<bool> diamond_;
  std::size_t best_ = 0;
  bool found_ = false;
};

}  // namespace detail

/// D(n) = 1 + the largest diamond count of a non-curtained frame of length n.
inline std::size_t compute_D(std::size_t n) {
  if (n < 1 || n > kMaxDn) {
    throw CapExceeded("D(n) is computed for 1 <= n <= " + std::to_string(kMaxDn));
  }
  static std::mutex mu;
  static std::map<std::size_t, std::size_t> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  std::size_t d = 1 + detail::UncurtainedSearch(n).run();
  std::lock_guard lock(mu);
  memo[n] = d;
  return d;
}

struct CurtainAudit {
  std::optional<std::size_t> zero_window;  ///< 1-based start of the window covering 0^n
  Frame zero_frame;
  std::optional<std::size_t> zero_curtain_k;  ///< set when that frame is curtained
  Frame pane;
  bool pane_ok = false;  ///< some cyclic shift of the pane frame is not curtained
  bool passes() const { return zero_window && !zero_curtain_k && pane_ok; }
};

inline CurtainAudit curtain_audit(const CycPWord& u, std::size_t n) {
  CurtainAudit r;
  PWord zeros(std::vector<Char>(n, Char::letter(0)), u.alphabet_size());
  auto pos = covers(u, zeros);
  if (!pos.empty()) {
    r.zero_window = pos.front();
    r.zero_frame = frame_of(window(u, pos.front() - 1, n));
    r.zero_curtain_k = is_curtained(r.zero_frame);
  }
  Frame f = frame_of(window(u, 0, n));
  r.pane = frame_period(f).pane;
  r.pane_ok = has_uncurtained_shift(r.pane);
  return r;
}

// ---------------------------------------------------------------------------
// Feasibility
// ---------------------------------------------------------------------------

enum class FeasibilityStatus { ruled_out, open, known_to_exist };

inline std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::ruled_out: return "ruled-out";
    case FeasibilityStatus::open: return "open";
    case FeasibilityStatus::known_to_exist: return "known-to-exist";
  }
  return "?";
}

struct FeasibilityReason {
  std::string rule;
  std::string citation;
  std::string witness;
};

struct FeasibilityVerdict {
  AlphabetSize a = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  FeasibilityStatus status = FeasibilityStatus::open;
  std::vector<FeasibilityReason> reasons;
};

namespace detail {

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

/// gcd(a^e, n) without forming a^e.
inline std::uint64_t gcd_pow(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  return std::gcd(powmod(a, e, n), n);
}

}  // namespace detail

/// Frame periods m surviving every per-period rule for (a,n,d).
inline std::vector<std::size_t> admissible_frame_periods(AlphabetSize a, std::size_t n, std::size_t d) {
  std::vector<std::size_t> out;
  const auto g = detail::gcd_pow(a, n - d, n);
  for (std::size_t m = 4; m <= n; ++m) {
    if (g % m != 0 || d % (n / m) != 0) continue;
    if (m > kMaxDn) {
      out.push_back(m);  // D(m) out of range: cannot rule this period out
      continue;
    }
    if (d * m / n + 1 <= compute_D(m)) out.push_back(m);
  }
  return out;
}

inline FeasibilityVerdict feasibility(AlphabetSize a, std::size_t n, std::size_t d) {
  FeasibilityVerdict v{a, n, d, FeasibilityStatus::open, {}};
  auto rule_out = [&](std::string rule, std::string citation, std::string witness) {
    v.reasons.push_back({std::move(rule), std::move(citation), std::move(witness)});
  };
  if (a < 2) rule_out("alphabet", "alphabets have at least two letters", "a=" + std::to_string(a));
  if (d < 1) rule_out("nontrivial", "only nontrivial upcycles (d >= 1) are classified", "d=0");
  if (d >= n) rule_out("diamondicity", "d < n for a nontrivial upcycle", "d=" + std::to_string(d));
  if (n <= 3) {
    rule_out("small-n", "no nontrivial upcycles exist for n <= 3", "n=" + std::to_string(n));
  }
  if (!v.reasons.empty()) {
    v.status = FeasibilityStatus::ruled_out;
    return v;
  }
  // n | d a^{n-d-1}
  if (d * detail::powmod(a, n - d - 1, n) % n != 0) {
    rule_out("letter-count", "letter counts are integers: n | d a^(n-d-1)",
             std::to_string(n) + " does not divide " + std::to_string(d) + "*" + std::to_string(a) +
                 "^" + std::to_string(n - d - 1));
  }
  if (std::gcd<std::uint64_t, std::uint64_t>(a, n) == 1) {
    rule_out("coprime", "no nontrivial upcycle when gcd(a,n) = 1", "gcd(a,n)=1");
  }
  {
    auto lhs = 2 * static_cast<long long>(n - d) - 1;
    if (lhs * lhs <= 4 * static_cast<long long>(n) - 7) {
      rule_out("sqrt-bound", "d < n - sqrt(n - 7/4) - 1/2",
               "(2(n-d)-1)^2=" + std::to_string(lhs * lhs) + " <= 4n-7=" + std::to_string(4 * n - 7));
    }
  }
  if (n <= kMaxDn && d + 1 > compute_D(n)) {
    rule_out("curtain-D(n)", "diamondicity is below D(n)",
             "D(" + std::to_string(n) + ")=" + std::to_string(compute_D(n)));
  }
  if (admissible_frame_periods(a, n, d).empty()) {
    const auto g = detail::gcd_pow(a, n - d, n);
    rule_out("frame-period",
             "frame period m divides gcd(a^(n-d),n), m >= 4, (n/m) | d, dm/n <= D(m)-1",
             "gcd(a^(n-d),n)=" + std::to_string(g));
  }
  if (!v.reasons.empty()) {
    v.status = FeasibilityStatus::ruled_out;
  } else if ((n == 4 || n == 8) && d == 1 && a % 2 == 0) {
    v.status = FeasibilityStatus::known_to_exist;
  }
  return v;
}

struct FeasibilityRow {
  std::size_t n = 0;
  std::string alphabet_class;  ///< "ck" or "ck (p∤k)"
  AlphabetSize c = 0;
  std::vector<std::uint32_t> excluded_primes;
  std::vector<std::size_t> d_values;
  std::set<std::string> rules;  ///< rules that removed other d for the class representative

  std::string d_range() const {
    if (d_values.empty()) return "";
    bool contiguous = d_values.back() - d_values.front() + 1 == d_values.size();
    if (d_values.size() == 1) return std::to_string(d_values.front());
    if (contiguous) return std::to_string(d_values.front()) + "-" + std::to_string(d_values.back());
    std::string s;
    for (std::size_t i = 0; i < d_values.size(); ++i) s += (i ? "," : "") + std::to_string(d_values[i]);
    return s;
  }
};

namespace detail {

inline std::uint64_t lcm_upto(std::size_t n) {
  std::uint64_t l = 1;
  for (std::uint64_t i = 2; i <= n; ++i) l = std::lcm(l, i);
  return l;
}

inline std::string describe_class(AlphabetSize c, const std::vector<std::uint32_t>& excluded) {
  std::string s = std::to_string(c) + "k";
  if (!excluded.empty()) {
    s += " (";
    for (std::size_t i = 0; i < excluded.size(); ++i) s += (i ? "," : "") + std::to_string(excluded[i]);
    s += "\xE2\x88\xA4k)";  // U+2224
  }
  return s;
}

}  // namespace detail

/// For each n, the alphabet classes and diamondicities not ruled out, found
/// by testing every a up to 2 lcm(1..n).
inline std::vector<FeasibilityRow> feasibility_table(std::size_t n_lo, std::size_t n_hi) {
  std::vector<FeasibilityRow> rows;
  for (std::size_t n = std::max<std::size_t>(n_lo, 1); n <= n_hi; ++n) {
    const std::uint64_t limit = 2 * detail::lcm_upto(n);
    std::map<std::vector<std::size_t>, std::vector<AlphabetSize>> groups;
    for (std::uint64_t a = 2; a <= limit; ++a) {
      std::vector<std::size_t> ds;
      for (std::size_t d = 1; d < n; ++d) {
        if (feasibility(static_cast<AlphabetSize>(a), n, d).status != FeasibilityStatus::ruled_out) {
          ds.push_back(d);
        }
      }
      if (!ds.empty()) groups[ds].push_back(static_cast<AlphabetSize>(a));
    }
    std::vector<FeasibilityRow> here;
    for (const auto& [ds, members] : groups) {
      AlphabetSize c = 0;
      for (auto a : members) c = std::gcd(c, a);
      std::set<std::uint64_t> ks;
      for (auto a : members) ks.insert(a / c);
      std::vector<std::uint32_t> excluded;
      for (std::uint32_t p = 2; p <= n; ++p) {
        if (!is_prime(p)) continue;
        bool divides_some = false;
        for (auto k : ks) divides_some = divides_some || k % p == 0;
        if (!divides_some) excluded.push_back(p);
      }
      // the group must be exactly {ck : k avoids the excluded primes}
      std::size_t expected = 0;
      for (std::uint64_t k = 1; c * k <= limit; ++k) {
        bool ok = true;
        for (auto p : excluded) ok = ok && k % p != 0;
        expected += ok;
      }
      FeasibilityRow row;
      row.n = n;
      row.c = c;
      row.excluded_primes = excluded;
      row.d_values = ds;
      if (expected == members.size()) {
        row.alphabet_class = detail::describe_class(c, excluded);
      } else {
        std::string s = "a in {";
        for (std::size_t i = 0; i < members.size() && i < 8; ++i) s += (i ? "," : "") + std::to_string(members[i]);
        row.alphabet_class = s + (members.size() > 8 ? ",...}" : "}");
      }
      for (std::size_t d = 1; d < n; ++d) {
        if (std::find(ds.begin(), ds.end(), d) != ds.end()) continue;
        for (const auto& r : feasibility(members.front(), n, d).reasons) row.rules.insert(r.rule);
      }
      here.push_back(std::move(row));
    }
    std::sort(here.begin(), here.end(), [](const FeasibilityRow& x, const FeasibilityRow& y) {
      return x.d_values.size() != y.d_values.size() ? x.d_values.size() > y.d_values.size() : x.c > y.c;
    });
    rows.insert(rows.end(), here.begin(), here.end());
  }
  return rows;
}

}  // namespace upcycle
