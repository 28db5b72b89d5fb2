#pragma once

// Expected multiplicity and the partial-word analogues of the balance, run
// and autocorrelation properties. All arithmetic is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "upcycle/field.hpp"
#include "upcycle/necklace.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

using ExactRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const ExactRational& r) { return r.str(); }

namespace detail {

inline ExactRational pow_rational(AlphabetSize a, long long e) {
  using boost::multiprecision::cpp_int;
  cpp_int p = boost::multiprecision::pow(cpp_int(a), static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? ExactRational(cpp_int(1), p) : ExactRational(p);
}

template <bool C>
std::size_t window_starts(const BasicWord<C>& u, std::size_t k) {
  if constexpr (C) return u.size();
  else return u.size() >= k ? u.size() - k + 1 : 0;
}

}  // namespace detail

/// Sum over |w|-windows of u covering w of a^{-(diamonds in the window)}.
template <bool C>
ExactRational expected_multiplicity(const BasicWord<C>& u, const PWord& w) {
  if (u.alphabet_size() != w.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
  if (!w.is_total()) throw std::invalid_argument("expected multiplicity needs a total word");
  if (w.size() > u.size()) throw std::invalid_argument("|w| exceeds |u|");
  const std::size_t k = w.size();
  // q -> number of covering windows with q diamonds
  std::vector<std::uint64_t> by_q(k + 1, 0);
  for (std::size_t i = 0; i < detail::window_starts(u, k); ++i) {
    std::size_t q = 0;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      Char c = u[static_cast<std::ptrdiff_t>(i + j)];
      ok = c.covers(w[static_cast<std::ptrdiff_t>(j)]);
      q += c.is_diamond();
    }
    if (ok) ++by_q[q];
  }
  ExactRational e = 0;
  for (std::size_t q = 0; q <= k; ++q) {
    if (by_q[q]) e += ExactRational(by_q[q]) * detail::pow_rational(u.alphabet_size(), -static_cast<long long>(q));
  }
  return e;
}

struct PsdResult {
  bool holds = true;
  std::optional<PWord> witness;
  ExactRational expected = 0;
  ExactRational actual = 0;
};

/// E(u,v) = |u|/a^k for every k in [n] and v in A^k. Sums are scaled by a^k
/// so the sweep stays in integers.
inline PsdResult check_psd(const CycPWord& u, std::size_t n) {
  const AlphabetSize a = u.alphabet_size();
  checked_pow(a, n);
  PsdResult res;
  std::vector<Char> buf;
  for (std::size_t k = 1; k <= n; ++k) {
    WordSpace space(a, k);
    std::vector<std::uint64_t> scaled(space.size(), 0);
    buf.resize(k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::size_t q = 0;
      for (std::size_t j = 0; j < k; ++j) {
        buf[j] = u[static_cast<std::ptrdiff_t>(i + j)];
        q += buf[j].is_diamond();
      }
      const std::uint64_t weight = checked_pow(a, k - q);
      space.for_each_covered(buf, [&](WordCode c) { scaled[c] += weight; });
    }
    for (WordCode c = 0; c < space.size(); ++c) {
      if (scaled[c] != u.size()) {
        res.holds = false;
        res.witness = space.decode(c);
        res.expected = ExactRational(u.size()) * detail::pow_rational(a, -static_cast<long long>(k));
        res.actual = ExactRational(scaled[c]) * detail::pow_rational(a, -static_cast<long long>(k));
        return res;
      }
    }
  }
  return res;
}

struct BalanceReport {
  std::vector<std::uint64_t> counts;  ///< indexed by letter
  bool balanced = false;
};

template <bool C>
BalanceReport balance(const BasicWord<C>& u) {
  BalanceReport r;
  r.counts.assign(u.alphabet_size(), 0);
  for (auto c : u.chars()) {
    if (c.is_letter()) ++r.counts[c.value()];
  }
  r.balanced = std::all_of(r.counts.begin(), r.counts.end(),
                           [&](std::uint64_t x) { return x == r.counts.front(); });
  return r;
}

/// ((n-d)/n) a^{n-d-1}, the letter count of an (a,n,d) upcycle.
inline ExactRational balance_formula(const UpcycleParams& p) {
  return ExactRational(p.n - p.d, p.n) *
         detail::pow_rational(p.a, static_cast<long long>(p.n) - static_cast<long long>(p.d) - 1);
}

struct RunTable {
  AlphabetSize a = 2;
  std::size_t n = 0;
  std::vector<std::vector<ExactRational>> runs;  ///< runs[letter][r-1] = E(u, letter^r)
  std::optional<bool> r2;  ///< set when u is a cyclic upcycle for A^n
};

template <bool C>
RunTable run_counts(const BasicWord<C>& u, std::size_t n) {
  RunTable t{u.alphabet_size(), n, {}, std::nullopt};
  const std::size_t maxr = std::min(n, u.size());
  for (std::uint32_t l = 0; l < u.alphabet_size(); ++l) {
    std::vector<ExactRational> row;
    for (std::size_t r = 1; r <= maxr; ++r) {
      std::vector<Char> cs(r, Char::letter(l));
      row.push_back(expected_multiplicity(u, PWord(std::move(cs), u.alphabet_size())));
    }
    t.runs.push_back(std::move(row));
  }
  if constexpr (C) {
    if (bounded_pow(u.alphabet_size(), n, kDenseWordCap)) {
      auto rep = verify_upcycle(u, n);
      if (rep.valid) {
        bool ok = maxr == n;
        for (const auto& row : t.runs) {
          for (std::size_t r = 1; r <= row.size() && ok; ++r) {
            ok = row[r - 1] == detail::pow_rational(u.alphabet_size(),
                                                    static_cast<long long>(n - rep.params->d) -
                                                        static_cast<long long>(r));
          }
        }
        t.r2 = ok;
      }
    }
  }
  return t;
}

/// Deletes the last zero of the 0^n window of a De Bruijn cycle.
inline CycPWord puncture(const CycPWord& w) {
  const std::size_t n = detail::debruijn_order(w);
  const std::size_t len = w.size();
  std::size_t start = len;
  for (std::size_t i = 0; i < len && start == len; ++i) {
    bool zeros = true;
    for (std::size_t j = 0; j < n && zeros; ++j) zeros = w[static_cast<std::ptrdiff_t>(i + j)].value() == 0;
    if (zeros) start = i;
  }
  const std::size_t drop = (start + n - 1) % len;
  std::vector<Char> cs;
  cs.reserve(len - 1);
  for (std::size_t i = 0; i < len; ++i) {
    if (i != drop) cs.push_back(w.chars()[i]);
  }
  return CycPWord(std::move(cs), w.alphabet_size());
}

/// Covers every word of A^n except 0^n exactly once, and not 0^n.
inline bool is_punctured_debruijn(const CycPWord& w, std::size_t n) {
  if (!w.is_total()) return false;
  WordSpace space(w.alphabet_size(), n);
  if (w.size() + 1 != space.size()) return false;
  std::vector<bool> seen(space.size(), false);
  seen[0] = true;
  std::vector<Char> buf(n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = w[static_cast<std::ptrdiff_t>(i + j)];
    auto c = space.encode(buf);
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

/// A(w,tau) = sum_i xi^{Tr(w_{i+tau} - w_i)}, kept as counts per exponent.
inline CycloInt autocorrelation(const CycPWord& w, std::ptrdiff_t tau, const FiniteField& field) {
  if (field.order() != w.alphabet_size()) {
    throw std::invalid_argument("field order " + std::to_string(field.order()) +
                                " does not match alphabet size " + std::to_string(w.alphabet_size()));
  }
  if (!w.is_total()) throw std::invalid_argument("autocorrelation needs a total word");
  std::vector<std::int64_t> counts(field.characteristic(), 0);
  const auto len = static_cast<std::ptrdiff_t>(w.size());
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    ++counts[field.trace(field.sub(w[i + tau].value(), w[i].value()))];
  }
  return CycloInt(std::move(counts));
}

struct R3Verdict {
  bool holds = true;
  std::vector<std::size_t> failing_tau;
};

/// Punctures w and tests A(w^, tau) = -1 for tau = 1 .. a^n - 2.
inline R3Verdict check_r3(const CycPWord& w, const FiniteField& field, bool stop_at_first = false) {
  const CycPWord hat = puncture(w);
  R3Verdict v;
  for (std::size_t tau = 1; tau < hat.size(); ++tau) {
    if (!autocorrelation(hat, static_cast<std::ptrdiff_t>(tau), field).is_minus_one()) {
      v.holds = false;
      v.failing_tau.push_back(tau);
      if (stop_at_first) break;
    }
  }
  return v;
}

inline R3Verdict check_r3(const CycPWord& w, bool stop_at_first = false) {
  return check_r3(w, field_of_order(w.alphabet_size()), stop_at_first);
}

struct Agreements {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  bool operator==(const Agreements&) const = default;
};

inline Agreements agreements(const CycPWord& w, std::ptrdiff_t tau) {
  Agreements r;
  const auto len = static_cast<std::ptrdiff_t>(w.size());
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    if (w[i + tau] == w[i]) ++r.agree;
    else ++r.disagree;
  }
  return r;
}

}  // namespace upcycle
