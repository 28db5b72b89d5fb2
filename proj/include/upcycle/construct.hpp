#pragma once

// Alphabet multiplier: an upcycle over A^n and a perfect necklace over a
// k-letter alphabet give an upcycle over an ak-letter alphabet.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "upcycle/necklace.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/verify.hpp"

namespace upcycle {

namespace detail {

inline UpcycleParams require_upcycle(const CycPWord& u, std::size_t n) {
  auto rep = verify_upcycle(u, n);
  if (!rep.valid) throw std::invalid_argument(format(u) + " is not an upcycle: " + rep.to_string());
  return *rep.params;
}

/// Verifies `w` as an upcycle with the expected parameters when a^n is
/// within the dense cap; larger outputs are returned unverified.
inline void certify_output(const CycPWord& w, std::size_t n, std::size_t d) {
  if (!bounded_pow(w.alphabet_size(), n, kDenseWordCap)) return;
  auto rep = verify_upcycle(w, n);
  if (!rep.valid || rep.params->d != d) {
    throw std::logic_error("constructed word failed certification: " + rep.to_string());
  }
}

}  // namespace detail

struct MultiplierSpec {
  CycPWord base;
  std::size_t n;
  AlphabetSize k;
  Necklace filler;
};

/// Necklace length t for the filler, (n-d)a^{n-d}/n; throws unless integral.
inline std::size_t multiplier_filler_t(const UpcycleParams& p) {
  if (p.d >= p.n) throw std::invalid_argument("diamondicity must be less than n");
  auto len = checked_pow(p.a, p.n - p.d);
  if ((p.n - p.d) * len % p.n != 0) {
    throw std::invalid_argument("n does not divide (n-d)a^(n-d)");
  }
  return static_cast<std::size_t>((p.n - p.d) * len / p.n);
}

/// w = a*v + u^(k^(n-d)), with the filler letters written into the
/// non-diamond positions of u^(k^(n-d)) in order from position 1.
inline CycPWord alphabet_multiply(const MultiplierSpec& spec) {
  const auto p = detail::require_upcycle(spec.base, spec.n);
  if (spec.k == 0) throw std::invalid_argument("multiplier k must be at least 1");
  const std::size_t t = multiplier_filler_t(p);
  const Necklace& f = spec.filler;
  if (f.a() != spec.k || f.n() != p.n - p.d || f.t() != t) {
    throw std::invalid_argument("filler must be a (" + std::to_string(spec.k) + "," +
                                std::to_string(p.n - p.d) + "," + std::to_string(t) +
                                ")-perfect necklace, got " + f.header());
  }
  const auto copies = checked_pow(spec.k, p.n - p.d);
  const CycPWord big = power(spec.base, copies);
  std::vector<Char> out(big.chars().begin(), big.chars().end());
  std::size_t m = 0;
  for (auto& c : out) {
    if (c.is_diamond()) continue;
    c = Char::letter(p.a * f.word()[static_cast<std::ptrdiff_t>(m++)].value() + c.value());
  }
  if (m != f.word().size()) throw std::logic_error("filler length does not match letter count");
  CycPWord w(std::move(out), p.a * spec.k);
  detail::certify_output(w, p.n, p.d);
  return w;
}

/// Filler stretch(lex(k, n-d), a^{n-d}/n); needs n | a^{n-d}.
inline Necklace lex_multiplier_filler(const UpcycleParams& p, AlphabetSize k) {
  auto len = checked_pow(p.a, p.n - p.d);
  if (len % p.n != 0) throw std::invalid_argument("n does not divide a^(n-d)");
  return stretch_necklace(lex_necklace(k, p.n - p.d), len / p.n);
}

inline CycPWord alphabet_multiply_lex(const CycPWord& base, std::size_t n, AlphabetSize k) {
  const auto p = detail::require_upcycle(base, n);
  return alphabet_multiply({base, n, k, lex_multiplier_filler(p, k)});
}

/// Lex filler when n | a^{n-d}, otherwise an Euler-tour necklace.
inline Necklace default_multiplier_filler(const UpcycleParams& p, AlphabetSize k) {
  auto len = checked_pow(p.a, p.n - p.d);
  if (len % p.n == 0) return lex_multiplier_filler(p, k);
  return euler_necklace(k, p.n - p.d, multiplier_filler_t(p));
}

/// Stage i multiplies stage i-1 by k_i with a zeros-first filler, so each
/// stage starts with the previous one.
inline std::vector<CycPWord> onion(const CycPWord& base, std::size_t n,
                                   const std::vector<AlphabetSize>& multipliers) {
  std::vector<CycPWord> stages{base};
  for (auto k : multipliers) {
    if (k == 0) throw std::invalid_argument("multiplier k must be at least 1");
    const auto p = detail::require_upcycle(stages.back(), n);
    auto filler = euler_necklace(k, p.n - p.d, multiplier_filler_t(p), ZerosPrefix{});
    stages.push_back(alphabet_multiply({stages.back(), n, k, std::move(filler)}));
  }
  return stages;
}

}  // namespace upcycle
