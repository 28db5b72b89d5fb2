#pragma once

// Small finite fields F_{p^k} and exact sums of p-th roots of unity.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace upcycle {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

/// F_{p^k}. Element i is the polynomial whose coefficients are the base-p
/// digits of i, least significant digit as the constant term.
class FiniteField {
 public:
  /// `modulus` lists coefficients from the constant term up; it must be monic
  /// of degree k and irreducible over F_p (checked exhaustively).
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (modulus_.size() < 2 || modulus_.back() != 1) {
      throw std::invalid_argument("field modulus must be monic of degree >= 1");
    }
    k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    order_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) order_ *= p_;
    if (order_ > (1u << 16)) throw std::invalid_argument("field too large");
    if (!irreducible()) throw std::invalid_argument("field modulus is reducible");
    trace_.resize(order_);
    for (std::uint32_t x = 0; x < order_; ++x) {
      std::uint32_t acc = 0, y = x;
      for (std::uint32_t j = 0; j < k_; ++j) {
        acc = add(acc, y);
        y = power(y, p_);
      }
      if (acc >= p_) throw std::logic_error("trace left the prime field");
      trace_[x] = acc;
    }
  }

  /// The prime field F_p.
  explicit FiniteField(std::uint32_t p) : FiniteField(p, {0, 1}) {}

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return digitwise(x, y, +1); }
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return digitwise(x, y, -1); }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    auto a = digits(x), b = digits(y);
    std::vector<std::uint64_t> prod(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] += std::uint64_t{a[i]} * b[j];
    }
    for (auto& c : prod) c %= p_;
    for (std::size_t d = prod.size(); d-- > k_;) {
      auto c = prod[d];
      if (c == 0) continue;
      for (std::uint32_t j = 0; j <= k_; ++j) {
        prod[d - k_ + j] = (prod[d - k_ + j] + (p_ - c) * modulus_[j]) % p_;
      }
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = k_; i-- > 0;) out = out * p_ + static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  std::uint32_t power(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  /// Tr(x) = x + x^p + ... + x^{p^{k-1}}, as a residue mod p.
  std::uint32_t trace(std::uint32_t x) const { return trace_.at(x); }

 private:
  std::vector<std::uint32_t> digits(std::uint32_t x) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i] = x % p_;
      x /= p_;
    }
    return d;
  }

  std::uint32_t digitwise(std::uint32_t x, std::uint32_t y, int sign) const {
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t a = x % p_, b = y % p_;
      std::uint32_t c = sign > 0 ? (a + b) % p_ : (a + p_ - b) % p_;
      out += c * place;
      place *= p_;
      x /= p_;
      y /= p_;
    }
    return out;
  }

  /// No monic factor of degree 1..k/2, by trial division over all of them.
  bool irreducible() const {
    for (std::uint32_t deg = 1; 2 * deg <= k_; ++deg) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < deg; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> f(deg + 1);
        auto c = code;
        for (std::uint32_t i = 0; i < deg; ++i) {
          f[i] = static_cast<std::uint32_t>(c % p_);
          c /= p_;
        }
        f[deg] = 1;
        std::vector<std::uint64_t> r(modulus_.begin(), modulus_.end());
        for (std::size_t d = r.size(); d-- > deg;) {
          auto lead = r[d] % p_;
          if (lead == 0) continue;
          for (std::uint32_t j = 0; j <= deg; ++j) {
            r[d - deg + j] = (r[d - deg + j] + (p_ - lead) * f[j]) % p_;
          }
        }
        bool zero = true;
        for (std::uint32_t i = 0; i < deg; ++i) zero = zero && r[i] % p_ == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  std::uint32_t p_;
  std::uint32_t k_ = 1;
  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> trace_;
};

/// The field of order q: prime fields, or F_4, F_8, F_9, F_16, F_25, F_27
/// with fixed moduli.
inline FiniteField field_of_order(std::uint32_t q) {
  if (is_prime(q)) return FiniteField(q);
  static const std::map<std::uint32_t, std::pair<std::uint32_t, std::vector<std::uint32_t>>> table{
      {4, {2, {1, 1, 1}}},      // x^2 + x + 1
      {8, {2, {1, 1, 0, 1}}},   // x^3 + x + 1
      {9, {3, {1, 0, 1}}},      // x^2 + 1
      {16, {2, {1, 1, 0, 0, 1}}},  // x^4 + x + 1
      {25, {5, {1, 1, 1}}},     // x^2 + x + 1
      {27, {3, {1, 2, 0, 1}}},  // x^3 - x + 1
  };
  auto it = table.find(q);
  if (it == table.end()) {
    throw std::invalid_argument("no supported finite field of order " + std::to_string(q));
  }
  return FiniteField(it->second.first, it->second.second);
}

/// sum_j c_j xi^j with xi a primitive p-th root of unity.
class CycloInt {
 public:
  explicit CycloInt(std::vector<std::int64_t> counts) : c_(std::move(counts)) {
    if (c_.empty()) throw std::invalid_argument("CycloInt needs p >= 1 coefficients");
  }
  static CycloInt zero(std::uint32_t p) { return CycloInt(std::vector<std::int64_t>(p, 0)); }
  static CycloInt integer(std::uint32_t p, std::int64_t v) {
    auto z = zero(p);
    z.c_[0] = v;
    return z;
  }

  std::uint32_t p() const { return static_cast<std::uint32_t>(c_.size()); }
  const std::vector<std::int64_t>& counts() const { return c_; }

  /// c_j - c_{p-1}: coordinates in the basis 1, xi, ..., xi^{p-2}.
  std::vector<std::int64_t> reduced() const {
    if (c_.size() == 1) return c_;
    std::vector<std::int64_t> r(c_.size() - 1);
    for (std::size_t j = 0; j + 1 < c_.size(); ++j) r[j] = c_[j] - c_.back();
    return r;
  }

  bool operator==(const CycloInt& o) const { return p() == o.p() && reduced() == o.reduced(); }

  CycloInt operator+(const CycloInt& o) const {
    if (p() != o.p()) throw std::invalid_argument("CycloInt root orders differ");
    auto r = c_;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += o.c_[j];
    return CycloInt(std::move(r));
  }

  bool is_minus_one() const { return *this == integer(p(), -1); }

  /// The value as an integer when it is rational (all c_j, j > 0, equal).
  std::optional<std::int64_t> as_integer() const {
    auto r = reduced();
    for (std::size_t j = 1; j < r.size(); ++j) {
      if (r[j] != 0) return std::nullopt;
    }
    return r[0];
  }

  std::string to_string() const {
    if (auto v = as_integer()) return std::to_string(*v);
    std::string s;
    auto r = reduced();
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == 0) continue;
      if (!s.empty()) s += r[j] > 0 ? "+" : "";
      s += std::to_string(r[j]);
      if (j) s += "xi^" + std::to_string(j);
    }
    return s;
  }

 private:
  std::vector<std::int64_t> c_;
};

}  // namespace upcycle
