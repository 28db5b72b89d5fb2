#pragma once

// Partial words over {0,...,a-1} plus the diamond wildcard, read linearly or
// cyclically. Everything here is a value type; operations are free functions.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace upcycle {

/// Number of letters in an alphabet. Letters are always 0 ... a-1.
using AlphabetSize = std::uint32_t;

/// A total word of a fixed length n packed as a base-a integer, first letter
/// most significant, so numeric order is lexicographic order.
using WordCode = std::uint64_t;

/// Largest a^n any dense per-word table in this library will allocate.
inline constexpr std::uint64_t kDenseWordCap = std::uint64_t{1} << 24;

/// Thrown when diamonds are not n-periodic. `position` is 1-based.
class PeriodicityBreach : public std::invalid_argument {
 public:
  PeriodicityBreach(std::size_t position, const std::string& what)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Thrown when an operation would exceed one of the desk-scale size caps.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// base^exp, or nullopt once the result exceeds `cap`.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
    if (r > cap) return std::nullopt;
  }
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t cap = kDenseWordCap) {
  auto r = bounded_pow(base, exp, cap);
  if (!r) {
    throw CapExceeded(std::to_string(base) + "^" + std::to_string(exp) +
                      " exceeds the size cap " + std::to_string(cap));
  }
  return *r;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// A letter or the diamond. Diamond orders after every letter.
class Char {
 public:
  constexpr Char() = default;

  static constexpr Char letter(std::uint32_t value) { return Char(value); }
  static constexpr Char diamond() { return Char(kDiamondRaw); }

  constexpr bool is_diamond() const { return raw_ == kDiamondRaw; }
  constexpr bool is_letter() const { return raw_ != kDiamondRaw; }
  constexpr std::uint32_t value() const { return raw_; }

  /// True if this character, used as a pattern, matches `other`.
  constexpr bool covers(Char other) const { return is_diamond() || raw_ == other.raw_; }

  constexpr auto operator<=>(const Char&) const = default;

 private:
  static constexpr std::uint32_t kDiamondRaw = std::numeric_limits<std::uint32_t>::max();
  explicit constexpr Char(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_ = 0;
};

inline constexpr Char kDiamond = Char::diamond();

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// A partial word. With `Cyclic` set, indexing wraps modulo the length and
/// the word must be nonempty.
template <bool Cyclic>
class BasicWord {
 public:
  static constexpr bool cyclic = Cyclic;

  BasicWord() requires(!Cyclic) = default;

  BasicWord(std::vector<Char> chars, AlphabetSize alphabet_size)
      : chars_(std::move(chars)), alphabet_(alphabet_size) {
    if (alphabet_ == 0) throw std::invalid_argument("alphabet size must be positive");
    if constexpr (Cyclic) {
      if (chars_.empty()) throw std::invalid_argument("a cyclic word must be nonempty");
    }
    for (std::size_t i = 0; i < chars_.size(); ++i) {
      if (chars_[i].is_letter() && chars_[i].value() >= alphabet_) {
        throw std::invalid_argument("letter " + std::to_string(chars_[i].value()) +
                                    " at position " + std::to_string(i + 1) +
                                    " is outside the alphabet of size " +
                                    std::to_string(alphabet_));
      }
    }
  }

  /// Total word from letter values.
  static BasicWord from_letters(std::span<const std::uint32_t> letters,
                                AlphabetSize alphabet_size) {
    std::vector<Char> cs;
    cs.reserve(letters.size());
    for (auto v : letters) cs.push_back(Char::letter(v));
    return BasicWord(std::move(cs), alphabet_size);
  }

  std::size_t size() const { return chars_.size(); }
  bool empty() const { return chars_.empty(); }
  AlphabetSize alphabet_size() const { return alphabet_; }
  std::span<const Char> chars() const { return chars_; }

  /// 0-based. Cyclic words accept any integer index.
  Char operator[](std::ptrdiff_t i) const {
    if constexpr (Cyclic) {
      auto n = static_cast<std::ptrdiff_t>(chars_.size());
      auto r = i % n;
      return chars_[static_cast<std::size_t>(r < 0 ? r + n : r)];
    } else {
      return chars_[static_cast<std::size_t>(i)];
    }
  }

  std::size_t diamond_count() const {
    return static_cast<std::size_t>(
        std::count_if(chars_.begin(), chars_.end(), [](Char c) { return c.is_diamond(); }));
  }
  bool is_total() const { return diamond_count() == 0; }

  /// Same characters and alphabet; the other cyclicity.
  BasicWord<!Cyclic> as_other() const { return BasicWord<!Cyclic>(chars_, alphabet_); }

  bool operator==(const BasicWord&) const = default;
  auto operator<=>(const BasicWord&) const = default;

 private:
  std::vector<Char> chars_;
  AlphabetSize alphabet_ = 2;
};

using PWord = BasicWord<false>;
using CycPWord = BasicWord<true>;

template <bool C>
CycPWord to_cyclic(const BasicWord<C>& w) {
  if constexpr (C) return w; else return w.as_other();
}

template <bool C>
PWord to_linear(const BasicWord<C>& w) {
  if constexpr (C) return w.as_other(); else return w;
}

/// Characters i, i+1, ..., i+k-1 of a cyclic word (0-based start).
inline PWord window(const CycPWord& u, std::size_t i, std::size_t k) {
  std::vector<Char> cs(k);
  for (std::size_t j = 0; j < k; ++j) cs[j] = u[static_cast<std::ptrdiff_t>(i + j)];
  return PWord(std::move(cs), u.alphabet_size());
}

/// The k-windows of u at every position, in order. Element i starts at u_i.
inline std::vector<PWord> windows(const CycPWord& u, std::size_t k) {
  if (k == 0 || k > u.size()) {
    throw std::invalid_argument("window length " + std::to_string(k) + " must be in [1, " +
                                std::to_string(u.size()) + "]");
  }
  std::vector<PWord> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(window(u, i, k));
  return out;
}

/// u repeated `times` times.
template <bool C>
BasicWord<C> power(const BasicWord<C>& u, std::size_t times) {
  std::vector<Char> cs;
  cs.reserve(u.size() * times);
  for (std::size_t t = 0; t < times; ++t) cs.insert(cs.end(), u.chars().begin(), u.chars().end());
  return BasicWord<C>(std::move(cs), u.alphabet_size());
}

// ---------------------------------------------------------------------------
// Total word codes
// ---------------------------------------------------------------------------

/// The set A^n of total words, packed as WordCode values in [0, a^n).
class WordSpace {
 public:
  WordSpace(AlphabetSize a, std::size_t n, std::uint64_t cap = kDenseWordCap)
      : a_(a), n_(n), size_(checked_pow(a, n, cap)) {}

  AlphabetSize alphabet_size() const { return a_; }
  std::size_t length() const { return n_; }
  std::uint64_t size() const { return size_; }

  template <typename Range>
  WordCode encode(const Range& letters) const {
    WordCode c = 0;
    for (auto ch : letters) {
      if constexpr (std::is_same_v<std::decay_t<decltype(ch)>, Char>) {
        c = c * a_ + ch.value();
      } else {
        c = c * a_ + static_cast<WordCode>(ch);
      }
    }
    return c;
  }

  PWord decode(WordCode code) const {
    std::vector<Char> cs(n_);
    for (std::size_t j = n_; j-- > 0;) {
      cs[j] = Char::letter(static_cast<std::uint32_t>(code % a_));
      code /= a_;
    }
    return PWord(std::move(cs), a_);
  }

  /// Calls fn(code) for every total word covered by `pattern` (length n).
  template <typename Fn>
  void for_each_covered(std::span<const Char> pattern, Fn&& fn) const {
    WordCode base = 0;
    std::vector<WordCode> weights;
    WordCode place = 1;
    for (std::size_t j = pattern.size(); j-- > 0;) {
      if (pattern[j].is_diamond()) {
        weights.push_back(place);
      } else {
        base += place * pattern[j].value();
      }
      place *= a_;
    }
    if (weights.empty()) {
      fn(base);
      return;
    }
    std::vector<std::uint32_t> digit(weights.size(), 0);
    WordCode code = base;
    while (true) {
      fn(code);
      std::size_t j = 0;
      while (j < weights.size()) {
        if (++digit[j] < a_) {
          code += weights[j];
          break;
        }
        code -= weights[j] * (a_ - 1);
        digit[j] = 0;
        ++j;
      }
      if (j == weights.size()) return;
    }
  }

 private:
  AlphabetSize a_;
  std::size_t n_;
  std::uint64_t size_;
};

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

inline constexpr std::string_view kLetterDigits = "0123456789abcdefghijklmnopqrstuvwxyz";
inline constexpr std::string_view kDiamondUtf8 = "\xE2\x8B\x84";  // U+22C4

inline char letter_glyph(std::uint32_t v) {
  if (v >= kLetterDigits.size()) {
    throw std::invalid_argument("letter " + std::to_string(v) + " has no text form (a > 36)");
  }
  return kLetterDigits[v];
}

inline std::string format_chars(std::span<const Char> cs) {
  std::string s;
  s.reserve(cs.size());
  for (auto c : cs) s.push_back(c.is_diamond() ? '*' : letter_glyph(c.value()));
  return s;
}

/// Linear words print bare, cyclic words inside parentheses.
template <bool C>
std::string format(const BasicWord<C>& w) {
  if constexpr (C) return "(" + format_chars(w.chars()) + ")";
  else return format_chars(w.chars());
}

namespace detail {

struct ScannedText {
  std::vector<Char> chars;
  bool parenthesized = false;
};

inline ScannedText scan_text(std::string_view text, AlphabetSize a) {
  ScannedText out;
  int depth = 0;
  bool closed = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
    if (text.substr(i, kDiamondUtf8.size()) == kDiamondUtf8) {
      if (closed) throw std::invalid_argument("characters after closing ')'");
      out.chars.push_back(kDiamond);
      i += kDiamondUtf8.size() - 1;
      continue;
    }
    if (ch == '(') {
      if (depth != 0 || closed || !out.chars.empty()) {
        throw std::invalid_argument("malformed cyclic delimiters: unexpected '('");
      }
      depth = 1;
      out.parenthesized = true;
      continue;
    }
    if (ch == ')') {
      if (depth != 1) throw std::invalid_argument("malformed cyclic delimiters: unmatched ')'");
      depth = 0;
      closed = true;
      continue;
    }
    if (closed) throw std::invalid_argument("characters after closing ')'");
    if (ch == '*') {
      out.chars.push_back(kDiamond);
      continue;
    }
    auto pos = kLetterDigits.find(ch);
    if (pos == std::string_view::npos) {
      throw std::invalid_argument(std::string("unrecognized character '") + ch + "'");
    }
    if (pos >= a) {
      throw std::invalid_argument(std::string("letter '") + ch + "' is outside the alphabet of size " +
                                  std::to_string(a));
    }
    out.chars.push_back(Char::letter(static_cast<std::uint32_t>(pos)));
  }
  if (depth != 0) throw std::invalid_argument("malformed cyclic delimiters: missing ')'");
  if (out.chars.empty()) throw std::invalid_argument("empty word");
  return out;
}

}  // namespace detail

/// Parses a linear partial word. Parentheses are rejected.
inline PWord parse_linear(std::string_view text, AlphabetSize a) {
  auto s = detail::scan_text(text, a);
  if (s.parenthesized) {
    throw std::invalid_argument("malformed cyclic delimiters: parentheses in a linear word");
  }
  return PWord(std::move(s.chars), a);
}

/// Parses a cyclic partial word, with or without the surrounding parentheses.
inline CycPWord parse_cyclic(std::string_view text, AlphabetSize a) {
  auto s = detail::scan_text(text, a);
  return CycPWord(std::move(s.chars), a);
}

using AnyWord = std::variant<PWord, CycPWord>;

/// parse_pword(text, a, cyclic) from the external character format.
inline AnyWord parse_pword(std::string_view text, AlphabetSize a, bool cyclic) {
  if (cyclic) return parse_cyclic(text, a);
  return parse_linear(text, a);
}

/// Cyclic iff the text is parenthesized.
inline AnyWord parse_auto(std::string_view text, AlphabetSize a) {
  auto s = detail::scan_text(text, a);
  if (s.parenthesized) return CycPWord(std::move(s.chars), a);
  return PWord(std::move(s.chars), a);
}

/// Smallest alphabet (at least 2) that can hold every letter in `text`.
inline AlphabetSize infer_alphabet(std::string_view text) {
  AlphabetSize a = 2;
  for (char ch : text) {
    auto pos = kLetterDigits.find(ch);
    if (pos != std::string_view::npos) a = std::max<AlphabetSize>(a, static_cast<AlphabetSize>(pos + 1));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Covering
// ---------------------------------------------------------------------------

/// True if `pattern` covers `target` position by position (same length).
inline bool covers_at(std::span<const Char> pattern, std::span<const Char> target) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!pattern[i].covers(target[i])) return false;
  }
  return true;
}

/// 1-based starting positions of every |y|-window of x that covers y.
/// A diamond in y is only matched by a diamond in x.
template <bool C>
std::vector<std::size_t> covers(const BasicWord<C>& x, const PWord& y) {
  if (x.alphabet_size() != y.alphabet_size()) {
    throw std::invalid_argument("alphabet mismatch: " + std::to_string(x.alphabet_size()) +
                                " vs " + std::to_string(y.alphabet_size()));
  }
  std::vector<std::size_t> out;
  if (y.size() > x.size()) return out;
  const std::size_t starts = C ? x.size() : x.size() - y.size() + 1;
  for (std::size_t i = 0; i < starts; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < y.size() && ok; ++j) {
      ok = x[static_cast<std::ptrdiff_t>(i + j)].covers(y[static_cast<std::ptrdiff_t>(j)]);
    }
    if (ok) out.push_back(i + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

enum class Mark : std::uint8_t { solid, diamond };

/// Diamond positions of a word, as a sequence of SOLID/DIAMOND marks.
struct Frame {
  std::vector<Mark> marks;
  bool cyclic = false;

  std::size_t size() const { return marks.size(); }
  Mark operator[](std::size_t i) const { return marks[i]; }
  bool is_diamond(std::size_t i) const { return marks[i] == Mark::diamond; }
  std::size_t diamond_count() const {
    return static_cast<std::size_t>(std::count(marks.begin(), marks.end(), Mark::diamond));
  }
  bool operator==(const Frame&) const = default;
};

template <bool C>
Frame frame_of(const BasicWord<C>& u) {
  Frame f;
  f.cyclic = C;
  f.marks.reserve(u.size());
  for (auto c : u.chars()) f.marks.push_back(c.is_diamond() ? Mark::diamond : Mark::solid);
  return f;
}

/// '.' for SOLID, '*' for DIAMOND; cyclic frames in parentheses.
inline std::string format(const Frame& f) {
  std::string s = f.cyclic ? "(" : "";
  for (auto m : f.marks) s.push_back(m == Mark::diamond ? '*' : '.');
  if (f.cyclic) s.push_back(')');
  return s;
}

/// Accepts '.', 'o', U+2022 for SOLID and '*', U+22C4 for DIAMOND.
inline Frame parse_frame(std::string_view text) {
  static constexpr std::string_view kBullet = "\xE2\x80\xA2";
  Frame f;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t') continue;
    if (ch == '(') { f.cyclic = true; continue; }
    if (ch == ')') continue;
    if (ch == '.' || ch == 'o') { f.marks.push_back(Mark::solid); continue; }
    if (ch == '*') { f.marks.push_back(Mark::diamond); continue; }
    if (text.substr(i, 3) == kBullet) { f.marks.push_back(Mark::solid); i += 2; continue; }
    if (text.substr(i, 3) == kDiamondUtf8) { f.marks.push_back(Mark::diamond); i += 2; continue; }
    throw std::invalid_argument(std::string("unrecognized frame character '") + ch + "'");
  }
  return f;
}

/// Throws PeriodicityBreach unless u_i is a diamond exactly when u_{i+n} is.
inline void require_n_periodic_diamonds(const CycPWord& u, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto here = u[static_cast<std::ptrdiff_t>(i)].is_diamond();
    auto there = u[static_cast<std::ptrdiff_t>(i + n)].is_diamond();
    if (here != there) {
      std::size_t witness = here ? (i + n) % u.size() + 1 : i + 1;
      throw PeriodicityBreach(witness, "diamonds are not " + std::to_string(n) +
                                           "-periodic: position " + std::to_string(witness) +
                                           " breaks the pattern");
    }
  }
}

struct FramePeriod {
  std::size_t period;
  Frame pane;
};

/// Shortest p with p^s equal to the given (linear) window frame.
inline FramePeriod frame_period(const Frame& window_frame) {
  const std::size_t n = window_frame.size();
  if (n == 0) throw std::invalid_argument("empty frame");
  for (std::size_t m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    bool periodic = true;
    for (std::size_t i = m; i < n && periodic; ++i) periodic = window_frame[i] == window_frame[i - m];
    if (periodic) {
      Frame pane;
      pane.marks.assign(window_frame.marks.begin(), window_frame.marks.begin() + static_cast<std::ptrdiff_t>(m));
      return {m, pane};
    }
  }
  return {n, window_frame};  // unreachable: m = n always succeeds
}

/// Frame period of the length-n window frame of u (taken at position 1).
inline FramePeriod frame_period(const CycPWord& u, std::size_t n) {
  require_n_periodic_diamonds(u, n);
  Frame f = frame_of(window(u, 0, n));
  return frame_period(f);
}

// ---------------------------------------------------------------------------
// Symmetries
// ---------------------------------------------------------------------------

/// u_i -> u_{i+shift}.
struct Rotate {
  std::ptrdiff_t shift = 0;
  bool operator==(const Rotate&) const = default;
};
struct Reverse {
  bool operator==(const Reverse&) const = default;
};
/// Letter x maps to image[x].
struct Permute {
  std::vector<std::uint32_t> image;
  bool operator==(const Permute&) const = default;
};
/// x -> a-1-x.
struct Complement {
  bool operator==(const Complement&) const = default;
};

using SymmetryOp = std::variant<Rotate, Reverse, Permute, Complement>;

inline std::string describe(const SymmetryOp& op) {
  struct V {
    std::string operator()(const Rotate& r) const { return "Rotate(" + std::to_string(r.shift) + ")"; }
    std::string operator()(const Reverse&) const { return "Reverse"; }
    std::string operator()(const Complement&) const { return "Complement"; }
    std::string operator()(const Permute& p) const {
      std::string s = "Permute(";
      for (std::size_t i = 0; i < p.image.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(i) + "->" + std::to_string(p.image[i]);
      }
      return s + ")";
    }
  };
  return std::visit(V{}, op);
}

inline std::string describe(std::span<const SymmetryOp> ops) {
  if (ops.empty()) return "Identity";
  std::string s;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) s += " then ";
    s += describe(ops[i]);
  }
  return s;
}

template <bool C>
BasicWord<C> apply_symmetry(const BasicWord<C>& u, const SymmetryOp& op) {
  const auto& src = u.chars();
  const std::size_t len = src.size();
  std::vector<Char> out(src.begin(), src.end());
  if (auto* r = std::get_if<Rotate>(&op)) {
    if (len == 0) return u;
    auto n = static_cast<std::ptrdiff_t>(len);
    auto s = ((r->shift % n) + n) % n;
    std::rotate(out.begin(), out.begin() + s, out.end());
  } else if (std::holds_alternative<Reverse>(op)) {
    std::reverse(out.begin(), out.end());
  } else {
    const AlphabetSize a = u.alphabet_size();
    std::vector<std::uint32_t> image(a);
    if (auto* p = std::get_if<Permute>(&op)) {
      if (p->image.size() != a) {
        throw std::invalid_argument("permutation must map all " + std::to_string(a) + " letters");
      }
      std::vector<bool> hit(a, false);
      for (auto v : p->image) {
        if (v >= a || hit[v]) throw std::invalid_argument("permutation is not a bijection on letters");
        hit[v] = true;
      }
      image = p->image;
    } else {
      for (std::uint32_t x = 0; x < a; ++x) image[x] = a - 1 - x;
    }
    for (auto& c : out) {
      if (c.is_letter()) c = Char::letter(image[c.value()]);
    }
  }
  return BasicWord<C>(std::move(out), u.alphabet_size());
}

template <bool C>
BasicWord<C> apply_symmetries(BasicWord<C> u, std::span<const SymmetryOp> ops) {
  for (const auto& op : ops) u = apply_symmetry(u, op);
  return u;
}

// ---------------------------------------------------------------------------
// Canonical rotation
// ---------------------------------------------------------------------------

/// Start index of the lexicographically least rotation (diamond after
/// letters). Two-pointer scan, linear time; ties resolve to the smallest index.
inline std::size_t least_rotation_index(std::span<const Char> s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Char x = s[(i + k) % n];
    Char y = s[(j + k) % n];
    if (x == y) {
      ++k;
      continue;
    }
    if (x > y) i += k + 1;
    else j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

inline CycPWord canonical_rotation(const CycPWord& u) {
  auto idx = least_rotation_index(u.chars());
  return apply_symmetry(u, SymmetryOp{Rotate{static_cast<std::ptrdiff_t>(idx)}});
}

/// Smallest r >= 0 with rotate(u, r) == v, if any.
inline std::optional<std::size_t> rotation_offset(const CycPWord& u, const CycPWord& v) {
  if (u.size() != v.size() || u.alphabet_size() != v.alphabet_size()) return std::nullopt;
  const std::size_t n = u.size();
  for (std::size_t r = 0; r < n; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = u[static_cast<std::ptrdiff_t>(i + r)] == v[static_cast<std::ptrdiff_t>(i)];
    }
    if (ok) return r;
  }
  return std::nullopt;
}

}  // namespace upcycle
