#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bmvshs {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "a" or "a/b" with optional leading sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer binomial(int n, int k);

enum class Letter : std::uint8_t { X = 0, Y = 1 };

constexpr char letter_char(Letter l) { return l == Letter::X ? 'X' : 'Y'; }

/// A word over {X, Y}; the empty word is the multiplicative identity 1.
///
/// Letters are packed one bit each (X = 0, Y = 1), most significant bit
/// first within each 64-bit block, so that comparing blocks as unsigned
/// integers compares letters lexicographically with X < Y. Ordering is by
/// (length, letters).
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  static Word run(Letter l, std::size_t count);
  /// Parses "X^2*Y^2", "XXYY", "X^2Y^2" or "1". '*' and whitespace are
  /// optional separators. Throws std::invalid_argument.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  Letter at(std::size_t i) const {
    assert(i < len_);
    return static_cast<Letter>((blocks_[i >> 6] >> (63 - (i & 63))) & 1u);
  }

  void push_back(Letter l);
  void append(const Word& w);

  Word reversed() const;
  Word rotated_left(std::size_t k) const;
  Word subword(std::size_t pos, std::size_t count) const;

  std::size_t deg_y() const noexcept;
  std::size_t deg_x() const noexcept { return len_ - deg_y(); }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
  }

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& o) const {
    if (auto c = len_ <=> o.len_; c != 0) return c;
    return blocks_ <=> o.blocks_;
  }

  /// Run-length rendering, e.g. "X^2*Y^2*X"; the empty word prints as "1".
  std::string str() const;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> blocks_;
};

inline Word star(const Word& w) { return w.reversed(); }

/// (deg_X, deg_Y) letter counts.
std::pair<std::size_t, std::size_t> degrees(const Word& w);

struct Monomial {
  Rational coeff;
  Word word;
};

/// Element of the free unital algebra on X and Y over the rationals.
/// Terms are kept canonical: no zero coefficient is ever stored, and the
/// map order (length, letters) fixes serialization.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: scalars embed naturally
  Polynomial(int constant) : Polynomial(Rational(constant)) {}
  explicit Polynomial(const Word& w);

  static Polynomial monomial(const Rational& coeff, const Word& w);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<Word, Rational>& terms() const noexcept { return terms_; }

  /// Coefficient of w (zero if absent).
  Rational coeff(const Word& w) const;
  Rational coefficient_sum() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }

  bool operator==(const Polynomial&) const = default;

  /// Canonical text form, e.g. "3*X^2*Y^2*X + 1/2*X*Y^4*X"; zero prints "0".
  /// parse(str()) == *this.
  std::string str() const;
  static Polynomial parse(std::string_view text);

  void add_term(const Word& w, const Rational& c);

 private:
  std::map<Word, Rational> terms_;
};

Polynomial star(const Polynomial& p);
Polynomial commutator(const Polynomial& p, const Polynomial& q);

/// Sum of all words of length m with exactly k letters Y, coefficient 1.
/// Throws std::out_of_range unless 0 <= k <= m.
Polynomial s_poly(int m, int k);

/// Substitutes X -> X^2, Y -> Y^2 in every word.
Polynomial substitute_squares(const Polynomial& p);

}  // namespace bmvshs
