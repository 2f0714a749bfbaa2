#pragma once

#include "bmvshs/cyclic.hpp"

namespace bmvshs {

enum class Parity { odd, even };

inline Parity parity_of(int m) { return m % 2 != 0 ? Parity::odd : Parity::even; }
std::string to_string(Parity p);
Parity parity_from_string(std::string_view s);

enum class GeneratorFamily { v0, v1 };

/// Exponent triple (k, l, k') of one half-degree generator word. All three
/// entries are even; the realized word shape depends on parity and family:
///   odd  v0: X^k Y^2 X^l Y^2 X^(k'+1)      k <= k'
///   odd  v1: X^(k+1) Y^2 X^l Y^2 X^k'      k + 1 <= k'
///   even v0: X^k Y^2 X^l Y^2 X^k'          k <= k'
///   even v1: X^(k+1) Y^2 X^l Y^2 X^(k'+1)  k <= k'
struct GeneratorTriple {
  int k = 0;
  int l = 0;
  int k_prime = 0;
  GeneratorFamily family = GeneratorFamily::v0;

  Word word(Parity parity) const;
};

std::vector<GeneratorTriple> enumerate_v0(int m);
std::vector<GeneratorTriple> enumerate_v1(int m);

/// The data of m * sum_k star(f_k) f_k. In the even case each generator
/// carries exactly one word with coefficient 1/2 (its k = k' word); all
/// other coefficients are 1.
struct Certificate {
  int m = 0;
  Parity parity = Parity::odd;
  Rational multiplier = 0;            // equals m for built certificates
  std::vector<Polynomial> generators;  // f_k indexed by k

  Polynomial expansion() const;  // multiplier * sum star(f_k) f_k

  /// Words weighted 1/2 per generator (even case; empty for odd).
  std::vector<std::vector<Word>> half_weighted_words() const;

  bool operator==(const Certificate&) const = default;

  std::string to_json() const;
  static Certificate from_json(std::string_view text);
};

Certificate build_odd(int m);   // throws on even m or m < 5
Certificate build_even(int m);  // throws on odd m or m < 6
Certificate build(int m);       // parity dispatch

/// True when w lies in X * {X^2, Y^2}*.
bool in_v2(const Word& w);

/// Replaces every generator whose words are not already in V2 by its star;
/// star(f) f and f star(f) are cyclically equivalent, so the expansion class
/// decomposition is preserved (verified internally). Only defined for odd m.
Certificate to_v2_form(const Certificate& cert);

/// Odd m: the number of cyclic classes of s_poly(m,4), C(m,4)/m.
/// Even m: the total coefficient sum C(m,4).
Rational expected_class_count(int m);

struct GeneratorCount {
  int k = 0;
  std::size_t expected_unit_words = 0;
  std::size_t actual_unit_words = 0;
  std::size_t expected_half_words = 0;
  std::size_t actual_half_words = 0;
  bool pass = false;
};

struct WordCountReport {
  int m = 0;
  Parity parity = Parity::odd;
  std::vector<GeneratorCount> per_generator;
  /// Odd: distinct expansion words vs (1/6)((m-3)/2)((m-1)/2)(m-2).
  /// Even: expansion coefficient sum vs C(m,4).
  Rational expected_total;
  Rational actual_total;
  bool passed = false;

  std::string to_json() const;
};

WordCountReport word_count_check(const Certificate& cert);

struct ClassViolation {
  std::string cls;
  std::string detail;
};

struct InequivalenceReport {
  int m = 0;
  Parity parity = Parity::odd;
  std::size_t expansion_words = 0;
  std::size_t expansion_classes = 0;
  std::size_t max_words_per_class = 0;
  std::vector<ClassViolation> violations;
  bool passed = false;

  std::string to_json() const;
};

/// Odd m: checks that all expansion words are pairwise cyclically
/// inequivalent. Even m: checks that at most two expansion words share a
/// class and that per-class weighted sums never exceed the class order
/// (order read over the {X^2, Y^2} alphabet).
InequivalenceReport pairwise_inequivalence_check(const Certificate& cert);

}  // namespace bmvshs
