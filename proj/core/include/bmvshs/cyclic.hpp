#pragma once

#include <array>
#include <optional>

#include "bmvshs/ncpoly.hpp"

namespace bmvshs {

/// Rotation-equivalence class key: the lexicographically least rotation of
/// the word, together with its order (least positive cyclic shift fixing
/// the word; the order always divides the length).
struct CyclicClass {
  Word canonical;
  std::size_t order = 1;

  /// Accepts the empty word, which forms its own class with order 1.
  static CyclicClass of(const Word& w);

  std::string str() const;  // "<canonical>:ord=<order>"

  bool operator==(const CyclicClass&) const = default;
  std::strong_ordering operator<=>(const CyclicClass& o) const {
    return canonical <=> o.canonical;
  }
};

/// Offset of the lexicographically least rotation (least offset on ties).
/// Throws std::invalid_argument on the empty word.
std::size_t least_rotation_offset(const Word& w);

/// Throws std::invalid_argument on the empty word.
CyclicClass canonical_rotation(const Word& w);

/// Least k >= 1 with w_(i+k) = w_(i) cyclically for all i.
/// Throws std::invalid_argument on the empty word.
std::size_t order(const Word& w);

/// Reads a word in {X^2, Y^2}* as a word of half the length; nullopt when
/// some letter pair is mismatched (equivalently, some run has odd length).
std::optional<Word> squared_reading(const Word& w);

bool cyclic_runs_all_even(const Word& w);

/// Order of the half-length word over the alphabet {X^2, Y^2}, defined for
/// words all of whose cyclic runs are even (the word is first rotated to a
/// run boundary). nullopt otherwise.
std::optional<std::size_t> squared_order(const Word& w);

bool cyc_equivalent(const Word& v, const Word& w);
bool cyc_equivalent(const Polynomial& p, const Polynomial& q);

/// Per-class coefficient sums; classes summing to zero are dropped.
std::map<CyclicClass, Rational> class_decomposition(const Polynomial& p);

struct CommutatorWitness {
  bool equivalent = false;
  /// p - q == sum of commutator(first, second) over all pairs.
  std::vector<std::pair<Polynomial, Polynomial>> pairs;
  /// Set when not equivalent: a class on which the coefficient sums differ.
  std::optional<CyclicClass> separating_class;
};

CommutatorWitness commutator_witness(const Polynomial& p, const Polynomial& q);

/// X-run lengths following each of the four Y-groups of a word, read from
/// the rotation that starts at the first group; the final entry absorbs the
/// leading X-run. Groups are Y^2 pairs when deg_Y = 8 and single letters
/// when deg_Y = 4.
struct ExponentProfile {
  std::array<std::size_t, 4> runs{};

  bool operator==(const ExponentProfile&) const = default;
  bool matches_up_to_rotation(const ExponentProfile& o) const;
};

/// Throws std::invalid_argument when the word does not split into exactly
/// four Y-groups (or has an odd Y-run in the deg_Y = 8 reading).
ExponentProfile exponent_profile(const Word& w);

}  // namespace bmvshs
