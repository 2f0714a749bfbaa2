#include "bmvshs/cyclic.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmvshs {

namespace {

[[noreturn]] void reject_empty(const char* op) {
  throw std::invalid_argument(std::string(op) + " is undefined for the empty word");
}

// Offset of the first cyclic run boundary, so that rotating left by it
// aligns position 0 with the start of a run. Uniform words rotate by 0.
std::size_t run_boundary_offset(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0 || w.at(n - 1) != w.at(0)) return 0;
  for (std::size_t i = 1; i < n; ++i)
    if (w.at(i) != w.at(i - 1)) return i;
  return 0;  // single letter repeated
}

}  // namespace

std::size_t least_rotation_offset(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) reject_empty("least_rotation_offset");
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Letter a = w.at((i + k) % n);
    const Letter b = w.at((j + k) % n);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

std::size_t order(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) reject_empty("order");
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k != 0) continue;  // a fixing shift generates a subgroup of Z_n
    bool fixed = true;
    for (std::size_t i = 0; i < n && fixed; ++i) fixed = w.at((i + k) % n) == w.at(i);
    if (fixed) return k;
  }
  return n;
}

CyclicClass CyclicClass::of(const Word& w) {
  if (w.empty()) return CyclicClass{Word{}, 1};
  return CyclicClass{w.rotated_left(least_rotation_offset(w)), bmvshs::order(w)};
}

CyclicClass canonical_rotation(const Word& w) {
  if (w.empty()) reject_empty("canonical_rotation");
  return CyclicClass::of(w);
}

std::string CyclicClass::str() const {
  return canonical.str() + ":ord=" + std::to_string(order);
}

std::optional<Word> squared_reading(const Word& w) {
  const std::size_t n = w.size();
  if (n % 2 != 0) return std::nullopt;
  Word half;
  for (std::size_t i = 0; i < n; i += 2) {
    if (w.at(i) != w.at(i + 1)) return std::nullopt;
    half.push_back(w.at(i));
  }
  return half;
}

bool cyclic_runs_all_even(const Word& w) {
  if (w.empty()) return true;
  const Word r = w.rotated_left(run_boundary_offset(w));
  std::size_t i = 0;
  while (i < r.size()) {
    std::size_t j = i;
    while (j < r.size() && r.at(j) == r.at(i)) ++j;
    if ((j - i) % 2 != 0) return false;
    i = j;
  }
  return true;
}

std::optional<std::size_t> squared_order(const Word& w) {
  if (w.empty()) return std::nullopt;
  const Word r = w.rotated_left(run_boundary_offset(w));
  auto half = squared_reading(r);
  if (!half) return std::nullopt;
  return order(*half);
}

bool cyc_equivalent(const Word& v, const Word& w) {
  if (v.size() != w.size()) return false;
  if (v.empty()) return true;
  return v.rotated_left(least_rotation_offset(v)) ==
         w.rotated_left(least_rotation_offset(w));
}

std::map<CyclicClass, Rational> class_decomposition(const Polynomial& p) {
  std::map<CyclicClass, Rational> classes;
  for (const auto& [w, c] : p.terms()) {
    auto [it, inserted] = classes.emplace(CyclicClass::of(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) classes.erase(it);
    }
  }
  return classes;
}

bool cyc_equivalent(const Polynomial& p, const Polynomial& q) {
  return class_decomposition(p - q).empty();
}

CommutatorWitness commutator_witness(const Polynomial& p, const Polynomial& q) {
  CommutatorWitness result;
  Polynomial r = p - q;
  auto classes = class_decomposition(r);
  if (!classes.empty()) {
    result.equivalent = false;
    result.separating_class = classes.begin()->first;
    return result;
  }
  result.equivalent = true;
  // Move the maximal word of the remainder to its canonical rotation one
  // letter at a time; w = a.rest and [a, rest] = w - rest.a. Class sums stay
  // zero throughout, so the maximal word is never canonical while r != 0 and
  // the maximal word strictly decreases.
  while (!r.is_zero()) {
    const auto last = std::prev(r.terms().end());
    const Word w = last->first;
    const Rational c = last->second;
    const std::size_t off = least_rotation_offset(w);
    if (off == 0)
      throw std::logic_error("commutator_witness: canonical maximal word in nonzero remainder");
    Word cur = w;
    for (std::size_t s = 0; s < off; ++s) {
      const Word head = Word::run(cur.at(0), 1);
      const Word rest = cur.subword(1, cur.size() - 1);
      result.pairs.emplace_back(Polynomial::monomial(c, head), Polynomial(rest));
      cur = cur.rotated_left(1);
    }
    r.add_term(w, -c);
    r.add_term(cur, c);
  }
  return result;
}

bool ExponentProfile::matches_up_to_rotation(const ExponentProfile& o) const {
  for (std::size_t j = 0; j < 4; ++j) {
    bool same = true;
    for (std::size_t i = 0; i < 4 && same; ++i) same = runs[i] == o.runs[(i + j) % 4];
    if (same) return true;
  }
  return false;
}

ExponentProfile exponent_profile(const Word& w) {
  const std::size_t dy = w.deg_y();
  std::size_t group = 0;
  if (dy == 8)
    group = 2;
  else if (dy == 4)
    group = 1;
  else
    throw std::invalid_argument("exponent_profile requires deg_Y 4 or 8, got " +
                                std::to_string(dy));

  std::size_t leading_x = 0;
  std::size_t i = 0;
  while (i < w.size() && w.at(i) == Letter::X) ++i;
  leading_x = i;

  std::vector<std::size_t> x_after;  // X-run length following each Y-group
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w.at(j) == Letter::Y) ++j;
    const std::size_t y_run = j - i;
    if (y_run % group != 0)
      throw std::invalid_argument("exponent_profile: odd Y-run of length " +
                                  std::to_string(y_run));
    const std::size_t groups_here = y_run / group;
    for (std::size_t g = 0; g + 1 < groups_here; ++g) x_after.push_back(0);
    i = j;
    while (j < w.size() && w.at(j) == Letter::X) ++j;
    x_after.push_back(j - i);
    i = j;
  }
  if (x_after.size() != 4)
    throw std::invalid_argument("exponent_profile: expected 4 Y-groups, got " +
                                std::to_string(x_after.size()));
  x_after.back() += leading_x;  // wrap the leading X-run into the last slot
  return ExponentProfile{{x_after[0], x_after[1], x_after[2], x_after[3]}};
}

}  // namespace bmvshs
