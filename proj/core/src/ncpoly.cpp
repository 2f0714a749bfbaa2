#include "bmvshs/ncpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bmvshs {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool seen_digit = false, seen_slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      seen_digit = true;
    } else if (s[i] == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
      seen_digit = false;
    } else {
      throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  return Rational(s);
}

std::string to_string(const Rational& q) { return q.str(); }

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

Word::Word(std::initializer_list<Letter> letters) {
  for (Letter l : letters) push_back(l);
}

Word Word::run(Letter l, std::size_t count) {
  Word w;
  for (std::size_t i = 0; i < count; ++i) w.push_back(l);
  return w;
}

void Word::push_back(Letter l) {
  if ((len_ & 63) == 0) blocks_.push_back(0);
  if (l == Letter::Y) blocks_[len_ >> 6] |= std::uint64_t{1} << (63 - (len_ & 63));
  ++len_;
}

void Word::append(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) push_back(w.at(i));
}

Word Word::reversed() const {
  Word r;
  for (std::size_t i = len_; i-- > 0;) r.push_back(at(i));
  return r;
}

Word Word::rotated_left(std::size_t k) const {
  if (len_ == 0) return {};
  k %= len_;
  Word r;
  for (std::size_t i = 0; i < len_; ++i) r.push_back(at((i + k) % len_));
  return r;
}

Word Word::subword(std::size_t pos, std::size_t count) const {
  assert(pos + count <= len_);
  Word r;
  for (std::size_t i = 0; i < count; ++i) r.push_back(at(pos + i));
  return r;
}

std::size_t Word::deg_y() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::string Word::str() const {
  if (len_ == 0) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < len_) {
    Letter l = at(i);
    std::size_t j = i;
    while (j < len_ && at(j) == l) ++j;
    if (!out.empty()) out += '*';
    out += letter_char(l);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

Word Word::parse(std::string_view text) {
  Word w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() &&
           (text[i] == '*' || std::isspace(static_cast<unsigned char>(text[i]))))
      ++i;
  };
  skip();
  while (i < text.size()) {
    char c = text[i];
    if (c == '1') {
      ++i;  // the identity contributes no letters
    } else if (c == 'X' || c == 'Y') {
      ++i;
      std::size_t count = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw std::invalid_argument("missing exponent in word: '" + std::string(text) + "'");
        count = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          count = count * 10 + static_cast<std::size_t>(text[i++] - '0');
      }
      for (std::size_t r = 0; r < count; ++r)
        w.push_back(c == 'X' ? Letter::X : Letter::Y);
    } else {
      throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                  "' in word: '" + std::string(text) + "'");
    }
    skip();
  }
  return w;
}

std::pair<std::size_t, std::size_t> degrees(const Word& w) {
  return {w.deg_x(), w.deg_y()};
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Word{}, constant);
}

Polynomial::Polynomial(const Word& w) { terms_.emplace(w, 1); }

Polynomial Polynomial::monomial(const Rational& coeff, const Word& w) {
  Polynomial p;
  p.add_term(w, coeff);
  return p;
}

Rational Polynomial::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::coefficient_sum() const {
  Rational s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

void Polynomial::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r;
  for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
  return r;
}

Polynomial star(const Polynomial& p) {
  Polynomial r;
  for (const auto& [w, c] : p.terms()) r.add_term(w.reversed(), c);
  return r;
}

Polynomial commutator(const Polynomial& p, const Polynomial& q) {
  return p * q - q * p;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    std::string part;
    if (w.empty()) {
      part = to_string(a);
    } else if (a == 1) {
      part = w.str();
    } else {
      part = to_string(a) + "*" + w.str();
    }
    if (out.empty()) {
      out = neg ? "-" + part : part;
    } else {
      out += neg ? " - " : " + ";
      out += part;
    }
  }
  return out;
}

namespace {

// Recursive-descent reader shared by Polynomial::parse. '*' and whitespace
// are interchangeable separators.
struct PolyReader {
  std::string_view text;
  std::size_t i = 0;

  void skip_ws() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }
  void skip_seps() {
    while (i < text.size() &&
           (text[i] == '*' || std::isspace(static_cast<unsigned char>(text[i]))))
      ++i;
  }
  bool done() {
    skip_ws();
    return i >= text.size();
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what + " at position " + std::to_string(i) +
                                " in polynomial: '" + std::string(text) + "'");
  }

  Integer read_integer() {
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      digits.push_back(text[i++]);
    if (digits.empty()) fail("expected digits");
    return Integer(digits);
  }

  Monomial read_term() {
    Monomial m{Rational(1), Word{}};
    skip_ws();
    bool saw_anything = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      Integer num = read_integer();
      Integer den = 1;
      if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_integer();
        if (den == 0) fail("zero denominator");
      }
      m.coeff = Rational(num, den);
      saw_anything = true;
      skip_seps();
    }
    while (i < text.size() && (text[i] == 'X' || text[i] == 'Y' || text[i] == '1')) {
      char c = text[i++];
      std::size_t count = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        count = read_integer().convert_to<std::size_t>();
      }
      if (c != '1')
        for (std::size_t r = 0; r < count; ++r)
          m.word.push_back(c == 'X' ? Letter::X : Letter::Y);
      saw_anything = true;
      skip_seps();
    }
    if (!saw_anything) fail("expected a term");
    return m;
  }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  PolyReader r{text};
  Polynomial p;
  if (r.done()) throw std::invalid_argument("empty polynomial text");
  bool first = true;
  while (!r.done()) {
    int sign = 1;
    r.skip_ws();
    if (r.i < text.size() && (text[r.i] == '+' || text[r.i] == '-')) {
      if (text[r.i] == '-') sign = -1;
      ++r.i;
    } else if (!first) {
      r.fail("expected '+' or '-' between terms");
    }
    Monomial m = r.read_term();
    p.add_term(m.word, sign * m.coeff);
    first = false;
  }
  return p;
}

Polynomial s_poly(int m, int k) {
  if (m < 0 || k < 0 || k > m)
    throw std::out_of_range("s_poly requires 0 <= k <= m, got m=" + std::to_string(m) +
                            " k=" + std::to_string(k));
  Polynomial p;
  // Walk all k-subsets of {0,..,m-1} as Y positions.
  std::vector<int> pos(k);
  for (int i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    Word w;
    int next = 0;
    for (int i = 0; i < m; ++i) {
      bool is_y = next < k && pos[next] == i;
      if (is_y) ++next;
      w.push_back(is_y ? Letter::Y : Letter::X);
    }
    p.add_term(w, 1);
    int j = k - 1;
    while (j >= 0 && pos[j] == m - k + j) --j;
    if (j < 0) break;
    ++pos[j];
    for (int t = j + 1; t < k; ++t) pos[t] = pos[t - 1] + 1;
  }
  return p;
}

Polynomial substitute_squares(const Polynomial& p) {
  Polynomial r;
  for (const auto& [w, c] : p.terms()) {
    Word d;
    for (std::size_t i = 0; i < w.size(); ++i) {
      d.push_back(w.at(i));
      d.push_back(w.at(i));
    }
    r.add_term(d, c);
  }
  return r;
}

}  // namespace bmvshs
