#include <doctest.h>

#include "bmvshs/ncpoly.hpp"
#include "test_support.hpp"

using namespace bmvshs;
using test_support::P;
using test_support::W;

TEST_CASE("word basics") {
  CHECK(W("1").empty());
  CHECK(W("X^2*Y^2").size() == 4);
  CHECK(W("XXYY") == W("X^2*Y^2"));
  CHECK(W("X^2Y^2") == W("X^2*Y^2"));
  CHECK(W("X").str() == "X");
  CHECK(W("X^3*Y^2*X").str() == "X^3*Y^2*X");
  CHECK(W("1").str() == "1");
  CHECK_THROWS_AS(W("Z"), std::invalid_argument);
  CHECK_THROWS_AS(W("X^"), std::invalid_argument);
}

TEST_CASE("word order is (length, letters) with X < Y") {
  CHECK(W("X") < W("Y"));
  CHECK(W("Y") < W("XX"));  // shorter first
  CHECK(W("XXY") < W("XYX"));
  CHECK(W("1") < W("X"));
  // across a block boundary
  Word long_x = Word::run(Letter::X, 70);
  Word long_y = long_x;
  long_y.push_back(Letter::Y);
  Word long_x1 = long_x;
  long_x1.push_back(Letter::X);
  CHECK(long_x1 < long_y);
  CHECK(long_x < long_y);
}

TEST_CASE("degrees") {
  CHECK(degrees(W("Y^2*X^2*Y^2*X")) == std::pair<std::size_t, std::size_t>{3, 4});
  CHECK(degrees(W("1")) == std::pair<std::size_t, std::size_t>{0, 0});
  const Polynomial s74 = s_poly(7, 4);
  for (const auto& [w, c] : s74.terms()) CHECK(degrees(w) == std::pair<std::size_t, std::size_t>{3, 4});
}

TEST_CASE("add") {
  CHECK(P("X") - P("X") == Polynomial());
  CHECK(P("X^2*Y^2") + P("X^2*Y^2") == P("2*X^2*Y^2"));
  CHECK(s_poly(4, 2) + Polynomial() == s_poly(4, 2));
}

TEST_CASE("mul") {
  CHECK(P("X") * P("Y") == P("X*Y"));
  CHECK(P("X") * P("Y") != P("Y") * P("X"));
  CHECK(P("Y^2*X^2") * star(P("Y^2*X^2")) == P("Y^2*X^4*Y^2"));
  CHECK((P("X") + P("Y")) * (P("X") - P("Y")) == P("X^2 - X*Y + Y*X - Y^2"));
}

TEST_CASE("star reverses words") {
  CHECK(star(P("X*Y*X*X")) == P("X*X*Y*X"));
  CHECK(star(P("X^2*Y^2*X")) == P("X*Y^2*X^2"));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Polynomial p = test_support::random_poly(rng, 5, 6);
    CHECK(star(star(p)) == p);
  }
}

TEST_CASE("star is an anti-automorphism") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const Polynomial p = test_support::random_poly(rng, 4, 5);
    const Polynomial q = test_support::random_poly(rng, 4, 5);
    CHECK(star(p * q) == star(q) * star(p));
  }
}

TEST_CASE("commutator") {
  CHECK(commutator(P("X"), P("X")) == Polynomial());
  const Polynomial f = P("X^2*Y*X + Y*X^3 + 2*X^2*Y^2");
  const Polynomial g = P("2*Y*X^3 + 2*Y*X^2*Y");
  CHECK(commutator(P("X^2"), P("Y*X")) + commutator(P("2*X^2*Y"), P("Y")) == f - g);
}

TEST_CASE("s_poly") {
  CHECK(s_poly(4, 2) ==
        P("X^2*Y^2 + X*Y*X*Y + X*Y^2*X + Y*X*Y*X + Y^2*X^2 + Y*X^2*Y"));
  CHECK(s_poly(5, 0) == P("X^5"));
  CHECK(s_poly(0, 0) == Polynomial(1));
  const Polynomial s74 = s_poly(7, 4);
  CHECK(s74.term_count() == 35);
  for (const auto& [w, c] : s74.terms()) CHECK(c == 1);
  CHECK_THROWS_AS(s_poly(4, 5), std::out_of_range);
  CHECK_THROWS_AS(s_poly(4, -1), std::out_of_range);
  for (int m = 0; m <= 12; ++m)
    for (int k = 0; k <= m; ++k)
      CHECK(Integer(s_poly(m, k).term_count()) == binomial(m, k));
}

TEST_CASE("substitute_squares") {
  CHECK(substitute_squares(P("X*Y")) == P("X^2*Y^2"));
  CHECK(substitute_squares(Polynomial(1)) == Polynomial(1));
  // expansion of the six words of s_poly(4,2), squared by hand
  CHECK(substitute_squares(s_poly(4, 2)) ==
        P("X^4*Y^4 + X^2*Y^2*X^2*Y^2 + X^2*Y^4*X^2 + Y^2*X^2*Y^2*X^2 + Y^4*X^4 + "
          "Y^2*X^4*Y^2"));
  for (const auto& [w, c] : substitute_squares(s_poly(4, 2)).terms()) CHECK(w.size() == 8);
}

TEST_CASE("substitute_squares is a homomorphism") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const Polynomial p = test_support::random_poly(rng, 4, 4);
    const Polynomial q = test_support::random_poly(rng, 4, 4);
    CHECK(substitute_squares(p * q) == substitute_squares(p) * substitute_squares(q));
  }
}

TEST_CASE("polynomial text round trip") {
  CHECK(P("3*X^2*Y^2*X + 1/2*X*Y^4*X").str() == "3*X^2*Y^2*X + 1/2*X*Y^4*X");
  CHECK(P("3 X^2 Y") == P("3*X^2*Y"));  // '*' optional
  CHECK(P("-X + Y").str() == "-X + Y");
  CHECK(P("0*X + 1").str() == "1");
  CHECK(Polynomial().str() == "0");
  CHECK(P("0") == Polynomial());
  CHECK_THROWS_AS(P(""), std::invalid_argument);
  CHECK_THROWS_AS(P("X +"), std::invalid_argument);
  CHECK_THROWS_AS(P("1/0"), std::invalid_argument);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Polynomial p = test_support::random_poly(rng, 6, 6);
    CHECK(Polynomial::parse(p.str()) == p);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
