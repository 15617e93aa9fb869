#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lacelab/rational.hpp"

using lacelab::Rational;

TEST_CASE("arithmetic and normalization") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b) == Rational(1, 2));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 18));
  CHECK((a / b) == Rational(2));
  CHECK((-a).sign() == -1);
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(1, -2) < Rational(0));
}

TEST_CASE("parse accepts fractions, integers and decimals") {
  CHECK(Rational::parse("1/2").value() == Rational(1, 2));
  CHECK(Rational::parse("-3/9").value() == Rational(-1, 3));
  CHECK(Rational::parse("0.05").value() == Rational(1, 20));
  CHECK(Rational::parse("7").value() == Rational(7));
  CHECK(Rational::parse("-0.25").value() == Rational(-1, 4));
  CHECK(!Rational::parse("abc").has_value());
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("").has_value());
}

TEST_CASE("string forms") {
  CHECK(Rational(1, 2).to_decimal_string() == "0.5");
  CHECK(Rational(-2, 5).to_decimal_string() == "-0.4");
  CHECK(Rational(7).to_decimal_string() == "7");
  CHECK(Rational(1, 40).to_decimal_string() == "0.025");
  // non-terminating expansions fall back to the fraction form
  CHECK(Rational(1, 3).to_decimal_string() == "1/3");
  CHECK(Rational(1, 3).to_fraction_string() == "1/3");
}

TEST_CASE("pow and big magnitudes stay exact") {
  Rational x = lacelab::pow(Rational(9, 10), 40);
  // (9/10)^40: numerator 9^40 needs ~127 bits, well past int64
  CHECK(x * lacelab::pow(Rational(10, 9), 40) == Rational(1));
}

TEST_CASE("agrees with double arithmetic on random small values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    CHECK(((a + b).to_double()) == doctest::Approx(a.to_double() + b.to_double()).epsilon(1e-12));
    CHECK(((a * b).to_double()) == doctest::Approx(a.to_double() * b.to_double()).epsilon(1e-12));
  }
}
