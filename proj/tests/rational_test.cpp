#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/matrix.hpp"
#include "conelab/rational.hpp"

using namespace conelab;

TEST_CASE("rationals are canonical") {
  Rational r(2, 4);
  CHECK(r.num() == 1);
  CHECK(r.den() == 2);
  Rational s(3, -6);
  CHECK(s.num() == -1);
  CHECK(s.den() == 2);
  CHECK(Rational(0, 5).str() == "0/1");
}

TEST_CASE("arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  // 1/3 has no finite binary expansion; exactness means (1/3)*3 == 1
  Rational third(1, 3);
  CHECK(third * Rational(3) == Rational(1));
  CHECK_THROWS(a / Rational(0));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("string round trip") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-7/2").str() == "-7/2");
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK(Rational::from_string("\xE2\x88\x92"
                              "1/1") == Rational(-1));  // U+2212 tolerated
  CHECK_THROWS(Rational::from_string("a/b"));
  Rational big = Rational::from_string("123456789012345678901234567890/7");
  CHECK(big == Rational(mpz_class("123456789012345678901234567890"), mpz_class(7)));
  CHECK(big * Rational(7) == Rational(mpz_class("123456789012345678901234567890"), mpz_class(1)));
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(max(Rational(2, 3), Rational(3, 4)) == Rational(3, 4));
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
}

TEST_CASE("exact matrix algebra") {
  QMat h{{Rational(1), Rational(1), Rational(0)},
         {Rational(1), Rational(-1), Rational(0)},
         {Rational(0), Rational(0), Rational(1)}};
  QMat hinv = inverse(h);
  CHECK(hinv(0, 0) == Rational(1, 2));
  CHECK(hinv(1, 1) == Rational(-1, 2));
  CHECK(h * hinv == QMat::identity(3));
  CHECK(det(h) == Rational(-2));

  QMat sing{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(det(sing) == Rational(0));
  CHECK(rank(sing) == 1);
  CHECK_THROWS(inverse(sing));

  auto ker = kernel_basis(sing);
  REQUIRE(ker.size() == 1);
  CHECK(dot(sing.row(0), ker[0]) == Rational(0));

  auto sol = solve(h, {Rational(1), Rational(0), Rational(2)});
  REQUIRE(sol.has_value());
  CHECK(h * *sol == QVec{Rational(1), Rational(0), Rational(2)});
}

TEST_CASE("canonical rays") {
  QVec v{Rational(1, 2), Rational(-1, 3), Rational(0)};
  QVec c = canonical_ray(v);
  CHECK(c == QVec{Rational(3), Rational(-2), Rational(0)});
  // orientation is preserved, never flipped
  QVec w{Rational(-2), Rational(-4)};
  CHECK(canonical_ray(w) == QVec{Rational(-1), Rational(-2)});
}
