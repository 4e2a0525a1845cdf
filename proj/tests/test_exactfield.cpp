#include <random>

#include <doctest.h>

#include "ncmf/exactfield.hpp"

using namespace ncmf;

namespace {

FieldElement random_element(std::mt19937_64& rng, bool zeta) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  Rational a(num(rng), den(rng)), b(zeta ? num(rng) : 0, den(rng));
  a.canonicalize();
  b.canonicalize();
  return zeta ? FieldElement(a, b) : FieldElement(a);
}

// denominators coprime to 7
FieldElement random_integral(std::mt19937_64& rng) {
  static const long dens[] = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12};
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<int> pick(0, 9);
  Rational a(num(rng), dens[pick(rng)]), b(num(rng), dens[pick(rng)]);
  a.canonicalize();
  b.canonicalize();
  return FieldElement(a, b);
}

}  // namespace

TEST_CASE("zeta3 cubed is one") {
  FieldElement z = FieldElement::zeta3();
  CHECK(z * z * z == FieldElement(1));
  CHECK(z * z == FieldElement(Rational(-1), Rational(-1)));
}

TEST_CASE("inverse of 1 + 2 zeta3") {
  FieldElement x = FieldElement(1) + FieldElement(2) * FieldElement::zeta3();
  FieldElement y = field_arith(FieldElement(1), x, ArithOp::Div);
  CHECK(y == FieldElement(Rational(-1, 3), Rational(-2, 3)));
  CHECK(x * y == FieldElement(1));
}

TEST_CASE("additive identity and division by zero") {
  FieldElement a(Rational(5, 7), Rational(-3, 2));
  CHECK(a + FieldElement(0) == a);
  CHECK_THROWS_AS(a / FieldElement(0), DivisionByZeroError);
  CHECK_THROWS_AS(field_arith(a, FieldElement(Rational(0), Rational(0)), ArithOp::Div), DivisionByZeroError);
}

TEST_CASE("mixed tags promote to Q(zeta3)") {
  FieldElement q(Rational(3, 4));
  FieldElement z = FieldElement::zeta3();
  CHECK((q + z).tag() == FieldTag::QZeta3);
  CHECK((q * q).tag() == FieldTag::Q);
}

TEST_CASE("valuation7") {
  CHECK(valuation7(Rational(49, 3)) == 2);
  CHECK(valuation7(Rational(3, 7)) == -1);
  CHECK(valuation7(Rational(0)) == kInfiniteValuation);
  CHECK(valuation7(Rational(-823543)) == 7);
}

TEST_CASE("reduction modulo a prime above 7") {
  CHECK(reduce_mod_prime7(FieldElement(8), PrimeReduction::rational()) == 1);
  CHECK(reduce_mod_prime7(FieldElement::zeta3(), PrimeReduction::zeta3(2)) == 2);
  CHECK(reduce_mod_prime7(FieldElement::zeta3(), PrimeReduction::zeta3(4)) == 4);

  // (-3893/9) zeta3 - 1060/9 at residue 2, against 9^-1 = 4 mod 7 by hand
  FieldElement x = parse_field_element("-1060/9-3893/9*z3");
  long by_hand = ((4 * (-3893 * 2 - 1060)) % 7 + 7) % 7;
  CHECK(reduce_mod_prime7(x, PrimeReduction::zeta3(2)) == by_hand);

  CHECK_THROWS_AS(reduce_mod_prime7(FieldElement(Rational(1, 7)), PrimeReduction::rational()), NotIntegralError);
  // zeta3 - 2 generates the prime where zeta3 -> 2, so its inverse is not integral there
  FieldElement pi2 = FieldElement::zeta3() - FieldElement(2);
  CHECK_THROWS_AS(reduce_mod_prime7(pi2.inverse(), PrimeReduction::zeta3(2)), NotIntegralError);
  CHECK(reduce_mod_prime7(pi2.inverse(), PrimeReduction::zeta3(4)) != 0);
  CHECK(valuation_at(pi2, PrimeReduction::zeta3(2)) == 1);
  CHECK(valuation_at(FieldElement(49), PrimeReduction::zeta3(4)) == 2);
}

TEST_CASE("both residues are cube roots of unity and are swapped by conjugation") {
  for (int r : {2, 4}) {
    CHECK((r * r + r + 1) % 7 == 0);
    PrimeReduction p = PrimeReduction::zeta3(r);
    CHECK(p.conjugate().residue() == 6 - r);
    FieldElement z = FieldElement::zeta3();
    CHECK(reduce_mod_prime7(z.conjugate(), p) == reduce_mod_prime7(z, p.conjugate()));
  }
  CHECK_THROWS(PrimeReduction::zeta3(3));
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    bool zeta = i % 2 == 0;
    FieldElement a = random_element(rng, zeta), b = random_element(rng, zeta), c = random_element(rng, zeta);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement(1));
  }
}

TEST_CASE("reduction is a ring homomorphism on integral elements") {
  std::mt19937_64 rng(11);
  for (int r : {2, 4}) {
    PrimeReduction p = PrimeReduction::zeta3(r);
    for (int i = 0; i < 1000; ++i) {
      FieldElement a = random_integral(rng), b = random_integral(rng);
      int ra = reduce_mod_prime7(a, p), rb = reduce_mod_prime7(b, p);
      CHECK(reduce_mod_prime7(a + b, p) == (ra + rb) % 7);
      CHECK(reduce_mod_prime7(a * b, p) == (ra * rb) % 7);
    }
  }
}

TEST_CASE("canonical text round trip") {
  for (const char* s : {"0", "5", "-3/4", "1+0*z3", "-1060/9-3893/9*z3", "12+60*z3"}) {
    CHECK(to_string(parse_field_element(s)) == s);
  }
  CHECK(to_string(parse_field_element("6/8")) == "3/4");
  CHECK_THROWS_AS(parse_field_element("1/0"), ExactFieldError);
  CHECK_THROWS_AS(parse_field_element("abc"), ExactFieldError);
}
