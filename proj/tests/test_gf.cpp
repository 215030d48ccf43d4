#include <doctest.h>

#include <random>

#include "satgeom/error.hpp"
#include "satgeom/gf.hpp"

using namespace satgeom;
using gf::Element;
using gf::Field;

TEST_CASE("modulus is the smallest monic irreducible") {
  CHECK(gf::field_new(2, 1).modulus == std::vector<std::uint32_t>{0, 1});
  CHECK(gf::field_new(2, 2).modulus == std::vector<std::uint32_t>{1, 1, 1});
  // Over GF(3), x^2 and x^2 + 1 are first in order; x^2 + 1 has no root.
  CHECK(gf::field_new(3, 2).modulus == std::vector<std::uint32_t>{1, 0, 1});
  // Compared from c0 upward, (1,0,1,1) precedes (1,1,0,1): x^3 + x^2 + 1.
  CHECK(gf::field_new(2, 3).modulus == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(gf::field_new(3, 2).q == 9);
}

TEST_CASE("field construction errors") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NotFound;
  };
  CHECK(kind_of([] { gf::field_new(4, 1); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { gf::field_new(2, 21); }) == ErrorKind::FieldTooLarge);
  CHECK(kind_of([] { Field::of_order(6); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { Field::of_order(5)->inv(0); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { Field::of_order(5)->arith(gf::Op::Add, 5, 1); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("small worked values") {
  CHECK(Field::of_order(5)->add(3, 4) == 2);
  const auto f4 = Field::of_order(4);
  CHECK(f4->mul(2, 2) == 3);  // x * x = x + 1
  // Full GF(4) multiplication table with x^2 = x + 1.
  const Element table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) CHECK(f4->mul(a, b) == table[a][b]);
  }
  for (std::uint32_t q : {2u, 3u, 4u, 8u, 9u, 2048u}) {
    CHECK(Field::of_order(q)->inv(1) == 1);
  }
  CHECK(f4->arith(gf::Op::Pow, 2, 3) == 1);
  CHECK(f4->arith(gf::Op::Inv, 2) == 3);
}

TEST_CASE("prime powers") {
  CHECK(gf::prime_power(1) == std::nullopt);
  CHECK(gf::prime_power(12) == std::nullopt);
  CHECK(gf::prime_power(125) == std::make_pair(5u, 3u));
  CHECK(gf::prime_power(97) == std::make_pair(97u, 1u));
  const auto pp = gf::prime_powers(2, 32);
  CHECK(pp == std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19,
                                         23, 25, 27, 29, 31, 32});
}

TEST_CASE("field axioms on random triples") {
  // 1024 uses lookup tables, 2048 and 3125 the polynomial fallback.
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 64u, 81u,
                          121u, 128u, 1024u, 2048u, 3125u}) {
    CAPTURE(q);
    const auto f = Field::of_order(q);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<Element> pick(0, q - 1);
    for (int i = 0; i < 1000; ++i) {
      const Element a = pick(rng), b = pick(rng), c = pick(rng);
      REQUIRE(f->add(a, f->add(b, c)) == f->add(f->add(a, b), c));
      REQUIRE(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
      REQUIRE(f->add(a, b) == f->add(b, a));
      REQUIRE(f->mul(a, b) == f->mul(b, a));
      REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      REQUIRE(f->sub(f->add(a, b), b) == a);
      REQUIRE(f->add(a, f->neg(a)) == 0);
      if (a != 0) {
        REQUIRE(f->mul(a, f->inv(a)) == 1);
        REQUIRE(f->pow(a, q - 1) == 1);
        REQUIRE(f->div(f->mul(a, b), a) == b);
      }
    }
  }
}

TEST_CASE("every nonzero element is invertible in small fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 27u, 32u}) {
    const auto f = Field::of_order(q);
    for (Element a = 1; a < q; ++a) CHECK(f->mul(a, f->inv(a)) == 1);
  }
}

TEST_CASE("irreducibility by trial division") {
  CHECK(gf::is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(gf::is_irreducible(2, {1, 0, 1}));  // (x+1)^2
  CHECK_FALSE(gf::is_irreducible(3, {2, 0, 1}));  // x^2 - 1
  CHECK(gf::is_irreducible(3, {1, 0, 1}));
  CHECK(gf::is_irreducible(2, {1, 1, 1, 1, 1}));
  CHECK(gf::is_irreducible(2, {1, 0, 0, 1, 1}));
  CHECK_FALSE(gf::is_irreducible(2, {1, 0, 1, 0, 1}));  // (x^2+x+1)^2
}
