#include <doctest.h>

#include "wordmb/ff.hpp"

using namespace wordmb;

namespace {

FieldElem rand_elem(const FieldDesc& F, Rng& rng) {
  FieldElem a(static_cast<size_t>(F.k));
  for (int i = 0; i < F.k; ++i) a[static_cast<size_t>(i)] = rng.below(F.p);
  return a;
}

FieldElem rand_nonzero(const FieldDesc& F, Rng& rng) {
  FieldElem a = rand_elem(F, rng);
  while (F.is_zero(a)) a = rand_elem(F, rng);
  return a;
}

}  // namespace

TEST_CASE("prime field and degenerate modulus") {
  auto F = make_field(2, 1);
  CHECK(F->modulus == Poly{0, 1});  // modulus is x
  CHECK(F->one() == FieldElem{1});
  CHECK(F->add(F->one(), F->one()) == F->zero());
  CHECK(F->frobenius(F->one(), 0) == F->one());
}

TEST_CASE("GF(4) multiplication table facts") {
  auto F = make_field(2, 2, Poly{1, 1, 1});  // x^2 + x + 1
  FieldElem w = F->gen();
  FieldElem w2 = F->mul(w, w);
  CHECK(w2 == F->add(w, F->one()));  // w^2 = w + 1
  CHECK(F->frobenius(w, 1) == w2);
  CHECK(F->frobenius(w2, 1) == w);
  CHECK(F->pow(w, 3) == F->one());
}

TEST_CASE("supplied modulus validation") {
  CHECK_NOTHROW(make_field(3, 2, Poly{1, 0, 1}));           // x^2 + 1 irreducible mod 3
  CHECK_THROWS_AS(make_field(2, 2, Poly{1, 0, 1}), error);  // (x+1)^2 mod 2
  CHECK_THROWS_AS(make_field(4, 1), error);                 // composite characteristic
  CHECK_THROWS_AS(make_field(3, 2, Poly{1, 1}), error);     // wrong degree
  CHECK_THROWS_AS(make_field(3, 2, Poly{1, 0, 2}), error);  // not monic
}

TEST_CASE("irreducibility and primitivity") {
  CHECK(is_irreducible(Poly{1, 1, 1}, 2));
  CHECK(is_primitive(Poly{1, 1, 1}, 2));
  CHECK(is_irreducible(Poly{1, 0, 1}, 3));
  CHECK_FALSE(is_primitive(Poly{1, 0, 1}, 3));    // root has order 4, not 8
  CHECK_FALSE(is_irreducible(Poly{0, 0, 1}, 2));  // x^2
  CHECK(is_primitive(Poly{1, 1}, 2));
  CHECK_THROWS_AS(is_primitive(find_irreducible(2, 89, 7), 2), error);  // past the 2^64 bound
}

TEST_CASE("seeded irreducible search is deterministic") {
  Poly a = find_irreducible(5, 12, 99);
  Poly b = find_irreducible(5, 12, 99);
  Poly c = find_irreducible(5, 12, 100);
  CHECK(a == b);
  CHECK(is_irreducible(a, 5));
  CHECK(is_irreducible(c, 5));
}

TEST_CASE("field axioms sampled on several fields") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{
           {2, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 5}, {3, 4}, {19, 8}}) {
    auto F = make_field(p, k, std::nullopt, 3);
    Rng rng(mix_seed(7, "axioms"));
    for (int it = 0; it < 1000; ++it) {
      FieldElem a = rand_elem(*F, rng), b = rand_elem(*F, rng), c = rand_elem(*F, rng);
      CHECK(F->add(a, b) == F->add(b, a));
      CHECK(F->mul(a, b) == F->mul(b, a));
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->add(a, F->neg(a)) == F->zero());
      if (!F->is_zero(a)) {
        CHECK(F->mul(a, F->inv(a)) == F->one());
        CHECK(F->pow(a, F->q_minus_1) == F->one());
      }
    }
  }
}

TEST_CASE("frobenius is a field automorphism of the right order") {
  auto F = make_field(3, 4, std::nullopt, 5);
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    FieldElem a = rand_elem(*F, rng), b = rand_elem(*F, rng);
    for (int K = 0; K < F->k; ++K) {
      CHECK(F->frobenius(F->add(a, b), K) == F->add(F->frobenius(a, K), F->frobenius(b, K)));
      CHECK(F->frobenius(F->mul(a, b), K) == F->mul(F->frobenius(a, K), F->frobenius(b, K)));
    }
    // k applications of the base map come back to the identity
    FieldElem x = a;
    for (int i = 0; i < F->k; ++i) x = F->frobenius(x, 1);
    CHECK(x == a);
    // and a multi-step application matches iterating the base map
    FieldElem y = a;
    for (int i = 0; i < 3; ++i) y = F->frobenius(y, 1);
    CHECK(y == F->frobenius(a, 3));
  }
}

TEST_CASE("euler square test") {
  auto F5 = make_field(5, 1);
  CHECK(F5->is_square(F5->from_int(4)));
  CHECK(F5->is_square(F5->from_int(1)));
  CHECK_FALSE(F5->is_square(F5->from_int(2)));
  CHECK_FALSE(F5->is_square(F5->from_int(3)));
  CHECK_THROWS_AS(F5->is_square(F5->zero()), error);

  auto F4 = make_field(2, 2, Poly{1, 1, 1});
  CHECK_THROWS_AS(find_nonsquare(*F4, 1), error);
  CHECK_THROWS_AS(F4->is_square(F4->one()), error);

  auto F9 = make_field(3, 2, std::nullopt, 13);
  Rng rng(17);
  REQUIRE(F9->nonsquare().has_value());
  CHECK_FALSE(F9->is_square(*F9->nonsquare()));
  for (int it = 0; it < 1000; ++it) {
    FieldElem a = rand_nonzero(*F9, rng);
    CHECK(F9->is_square(F9->mul(a, a)));
    if (!F9->is_square(a)) {
      FieldElem b = rand_nonzero(*F9, rng);
      if (!F9->is_square(b)) CHECK(F9->is_square(F9->mul(a, b)));
    }
  }
}

TEST_CASE("powers with large exponents") {
  auto F = make_field(19, 8, std::nullopt, 2);
  Rng rng(23);
  mpz_class huge(  // a few hundred bits
      "123456789012345678901234567890123456789012345678901234567890123456789");
  for (int it = 0; it < 50; ++it) {
    FieldElem a = rand_nonzero(*F, rng);
    mpz_class m(static_cast<long>(rng.below(1000000)));
    mpz_class n = huge + static_cast<long>(rng.below(1000000));
    CHECK(F->pow(a, m + n) == F->mul(F->pow(a, m), F->pow(a, n)));
  }
  // inverse through negative exponents
  FieldElem a = rand_nonzero(*F, rng);
  CHECK(F->mul(F->pow_signed(a, -7), F->pow(a, 7)) == F->one());
}

TEST_CASE("division by zero and mixed-field operands are rejected") {
  auto F = make_field(3, 2, Poly{1, 0, 1});
  auto G = make_field(3, 3, std::nullopt, 4);
  CHECK_THROWS_AS(F->inv(F->zero()), error);
  CHECK_THROWS_AS(F->mul(F->one(), G->one()), error);
}

TEST_CASE("a large-degree field is usable") {
  // the degree-256 extensions exercised by the extended power runs
  auto F = make_field(19, 256, std::nullopt, 1);
  REQUIRE(F->nonsquare().has_value());
  FieldElem nu = *F->nonsquare();
  CHECK_FALSE(F->is_square(nu));
  CHECK(F->is_square(F->mul(nu, nu)));
  FieldElem x = F->gen();
  CHECK(F->mul(x, F->inv(x)) == F->one());
  CHECK(F->frobenius(x, 128) == F->pow(x, pow_mpz(19, 128)));
}
