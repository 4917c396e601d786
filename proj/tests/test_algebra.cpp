#include <doctest.h>

#include <set>

#include "wordmb/algebra.hpp"

using namespace wordmb;

namespace {

Mat diag(const FieldPtr& F, std::uint64_t a, std::uint64_t b) {
  Mat m = mat_identity(F, 2);
  m.at(0, 0) = F->from_int(a);
  m.at(1, 1) = F->from_int(b);
  return m;
}

}  // namespace

TEST_CASE("projective canonicalization") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  const FieldPtr& F = ctx->F;
  CHECK(canon2(mat_identity(F, 2)) == mat_identity(F, 2));
  CHECK(canon2(diag(F, 2, 2)) == mat_identity(F, 2));  // scalar matrix
  Rng rng(3);
  for (int it = 0; it < 300; ++it) {
    Mat m = random_element(*ctx, rng);
    std::uint64_t lam = 1 + rng.below(4);
    Mat scaled = m;
    for (auto& e : scaled.a) e = F->mul(e, F->from_int(lam));
    CHECK(canon2(scaled) == canon2(m));
    CHECK(pmul(m, pinv(m)) == mat_identity(F, 2));
  }
  Mat sing = diag(F, 1, 0);
  CHECK_THROWS_AS(canon2(sing), error);
}

TEST_CASE("projective multiplication is associative") {
  CtxPtr ctx = make_psl2_ctx(3, 2, 1);
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    Mat a = random_element(*ctx, rng), b = random_element(*ctx, rng),
        c = random_element(*ctx, rng);
    CHECK(pmul(pmul(a, b), c) == pmul(a, pmul(b, c)));
  }
}

TEST_CASE("membership in the index-two subgroup") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  const FieldPtr& F = ctx->F;
  CHECK(in_psl2(mat_identity(F, 2)));
  CHECK_FALSE(in_psl2(canon2(diag(F, 2, 1))));  // det 2, a non-square mod 5
  Rng rng(7);
  // product of two non-members is a member
  Mat n1 = canon2(diag(F, 2, 1));
  Mat n2 = pmul(n1, random_element(*ctx, rng));
  if (!in_psl2(n2)) CHECK(in_psl2(pmul(n1, n2)));
  // char 2: everything is a member
  CtxPtr even = make_psl2_ctx(2, 2, 1);
  CHECK(in_psl2(random_element(*even, rng)));
}

TEST_CASE("coset representative counts") {
  CHECK(make_psl2_ctx(5, 1, 1)->cosets.size() == 2);
  CHECK(make_psl2_ctx(2, 2, 1)->cosets.size() == 2);
  CHECK(make_psl2_ctx(3, 2, 1)->cosets.size() == 4);
  CHECK(make_sz_ctx(2, 1)->cosets.size() == 3);
  CHECK(make_sz_ctx(1, 1)->cosets.size() == 1);
  CHECK(make_sz_ctx(7, 1)->cosets.size() == 13);
}

TEST_CASE("coset representatives are pairwise inequivalent") {
  for (CtxPtr ctx : {make_psl2_ctx(3, 2, 1), make_psl2_ctx(5, 2, 1), make_psl2_ctx(2, 3, 1)}) {
    for (size_t i = 0; i < ctx->cosets.size(); ++i) {
      for (size_t j = 0; j < ctx->cosets.size(); ++j) {
        if (i == j) continue;
        AutElem q = aut_mul(ctx->cosets[i], aut_inv(ctx->cosets[j]));
        bool separated = q.frob != 0 || !in_psl2(q.part);
        CHECK(separated);
      }
    }
  }
}

TEST_CASE("semidirect product arithmetic") {
  CtxPtr ctx = make_psl2_ctx(3, 4, 1);
  Rng rng(11);
  auto rand_aut = [&] {
    return AutElem{Family::PSL2, random_element(*ctx, rng),
                   static_cast<int>(rng.below(static_cast<std::uint64_t>(ctx->k)))};
  };
  for (int it = 0; it < 200; ++it) {
    AutElem a = rand_aut(), b = rand_aut(), c = rand_aut();
    CHECK(aut_eq(aut_mul(aut_mul(a, b), c), aut_mul(a, aut_mul(b, c))));
    AutElem id = aut_identity(Family::PSL2, ctx->F);
    CHECK(aut_eq(aut_mul(a, aut_inv(a)), id));
    CHECK(aut_eq(aut_mul(aut_inv(a), a), id));
  }
  // conjugation by the Galois generator acts entrywise
  AutElem phi{Family::PSL2, mat_identity(ctx->F, 2), 1};
  Mat m = random_element(*ctx, rng);
  AutElem lhs = aut_mul(aut_mul(phi, AutElem{Family::PSL2, m, 0}), aut_inv(phi));
  CHECK(lhs.frob == 0);
  CHECK(lhs.part == canon2(mat_frobenius(m, 1)));
}

TEST_CASE("aut_pow matches iterated multiplication") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  AutElem g{Family::PSL2, canon2(diag(ctx->F, 2, 1)), 0};
  CHECK(aut_eq(aut_pow(g, 4), aut_identity(Family::PSL2, ctx->F)));  // ord(2 mod 5) = 4
  AutElem acc = aut_identity(Family::PSL2, ctx->F);
  for (int i = 0; i < 3; ++i) acc = aut_mul(acc, g);
  CHECK(aut_eq(aut_pow(g, 3), acc));
  CHECK(aut_eq(aut_pow(g, -3), aut_inv(acc)));
}

TEST_CASE("suzuki torus") {
  CtxPtr ctx = make_sz_ctx(2, 1);  // the 512-element field, degree 3
  const FieldPtr& F = ctx->F;
  CHECK(sz_torus(*ctx, F->one()) == mat_identity(F, 4));
  CHECK_THROWS_AS(sz_torus(*ctx, F->zero()), error);
  FieldElem g = F->gen();
  Mat t = sz_torus(*ctx, g);
  // exponent pattern (1, 3, -3, -1) at this field size
  CHECK(t.at(0, 0) == g);
  CHECK(t.at(1, 1) == F->pow(g, 3));
  CHECK(t.at(2, 2) == F->inv(F->pow(g, 3)));
  CHECK(t.at(3, 3) == F->inv(g));
  Rng rng(13);
  for (int it = 0; it < 100; ++it) {
    FieldElem a(static_cast<size_t>(F->k)), b(static_cast<size_t>(F->k));
    for (int i = 0; i < F->k; ++i) {
      a[static_cast<size_t>(i)] = rng.below(2);
      b[static_cast<size_t>(i)] = rng.below(2);
    }
    if (F->is_zero(a) || F->is_zero(b)) continue;
    CHECK(mat_mul(sz_torus(*ctx, a), sz_torus(*ctx, b)) == sz_torus(*ctx, F->mul(a, b)));
  }
}

TEST_CASE("suzuki unipotent family") {
  CtxPtr ctx = make_sz_ctx(2, 1);
  const FieldPtr& F = ctx->F;
  CHECK(sz_unipotent(*ctx, F->zero(), F->zero()) == mat_identity(F, 4));
  Rng rng(17);
  for (int it = 0; it < 100; ++it) {
    FieldElem a(static_cast<size_t>(F->k)), b(static_cast<size_t>(F->k));
    for (int i = 0; i < F->k; ++i) {
      a[static_cast<size_t>(i)] = rng.below(2);
      b[static_cast<size_t>(i)] = rng.below(2);
    }
    Mat u = sz_unipotent(*ctx, a, b);
    auto ord = element_order(*ctx, u, 8);
    REQUIRE(ord.has_value());
    CHECK(4 % *ord == 0);
    CHECK(mat_det(u) == F->one());
  }
  // torus conjugation stays inside the family
  FieldElem g = F->gen();
  Mat t = sz_torus(*ctx, g);
  Mat u = sz_unipotent(*ctx, F->one(), F->zero());
  Mat conj = mat_mul(mat_mul(t, u), mat_inv(t));
  FieldElem ap = F->pow(g, ctx->theta - 2);
  CHECK(conj == sz_unipotent(*ctx, ap, F->zero()));
}

TEST_CASE("small suzuki group closes at order 20") {
  CtxPtr ctx = make_sz_ctx(1, 1);
  auto elems = enumerate_s(*ctx, 100);
  CHECK(elems.size() == 20);
}

TEST_CASE("element sampling") {
  CtxPtr psl = make_psl2_ctx(3, 2, 1);
  Rng a(42), b(42), c(43);
  bool diverged = false;
  for (int it = 0; it < 50; ++it) {
    Mat ma = random_element(*psl, a), mb = random_element(*psl, b);
    CHECK(in_psl2(ma));
    CHECK(ma == mb);  // same seed, same stream
    if (!(ma == random_element(*psl, c))) diverged = true;
  }
  CHECK(diverged);

  CtxPtr sz = make_sz_ctx(2, 1);
  Rng rng(19);
  std::set<long long> seen;
  for (int it = 0; it < 200; ++it) {
    auto ord = element_order(*sz, random_element(*sz, rng), 20);
    REQUIRE(ord.has_value());
    seen.insert(*ord);
    CHECK((*ord == 1 || *ord == 2 || *ord == 4 || *ord == 5 || *ord == 7 || *ord == 13));
  }
  CHECK(seen.size() >= 4);  // sampling has variety
}

TEST_CASE("element orders") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  CHECK(element_order(aut_identity(Family::PSL2, ctx->F), 10) == 1);
  AutElem g{Family::PSL2, canon2(diag(ctx->F, 2, 1)), 0};
  CHECK(element_order(g, 10) == 4);
  CHECK_FALSE(element_order(g, 3).has_value());  // cap reached

  // orders in the 60-element char-2 group divide its exponent 30
  CtxPtr four = make_psl2_ctx(2, 2, 1);
  auto elems = enumerate_s(*four, 100);
  REQUIRE(elems.size() == 60);
  for (const Mat& m : elems) {
    auto ord = element_order(*four, m, 30);
    REQUIRE(ord.has_value());
    CHECK(30 % *ord == 0);
  }
}
