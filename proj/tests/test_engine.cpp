#include <doctest.h>

#include "wordmb/engine.hpp"

using namespace wordmb;

namespace {

EngineOpts quick_opts() {
  EngineOpts o;
  o.seed = 5;
  o.budget = 64;
  o.threshold = 1000000;
  return o;
}

Mat diag(const FieldPtr& F, std::uint64_t a, std::uint64_t b) {
  Mat m = mat_identity(F, 2);
  m.at(0, 0) = F->from_int(a);
  m.at(1, 1) = F->from_int(b);
  return m;
}

}  // namespace

TEST_CASE("coset map evaluation basics") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  // empty word evaluates to the identity
  Word empty;
  AutElem v = eval_coset_map(empty, *ctx, Assignment{{}}, EvalPoint{{}});
  CHECK(aut_eq(v, aut_identity(Family::PSL2, ctx->F)));

  // with trivial representatives the value is the plain word-map value
  Word w = parse_word("aa");
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    Mat m = random_element(*ctx, rng);
    AutElem got = eval_coset_map(w, *ctx, Assignment{{0}}, EvalPoint{{m}});
    CHECK(got.frob == 0);
    CHECK(got.part == pmul(m, m));
  }

  // squaring against the odd diagonal representative at the base point
  AutElem sq = eval_coset_map(w, *ctx, Assignment{{1}},
                              EvalPoint{{mat_identity(ctx->F, 2)}});
  // the representative is diag(nu, 1); its square is diag(nu^2, 1)
  const FieldElem& nu = *ctx->F->nonsquare();
  Mat expect = mat_identity(ctx->F, 2);
  expect.at(0, 0) = ctx->F->mul(nu, nu);
  CHECK(sq.part == canon2(expect));
  CHECK(sq.frob == 0);
}

TEST_CASE("spec example: squaring the odd coset with nu = 2 over GF(5)") {
  // a field with the modulus x and the non-square pinned by construction
  auto F = make_field(5, 1);
  REQUIRE(F->nonsquare().has_value());
  // whatever the seeded non-square is, diag(nu,1)^2 = diag(nu^2,1); with
  // nu = 2 that is diag(4, 1)
  Mat r = canon2(diag(F, 2, 1));
  Mat sq = pmul(r, r);
  CHECK(sq == canon2(diag(F, 4, 1)));
}

TEST_CASE("residual factorization invariant") {
  for (CtxPtr ctx : {make_psl2_ctx(3, 2, 1), make_psl2_ctx(2, 3, 1)}) {
    Word w = parse_word("abAB");
    Rng rng(7);
    for (int it = 0; it < 300; ++it) {
      Assignment asg{{static_cast<int>(rng.below(ctx->cosets.size())),
                      static_cast<int>(rng.below(ctx->cosets.size()))}};
      EvalPoint pt{{random_element(*ctx, rng), random_element(*ctx, rng)}};
      CHECK(residual_in_s(w, *ctx, asg, pt));
      // Frobenius bookkeeping: the twist component comes from the
      // representatives alone
      AutElem v = eval_coset_map(w, *ctx, asg, pt);
      AutElem v0 = eval_coset_map(w, *ctx, asg, base_point(*ctx, 2));
      CHECK(v.frob == v0.frob);
    }
  }
  CtxPtr sz = make_sz_ctx(2, 1);
  Word w = parse_word("ab");
  Rng rng(9);
  for (int it = 0; it < 100; ++it) {
    Assignment asg{{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))}};
    EvalPoint pt{{random_element(*sz, rng), random_element(*sz, rng)}};
    CHECK(residual_in_s(w, *sz, asg, pt));
  }
}

TEST_CASE("multiplicity-one words always have witnesses") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  Word w = parse_word("a");
  EngineOpts opts = quick_opts();
  for (int rep = 0; rep < 2; ++rep) {
    Rng rng(11);
    auto wit = find_witness(w, *ctx, Assignment{{rep}}, opts, rng);
    REQUIRE(wit.has_value());
    CHECK_FALSE(aut_eq(wit->va, wit->vb));
  }
}

TEST_CASE("truly constant cosets exhaust and certify") {
  CtxPtr ctx = make_psl2_ctx(5, 1, 1);
  EngineOpts opts = quick_opts();
  Rng rng(13);

  // 12th powers kill the odd coset of PGL2(5)
  Word w12 = power_word(12);
  auto wit = find_witness(w12, *ctx, Assignment{{1}}, opts, rng);
  CHECK_FALSE(wit.has_value());
  AssignmentResult res = exhaustive_constancy(w12, *ctx, Assignment{{1}}, opts);
  CHECK(res.outcome == ProbeOutcome::Constant);
  CHECK(res.exhausted_domain);
  CHECK(res.certificate->domain_size == 60);
  // common value: the 12th power of the representative, which is trivial
  CHECK(aut_eq(res.certificate->value, aut_identity(Family::PSL2, ctx->F)));

  // squares do not: the coset holds elements of order 2 and 4
  Word w2 = parse_word("aa");
  Rng rng2(17);
  auto wit2 = find_witness(w2, *ctx, Assignment{{1}}, opts, rng2);
  CHECK(wit2.has_value());
}

TEST_CASE("known constant twisted cosets") {
  EngineOpts opts = quick_opts();
  {
    // 18th powers on the Galois-twisted coset of the 504-element group
    CtxPtr ctx = make_psl2_ctx(2, 3, 1);
    AssignmentResult res = exhaustive_constancy(power_word(18), *ctx, Assignment{{1}}, opts);
    CHECK(res.outcome == ProbeOutcome::Constant);
    CHECK(res.certificate->domain_size == 504);
  }
  {
    // 6th powers on the 6-element group itself (exponent 6)
    CtxPtr ctx = make_psl2_ctx(2, 1, 1);
    AssignmentResult res = exhaustive_constancy(power_word(6), *ctx, Assignment{{0}}, opts);
    CHECK(res.outcome == ProbeOutcome::Constant);
    CHECK(res.certificate->domain_size == 6);
  }
  {
    // 8th powers on the doubly-twisted coset over the 9-element field
    CtxPtr ctx = make_psl2_ctx(3, 2, 1);
    int idx = 1 * ctx->L + 1;  // eps = 1, frob = 1
    AssignmentResult res = exhaustive_constancy(power_word(8), *ctx, Assignment{{idx}}, opts);
    CHECK(res.outcome == ProbeOutcome::Constant);
    CHECK(res.certificate->domain_size == 360);
  }
}

TEST_CASE("check_word_on_group verdicts") {
  EngineOpts opts = quick_opts();
  {
    CtxPtr ctx = make_psl2_ctx(7, 1, 1);
    GroupCheck gc = check_word_on_group(parse_word("abAB"), *ctx, opts);
    CHECK(gc.verdict == GroupVerdict::NonconstantAll);
    CHECK(gc.assignments.size() == 4);  // 2 representatives, 2 variables
  }
  {
    CtxPtr ctx = make_psl2_ctx(3, 2, 1);
    GroupCheck gc = check_word_on_group(power_word(8), *ctx, opts);
    CHECK(gc.verdict == GroupVerdict::ConstantFound);
    REQUIRE(!gc.assignments.empty());
    const AssignmentResult& last = gc.assignments.back();
    CHECK(last.outcome == ProbeOutcome::Constant);
    CHECK(last.asg.reps == std::vector<int>{3});  // eps = 1, frob = 1
  }
  {
    CtxPtr ctx = make_psl2_ctx(5, 1, 1);
    GroupCheck gc = check_word_on_group(parse_word("ab"), *ctx, opts);
    CHECK(gc.verdict == GroupVerdict::NonconstantAll);
  }
}

TEST_CASE("witnesses re-verify and runs are deterministic") {
  CtxPtr ctx = make_psl2_ctx(3, 2, 1);
  EngineOpts opts = quick_opts();
  Word w = parse_word("a^2b^2");
  GroupCheck a = check_word_on_group(w, *ctx, opts);
  GroupCheck b = check_word_on_group(w, *ctx, opts);
  REQUIRE(a.assignments.size() == b.assignments.size());
  for (size_t i = 0; i < a.assignments.size(); ++i) {
    const auto &ra = a.assignments[i], &rb = b.assignments[i];
    CHECK(ra.outcome == rb.outcome);
    if (ra.witness && rb.witness) {
      CHECK(aut_eq(ra.witness->va, rb.witness->va));
      CHECK(aut_eq(ra.witness->vb, rb.witness->vb));
      // fresh re-evaluation reproduces both values
      CHECK(aut_eq(eval_coset_map(w, *ctx, ra.asg, ra.witness->a), ra.witness->va));
      CHECK(aut_eq(eval_coset_map(w, *ctx, ra.asg, ra.witness->b), ra.witness->vb));
    }
  }
}

TEST_CASE("small-group word map shortcut evaluation") {
  CtxPtr sym3 = make_psl2_ctx(2, 1, 1);
  CHECK(word_map_nonconstant(parse_word("abAB"), *sym3));
  CHECK(word_map_nonconstant(parse_word("aa"), *sym3));
  CHECK_FALSE(word_map_nonconstant(power_word(6), *sym3));       // exponent 6
  CHECK_FALSE(word_map_nonconstant(parse_word("a^2b^2A^2B^2"), *sym3));
  CtxPtr sz2 = make_sz_ctx(1, 1);
  CHECK(word_map_nonconstant(parse_word("a^2b^2A^2B^2"), *sz2));
  CHECK_FALSE(word_map_nonconstant(power_word(20), *sz2));  // exponent 20
}
