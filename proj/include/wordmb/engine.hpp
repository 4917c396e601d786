// Evaluation of coset word maps in the semidirect-product representation and
// the constancy decision kernel: deterministic probes, seeded random witness
// search, exhaustive fallback.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordmb/algebra.hpp"
#include "wordmb/words.hpp"

namespace wordmb {

// One coset representative index per variable of the word.
struct Assignment {
  std::vector<int> reps;
  bool operator==(const Assignment&) const = default;
};

// A tuple of group elements, one per variable.
struct EvalPoint {
  std::vector<Mat> comp;
};

struct WitnessPair {
  EvalPoint a, b;
  AutElem va, vb;
};

struct ConstancyCertificate {
  AutElem value;
  mpz_class domain_size;
};

enum class ProbeOutcome { Witness, Constant, Exhausted };

struct AssignmentResult {
  Assignment asg;
  ProbeOutcome outcome;
  std::optional<WitnessPair> witness;
  std::optional<ConstancyCertificate> certificate;
  long long evaluations = 0;
  bool exhausted_domain = false;  // true when the whole domain was enumerated
};

enum class GroupVerdict { NonconstantAll, ConstantFound, Undecided };

struct GroupCheck {
  GroupVerdict verdict;
  std::vector<AssignmentResult> assignments;
  long long evaluations = 0;
};

struct EngineOpts {
  std::uint64_t seed = 1;
  int budget = 256;                  // random points per assignment after probes
  long long threshold = 10000000;    // exhaustive evaluation cap
  bool stop_on_constant = true;
};

EvalPoint base_point(const GroupCtx& ctx, int d);

// Left-to-right product over the letters of (s_i * rep_i)^{sign}.
AutElem eval_coset_map(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                       const EvalPoint& point);

// The evaluation value factors as (automorphic part) * (value on the
// representatives alone); the automorphic part must lie in S.
bool residual_in_s(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                   const EvalPoint& point);

// Base point, then single-variable activations through the deterministic
// probe family, then random points. Every returned pair is re-evaluated
// before being handed out.
std::optional<WitnessPair> find_witness(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                                        const EngineOpts& opts, Rng& rng,
                                        long long* evaluations = nullptr);

// Full enumeration of S^d; requires |S|^d within the threshold.
AssignmentResult exhaustive_constancy(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                                      const EngineOpts& opts);

// Iterates every tuple of coset representatives; witness search first, then
// the exhaustive fallback where feasible. Sampling alone never produces a
// constancy verdict.
GroupCheck check_word_on_group(const Word& w, const GroupCtx& ctx, const EngineOpts& opts);

// Plain word map on the enumerated group: returns true iff non-constant.
// Used by the small-group shortcuts.
bool word_map_nonconstant(const Word& w, const GroupCtx& ctx, std::size_t cap = 100000,
                          long long eval_cap = 10000000);

}  // namespace wordmb
