// Top-level pipelines: the power-word decision procedure with its
// divisibility prechecks and reduced task lists, the very-strongly /
// very-weakly multiplicity-bounding deciders, and the short-word sweep.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wordmb/engine.hpp"
#include "wordmb/oracle.hpp"
#include "wordmb/words.hpp"

namespace wordmb {

struct RunConfig {
  std::uint64_t seed = 1;
  int budget = 256;                // random witness samples per assignment
  long long threshold = 10000000;  // exhaustive-evaluation cap
  int jobs = 1;
  bool json = false;

  EngineOpts engine() const {
    EngineOpts o;
    o.seed = seed;
    o.budget = budget;
    o.threshold = threshold;
    return o;
  }
};

enum class VerdictKind { MB, NOT_MB, VSMB, NOT_VSMB, VWMB, NOT_VWMB, UNDECIDED };
std::string verdict_name(VerdictKind k);
int verdict_exit_code(VerdictKind k);

// --- closed exponent formulas -----------------------------------------------

mpz_class exp_psl2_even(int L);                        // 2 (2^{2L} - 1)
mpz_class exp_psl2_odd(std::uint64_t p, int L);        // p (p^{2L} - 1) / 4
mpz_class outer_coset_lcm_psl2(std::uint64_t p, int L);  // (p^{2L} - 1) / 2
mpz_class exp_suzuki(int L);  // (q + t + 1)(q - t + 1)(q - 1) * 4, q = 2^{2L-1}, t = 2^L

// --- task planning -----------------------------------------------------------

struct DivisibilityFact {
  Family fam;
  std::uint64_t p;
  int L;
  std::string formula;  // which closed formula produced the value
  mpz_class value;
  long long e;
};

struct GroupTask {
  Family fam = Family::PSL2;
  std::uint64_t p = 2;
  int L = 1;
  bool simple = true;         // false only for PSL2(3); informational there
  std::vector<int> ks;        // Frobenius exponents to check
  std::vector<int> eps;       // diagonal square-class exponents
  std::string reason;
  std::string key() const;
  std::string label() const;  // group name, e.g. PSL2(3^2) or Sz(2^7)
};

struct PowerPlan {
  long long e = 0;
  std::vector<DivisibilityFact> divisibility;  // nonempty => short-circuit
  std::vector<GroupTask> tasks;
};
PowerPlan power_group_list(long long e);

struct VsmbPlan {
  int m = 0, l = 0;
  bool psl2_char2_pruned = false;  // word map on the 6-element group non-constant
  bool suzuki_pruned = false;      // word map on the 20-element group non-constant
  std::vector<GroupTask> tasks;
};
VsmbPlan vsmb_group_list(const Word& w, const RunConfig& cfg);

// --- verdicts ----------------------------------------------------------------

struct TaskResult {
  GroupTask task;
  std::string word;  // canonical text of the word or variation checked
  GroupVerdict verdict = GroupVerdict::Undecided;
  long long assignments = 0;
  long long witnesses = 0;
  long long evaluations = 0;
  // retained in full only for non-witness outcomes
  std::vector<AssignmentResult> constants;
  std::vector<AssignmentResult> exhausted;
  std::optional<WitnessPair> witness_sample;
};

struct Verdict {
  VerdictKind kind = VerdictKind::UNDECIDED;
  long long power_exponent = 0;  // power-word pipelines
  std::vector<DivisibilityFact> divisibility;
  std::optional<Derivation> derivation;  // syntactic fast path
  long long variation_classes = 0;
  long long variations_syntactic = 0;
  long long variations_machine = 0;
  std::vector<TaskResult> tasks;
  std::vector<std::string> notes;
};

Verdict decide_power(long long e, const RunConfig& cfg);
Verdict decide_vsmb(const Word& w, const RunConfig& cfg);
Verdict decide_vwmb(const Word& w, const RunConfig& cfg);

// --- sweep -------------------------------------------------------------------

struct SweepWordLine {
  int length = 0, runs = 0, mu_x = 0;
  std::string word;
  VerdictKind kind = VerdictKind::UNDECIDED;
  long long assignments = 0, witnesses = 0, evaluations = 0;
  std::vector<std::string> task_verdicts;  // "ctx:verdict" per task, in order
};

struct SweepCellCount {
  int length, runs, mu_x;
  long long produced;
  int table;
};

struct SweepLengthReport {
  int length = 0;
  bool syntactic_only = false;
  long long words_checked = 0;     // canonical (machine) or enumerated (syntactic)
  long long certified = 0;
  bool closure_ok = false;         // coverage + complement certification
  std::vector<SweepCellCount> cells;
  std::vector<std::string> exceptions;  // flagged known non-members
  std::vector<SweepWordLine> words;
};

struct SweepReport {
  int l_max = 0;
  bool ok = false;
  std::vector<SweepLengthReport> lengths;
};

// on_word, when set, is called for every canonical word in deterministic
// order as results become available; skip contains canonical words to carry
// over from a previous run without re-checking.
SweepReport sweep(int l_max, const RunConfig& cfg,
                  const std::function<void(const SweepWordLine&)>& on_word = nullptr,
                  const std::set<std::string>& skip = {});

// Shared, seed-keyed context registry so repeated decisions reuse fields.
CtxPtr get_ctx(Family fam, std::uint64_t p, int L, std::uint64_t base_seed);

}  // namespace wordmb
