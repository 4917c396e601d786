#include "wordmb/deciders.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace wordmb {

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::MB: return "MB";
    case VerdictKind::NOT_MB: return "NOT_MB";
    case VerdictKind::VSMB: return "VSMB";
    case VerdictKind::NOT_VSMB: return "NOT_VSMB";
    case VerdictKind::VWMB: return "VWMB";
    case VerdictKind::NOT_VWMB: return "NOT_VWMB";
    case VerdictKind::UNDECIDED: return "UNDECIDED";
  }
  return "?";
}

int verdict_exit_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::MB:
    case VerdictKind::VSMB:
    case VerdictKind::VWMB:
      return 0;
    case VerdictKind::NOT_MB:
    case VerdictKind::NOT_VSMB:
    case VerdictKind::NOT_VWMB:
      return 10;
    case VerdictKind::UNDECIDED:
      return 20;
  }
  return 1;
}

mpz_class exp_psl2_even(int L) {
  mpz_class q2 = pow_mpz(2, static_cast<unsigned long>(2 * L));
  return 2 * (q2 - 1);
}

mpz_class exp_psl2_odd(std::uint64_t p, int L) {
  mpz_class q2 = pow_mpz(p, static_cast<unsigned long>(2 * L));
  mpz_class v = (q2 - 1) * p;
  if (!mpz_divisible_ui_p(v.get_mpz_t(), 4)) throw error("exp_psl2_odd: unexpected parity");
  return v / 4;
}

mpz_class outer_coset_lcm_psl2(std::uint64_t p, int L) {
  mpz_class q2 = pow_mpz(p, static_cast<unsigned long>(2 * L));
  return (q2 - 1) / 2;
}

mpz_class exp_suzuki(int L) {
  mpz_class q = pow_mpz(2, static_cast<unsigned long>(2 * L - 1));
  mpz_class t = pow_mpz(2, static_cast<unsigned long>(L));
  return (q + t + 1) * (q - t + 1) * (q - 1) * 4;
}

std::string GroupTask::key() const {
  return family_name(fam) + "|" + std::to_string(p) + "|" + std::to_string(L);
}

std::string GroupTask::label() const {
  if (fam == Family::Sz) return "Sz(2^" + std::to_string(2 * L - 1) + ")";
  return "PSL2(" + std::to_string(p) + "^" + std::to_string(L) + ")";
}

// --- shared context registry -------------------------------------------------

CtxPtr get_ctx(Family fam, std::uint64_t p, int L, std::uint64_t base_seed) {
  static std::mutex mu;
  static std::map<std::string, CtxPtr> cache;
  std::string key = family_name(fam) + "|" + std::to_string(p) + "|" + std::to_string(L) + "|" +
                    std::to_string(base_seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::uint64_t seed = mix_seed(base_seed, "ctx|" + key);
  CtxPtr ctx = fam == Family::PSL2 ? make_psl2_ctx(p, L, seed) : make_sz_ctx(L, seed);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.emplace(key, ctx);
  return it->second;
}

// --- planning ----------------------------------------------------------------

namespace {

std::vector<int> full_range(int n) {
  std::vector<int> r(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = i;
  return r;
}

std::vector<int> restricted_ks(int L, int f, long long e) {
  // for L = 2^f, only Frobenius exponents divisible by 2^max(0, f - v2(e))
  int v2 = valuation2(static_cast<std::uint64_t>(std::llabs(e)));
  int step_log = std::max(0, f - v2);
  int step = 1 << step_log;
  std::vector<int> ks;
  for (int k = 0; k < L; k += step) ks.push_back(k);
  return ks;
}

bool divides(const mpz_class& v, long long a) {
  if (cmp_ll(v, a) > 0) return false;
  long long vv = v.get_si();
  return vv != 0 && a % vv == 0;
}

}  // namespace

PowerPlan power_group_list(long long e) {
  if (e == 0) throw error("power word exponent must be nonzero");
  long long a = std::llabs(e);
  if (a > (1LL << 20)) throw error("unsupported size: exponent magnitude too large");
  PowerPlan plan;
  plan.e = a;

  // Divisibility precheck: if a closed exponent/lcm formula value for an
  // in-range simple group divides the exponent, the whole power map is
  // constant there and no matrix work is needed.
  for (int L = 2;; ++L) {
    mpz_class v = exp_psl2_even(L);
    if (cmp_ll(v, a) > 0) break;
    if (divides(v, a))
      plan.divisibility.push_back({Family::PSL2, 2, L, "exp_psl2_even", v, a});
  }
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(2 * a + 3))) {
    if (p == 2) continue;
    int L_start = p == 3 ? 2 : 1;  // skip the solvable q = 3
    for (int L = L_start;; ++L) {
      mpz_class v1 = exp_psl2_odd(p, L);
      mpz_class v2 = outer_coset_lcm_psl2(p, L);
      if (cmp_ll(v1, a) > 0 && cmp_ll(v2, a) > 0) break;
      if (divides(v1, a)) plan.divisibility.push_back({Family::PSL2, p, L, "exp_psl2_odd", v1, a});
      if (divides(v2, a))
        plan.divisibility.push_back({Family::PSL2, p, L, "outer_coset_lcm_psl2", v2, a});
    }
    if (cmp_ll(outer_coset_lcm_psl2(p, 1), a) > 0 && cmp_ll(exp_psl2_odd(p, 1), a) > 0 && p > 3) break;
  }
  for (int L = 2;; ++L) {
    mpz_class v = exp_suzuki(L);
    if (cmp_ll(v, a) > 0) break;
    if (divides(v, a)) plan.divisibility.push_back({Family::Sz, 2, L, "exp_suzuki", v, a});
  }
  if (!plan.divisibility.empty()) return plan;

  long long L_cap = a * a;

  // char 2: only prime degrees dividing the exponent survive the reduction
  for (long long L = 2; L <= L_cap; ++L) {
    if (a % L == 0 && is_prime_u64(static_cast<std::uint64_t>(L))) {
      GroupTask t;
      t.fam = Family::PSL2;
      t.p = 2;
      t.L = static_cast<int>(L);
      t.ks = full_range(t.L);
      t.eps = {0};
      t.reason = "char-2 tower: prime degree dividing the exponent";
      plan.tasks.push_back(std::move(t));
    }
  }
  // p = 3: prime divisors of the exponent, plus powers of 2 with restricted
  // Frobenius exponents
  {
    std::map<int, GroupTask> by_L;
    for (long long L = 2; L <= L_cap; ++L) {
      bool prime_div = a % L == 0 && is_prime_u64(static_cast<std::uint64_t>(L));
      bool pow2 = is_power_of_two(static_cast<std::uint64_t>(L));
      if (!prime_div && !pow2) continue;
      GroupTask t;
      t.fam = Family::PSL2;
      t.p = 3;
      t.L = static_cast<int>(L);
      t.eps = {0, 1};
      if (prime_div) {
        t.ks = full_range(t.L);
        t.reason = "p=3: prime degree dividing the exponent";
      } else {
        int f = valuation2(static_cast<std::uint64_t>(L));
        t.ks = restricted_ks(t.L, f, a);
        t.reason = "p=3: power-of-two degree, Frobenius exponents restricted";
      }
      by_L.emplace(t.L, std::move(t));
    }
    for (auto& [L, t] : by_L) plan.tasks.push_back(std::move(t));
  }
  // odd p from 5 up to the exponent: power-of-two degrees, restricted K
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(a))) {
    if (p < 5) continue;
    for (long long L = 1; L <= L_cap; L *= 2) {
      GroupTask t;
      t.fam = Family::PSL2;
      t.p = p;
      t.L = static_cast<int>(L);
      t.eps = {0, 1};
      int f = L == 1 ? 0 : valuation2(static_cast<std::uint64_t>(L));
      t.ks = restricted_ks(t.L, f, a);
      t.reason = "odd p: power-of-two degree, Frobenius exponents restricted";
      plan.tasks.push_back(std::move(t));
    }
  }
  // Suzuki: 2L-1 an odd prime dividing the exponent
  for (long long L = 2; L <= 4 * L_cap; ++L) {
    long long deg = 2 * L - 1;
    if (deg >= 3 && a % deg == 0 && is_prime_u64(static_cast<std::uint64_t>(deg))) {
      GroupTask t;
      t.fam = Family::Sz;
      t.p = 2;
      t.L = static_cast<int>(L);
      t.ks = full_range(2 * t.L - 1);
      t.eps = {0};
      t.reason = "Suzuki: odd prime degree dividing the exponent";
      plan.tasks.push_back(std::move(t));
    }
  }
  return plan;
}

VsmbPlan vsmb_group_list(const Word& w, const RunConfig& cfg) {
  if (w.empty()) throw error("vsmb_group_list: empty word");
  VsmbPlan plan;
  plan.m = w.max_multiplicity();
  plan.l = w.length();
  int ml = plan.m * plan.l;
  int d = w.distinct_count();

  // small-group shortcuts on the plain word map
  auto domain_fits = [&](double base) {
    return std::pow(base, d) <= 1e7;
  };
  if (domain_fits(6)) {
    CtxPtr c = get_ctx(Family::PSL2, 2, 1, cfg.seed);
    plan.psl2_char2_pruned = word_map_nonconstant(w, *c);
  }
  if (domain_fits(20)) {
    CtxPtr c = get_ctx(Family::Sz, 2, 1, cfg.seed);
    plan.suzuki_pruned = word_map_nonconstant(w, *c);
  }

  if (!plan.psl2_char2_pruned) {
    for (int L = 2; L <= ml; ++L) {
      if (!is_prime_u64(static_cast<std::uint64_t>(L))) continue;
      GroupTask t;
      t.fam = Family::PSL2;
      t.p = 2;
      t.L = L;
      t.ks = full_range(L);
      t.eps = {0};
      t.reason = "char-2 tower: prime degrees";
      plan.tasks.push_back(std::move(t));
    }
  }
  // p = 3: powers of 2 (including the solvable degree-1 case, informational)
  // together with the odd prime degrees
  for (int L = 1; L <= ml; ++L) {
    bool pow2 = is_power_of_two(static_cast<std::uint64_t>(L));
    bool oddprime = L >= 3 && is_prime_u64(static_cast<std::uint64_t>(L));
    if (!pow2 && !oddprime) continue;
    GroupTask t;
    t.fam = Family::PSL2;
    t.p = 3;
    t.L = L;
    t.simple = L >= 2;
    t.ks = full_range(L);
    t.eps = {0, 1};
    t.reason = pow2 ? "p=3: power-of-two degree" : "p=3: odd prime degree";
    plan.tasks.push_back(std::move(t));
  }
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::max(0, plan.m)))) {
    if (p < 5) continue;
    for (int L = 1; L <= ml; L *= 2) {
      GroupTask t;
      t.fam = Family::PSL2;
      t.p = p;
      t.L = L;
      t.ks = full_range(L);
      t.eps = {0, 1};
      t.reason = "odd p up to the maximum multiplicity: power-of-two degree";
      plan.tasks.push_back(std::move(t));
    }
  }
  if (!plan.suzuki_pruned) {
    for (int L = 2; L <= 4 * ml; ++L) {
      int deg = 2 * L - 1;
      if (!is_prime_u64(static_cast<std::uint64_t>(deg))) continue;
      GroupTask t;
      t.fam = Family::Sz;
      t.p = 2;
      t.L = L;
      t.ks = full_range(deg);
      t.eps = {0};
      t.reason = "Suzuki: odd prime degrees";
      plan.tasks.push_back(std::move(t));
    }
  }
  return plan;
}

// --- execution ---------------------------------------------------------------

namespace {

template <typename R, typename F>
std::vector<R> parallel_map(int jobs, int n, F&& fn) {
  std::vector<R> out(static_cast<size_t>(n));
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[static_cast<size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int tcount = std::min(jobs, n);
  threads.reserve(static_cast<size_t>(tcount));
  for (int t = 0; t < tcount; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

int coset_index(const GroupCtx& ctx, int eps, int K) {
  if (ctx.family == Family::Sz) return K;
  if (ctx.p == 2) return K;
  return eps * ctx.L + K;
}

TaskResult run_power_task(long long a, const GroupTask& task, const RunConfig& cfg) {
  CtxPtr ctx = get_ctx(task.fam, task.p, task.L, cfg.seed);
  Word w = power_word(a);
  EngineOpts opts = cfg.engine();
  TaskResult res;
  res.task = task;
  res.word = format_word(w);
  res.verdict = GroupVerdict::NonconstantAll;
  for (int eps : task.eps) {
    for (int K : task.ks) {
      Assignment asg{{coset_index(*ctx, eps, K)}};
      Rng rng(mix_seed(cfg.seed, task.key() + "|" + std::to_string(eps) + "|" + std::to_string(K)));
      long long evals = 0;
      ++res.assignments;
      auto wit = find_witness(w, *ctx, asg, opts, rng, &evals);
      res.evaluations += evals;
      if (wit) {
        ++res.witnesses;
        if (!res.witness_sample) res.witness_sample = std::move(wit);
        continue;
      }
      if (cmp_ll(ctx->group_order, opts.threshold) <= 0) {
        AssignmentResult ar = exhaustive_constancy(w, *ctx, asg, opts);
        res.evaluations += ar.evaluations;
        if (ar.outcome == ProbeOutcome::Constant) {
          res.verdict = GroupVerdict::ConstantFound;
          res.constants.push_back(std::move(ar));
        } else {
          ++res.witnesses;
          if (!res.witness_sample) res.witness_sample = ar.witness;
        }
      } else {
        AssignmentResult ar;
        ar.asg = asg;
        ar.outcome = ProbeOutcome::Exhausted;
        ar.evaluations = evals;
        res.exhausted.push_back(std::move(ar));
        if (res.verdict != GroupVerdict::ConstantFound) res.verdict = GroupVerdict::Undecided;
      }
    }
  }
  if (res.verdict == GroupVerdict::NonconstantAll && !res.exhausted.empty())
    res.verdict = GroupVerdict::Undecided;
  return res;
}

TaskResult run_general_task(const Word& w, const GroupTask& task, const RunConfig& cfg) {
  CtxPtr ctx = get_ctx(task.fam, task.p, task.L, cfg.seed);
  EngineOpts opts = cfg.engine();
  GroupCheck gc = check_word_on_group(w, *ctx, opts);
  TaskResult res;
  res.task = task;
  res.word = format_word(w);
  res.verdict = gc.verdict;
  res.evaluations = gc.evaluations;
  res.assignments = static_cast<long long>(gc.assignments.size());
  for (auto& ar : gc.assignments) {
    switch (ar.outcome) {
      case ProbeOutcome::Witness:
        ++res.witnesses;
        if (!res.witness_sample) res.witness_sample = ar.witness;
        break;
      case ProbeOutcome::Constant:
        res.constants.push_back(std::move(ar));
        break;
      case ProbeOutcome::Exhausted:
        res.exhausted.push_back(std::move(ar));
        break;
    }
  }
  return res;
}

// Verdict over simple tasks only; the solvable degree-1 p=3 group is
// reported but can neither certify nor refute.
VerdictKind aggregate(const std::vector<TaskResult>& tasks, VerdictKind positive,
                      VerdictKind negative) {
  bool undecided = false;
  for (const TaskResult& t : tasks) {
    if (!t.task.simple) continue;
    if (t.verdict == GroupVerdict::ConstantFound) return negative;
    if (t.verdict == GroupVerdict::Undecided) undecided = true;
  }
  return undecided ? VerdictKind::UNDECIDED : positive;
}

}  // namespace

Verdict decide_power(long long e, const RunConfig& cfg) {
  if (e == 0) throw error("power word exponent must be nonzero");
  Verdict v;
  v.power_exponent = e;
  PowerPlan plan = power_group_list(e);
  v.divisibility = plan.divisibility;
  v.notes.push_back("decision runs on |e|; the verdict is invariant under e -> -e");
  if (!plan.divisibility.empty()) {
    v.kind = VerdictKind::NOT_MB;
    v.notes.push_back("short-circuit: a closed exponent formula divides the exponent");
    return v;
  }
  int n = static_cast<int>(plan.tasks.size());
  v.tasks = parallel_map<TaskResult>(cfg.jobs, n, [&](int i) {
    return run_power_task(plan.e, plan.tasks[static_cast<size_t>(i)], cfg);
  });
  v.kind = aggregate(v.tasks, VerdictKind::MB, VerdictKind::NOT_MB);
  return v;
}

Verdict decide_vwmb(const Word& w, const RunConfig& cfg) {
  if (w.empty()) throw error("decide_vwmb: empty word");
  Verdict v;
  VsmbPlan plan = vsmb_group_list(w, cfg);
  if (plan.psl2_char2_pruned)
    v.notes.push_back("char-2 family pruned: word map on the 6-element group is non-constant");
  if (plan.suzuki_pruned)
    v.notes.push_back("Suzuki family pruned: word map on the 20-element group is non-constant");
  int n = static_cast<int>(plan.tasks.size());
  v.tasks = parallel_map<TaskResult>(cfg.jobs, n, [&](int i) {
    return run_general_task(w, plan.tasks[static_cast<size_t>(i)], cfg);
  });
  v.kind = aggregate(v.tasks, VerdictKind::VWMB, VerdictKind::NOT_VWMB);
  return v;
}

Verdict decide_vsmb(const Word& w, const RunConfig& cfg) {
  if (w.empty()) throw error("decide_vsmb: empty word");
  Verdict v;

  if (w.is_power_word()) {
    long long e = w.power_exponent();
    Verdict pw = decide_power(e, cfg);
    v.power_exponent = e;
    v.divisibility = std::move(pw.divisibility);
    v.tasks = std::move(pw.tasks);
    v.notes.push_back("power word: delegated to the power-word decision procedure");
    if (pw.kind == VerdictKind::NOT_MB) {
      v.kind = VerdictKind::NOT_VSMB;
      v.notes.push_back("not multiplicity-bounding, hence not very strongly so");
      return v;
    }
    if (pw.kind == VerdictKind::UNDECIDED) {
      v.kind = VerdictKind::UNDECIDED;
      return v;
    }
    if (std::llabs(e) <= 7) {
      v.kind = VerdictKind::VSMB;
      v.derivation = Derivation{"R7", "settled power word, lifted through its length class", {}};
      return v;
    }
    v.notes.push_back(
        "multiplicity-bounding, but the very-strong property needs the variation sweep");
  }

  if (auto der = syntactic_vsmb(w, 8)) {
    v.kind = VerdictKind::VSMB;
    v.derivation = *der;
    return v;
  }

  mpz_class vc = variation_count(w);
  if (vc > 100000) {
    v.kind = VerdictKind::UNDECIDED;
    v.notes.push_back("variation count " + vc.get_str() + " above the enumeration cap");
    return v;
  }
  std::vector<Word> classes = variations_up_to_equivalence(w);
  v.variation_classes = static_cast<long long>(classes.size());

  VsmbPlan plan = vsmb_group_list(w, cfg);
  if (plan.psl2_char2_pruned)
    v.notes.push_back("char-2 family pruned: word map on the 6-element group is non-constant");
  if (plan.suzuki_pruned)
    v.notes.push_back("Suzuki family pruned: word map on the 20-element group is non-constant");

  std::vector<Word> machine;
  for (const Word& var : classes) {
    if (syntactic_vsmb(var, 8)) {
      ++v.variations_syntactic;
    } else {
      machine.push_back(var);
    }
  }
  v.variations_machine = static_cast<long long>(machine.size());

  // assignment budget guard: tuples of coset representatives per variation
  long long worst = 0;
  for (const Word& var : machine) {
    int d = var.distinct_count();
    for (const GroupTask& t : plan.tasks) {
      long long reps = t.fam == Family::Sz ? 2 * t.L - 1 : (t.p == 2 ? t.L : 2LL * t.L);
      long long cnt = 1;
      for (int i = 0; i < d; ++i) {
        cnt *= reps;
        if (cnt > (1LL << 40)) break;
      }
      worst += cnt;
    }
  }
  if (worst > 2000000) {
    v.kind = VerdictKind::UNDECIDED;
    v.notes.push_back("machine phase needs " + std::to_string(worst) +
                      " representative tuples, above the work cap");
    return v;
  }

  struct Job {
    const Word* var;
    const GroupTask* task;
  };
  std::vector<Job> jobs;
  for (const Word& var : machine)
    for (const GroupTask& t : plan.tasks) jobs.push_back({&var, &t});
  v.tasks = parallel_map<TaskResult>(cfg.jobs, static_cast<int>(jobs.size()), [&](int i) {
    return run_general_task(*jobs[static_cast<size_t>(i)].var, *jobs[static_cast<size_t>(i)].task,
                            cfg);
  });
  v.kind = aggregate(v.tasks, VerdictKind::VSMB, VerdictKind::NOT_VSMB);
  return v;
}

// --- sweep -------------------------------------------------------------------

SweepReport sweep(int l_max, const RunConfig& cfg,
                  const std::function<void(const SweepWordLine&)>& on_word,
                  const std::set<std::string>& skip) {
  if (l_max < 1 || l_max > 8) throw error("sweep: length out of the supported range 1..8");
  SweepReport report;
  report.l_max = l_max;
  report.ok = true;

  for (int l = 1; l <= std::min(l_max, 5); ++l) {
    SweepLengthReport lr;
    lr.length = l;
    lr.syntactic_only = true;
    // Exhaustive syntactic certification for up to two variables. Words in
    // three or more variables of these lengths always contain a
    // single-occurrence variable.
    for (const Word& w : enumerate_all(l, std::min(l, 2))) {
      ++lr.words_checked;
      if (syntactic_vsmb(w, l - 1)) ++lr.certified;
    }
    lr.closure_ok = lr.certified == lr.words_checked;
    report.ok = report.ok && lr.closure_ok;
    report.lengths.push_back(std::move(lr));
  }

  for (int l = 6; l <= l_max; ++l) {
    SweepLengthReport lr;
    lr.length = l;

    std::vector<SweepWordLine> lines;
    auto cells = enumerate_canonical(l);
    for (const auto& cell : cells) {
      lr.cells.push_back(SweepCellCount{cell.length, cell.runs, cell.mu_x,
                                        static_cast<long long>(cell.words.size()),
                                        table_count(cell.length, cell.runs, cell.mu_x)});
      for (const Word& w : cell.words) {
        SweepWordLine line;
        line.length = cell.length;
        line.runs = cell.runs;
        line.mu_x = cell.mu_x;
        line.word = format_word(w);
        lines.push_back(std::move(line));
      }
    }
    lr.words_checked = static_cast<long long>(lines.size());

    // chunked parallel execution with deterministic, ordered emission
    int nwords = static_cast<int>(lines.size());
    int chunk = std::max(1, 64 * cfg.jobs);
    RunConfig word_cfg = cfg;
    word_cfg.jobs = 1;
    for (int base = 0; base < nwords; base += chunk) {
      int count = std::min(chunk, nwords - base);
      auto done = parallel_map<SweepWordLine>(cfg.jobs, count, [&](int i) {
        SweepWordLine line = lines[static_cast<size_t>(base + i)];
        if (skip.count(line.word)) {
          line.kind = VerdictKind::VWMB;
          line.task_verdicts.push_back("resumed");
          return line;
        }
        Word w = parse_word(line.word);
        Verdict verdict = decide_vwmb(w, word_cfg);
        line.kind = verdict.kind;
        for (const TaskResult& t : verdict.tasks) {
          line.assignments += t.assignments;
          line.witnesses += t.witnesses;
          line.evaluations += t.evaluations;
          std::string tag = t.task.label() + ":" +
                            (t.verdict == GroupVerdict::NonconstantAll
                                 ? "nonconstant"
                                 : (t.verdict == GroupVerdict::ConstantFound ? "constant"
                                                                             : "undecided"));
          line.task_verdicts.push_back(std::move(tag));
        }
        return line;
      });
      for (int i = 0; i < count; ++i) {
        const SweepWordLine& line = done[static_cast<size_t>(i)];
        if (line.kind == VerdictKind::VWMB) ++lr.certified;
        if (on_word) on_word(line);
        lr.words.push_back(line);
      }
    }

    lr.closure_ok = coverage_check(l);
    if (l == 8) {
      lr.exceptions.push_back("a^8");
      lr.exceptions.push_back("A^8");
    }
    report.ok = report.ok && lr.closure_ok && lr.certified == lr.words_checked;
    report.lengths.push_back(std::move(lr));
  }
  return report;
}

}  // namespace wordmb
