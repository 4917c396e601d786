// Acceptance suite: one criterion per command-line argument (1..7), all of
// them when run bare. Prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wordmb/report.hpp"

using namespace wordmb;

namespace {

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int hardware_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 4 : static_cast<int>(std::min(n, 8u));
}

struct Criterion {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail << (ok ? "    ok: " : "    FAILED: ") << what << "\n";
  }
};

// ---- criterion 1: the six exponents without multiplicity-bounding power maps

bool criterion1() {
  Criterion c;
  RunConfig cfg;
  cfg.jobs = hardware_jobs();
  long long t0 = now_ms();

  struct Expect {
    long long e;
    std::uint64_t p;
    int L, eps, K;  // the witness coset that must appear and re-verify
    bool divisibility;
  };
  // e=12/24: the odd coset of PGL2(5); e=30: the 60-element group itself;
  // e=8/16: the doubly twisted coset over the 9-element field; e=18: the
  // Galois-twisted coset of the 504-element group.
  const std::vector<Expect> cases = {
      {8, 3, 2, 1, 1, false},  {12, 5, 1, 1, 0, true}, {16, 3, 2, 1, 1, false},
      {18, 2, 3, 0, 1, false}, {24, 5, 1, 1, 0, true}, {30, 5, 1, 0, 0, true},
  };
  for (const Expect& ex : cases) {
    Verdict v = decide_power(ex.e, cfg);
    c.require(v.kind == VerdictKind::NOT_MB, "power " + std::to_string(ex.e) + " is NOT_MB");
    if (ex.divisibility) {
      bool named = false;
      for (const DivisibilityFact& d : v.divisibility) {
        if (d.p == ex.p && d.L == ex.L) named = true;
        // re-verify by integer arithmetic against the closed formulas
        mpz_class recomputed = d.formula == "exp_psl2_even" ? exp_psl2_even(d.L)
                               : d.formula == "exp_psl2_odd"
                                   ? exp_psl2_odd(d.p, d.L)
                                   : d.formula == "outer_coset_lcm_psl2"
                                         ? outer_coset_lcm_psl2(d.p, d.L)
                                         : exp_suzuki(d.L);
        c.require(recomputed == d.value && cmp_ll(d.value, ex.e) <= 0 &&
                      ex.e % d.value.get_si() == 0,
                  "divisibility fact re-verifies for e=" + std::to_string(ex.e));
      }
      c.require(named, "certificate names the expected group for e=" + std::to_string(ex.e));
    } else {
      bool named = false;
      for (const TaskResult& t : v.tasks) {
        if (t.verdict != GroupVerdict::ConstantFound) continue;
        for (const AssignmentResult& ar : t.constants) {
          CtxPtr ctx = get_ctx(t.task.fam, t.task.p, t.task.L, cfg.seed);
          int idx = ar.asg.reps.at(0);
          int eps = ctx->p == 2 ? 0 : idx / ctx->L;
          int K = ctx->p == 2 ? idx : idx % ctx->L;
          if (t.task.p == ex.p && t.task.L == ex.L && eps == ex.eps && K == ex.K) named = true;
          // independent re-verification of the exhaustive certificate
          AssignmentResult again =
              exhaustive_constancy(power_word(ex.e), *ctx, ar.asg, cfg.engine());
          c.require(again.outcome == ProbeOutcome::Constant &&
                        aut_eq(again.certificate->value, ar.certificate->value),
                    "constancy certificate re-verifies for e=" + std::to_string(ex.e));
        }
      }
      c.require(named, "certificate names the expected coset for e=" + std::to_string(ex.e));
    }
  }
  long long elapsed = now_ms() - t0;
  c.require(elapsed < 300000, "runtime " + std::to_string(elapsed) + " ms under 5 minutes");
  std::cout << (c.pass ? "PASS" : "FAIL")
            << " criterion 1: six non-bounding exponents with re-verified certificates ("
            << elapsed << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 2: bounding exponents, including the degree-256 targets

bool criterion2() {
  Criterion c;
  RunConfig cfg;
  cfg.jobs = hardware_jobs();
  long long t0 = now_ms();
  std::vector<long long> quick;
  for (long long e : {1, 3, 5, 7, 9}) {
    quick.push_back(e);
    quick.push_back(-e);
  }
  for (long long e : {2, 4, 6, 10, 14}) {
    quick.push_back(e);
    quick.push_back(-e);
  }
  for (long long e : quick) {
    Verdict v = decide_power(e, cfg);
    c.require(v.kind == VerdictKind::MB, "power " + std::to_string(e) + " is MB");
  }
  long long quick_ms = now_ms() - t0;
  c.require(quick_ms < 600000, "small exponents in " + std::to_string(quick_ms) +
                                   " ms, under 10 minutes");
  for (long long e : {20, 22}) {
    long long te = now_ms();
    Verdict v = decide_power(e, cfg);
    long long used = now_ms() - te;
    c.require(v.kind == VerdictKind::MB, "power " + std::to_string(e) + " is MB");
    c.require(used < 43200000, "power " + std::to_string(e) + " in " + std::to_string(used) +
                                   " ms, under 12 hours");
    bool big_field = false;
    for (const TaskResult& t : v.tasks)
      if (t.task.fam == Family::PSL2 && t.task.L == 256) big_field = true;
    c.require(big_field, "degree-256 fields were exercised for e=" + std::to_string(e));
  }
  long long elapsed = now_ms() - t0;
  std::cout << (c.pass ? "PASS" : "FAIL")
            << " criterion 2: bounding exponents incl. the degree-256 targets (" << elapsed
            << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 3: the short-word sweeps against the published counts

bool criterion3() {
  Criterion c;
  RunConfig cfg;
  cfg.seed = 42;
  cfg.jobs = hardware_jobs();
  long long t0 = now_ms();

  const std::map<int, long long> totals = {{6, 40}, {7, 168}, {8, 628}};
  const std::map<int, long long> limits_ms = {{6, 900000}, {7, 14400000}, {8, 14400000}};
  for (int l : {6, 7, 8}) {
    long long tl = now_ms();
    SweepReport rep = sweep(l, cfg);
    long long used = now_ms() - tl;
    c.require(rep.ok, "sweep " + std::to_string(l) + " certifies every word");
    const SweepLengthReport& lr = rep.lengths.back();
    c.require(lr.length == l && lr.words_checked == totals.at(l) &&
                  lr.certified == lr.words_checked,
              "length " + std::to_string(l) + ": " + std::to_string(lr.certified) + "/" +
                  std::to_string(totals.at(l)) + " certified");
    for (const SweepCellCount& cell : lr.cells) {
      bool cell_ok = cell.produced == cell.table;
      if (cell.length == 7 && cell.runs == 5 && cell.mu_x == 4)
        cell_ok = cell.produced == 48 || cell.produced == 32;  // both readings accepted
      c.require(cell_ok, "cell (" + std::to_string(cell.length) + "," +
                             std::to_string(cell.runs) + "," + std::to_string(cell.mu_x) +
                             ") count " + std::to_string(cell.produced) + " vs table " +
                             std::to_string(cell.table));
    }
    c.require(lr.closure_ok, "coverage and complement closure at length " + std::to_string(l));
    c.require(used < limits_ms.at(l), "length " + std::to_string(l) + " in " +
                                          std::to_string(used) + " ms, within budget");
    if (l == 8) {
      c.require(lr.exceptions == std::vector<std::string>{"a^8", "A^8"},
                "the two length-8 power words are flagged as the known exception");
    }
  }
  c.require(coverage_check(7), "coverage_check(7) holds");
  long long elapsed = now_ms() - t0;
  std::cout << (c.pass ? "PASS" : "FAIL")
            << " criterion 3: sweep reproduction with table counts (" << elapsed << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 4: exponent formulas and the Suzuki closure orders

bool criterion4() {
  Criterion c;
  RunConfig cfg;
  long long t0 = now_ms();
  OracleResult exps = run_oracle_check("exponents", cfg);
  c.require(exps.pass, "brute-force exponents match every closed formula");
  OracleResult sz = run_oracle_check("suzuki-orders", cfg);
  c.require(sz.pass, "Suzuki closure orders 20 / 29120 and the order spectrum");
  long long elapsed = now_ms() - t0;
  c.require(elapsed < 600000, "runtime under 10 minutes");
  std::cout << (c.pass ? "PASS" : "FAIL") << " criterion 4: exponent-formula oracle (" << elapsed
            << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 5: structural oracles

bool criterion5() {
  Criterion c;
  RunConfig cfg;
  long long t0 = now_ms();
  OracleResult qb = run_oracle_check("quotient-bound", cfg);
  c.require(qb.pass, "counting bound on three instances");
  bool has_exact = false;
  for (const auto& item : qb.data) {
    if (item.value("max_fiber_G", -1) == 4 && item.value("max_fiber_quotient", -1) == 2 &&
        item.value("max_coset_fiber", -1) == 3)
      has_exact = true;
  }
  c.require(has_exact, "the 4 <= 2*3 instance appears with exact values");
  c.require(qb.data.size() >= 3, "at least three instances");
  OracleResult eq = run_oracle_check("equations", cfg);
  c.require(eq.pass, "equation-system set equality and the mismatch emptiness");
  long long elapsed = now_ms() - t0;
  std::cout << (c.pass ? "PASS" : "FAIL") << " criterion 5: structural oracles (" << elapsed
            << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 6: witness integrity property suite

bool criterion6() {
  Criterion c;
  RunConfig cfg;
  cfg.jobs = hardware_jobs();
  long long t0 = now_ms();

  // every emitted witness pair re-verifies under fresh evaluation
  long long witnesses = 0;
  for (CtxPtr ctx : {make_psl2_ctx(3, 2, 7), make_psl2_ctx(2, 3, 7)}) {
    for (const char* text : {"abAB", "a^2b^2", "ab"}) {
      Word w = parse_word(text);
      GroupCheck gc = check_word_on_group(w, *ctx, cfg.engine());
      for (const AssignmentResult& ar : gc.assignments) {
        if (!ar.witness) continue;
        ++witnesses;
        bool ok = aut_eq(eval_coset_map(w, *ctx, ar.asg, ar.witness->a), ar.witness->va) &&
                  aut_eq(eval_coset_map(w, *ctx, ar.asg, ar.witness->b), ar.witness->vb) &&
                  !aut_eq(ar.witness->va, ar.witness->vb);
        if (!ok) c.require(false, std::string("witness re-verification on ") + text);
      }
    }
  }
  c.require(witnesses > 0, std::to_string(witnesses) + " witnesses re-verified");

  // residual factorization on 1000 random evaluations per family
  {
    struct FamilyCase {
      CtxPtr ctx;
      const char* name;
    };
    std::vector<FamilyCase> fams = {{make_psl2_ctx(3, 2, 7), "odd characteristic"},
                                    {make_psl2_ctx(2, 3, 7), "characteristic 2"},
                                    {make_sz_ctx(2, 7), "Suzuki"}};
    for (auto& fc : fams) {
      Rng rng(mix_seed(99, fc.name));
      Word w = parse_word("abA^2b");
      bool all = true;
      for (int it = 0; it < 1000; ++it) {
        Assignment asg{{static_cast<int>(rng.below(fc.ctx->cosets.size())),
                        static_cast<int>(rng.below(fc.ctx->cosets.size()))}};
        EvalPoint pt{{random_element(*fc.ctx, rng), random_element(*fc.ctx, rng)}};
        all = all && residual_in_s(w, *fc.ctx, asg, pt);
      }
      c.require(all, std::string("residual factorization holds on 1000 samples, ") + fc.name);
    }
  }

  // variation counts match the product formula on 100 random words
  {
    Rng rng(1234);
    bool all = true;
    for (int it = 0; it < 100; ++it) {
      int len = 1 + static_cast<int>(rng.below(8));
      std::vector<Letter> ls;
      for (int i = 0; i < len; ++i)
        ls.push_back(Letter{static_cast<int>(rng.below(3)), rng.coin() ? 1 : -1});
      Word w(ls);
      if (w.empty()) continue;
      all = all && cmp_ll(variation_count(w),
                          static_cast<long long>(variations(w).size())) == 0;
    }
    c.require(all, "variation counts match the closed formula on 100 random words");
  }

  // sign invariance of the power-word decision on every exponent tested
  for (long long e : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20, 22, 24, 30}) {
    VerdictKind a = decide_power(e, cfg).kind;
    VerdictKind b = decide_power(-e, cfg).kind;
    if (a != b) c.require(false, "sign invariance at e=" + std::to_string(e));
  }
  c.require(true, "decide_power(e) = decide_power(-e) for all tested e");

  long long elapsed = now_ms() - t0;
  std::cout << (c.pass ? "PASS" : "FAIL") << " criterion 6: witness integrity properties ("
            << elapsed << " ms)\n"
            << c.detail.str();
  return c.pass;
}

// ---- criterion 7: byte-identical reports

bool criterion7() {
  Criterion c;
  long long t0 = now_ms();
  auto run_once = [&](const std::string& path) {
    std::string cmd = "./wordmb sweep 6 --seed 42 --jobs 1 > " + path + " 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  bool r1 = run_once("acceptance_sweep_run1.jsonl");
  bool r2 = run_once("acceptance_sweep_run2.jsonl");
  c.require(r1 && r2, "both sweep runs completed");
  if (r1 && r2) {
    auto strip = [](const std::string& path) {
      std::ifstream in(path);
      std::string line, out;
      while (std::getline(in, line)) {
        json j = json::parse(line);
        j.erase("elapsed_ms");
        out += j.dump() + "\n";
      }
      return out;
    };
    std::string a = strip("acceptance_sweep_run1.jsonl");
    std::string b = strip("acceptance_sweep_run2.jsonl");
    c.require(!a.empty() && a == b,
              "reports are byte-identical after removing elapsed-time fields");
  }
  long long elapsed = now_ms() - t0;
  std::cout << (c.pass ? "PASS" : "FAIL") << " criterion 7: determinism (" << elapsed << " ms)\n"
            << c.detail.str();
  return c.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};
  bool all = true;
  for (int w : which) {
    switch (w) {
      case 1: all = criterion1() && all; break;
      case 2: all = criterion2() && all; break;
      case 3: all = criterion3() && all; break;
      case 4: all = criterion4() && all; break;
      case 5: all = criterion5() && all; break;
      case 6: all = criterion6() && all; break;
      case 7: all = criterion7() && all; break;
      default:
        std::cerr << "unknown criterion " << w << "\n";
        return 2;
    }
  }
  return all ? 0 : 1;
}
