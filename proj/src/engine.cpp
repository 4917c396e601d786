#include "wordmb/engine.hpp"

#include <algorithm>

namespace wordmb {

EvalPoint base_point(const GroupCtx& ctx, int d) {
  EvalPoint p;
  p.comp.assign(d, mat_identity(ctx.F, ctx.family == Family::PSL2 ? 2 : 4));
  return p;
}

AutElem eval_coset_map(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                       const EvalPoint& point) {
  auto vars = w.variables();
  if (asg.reps.size() != vars.size() || point.comp.size() != vars.size())
    throw error("eval_coset_map: arity mismatch");
  // variable id -> slot
  std::vector<int> slot_of(vars.empty() ? 0 : vars.back() + 1, -1);
  for (size_t i = 0; i < vars.size(); ++i) slot_of[vars[i]] = static_cast<int>(i);

  // Cache s_i * rep_i and its inverse per slot.
  std::vector<AutElem> fwd(vars.size()), bwd(vars.size());
  std::vector<bool> have_fwd(vars.size(), false), have_bwd(vars.size(), false);
  AutElem acc = aut_identity(ctx.family, ctx.F);
  for (const Letter& l : w.letters()) {
    int s = slot_of[l.var];
    if (l.sign > 0) {
      if (!have_fwd[s]) {
        fwd[s] = aut_mul(AutElem{ctx.family, point.comp[s], 0}, ctx.cosets[asg.reps[s]]);
        have_fwd[s] = true;
      }
      acc = aut_mul(acc, fwd[s]);
    } else {
      if (!have_bwd[s]) {
        if (!have_fwd[s]) {
          fwd[s] = aut_mul(AutElem{ctx.family, point.comp[s], 0}, ctx.cosets[asg.reps[s]]);
          have_fwd[s] = true;
        }
        bwd[s] = aut_inv(fwd[s]);
        have_bwd[s] = true;
      }
      acc = aut_mul(acc, bwd[s]);
    }
  }
  return acc;
}

bool residual_in_s(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                   const EvalPoint& point) {
  AutElem v = eval_coset_map(w, ctx, asg, point);
  AutElem v0 = eval_coset_map(w, ctx, asg, base_point(ctx, static_cast<int>(point.comp.size())));
  AutElem res = aut_mul(v, aut_inv(v0));
  if (res.frob != 0) return false;
  if (ctx.family == Family::PSL2) return in_psl2(res.part);
  // Suzuki parts are in S by construction; check what is checkable.
  return mat_det(res.part) == ctx.F->one();
}

namespace {

bool verify_pair(const Word& w, const GroupCtx& ctx, const Assignment& asg, WitnessPair& wp) {
  AutElem ra = eval_coset_map(w, ctx, asg, wp.a);
  AutElem rb = eval_coset_map(w, ctx, asg, wp.b);
  return aut_eq(ra, wp.va) && aut_eq(rb, wp.vb) && !aut_eq(ra, rb);
}

}  // namespace

std::optional<WitnessPair> find_witness(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                                        const EngineOpts& opts, Rng& rng, long long* evaluations) {
  if (opts.budget < 1) throw error("find_witness: budget must be >= 1");
  int d = static_cast<int>(w.variables().size());
  long long evals = 0;
  EvalPoint base = base_point(ctx, d);
  AutElem v0 = eval_coset_map(w, ctx, asg, base);
  ++evals;

  auto emit = [&](EvalPoint pt, AutElem v) -> std::optional<WitnessPair> {
    WitnessPair wp{base, std::move(pt), v0, std::move(v)};
    if (evaluations) *evaluations = evals + 2;
    if (!verify_pair(w, ctx, asg, wp)) throw error("witness failed re-verification");
    return wp;
  };

  // deterministic probes, one variable activated at a time
  std::vector<Mat> probes = probe_elements(ctx);
  for (int slot = 0; slot < d; ++slot) {
    for (const Mat& pr : probes) {
      EvalPoint pt = base;
      pt.comp[slot] = pr;
      AutElem v = eval_coset_map(w, ctx, asg, pt);
      ++evals;
      if (!aut_eq(v, v0)) return emit(std::move(pt), std::move(v));
    }
  }
  // seeded random points
  for (int it = 0; it < opts.budget; ++it) {
    EvalPoint pt;
    pt.comp.reserve(d);
    for (int slot = 0; slot < d; ++slot) pt.comp.push_back(random_element(ctx, rng));
    AutElem v = eval_coset_map(w, ctx, asg, pt);
    ++evals;
    if (!aut_eq(v, v0)) return emit(std::move(pt), std::move(v));
  }
  if (evaluations) *evaluations = evals;
  return std::nullopt;
}

AssignmentResult exhaustive_constancy(const Word& w, const GroupCtx& ctx, const Assignment& asg,
                                      const EngineOpts& opts) {
  int d = static_cast<int>(w.variables().size());
  mpz_class dom = 1;
  for (int i = 0; i < d; ++i) dom *= ctx.group_order;
  if (cmp_ll(dom, opts.threshold) > 0)
    throw error("exhaustive_constancy: domain size " + dom.get_str() + " above threshold");

  const std::vector<Mat>& elems = ctx.s_elements();
  AssignmentResult res;
  res.asg = asg;
  EvalPoint first = base_point(ctx, d);
  AutElem v0 = eval_coset_map(w, ctx, asg, first);
  res.evaluations = 1;

  std::vector<size_t> idx(d, 0);
  EvalPoint pt = base_point(ctx, d);
  while (true) {
    for (int i = 0; i < d; ++i) pt.comp[i] = elems[idx[i]];
    AutElem v = eval_coset_map(w, ctx, asg, pt);
    ++res.evaluations;
    if (!aut_eq(v, v0)) {
      res.outcome = ProbeOutcome::Witness;
      WitnessPair wp{first, pt, v0, v};
      if (!verify_pair(w, ctx, asg, wp)) throw error("witness failed re-verification");
      res.witness = wp;
      return res;
    }
    int j = 0;
    while (j < d && ++idx[j] == elems.size()) idx[j++] = 0;
    if (j == d) break;
  }
  res.outcome = ProbeOutcome::Constant;
  res.exhausted_domain = true;
  res.certificate = ConstancyCertificate{v0, dom};
  return res;
}

GroupCheck check_word_on_group(const Word& w, const GroupCtx& ctx, const EngineOpts& opts) {
  int d = static_cast<int>(w.variables().size());
  GroupCheck out;
  out.verdict = GroupVerdict::NonconstantAll;
  size_t reps = ctx.cosets.size();

  mpz_class dom = 1;
  for (int i = 0; i < d; ++i) dom *= ctx.group_order;
  bool can_exhaust = cmp_ll(dom, opts.threshold) <= 0;

  std::vector<int> cur(d, 0);
  long long asg_index = 0;
  while (true) {
    Assignment asg{cur};
    Rng rng(mix_seed(opts.seed, ctx.name() + "#" + format_word(w) + "#" +
                                    std::to_string(asg_index)));
    AssignmentResult res;
    res.asg = asg;
    long long evals = 0;
    auto wit = find_witness(w, ctx, asg, opts, rng, &evals);
    res.evaluations = evals;
    if (wit) {
      res.outcome = ProbeOutcome::Witness;
      res.witness = std::move(wit);
    } else if (can_exhaust) {
      res = exhaustive_constancy(w, ctx, asg, opts);
      res.evaluations += evals;
    } else {
      res.outcome = ProbeOutcome::Exhausted;
    }
    out.evaluations += res.evaluations;

    if (res.outcome == ProbeOutcome::Constant) {
      out.verdict = GroupVerdict::ConstantFound;
      out.assignments.push_back(std::move(res));
      if (opts.stop_on_constant) return out;
    } else {
      if (res.outcome == ProbeOutcome::Exhausted && out.verdict != GroupVerdict::ConstantFound)
        out.verdict = GroupVerdict::Undecided;
      out.assignments.push_back(std::move(res));
    }

    ++asg_index;
    int j = 0;
    while (j < d && ++cur[j] == static_cast<int>(reps)) cur[j++] = 0;
    if (j == d) break;
  }
  return out;
}

bool word_map_nonconstant(const Word& w, const GroupCtx& ctx, std::size_t cap,
                          long long eval_cap) {
  (void)cap;
  const std::vector<Mat>& elems = ctx.s_elements();
  int d = static_cast<int>(w.variables().size());
  mpz_class dom = 1;
  for (int i = 0; i < d; ++i) dom *= elems.size();
  if (cmp_ll(dom, eval_cap) > 0) throw error("word_map_nonconstant: domain above evaluation cap");

  Assignment trivial;
  // trivial representatives: index of the identity coset
  int id_idx = -1;
  for (size_t i = 0; i < ctx.cosets.size(); ++i) {
    if (ctx.cosets[i].frob == 0 &&
        ctx.cosets[i].part == mat_identity(ctx.F, ctx.family == Family::PSL2 ? 2 : 4)) {
      id_idx = static_cast<int>(i);
      break;
    }
  }
  if (id_idx < 0) throw error("word_map_nonconstant: no identity representative");
  trivial.reps.assign(d, id_idx);

  EvalPoint pt = base_point(ctx, d);
  AutElem v0 = eval_coset_map(w, ctx, trivial, pt);
  std::vector<size_t> idx(d, 0);
  while (true) {
    for (int i = 0; i < d; ++i) pt.comp[i] = elems[idx[i]];
    if (!aut_eq(eval_coset_map(w, ctx, trivial, pt), v0)) return true;
    int j = 0;
    while (j < d && ++idx[j] == elems.size()) idx[j++] = 0;
    if (j == d) break;
  }
  return false;
}

}  // namespace wordmb
