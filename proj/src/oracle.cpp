#include "wordmb/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace wordmb {

SmallGroup::SmallGroup(CtxPtr ctx, std::vector<AutElem> elems)
    : ctx_(std::move(ctx)), elems_(std::move(elems)) {
  for (size_t i = 0; i < elems_.size(); ++i)
    lookup_[aut_hash(elems_[i])].push_back(static_cast<int>(i));
  build_tables();
}

int SmallGroup::index_of(const AutElem& g) const {
  auto it = lookup_.find(aut_hash(g));
  if (it == lookup_.end()) return -1;
  for (int idx : it->second)
    if (elems_[static_cast<size_t>(idx)] == g) return idx;
  return -1;
}

void SmallGroup::build_tables() {
  int n = size();
  bool full_table = static_cast<long long>(n) * n <= 10000000;
  if (full_table) table_.assign(n, std::vector<int>(n, -1));
  inv_.assign(n, -1);
  order_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!full_table) break;
      int c = index_of(aut_mul(elems_[a], elems_[b]));
      if (c < 0) throw error("SmallGroup: not closed under multiplication");
      table_[a][b] = c;
      if (c == 0) inv_[a] = b;
    }
    if (!full_table) inv_[a] = index_of(aut_inv(elems_[a]));
    if (inv_[a] < 0) throw error("SmallGroup: missing inverse");
  }
  for (int a = 0; a < n; ++a) {
    long long ord = 1;
    int cur = a;
    while (cur != 0) {
      cur = mul(cur, a);
      ++ord;
      if (ord > n + 1) throw error("SmallGroup: order runaway");
    }
    order_[static_cast<size_t>(a)] = a == 0 ? 1 : ord;
  }
}

int SmallGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[a][b];
  int c = index_of(aut_mul(elems_[static_cast<size_t>(a)], elems_[static_cast<size_t>(b)]));
  if (c < 0) throw error("SmallGroup: not closed under multiplication");
  return c;
}

int SmallGroup::inv(int a) const { return inv_[static_cast<size_t>(a)]; }

long long SmallGroup::order_of(int a) const { return order_[static_cast<size_t>(a)]; }

mpz_class SmallGroup::exponent() const {
  mpz_class l = 1;
  for (int a = 0; a < size(); ++a) {
    mpz_class o(static_cast<unsigned long>(order_[static_cast<size_t>(a)]));
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), o.get_mpz_t());
  }
  return l;
}

SmallGroup enumerate_group(CtxPtr ctx, const std::vector<AutElem>& gens, std::size_t cap) {
  std::vector<AutElem> elems;
  std::unordered_map<std::uint64_t, std::vector<int>> seen;
  auto find = [&](const AutElem& g) {
    auto it = seen.find(aut_hash(g));
    if (it == seen.end()) return false;
    for (int idx : it->second)
      if (elems[static_cast<size_t>(idx)] == g) return true;
    return false;
  };
  auto insert = [&](const AutElem& g) {
    seen[aut_hash(g)].push_back(static_cast<int>(elems.size()));
    elems.push_back(g);
  };
  insert(aut_identity(ctx->family, ctx->F));
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (const AutElem& g : gens) {
      AutElem nxt = aut_mul(elems[cur], g);
      if (!find(nxt)) {
        if (elems.size() >= cap) throw error("enumerate_group: budget exceeded");
        insert(nxt);
        queue.push_back(elems.size() - 1);
      }
    }
  }
  return SmallGroup(ctx, std::move(elems));
}

std::vector<AutElem> s_generators(const GroupCtx& ctx) {
  std::vector<AutElem> out;
  // small fields only; reuse the S enumeration generators via probe set plus
  // basis transvections
  const FieldPtr& F = ctx.F;
  if (ctx.family == Family::PSL2) {
    FieldElem c = F->one();
    for (int i = 0; i < ctx.k; ++i) {
      Mat up = mat_identity(F, 2);
      up.at(0, 1) = c;
      Mat low = mat_identity(F, 2);
      low.at(1, 0) = c;
      out.push_back(AutElem{Family::PSL2, canon2(up), 0});
      out.push_back(AutElem{Family::PSL2, canon2(low), 0});
      FieldElem nxt(F->k, 0);
      if (i + 1 < ctx.k) {
        nxt[i + 1] = 1;
        c = nxt;
      }
    }
  } else {
    FieldElem c = F->one();
    for (int i = 0; i < ctx.k; ++i) {
      out.push_back(AutElem{Family::Sz, sz_unipotent(ctx, c, F->zero()), 0});
      out.push_back(AutElem{Family::Sz, sz_unipotent(ctx, F->zero(), c), 0});
      FieldElem nxt(F->k, 0);
      if (i + 1 < ctx.k) {
        nxt[i + 1] = 1;
        c = nxt;
      }
    }
    out.push_back(AutElem{Family::Sz, sz_weyl(ctx), 0});
    if (ctx.k > 1) out.push_back(AutElem{Family::Sz, sz_torus(ctx, F->gen()), 0});
  }
  return out;
}

namespace {

// Evaluates the plain word map on index tuples.
int eval_word_idx(const Word& w, const SmallGroup& G, const std::vector<int>& point,
                  const std::vector<int>& slot_of) {
  int acc = 0;
  for (const Letter& l : w.letters()) {
    int g = point[static_cast<size_t>(slot_of[static_cast<size_t>(l.var)])];
    acc = G.mul(acc, l.sign > 0 ? g : G.inv(g));
  }
  return acc;
}

std::vector<int> make_slot_map(const Word& w) {
  auto vars = w.variables();
  std::vector<int> slot_of(vars.empty() ? 0 : vars.back() + 1, -1);
  for (size_t i = 0; i < vars.size(); ++i) slot_of[static_cast<size_t>(vars[i])] = static_cast<int>(i);
  return slot_of;
}

}  // namespace

FiberStats word_fibers(const Word& w, const SmallGroup& G, long long threshold) {
  int d = w.distinct_count();
  mpz_class dom = 1;
  for (int i = 0; i < d; ++i) dom *= G.size();
  if (cmp_ll(dom, threshold) > 0) throw error("word_fibers: domain above threshold");
  auto slot_of = make_slot_map(w);

  FiberStats st;
  st.domain = dom;
  std::vector<int> point(static_cast<size_t>(d), 0);
  while (true) {
    int v = eval_word_idx(w, G, point, slot_of);
    ++st.fibers[v];
    int j = 0;
    while (j < d && ++point[static_cast<size_t>(j)] == G.size()) point[static_cast<size_t>(j++)] = 0;
    if (j == d) break;
  }
  for (auto& [v, c] : st.fibers) st.max_fiber = std::max(st.max_fiber, c);
  return st;
}

CosetGamma coset_gamma(const Word& w, const SmallGroup& G, const std::vector<int>& n_elems,
                       long long threshold) {
  int d = w.distinct_count();
  auto slot_of = make_slot_map(w);

  // coset decomposition of G by N
  int n = G.size();
  std::vector<int> coset_of(static_cast<size_t>(n), -1);
  std::vector<int> reps;
  for (int g = 0; g < n; ++g) {
    if (coset_of[static_cast<size_t>(g)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : n_elems) coset_of[static_cast<size_t>(G.mul(x, g))] = id;  // left cosets Ng
  }

  mpz_class inner = 1;
  for (int i = 0; i < d; ++i) inner *= n_elems.size();
  mpz_class total = inner;
  for (int i = 0; i < d; ++i) total *= reps.size();
  if (cmp_ll(total, threshold) > 0) throw error("coset_gamma: domain above threshold");

  CosetGamma out;
  out.domain = inner;
  std::vector<int> rep_tuple(static_cast<size_t>(d), 0);
  while (true) {
    // fibers of the coset word map (n_1 g_1, ..., n_d g_d)
    std::map<int, long long> fibers;
    std::vector<int> point(static_cast<size_t>(d), 0);
    while (true) {
      int acc = 0;
      for (const Letter& l : w.letters()) {
        int slot = slot_of[static_cast<size_t>(l.var)];
        int ng = G.mul(n_elems[static_cast<size_t>(point[static_cast<size_t>(slot)])],
                       reps[static_cast<size_t>(rep_tuple[static_cast<size_t>(slot)])]);
        acc = G.mul(acc, l.sign > 0 ? ng : G.inv(ng));
      }
      ++fibers[acc];
      int j = 0;
      while (j < d &&
             ++point[static_cast<size_t>(j)] == static_cast<int>(n_elems.size()))
        point[static_cast<size_t>(j++)] = 0;
      if (j == d) break;
    }
    for (auto& [v, c] : fibers) out.gamma_abs = std::max(out.gamma_abs, c);
    int j = 0;
    while (j < d && ++rep_tuple[static_cast<size_t>(j)] == static_cast<int>(reps.size()))
      rep_tuple[static_cast<size_t>(j++)] = 0;
    if (j == d) break;
  }
  return out;
}

CosetwiseBound verify_cosetwise_bound(const Word& w, const SmallGroup& G,
                                      const std::vector<int>& n_elems) {
  // the bound only makes sense for normal subgroups
  for (int g = 0; g < G.size(); ++g) {
    for (int x : n_elems) {
      int conj = G.mul(G.mul(g, x), G.inv(g));
      if (std::find(n_elems.begin(), n_elems.end(), conj) == n_elems.end())
        throw error("verify_cosetwise_bound: subgroup is not normal");
    }
  }
  CosetwiseBound out;
  out.pi_g = word_fibers(w, G).max_fiber;
  out.gamma = coset_gamma(w, G, n_elems).gamma_abs;

  // quotient via coset table
  int n = G.size();
  std::vector<int> coset_of(static_cast<size_t>(n), -1);
  std::vector<int> reps;
  for (int g = 0; g < n; ++g) {
    if (coset_of[static_cast<size_t>(g)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : n_elems) coset_of[static_cast<size_t>(G.mul(x, g))] = id;
  }
  int q = static_cast<int>(reps.size());
  // quotient multiplication and inverse on coset ids
  std::vector<std::vector<int>> qmul(static_cast<size_t>(q), std::vector<int>(static_cast<size_t>(q)));
  std::vector<int> qinv(static_cast<size_t>(q));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b)
      qmul[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          coset_of[static_cast<size_t>(G.mul(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]))];
    qinv[static_cast<size_t>(a)] = coset_of[static_cast<size_t>(G.inv(reps[static_cast<size_t>(a)]))];
  }
  int d = w.distinct_count();
  auto slot_of = make_slot_map(w);
  std::map<int, long long> fibers;
  std::vector<int> point(static_cast<size_t>(d), 0);
  while (true) {
    int acc = coset_of[0];
    for (const Letter& l : w.letters()) {
      int g = point[static_cast<size_t>(slot_of[static_cast<size_t>(l.var)])];
      acc = qmul[static_cast<size_t>(acc)][static_cast<size_t>(l.sign > 0 ? g : qinv[static_cast<size_t>(g)])];
    }
    ++fibers[acc];
    int j = 0;
    while (j < d && ++point[static_cast<size_t>(j)] == q) point[static_cast<size_t>(j++)] = 0;
    if (j == d) break;
  }
  for (auto& [v, c] : fibers) out.pi_q = std::max(out.pi_q, c);
  out.holds = out.pi_g <= out.pi_q * out.gamma;
  return out;
}

// --- wreath pieces -----------------------------------------------------------

std::vector<int> perm_mul(const std::vector<int>& a, const std::vector<int>& b) {
  // function composition: (a b)(x) = a(b(x))
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
  return r;
}

std::vector<int> perm_inv(const std::vector<int>& a) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[static_cast<size_t>(a[i])] = static_cast<int>(i);
  return r;
}

WreathElem wreath_identity(const GroupCtx& ctx, int n) {
  WreathElem e;
  e.comps.assign(static_cast<size_t>(n), aut_identity(ctx.family, ctx.F));
  e.perm.resize(static_cast<size_t>(n));
  std::iota(e.perm.begin(), e.perm.end(), 0);
  return e;
}

WreathElem wreath_mul(const WreathElem& a, const WreathElem& b) {
  WreathElem r;
  size_t n = a.comps.size();
  auto ainv = perm_inv(a.perm);
  r.comps.resize(n);
  for (size_t i = 0; i < n; ++i)
    r.comps[i] = aut_mul(a.comps[i], b.comps[static_cast<size_t>(ainv[i])]);
  r.perm = perm_mul(a.perm, b.perm);
  return r;
}

std::vector<int> word_on_perms(const Word& w, const std::vector<std::vector<int>>& sigmas) {
  size_t n = sigmas.at(0).size();
  std::vector<int> acc(n);
  std::iota(acc.begin(), acc.end(), 0);
  auto vars = w.variables();
  std::vector<int> slot_of(vars.empty() ? 0 : vars.back() + 1, -1);
  for (size_t i = 0; i < vars.size(); ++i) slot_of[static_cast<size_t>(vars[i])] = static_cast<int>(i);
  for (const Letter& l : w.letters()) {
    const auto& s = sigmas[static_cast<size_t>(slot_of[static_cast<size_t>(l.var)])];
    acc = perm_mul(acc, l.sign > 0 ? s : perm_inv(s));
  }
  return acc;
}

EquationSystemReport equation_system_check(const Word& w, const SmallGroup& S, int n,
                                           const std::vector<std::vector<AutElem>>& alphas,
                                           const std::vector<std::vector<int>>& sigmas,
                                           const std::vector<AutElem>& beta,
                                           const std::vector<int>& psi, long long threshold) {
  const GroupCtx& ctx = S.ctx();
  int d = w.distinct_count();
  if (static_cast<int>(alphas.size()) != d || static_cast<int>(sigmas.size()) != d)
    throw error("equation_system_check: arity mismatch");
  auto vars = w.variables();
  auto slot_of = make_slot_map(w);

  EquationSystemReport rep;
  rep.psi_matches = word_on_perms(w, sigmas) == psi;
  mpz_class dom = 1;
  for (int i = 0; i < n * d; ++i) dom *= S.size();
  rep.domain = dom;
  if (cmp_ll(dom, threshold) > 0) throw error("equation_system_check: domain above threshold");

  // letters as (slot, sign)
  std::vector<std::pair<int, int>> letters;
  for (const Letter& l : w.letters())
    letters.emplace_back(slot_of[static_cast<size_t>(l.var)], l.sign);
  int l = static_cast<int>(letters.size());

  // prefix permutations chi_j and their inverses
  std::vector<std::vector<int>> chi(static_cast<size_t>(l)), chi_inv(static_cast<size_t>(l));
  {
    std::vector<int> acc(static_cast<size_t>(n));
    std::iota(acc.begin(), acc.end(), 0);
    for (int j = 0; j < l; ++j) {
      auto [slot, sign] = letters[static_cast<size_t>(j)];
      if (sign > 0) {
        chi[static_cast<size_t>(j)] = acc;
        acc = perm_mul(acc, sigmas[static_cast<size_t>(slot)]);
      } else {
        acc = perm_mul(acc, perm_inv(sigmas[static_cast<size_t>(slot)]));
        chi[static_cast<size_t>(j)] = acc;
      }
      chi_inv[static_cast<size_t>(j)] = perm_inv(chi[static_cast<size_t>(j)]);
    }
  }

  // enumerate all (s_{k,i}) in S^(d*n); variables indexed slot*n + i
  int nd = n * d;
  std::vector<int> point(static_cast<size_t>(nd), 0);
  long long fiber = 0, solutions = 0;
  bool equal = true;

  // target as a wreath element
  WreathElem target;
  target.comps = beta;
  target.perm = psi;

  while (true) {
    // direct coset word map value on S^n
    WreathElem acc = wreath_identity(ctx, n);
    for (int j = 0; j < l; ++j) {
      auto [slot, sign] = letters[static_cast<size_t>(j)];
      WreathElem factor;
      factor.comps.resize(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        factor.comps[static_cast<size_t>(i)] =
            aut_mul(AutElem{ctx.family, S.elem(point[static_cast<size_t>(slot * n + i)]).part, 0},
                    alphas[static_cast<size_t>(slot)][static_cast<size_t>(i)]);
      factor.perm = sigmas[static_cast<size_t>(slot)];
      if (sign > 0) {
        acc = wreath_mul(acc, factor);
      } else {
        // inverse of the factor
        WreathElem finv;
        finv.perm = perm_inv(factor.perm);
        finv.comps.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
          finv.comps[static_cast<size_t>(i)] =
              aut_inv(factor.comps[static_cast<size_t>(factor.perm[static_cast<size_t>(i)])]);
        acc = wreath_mul(acc, finv);
      }
    }
    bool in_fiber = acc == target;

    // coordinate equations
    bool solves = true;
    for (int i = 0; i < n && solves; ++i) {
      AutElem lhs = aut_identity(ctx.family, ctx.F);
      for (int j = 0; j < l; ++j) {
        auto [slot, sign] = letters[static_cast<size_t>(j)];
        int src = chi_inv[static_cast<size_t>(j)][static_cast<size_t>(i)];
        AutElem t = aut_mul(
            AutElem{ctx.family, S.elem(point[static_cast<size_t>(slot * n + src)]).part, 0},
            alphas[static_cast<size_t>(slot)][static_cast<size_t>(src)]);
        lhs = aut_mul(lhs, sign > 0 ? t : aut_inv(t));
      }
      solves = rep.psi_matches && aut_eq(lhs, beta[static_cast<size_t>(i)]);
    }

    fiber += in_fiber;
    solutions += solves;
    if (in_fiber != solves) equal = false;

    int j = 0;
    while (j < nd && ++point[static_cast<size_t>(j)] == S.size()) point[static_cast<size_t>(j++)] = 0;
    if (j == nd) break;
  }
  rep.fiber_size = fiber;
  rep.solution_size = solutions;
  rep.sets_equal = equal;
  (void)vars;
  return rep;
}

mpz_class subset_order_lcm(const SmallGroup& G, const std::vector<int>& subset) {
  mpz_class l = 1;
  for (int a : subset) {
    mpz_class o(static_cast<unsigned long>(G.order_of(a)));
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), o.get_mpz_t());
  }
  return l;
}

FiberFloor fiber_lower_bound_witness(const Word& w, CtxPtr ctx, const Assignment& asg,
                                     std::size_t cap, long long threshold) {
  // group generated by S and the assignment's representatives
  std::vector<AutElem> gens = s_generators(*ctx);
  for (int r : asg.reps) gens.push_back(ctx->cosets[static_cast<size_t>(r)]);
  SmallGroup G = enumerate_group(ctx, gens, cap);

  // constant value: the word evaluated on the representatives alone
  EvalPoint base = base_point(*ctx, w.distinct_count());
  AutElem value = eval_coset_map(w, *ctx, asg, base);
  int vidx = G.index_of(value);
  if (vidx < 0) throw error("fiber_lower_bound_witness: value escaped the enumerated group");

  FiberStats st = word_fibers(w, G, threshold);
  FiberFloor out;
  auto it = st.fibers.find(vidx);
  out.fiber = it == st.fibers.end() ? 0 : it->second;
  mpz_class so = ctx->group_order;
  out.s_order = so.get_si();
  out.holds = out.fiber >= out.s_order;
  return out;
}

}  // namespace wordmb
