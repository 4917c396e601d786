#include "wordmb/algebra.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace wordmb {

std::string family_name(Family f) { return f == Family::PSL2 ? "PSL2" : "Sz"; }

Mat mat_identity(const FieldPtr& F, int n) {
  Mat m;
  m.F = F;
  m.n = n;
  m.a.assign(static_cast<size_t>(n) * n, F->zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = F->one();
  return m;
}

static void check_same_field(const Mat& x, const Mat& y, const char* what) {
  if (x.F.get() != y.F.get() || x.n != y.n) throw error(std::string("context mismatch in ") + what);
}

Mat mat_mul(const Mat& x, const Mat& y) {
  check_same_field(x, y, "mat_mul");
  const FieldDesc& F = *x.F;
  Mat r;
  r.F = x.F;
  r.n = x.n;
  r.a.assign(static_cast<size_t>(x.n) * x.n, F.zero());
  for (int i = 0; i < x.n; ++i)
    for (int l = 0; l < x.n; ++l) {
      if (F.is_zero(x.at(i, l))) continue;
      for (int j = 0; j < x.n; ++j) {
        if (F.is_zero(y.at(l, j))) continue;
        r.at(i, j) = F.add(r.at(i, j), F.mul(x.at(i, l), y.at(l, j)));
      }
    }
  return r;
}

FieldElem mat_det(const Mat& x) {
  const FieldDesc& F = *x.F;
  if (x.n == 2) {
    return F.sub(F.mul(x.at(0, 0), x.at(1, 1)), F.mul(x.at(0, 1), x.at(1, 0)));
  }
  // Gaussian elimination on a copy
  Mat m = x;
  FieldElem det = F.one();
  for (int col = 0; col < m.n; ++col) {
    int piv = -1;
    for (int r = col; r < m.n; ++r) {
      if (!F.is_zero(m.at(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return F.zero();
    if (piv != col) {
      for (int j = 0; j < m.n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    FieldElem ipiv = F.inv(m.at(col, col));
    for (int r = col + 1; r < m.n; ++r) {
      if (F.is_zero(m.at(r, col))) continue;
      FieldElem f = F.mul(m.at(r, col), ipiv);
      for (int j = col; j < m.n; ++j) m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(col, j)));
    }
  }
  return det;
}

Mat mat_inv(const Mat& x) {
  const FieldDesc& F = *x.F;
  Mat m = x;
  Mat r = mat_identity(x.F, x.n);
  for (int col = 0; col < m.n; ++col) {
    int piv = -1;
    for (int row = col; row < m.n; ++row) {
      if (!F.is_zero(m.at(row, col))) {
        piv = row;
        break;
      }
    }
    if (piv < 0) throw error("singular matrix");
    if (piv != col) {
      for (int j = 0; j < m.n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(r.at(piv, j), r.at(col, j));
      }
    }
    FieldElem ipiv = F.inv(m.at(col, col));
    for (int j = 0; j < m.n; ++j) {
      m.at(col, j) = F.mul(m.at(col, j), ipiv);
      r.at(col, j) = F.mul(r.at(col, j), ipiv);
    }
    for (int row = 0; row < m.n; ++row) {
      if (row == col || F.is_zero(m.at(row, col))) continue;
      FieldElem f = m.at(row, col);
      for (int j = 0; j < m.n; ++j) {
        m.at(row, j) = F.sub(m.at(row, j), F.mul(f, m.at(col, j)));
        r.at(row, j) = F.sub(r.at(row, j), F.mul(f, r.at(col, j)));
      }
    }
  }
  return r;
}

Mat mat_frobenius(const Mat& x, int K) {
  if (K == 0) return x;
  Mat r = x;
  for (auto& e : r.a) e = x.F->frobenius(e, K);
  return r;
}

std::uint64_t mat_hash(const Mat& x) {
  std::uint64_t h = 0x243f6a8885a308d3ULL ^ static_cast<std::uint64_t>(x.n);
  for (const auto& e : x.a)
    for (std::uint64_t c : e) {
      h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  return h;
}

Mat canon2(const Mat& raw) {
  if (raw.n != 2) throw error("canon2: not a 2x2 matrix");
  const FieldDesc& F = *raw.F;
  if (F.is_zero(mat_det(raw))) throw error("singular matrix");
  int lead = -1;
  for (int i = 0; i < 4; ++i) {
    if (!F.is_zero(raw.a[i])) {
      lead = i;
      break;
    }
  }
  FieldElem s = F.inv(raw.a[lead]);
  Mat r = raw;
  for (auto& e : r.a) e = F.mul(e, s);
  return r;
}

Mat pmul(const Mat& x, const Mat& y) { return canon2(mat_mul(x, y)); }

Mat pinv(const Mat& x) {
  // projective inverse = adjugate up to scalars
  const FieldDesc& F = *x.F;
  Mat r = x;
  r.at(0, 0) = x.at(1, 1);
  r.at(1, 1) = x.at(0, 0);
  r.at(0, 1) = F.neg(x.at(0, 1));
  r.at(1, 0) = F.neg(x.at(1, 0));
  return canon2(r);
}

bool in_psl2(const Mat& m) {
  if (m.F->p == 2) return true;
  return m.F->is_square(mat_det(m));
}

AutElem aut_identity(Family fam, const FieldPtr& F) {
  return AutElem{fam, mat_identity(F, fam == Family::PSL2 ? 2 : 4), 0};
}

AutElem aut_mul(const AutElem& x, const AutElem& y) {
  check_same_field(x.part, y.part, "aut_mul");
  AutElem r;
  r.fam = x.fam;
  Mat twisted = mat_frobenius(y.part, x.frob);
  r.part = x.fam == Family::PSL2 ? pmul(x.part, twisted) : mat_mul(x.part, twisted);
  r.frob = (x.frob + y.frob) % x.part.F->k;
  return r;
}

AutElem aut_inv(const AutElem& x) {
  int k = x.part.F->k;
  AutElem r;
  r.fam = x.fam;
  r.frob = (k - x.frob) % k;
  Mat inv = x.fam == Family::PSL2 ? pinv(x.part) : mat_inv(x.part);
  r.part = mat_frobenius(inv, r.frob);
  return r;
}

bool aut_eq(const AutElem& x, const AutElem& y) {
  if (x.part.F.get() != y.part.F.get()) throw error("context mismatch in aut_eq");
  return x == y;
}

AutElem aut_pow(const AutElem& x, const mpz_class& e) {
  if (e < 0) return aut_pow(aut_inv(x), -e);
  AutElem r = aut_identity(x.fam, x.part.F);
  if (e == 0) return r;
  AutElem base = x;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r = aut_mul(r, base);
    if (i + 1 < bits) base = aut_mul(base, base);
  }
  return r;
}

std::uint64_t aut_hash(const AutElem& x) {
  return mat_hash(x.part) * 0x100000001b3ULL + static_cast<std::uint64_t>(x.frob);
}

std::string GroupCtx::name() const {
  if (family == Family::PSL2) return "PSL2(" + std::to_string(p) + "^" + std::to_string(L) + ")";
  return "Sz(2^" + std::to_string(k) + ")";
}

const std::vector<Mat>& GroupCtx::s_elements() const {
  std::call_once(elems_once_, [&] {
    if (cmp_ll(group_order, 1 << 30) > 0) throw error("s_elements: group order too large");
    elems_ = enumerate_s(*this, static_cast<std::size_t>(group_order.get_ui()) + 1);
    if (cmp_ll(group_order, static_cast<long long>(elems_.size())) != 0)
      throw error("s_elements: closure size does not match the group order");
  });
  return elems_;
}

static Mat diag2(const FieldPtr& F, const FieldElem& a, const FieldElem& b) {
  Mat m = mat_identity(F, 2);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  return m;
}

std::vector<AutElem> psl2_cosets(const GroupCtx& ctx) {
  std::vector<AutElem> out;
  const FieldPtr& F = ctx.F;
  if (ctx.p == 2) {
    for (int K = 0; K < ctx.L; ++K) out.push_back(AutElem{Family::PSL2, mat_identity(F, 2), K});
    return out;
  }
  const FieldElem& nu = *F->nonsquare();
  for (int eps = 0; eps <= 1; ++eps) {
    Mat part = eps == 0 ? mat_identity(F, 2) : canon2(diag2(F, nu, F->one()));
    for (int K = 0; K < ctx.L; ++K) out.push_back(AutElem{Family::PSL2, part, K});
  }
  return out;
}

std::vector<AutElem> sz_cosets(const GroupCtx& ctx) {
  std::vector<AutElem> out;
  for (int K = 0; K < ctx.k; ++K) out.push_back(AutElem{Family::Sz, mat_identity(ctx.F, 4), K});
  return out;
}

CtxPtr make_psl2_ctx(std::uint64_t p, int L, std::uint64_t seed) {
  if (L < 1) throw error("make_psl2_ctx: L must be >= 1");
  auto ctx = std::make_shared<GroupCtx>();
  ctx->family = Family::PSL2;
  ctx->p = p;
  ctx->k = L;
  ctx->L = L;
  ctx->F = make_field(p, L, std::nullopt, seed);
  mpz_class q = ctx->F->q;
  ctx->group_order = q * (q - 1) * (q + 1);
  if (p != 2) ctx->group_order /= 2;
  ctx->cosets = psl2_cosets(*ctx);
  return ctx;
}

CtxPtr make_sz_ctx(int L, std::uint64_t seed) {
  if (L < 1) throw error("make_sz_ctx: L must be >= 1");
  auto ctx = std::make_shared<GroupCtx>();
  ctx->family = Family::Sz;
  ctx->p = 2;
  ctx->k = 2 * L - 1;
  ctx->L = L;
  ctx->theta = mpz_class(1) << L;  // 2^L, the square root of twice the field size
  ctx->F = make_field(2, ctx->k, std::nullopt, seed);
  mpz_class q = ctx->F->q;
  ctx->group_order = q * q * (q * q + 1) * (q - 1);
  ctx->cosets = sz_cosets(*ctx);
  return ctx;
}

Mat sz_unipotent(const GroupCtx& ctx, const FieldElem& a, const FieldElem& b) {
  if (ctx.family != Family::Sz) throw error("sz_unipotent: wrong family");
  const FieldDesc& F = *ctx.F;
  Mat m = mat_identity(ctx.F, 4);
  FieldElem at = F.pow(a, ctx.theta);  // a^theta
  m.at(1, 0) = a;
  m.at(2, 0) = F.add(F.mul(a, at), b);           // a^(1+theta) + b
  m.at(2, 1) = at;
  m.at(3, 0) = F.add(F.add(F.mul(F.mul(a, a), at), F.mul(a, b)), F.pow(b, ctx.theta));
  m.at(3, 1) = b;
  m.at(3, 2) = a;
  return m;
}

Mat sz_torus(const GroupCtx& ctx, const FieldElem& kappa) {
  if (ctx.family != Family::Sz) throw error("sz_torus: wrong family");
  const FieldDesc& F = *ctx.F;
  if (F.is_zero(kappa)) throw error("sz_torus: zero parameter");
  Mat m = mat_identity(ctx.F, 4);
  mpz_class tm1 = ctx.theta - 1;
  FieldElem k1 = F.pow(kappa, tm1);
  m.at(0, 0) = kappa;
  m.at(1, 1) = k1;
  m.at(2, 2) = F.inv(k1);
  m.at(3, 3) = F.inv(kappa);
  return m;
}

Mat sz_weyl(const GroupCtx& ctx) {
  if (ctx.family != Family::Sz) throw error("sz_weyl: wrong family");
  const FieldDesc& F = *ctx.F;
  Mat m;
  m.F = ctx.F;
  m.n = 4;
  m.a.assign(16, F.zero());
  for (int i = 0; i < 4; ++i) m.at(i, 3 - i) = F.one();
  return m;
}

static Mat transvection_up(const FieldPtr& F, const FieldElem& c) {
  Mat m = mat_identity(F, 2);
  m.at(0, 1) = c;
  return m;
}

static Mat transvection_low(const FieldPtr& F, const FieldElem& c) {
  Mat m = mat_identity(F, 2);
  m.at(1, 0) = c;
  return m;
}

static Mat weyl2(const FieldPtr& F) {
  Mat m;
  m.F = F;
  m.n = 2;
  m.a.assign(4, F->zero());
  m.at(0, 1) = F->one();
  m.at(1, 0) = F->neg(F->one());
  return m;
}

static FieldElem random_field_elem(const FieldDesc& F, Rng& rng) {
  FieldElem a(F.k);
  for (int i = 0; i < F.k; ++i) a[i] = rng.below(F.p);
  return a;
}

Mat random_element(const GroupCtx& ctx, Rng& rng) {
  const FieldPtr& F = ctx.F;
  if (ctx.family == Family::PSL2) {
    // product of transvections, determinant 1, hence inside PSL2
    Mat m = mat_mul(transvection_low(F, random_field_elem(*F, rng)),
                    transvection_up(F, random_field_elem(*F, rng)));
    if (rng.coin()) m = mat_mul(m, weyl2(F));
    m = mat_mul(m, transvection_low(F, random_field_elem(*F, rng)));
    return canon2(m);
  }
  FieldElem a = random_field_elem(*F, rng);
  FieldElem b = random_field_elem(*F, rng);
  Mat m = sz_unipotent(ctx, a, b);
  FieldElem kappa = random_field_elem(*F, rng);
  if (!F->is_zero(kappa)) m = mat_mul(m, sz_torus(ctx, kappa));
  if (rng.coin()) {
    m = mat_mul(m, sz_weyl(ctx));
    m = mat_mul(m, sz_unipotent(ctx, random_field_elem(*F, rng), random_field_elem(*F, rng)));
  }
  return m;
}

std::vector<Mat> probe_elements(const GroupCtx& ctx) {
  const FieldPtr& F = ctx.F;
  std::vector<Mat> out;
  if (ctx.family == Family::PSL2) {
    out.push_back(canon2(transvection_up(F, F->one())));
    out.push_back(canon2(transvection_low(F, F->one())));
    out.push_back(canon2(weyl2(F)));
    if (ctx.p != 2) {
      const FieldElem& nu = *F->nonsquare();
      FieldElem nu2 = F->mul(nu, nu);
      out.push_back(canon2(diag2(F, nu2, F->one())));
      out.push_back(canon2(diag2(F, F->inv(nu2), F->one())));
      out.push_back(canon2(diag2(F, F->mul(nu2, nu2), F->one())));
      out.push_back(canon2(transvection_up(F, nu)));
    } else if (ctx.k > 1) {
      FieldElem g = F->gen();
      out.push_back(canon2(diag2(F, g, F->one())));
      out.push_back(canon2(diag2(F, F->inv(g), F->one())));
      out.push_back(canon2(transvection_up(F, g)));
    }
  } else {
    out.push_back(sz_unipotent(ctx, F->one(), F->zero()));
    out.push_back(sz_unipotent(ctx, F->zero(), F->one()));
    out.push_back(sz_weyl(ctx));
    if (ctx.k > 1) {
      FieldElem g = F->gen();
      out.push_back(sz_torus(ctx, g));
      out.push_back(sz_torus(ctx, F->add(g, F->one())));
      out.push_back(sz_unipotent(ctx, g, F->zero()));
    }
  }
  return out;
}

std::optional<long long> element_order(const AutElem& g, long long cap) {
  if (cap < 1) throw error("element_order: cap must be >= 1");
  AutElem id = aut_identity(g.fam, g.part.F);
  AutElem acc = g;
  for (long long n = 1; n <= cap; ++n) {
    if (acc == id) return n;
    acc = aut_mul(acc, g);
  }
  return std::nullopt;
}

std::optional<long long> element_order(const GroupCtx& ctx, const Mat& g, long long cap) {
  return element_order(AutElem{ctx.family, g, 0}, cap);
}

std::vector<Mat> enumerate_s(const GroupCtx& ctx, std::size_t cap) {
  const FieldPtr& F = ctx.F;
  std::vector<Mat> gens;
  if (ctx.family == Family::PSL2) {
    FieldElem c = F->one();
    for (int i = 0; i < ctx.k; ++i) {
      gens.push_back(canon2(transvection_up(F, c)));
      gens.push_back(canon2(transvection_low(F, c)));
      // next basis element x^(i+1)
      FieldElem nxt(F->k, 0);
      if (i + 1 < ctx.k) nxt[i + 1] = 1, c = nxt;
    }
  } else {
    FieldElem c(F->k, 0);
    c[0] = 1;
    for (int i = 0; i < ctx.k; ++i) {
      gens.push_back(sz_unipotent(ctx, c, F->zero()));
      gens.push_back(sz_unipotent(ctx, F->zero(), c));
      FieldElem nxt(F->k, 0);
      if (i + 1 < ctx.k) nxt[i + 1] = 1, c = nxt;
    }
    gens.push_back(sz_weyl(ctx));
    if (ctx.k > 1) gens.push_back(sz_torus(ctx, F->gen()));
  }

  std::vector<Mat> elems;
  std::unordered_map<std::uint64_t, std::vector<size_t>> seen;
  auto lookup = [&](const Mat& m) -> bool {
    auto it = seen.find(mat_hash(m));
    if (it == seen.end()) return false;
    for (size_t idx : it->second)
      if (elems[idx] == m) return true;
    return false;
  };
  auto insert = [&](const Mat& m) {
    seen[mat_hash(m)].push_back(elems.size());
    elems.push_back(m);
  };

  insert(mat_identity(F, ctx.family == Family::PSL2 ? 2 : 4));
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (const Mat& g : gens) {
      Mat nxt = ctx.family == Family::PSL2 ? pmul(elems[cur], g) : mat_mul(elems[cur], g);
      if (!lookup(nxt)) {
        if (elems.size() >= cap) throw error("enumerate_s: budget exceeded");
        insert(nxt);
        queue.push_back(elems.size() - 1);
      }
    }
  }
  return elems;
}

}  // namespace wordmb
