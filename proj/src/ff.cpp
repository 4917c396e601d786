#include "wordmb/ff.hpp"

#include <algorithm>
#include <cassert>

namespace wordmb {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Poly ptrim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int pdeg(const Poly& f) { return static_cast<int>(f.size()) - 1; }  // -1 for zero

Poly pmod(Poly a, const Poly& f, u64 p) {
  // f monic
  a = ptrim(std::move(a));
  int df = pdeg(f);
  while (pdeg(a) >= df) {
    u64 c = a.back();
    int shift = pdeg(a) - df;
    if (c) {
      for (int i = 0; i <= df; ++i) {
        u64 t = mulmod_u64(c, f[i], p);
        u64& dst = a[i + shift];
        dst = (dst + p - t) % p;
      }
    }
    a.pop_back();
    a = ptrim(std::move(a));
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
  }
  Poly c(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<u64>(acc[i] % p);
  return pmod(std::move(c), f, p);
}

Poly ppowmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly r = {1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly psub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  return ptrim(std::move(a));
}

Poly pgcd(Poly a, Poly b, u64 p) {
  a = ptrim(std::move(a));
  b = ptrim(std::move(b));
  while (!b.empty()) {
    // make b monic for pmod
    u64 lead = b.back();
    if (lead != 1) {
      u64 il = powmod_u64(lead, p - 2, p);
      for (auto& c : b) c = mulmod_u64(c, il, p);
    }
    Poly r = pmod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Extended gcd restricted to what inversion needs: returns s with s*a = gcd
// modulo f (f monic).
Poly pinvmod(const Poly& a, const Poly& f, u64 p) {
  Poly r0 = f, r1 = ptrim(a);
  Poly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1 (r1 not necessarily monic)
    u64 lead = r1.back();
    u64 il = powmod_u64(lead, p - 2, p);
    Poly q;
    Poly rem = r0;
    int d1 = pdeg(r1);
    while (pdeg(rem) >= d1) {
      int shift = pdeg(rem) - d1;
      u64 c = mulmod_u64(rem.back(), il, p);
      if (q.size() < static_cast<size_t>(shift + 1)) q.resize(shift + 1, 0);
      q[shift] = (q[shift] + c) % p;
      for (int i = 0; i <= d1; ++i) {
        u64 t = mulmod_u64(c, r1[i], p);
        rem[i + shift] = (rem[i + shift] + p - t) % p;
      }
      rem = ptrim(std::move(rem));
    }
    // s2 = s0 - q*s1
    Poly qs1;
    if (!q.empty() && !s1.empty()) {
      std::vector<u128> acc(q.size() + s1.size() - 1, 0);
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < s1.size(); ++j) acc[i + j] += static_cast<u128>(q[i]) * s1[j];
      qs1.resize(acc.size());
      for (size_t i = 0; i < acc.size(); ++i) qs1[i] = static_cast<u64>(acc[i] % p);
    }
    Poly s2 = psub(std::move(s0), qs1, p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  if (pdeg(r0) != 0) throw error("field inverse: element not invertible");
  u64 il = powmod_u64(r0[0], p - 2, p);
  for (auto& c : s0) c = mulmod_u64(c, il, p);
  return pmod(std::move(s0), f, p);
}

Poly xpoly() { return Poly{0, 1}; }

}  // namespace

FieldElem FieldDesc::one() const {
  FieldElem e(k, 0);
  e[0] = 1 % p;
  return e;
}

FieldElem FieldDesc::from_int(std::uint64_t v) const {
  FieldElem e(k, 0);
  e[0] = v % p;
  return e;
}

FieldElem FieldDesc::gen() const {
  FieldElem e(k, 0);
  if (k > 1) e[1] = 1;
  return e;  // zero in the degenerate k = 1 case, where x is the modulus
}

bool FieldDesc::is_zero(const FieldElem& a) const {
  for (u64 c : a)
    if (c) return false;
  return true;
}

FieldElem FieldDesc::add(const FieldElem& a, const FieldElem& b) const {
  if (a.size() != b.size() || static_cast<int>(a.size()) != k) throw error("field mismatch in add");
  FieldElem r(k);
  for (int i = 0; i < k; ++i) {
    u64 s = a[i] + b[i];
    r[i] = s >= p ? s - p : s;
  }
  return r;
}

FieldElem FieldDesc::sub(const FieldElem& a, const FieldElem& b) const {
  if (a.size() != b.size() || static_cast<int>(a.size()) != k) throw error("field mismatch in sub");
  FieldElem r(k);
  for (int i = 0; i < k; ++i) r[i] = (a[i] + p - b[i]) % p;
  return r;
}

FieldElem FieldDesc::neg(const FieldElem& a) const {
  FieldElem r(k);
  for (int i = 0; i < k; ++i) r[i] = a[i] ? p - a[i] : 0;
  return r;
}

FieldElem FieldDesc::mul(const FieldElem& a, const FieldElem& b) const {
  if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k)
    throw error("field mismatch in mul");
  if (k == 1) return FieldElem{mulmod_u64(a[0], b[0], p)};
  std::vector<u128> acc(2 * k - 1, 0);
  for (int i = 0; i < k; ++i) {
    if (!a[i]) continue;
    u128 ai = a[i];
    for (int j = 0; j < k; ++j) acc[i + j] += ai * b[j];
  }
  std::vector<u128> low(acc.begin(), acc.begin() + k);
  for (int i = 0; i < k - 1; ++i) {
    u64 c = static_cast<u64>(acc[k + i] % p);
    if (!c) continue;
    const Poly& row = reduction_[i];
    u128 cc = c;
    for (int j = 0; j < k; ++j) low[j] += cc * row[j];
  }
  FieldElem r(k);
  for (int j = 0; j < k; ++j) r[j] = static_cast<u64>(low[j] % p);
  return r;
}

FieldElem FieldDesc::inv(const FieldElem& a) const {
  if (is_zero(a)) throw error("division by zero in field inverse");
  Poly s = pinvmod(Poly(a.begin(), a.end()), modulus, p);
  s.resize(k, 0);
  return FieldElem(s.begin(), s.end());
}

FieldElem FieldDesc::pow(const FieldElem& a, const mpz_class& n) const {
  if (n < 0) throw error("pow: negative exponent");
  FieldElem r = one();
  if (n == 0) return r;
  FieldElem base = a;
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) r = mul(r, base);
    if (i + 1 < bits) base = mul(base, base);
  }
  return r;
}

FieldElem FieldDesc::pow_signed(const FieldElem& a, const mpz_class& n) const {
  if (n >= 0) return pow(a, n);
  mpz_class m = -n;
  return pow(inv(a), m);
}

const std::vector<std::uint64_t>& FieldDesc::frob_matrix(int K) const {
  std::call_once(frob_once_[static_cast<size_t>(K)], [&] {
    // column vector for x^(p^K): apply the base Frobenius K times to x
    FieldElem v = gen();
    for (int i = 0; i < K; ++i) {
      FieldElem w(k, 0);
      for (int c = 0; c < k; ++c) {
        if (!v[c]) continue;
        u128 vc = v[c];
        for (int j = 0; j < k; ++j) {
          w[j] = static_cast<u64>((w[j] + vc * frob_base_[c * k + j]) % p);
        }
      }
      v = std::move(w);
    }
    // columns: powers of v
    auto mat = std::make_unique<std::vector<u64>>(static_cast<size_t>(k) * k, 0);
    FieldElem col = one();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) (*mat)[static_cast<size_t>(i) * k + j] = col[j];
      if (i + 1 < k) col = mul(col, v);
    }
    frob_cache_[static_cast<size_t>(K)] = std::move(mat);
  });
  return *frob_cache_[static_cast<size_t>(K)];
}

FieldElem FieldDesc::frobenius(const FieldElem& a, int K) const {
  if (K < 0 || K >= k) throw error("frobenius: exponent out of range");
  if (K == 0 || k == 1) return a;
  const auto& mat = frob_matrix(K);
  std::vector<u128> acc(k, 0);
  for (int i = 0; i < k; ++i) {
    if (!a[i]) continue;
    u128 ai = a[i];
    const u64* col = &mat[static_cast<size_t>(i) * k];
    for (int j = 0; j < k; ++j) acc[j] += ai * col[j];
  }
  FieldElem r(k);
  for (int j = 0; j < k; ++j) r[j] = static_cast<u64>(acc[j] % p);
  return r;
}

bool FieldDesc::is_square(const FieldElem& a) const {
  if (p == 2) throw error("is_square: characteristic 2");
  if (is_zero(a)) throw error("is_square: zero");
  mpz_class h = q_minus_1 / 2;
  return pow(a, h) == one();
}

void FieldDesc::init_tables() {
  q = pow_mpz(p, static_cast<unsigned long>(k));
  q_minus_1 = q - 1;
  frob_cache_.resize(static_cast<size_t>(k));
  frob_once_ = std::make_unique<std::once_flag[]>(static_cast<size_t>(k));
  if (k == 1) return;
  // x^k mod modulus = -(low part)
  reduction_.resize(k - 1);
  Poly row(k);
  for (int j = 0; j < k; ++j) row[j] = modulus[j] ? p - modulus[j] : 0;
  reduction_[0] = row;
  for (int i = 1; i < k - 1; ++i) {
    Poly nxt(k, 0);
    u64 top = row[k - 1];
    for (int j = k - 1; j >= 1; --j) nxt[j] = row[j - 1];
    nxt[0] = 0;
    if (top) {
      for (int j = 0; j < k; ++j) nxt[j] = (nxt[j] + mulmod_u64(top, reduction_[0][j], p)) % p;
    }
    reduction_[i] = nxt;
    row = std::move(nxt);
  }
  // base Frobenius matrix: column i = x^(i*p) mod modulus
  Poly xp = ppowmod(xpoly(), p, modulus, p);
  xp.resize(k, 0);
  FieldElem xpe(xp.begin(), xp.end());
  frob_base_.assign(static_cast<size_t>(k) * k, 0);
  FieldElem col = one();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) frob_base_[static_cast<size_t>(i) * k + j] = col[j];
    if (i + 1 < k) col = mul(col, xpe);
  }
}

FieldPtr make_field(std::uint64_t p, int k, const std::optional<Poly>& modulus, std::uint64_t seed) {
  if (!is_prime_u64(p)) throw error("make_field: p is not prime");
  if (p > (1ULL << 31)) throw error("make_field: characteristic too large");
  if (k < 1) throw error("make_field: degree must be >= 1");
  auto F = std::make_shared<FieldDesc>();
  F->p = p;
  F->k = k;
  F->seed = seed;
  if (modulus) {
    Poly m = *modulus;
    for (auto& c : m) c %= p;
    m = ptrim(std::move(m));
    if (pdeg(m) != k) throw error("make_field: modulus has wrong degree");
    if (m.back() != 1) throw error("make_field: modulus must be monic");
    if (!is_irreducible(m, p)) throw error("make_field: modulus is reducible");
    F->modulus = m;
  } else if (k == 1) {
    F->modulus = xpoly();
  } else {
    F->modulus = find_irreducible(p, k, seed);
  }
  F->init_tables();
  if (p != 2) F->nonsquare_ = find_nonsquare(*F, mix_seed(seed, "nonsquare"));
  return F;
}

bool is_irreducible(const Poly& f_in, std::uint64_t p) {
  Poly f = ptrim(f_in);
  for (auto& c : f) c %= p;
  f = ptrim(std::move(f));
  int k = pdeg(f);
  if (k <= 0) return false;
  if (f.back() != 1) {
    u64 il = powmod_u64(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod_u64(c, il, p);
  }
  if (k == 1) return true;
  if (f[0] == 0) return false;  // divisible by x

  Poly xp = ppowmod(xpoly(), p, f, p);
  if (pdeg(pgcd(psub(xp, xpoly(), p), f, p)) != 0) return false;  // linear factor

  // Frobenius matrix on Z_p[x]/(f): column i = x^(i*p)
  std::vector<u64> mat(static_cast<size_t>(k) * k, 0);
  {
    Poly col = {1};
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= pdeg(col); ++j) mat[static_cast<size_t>(i) * k + j] = col[j];
      if (i + 1 < k) col = pmulmod(col, xp, f, p);
    }
  }
  auto apply = [&](const Poly& v) {
    std::vector<u128> acc(k, 0);
    for (int i = 0; i <= pdeg(v); ++i) {
      if (!v[i]) continue;
      u128 vi = v[i];
      const u64* col = &mat[static_cast<size_t>(i) * k];
      for (int j = 0; j < k; ++j) acc[j] += vi * col[j];
    }
    Poly r(k);
    for (int j = 0; j < k; ++j) r[j] = static_cast<u64>(acc[j] % p);
    return ptrim(std::move(r));
  };

  auto kf = factorize_u64(static_cast<u64>(k));
  std::vector<int> checkpoints;
  for (auto& [r, e] : kf) checkpoints.push_back(k / static_cast<int>(r));

  Poly v = xp;  // x^(p^1)
  for (int i = 1; i < k; ++i) {
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      if (pdeg(pgcd(psub(v, xpoly(), p), f, p)) != 0) return false;
    }
    v = apply(v);
  }
  return ptrim(psub(v, xpoly(), p)).empty();  // x^(p^k) == x
}

bool is_primitive(const Poly& f_in, std::uint64_t p) {
  Poly f = ptrim(f_in);
  int k = pdeg(f);
  if (k <= 0) return false;
  mpz_class q = pow_mpz(p, static_cast<unsigned long>(k));
  mpz_class qm1 = q - 1;
  if (!qm1.fits_ulong_p()) throw error("unsupported size: p^deg - 1 exceeds the factorable bound");
  if (!is_irreducible(f, p)) return false;
  if (f.back() != 1) {
    u64 il = powmod_u64(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod_u64(c, il, p);
  }
  u64 n = qm1.get_ui();
  if (n == 1) return f[0] != 0;  // GF(2): trivial unit group, any unit generates it
  auto fac = factorize_u64(n);
  for (auto& [r, e] : fac) {
    Poly t = ppowmod(xpoly(), n / r, f, p);
    if (pdeg(t) == 0 && t[0] == 1) return false;
  }
  Poly t = ppowmod(xpoly(), n, f, p);
  return pdeg(t) == 0 && t[0] == 1;
}

Poly find_irreducible(std::uint64_t p, int k, std::uint64_t seed) {
  if (k == 1) return xpoly();
  Rng rng(mix_seed(seed, "irreducible"));
  while (true) {
    Poly f(k + 1, 0);
    f[k] = 1;
    f[0] = 1 + rng.below(p - 1);  // nonzero constant term
    for (int i = 1; i < k; ++i) f[i] = rng.below(p);
    if (is_irreducible(f, p)) return f;
  }
}

FieldElem find_nonsquare(const FieldDesc& F, std::uint64_t seed) {
  if (F.p == 2) throw error("no non-square exists in characteristic 2");
  Rng rng(seed);
  while (true) {
    FieldElem a(F.k);
    for (int i = 0; i < F.k; ++i) a[i] = rng.below(F.p);
    if (F.is_zero(a)) continue;
    if (!F.is_square(a)) return a;
  }
}

}  // namespace wordmb
