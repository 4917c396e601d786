// Matrix groups behind the decision engine: canonical projective 2x2
// representatives for PGL2/PSL2, Suzuki's 4-dimensional matrices, the
// automorphism groups as semidirect products with the Galois group, and
// the coset representative systems.
#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wordmb/ff.hpp"

namespace wordmb {

enum class Family { PSL2, Sz };

std::string family_name(Family f);

// Square matrix over a field, n = 2 or 4, row-major entries.
struct Mat {
  FieldPtr F;
  int n = 0;
  std::vector<FieldElem> a;

  const FieldElem& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  FieldElem& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
};

Mat mat_identity(const FieldPtr& F, int n);
Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_inv(const Mat& x);  // Gauss-Jordan; throws on singular
FieldElem mat_det(const Mat& x);
Mat mat_frobenius(const Mat& x, int K);  // entrywise a -> a^(p^K)
std::uint64_t mat_hash(const Mat& x);

// Canonical projective representative: scale so the first nonzero entry in
// row-major order is 1. Projective equality is then plain equality.
Mat canon2(const Mat& raw);
Mat pmul(const Mat& x, const Mat& y);
Mat pinv(const Mat& x);  // adjugate, re-canonicalized

bool in_psl2(const Mat& m);  // char 2: always true; odd: square determinant class

// Group-part-with-Galois-twist element (M, K), representing M * phi^K where
// phi is the Frobenius x -> x^p acting entrywise. Multiplication:
//   (M, K) * (N, J) = (M * phi^K(N), (K + J) mod k).
struct AutElem {
  Family fam;
  Mat part;
  int frob = 0;

  bool operator==(const AutElem& o) const { return frob == o.frob && part == o.part; }
};

AutElem aut_identity(Family fam, const FieldPtr& F);
AutElem aut_mul(const AutElem& x, const AutElem& y);
AutElem aut_inv(const AutElem& x);
bool aut_eq(const AutElem& x, const AutElem& y);
AutElem aut_pow(const AutElem& x, const mpz_class& e);
std::uint64_t aut_hash(const AutElem& x);

struct GroupCtx;
using CtxPtr = std::shared_ptr<const GroupCtx>;

struct GroupCtx {
  Family family;
  FieldPtr F;
  std::uint64_t p;
  int k;  // degree of F over the prime field (PSL2: k = L; Sz: k = 2L-1)
  int L;
  mpz_class theta;        // Sz only: 2^L
  mpz_class group_order;  // |S|
  std::vector<AutElem> cosets;

  std::string name() const;

  // Cached BFS element list of S; only call when the order is enumerable.
  const std::vector<Mat>& s_elements() const;

 private:
  mutable std::vector<Mat> elems_;
  mutable std::once_flag elems_once_;
};

// p^L >= 4 gives the simple groups; PSL2(3) and PSL2(2) are representable
// as well since some reductions evaluate word maps on them directly.
CtxPtr make_psl2_ctx(std::uint64_t p, int L, std::uint64_t seed);
CtxPtr make_sz_ctx(int L, std::uint64_t seed);

std::vector<AutElem> psl2_cosets(const GroupCtx& ctx);
std::vector<AutElem> sz_cosets(const GroupCtx& ctx);

// Suzuki generators: the lower-triangular two-parameter unipotent family,
// the diagonal torus, and the antidiagonal Weyl element. The family
// satisfies U(a,b) U(c,d) = U(a+c, b+d+a*c^theta).
Mat sz_unipotent(const GroupCtx& ctx, const FieldElem& a, const FieldElem& b);
Mat sz_torus(const GroupCtx& ctx, const FieldElem& kappa);  // kappa != 0
Mat sz_weyl(const GroupCtx& ctx);

// Variety-oriented sampling: PSL2 by products of transvections (optionally a
// Weyl factor), Sz by unipotent * torus (* Weyl * unipotent). Every sample
// lies in S by construction.
Mat random_element(const GroupCtx& ctx, Rng& rng);

// Deterministic probe elements of S used before random sampling: diagonal
// non-square-power / generator-power elements, transvections, torus values.
std::vector<Mat> probe_elements(const GroupCtx& ctx);

// Least n >= 1 with g^n = 1, or nullopt if n > cap.
std::optional<long long> element_order(const AutElem& g, long long cap);
std::optional<long long> element_order(const GroupCtx& ctx, const Mat& g, long long cap);

// BFS closure of the standard generators of S, capped (throws past cap).
// Deterministic discovery order.
std::vector<Mat> enumerate_s(const GroupCtx& ctx, std::size_t cap = 100000);

}  // namespace wordmb
