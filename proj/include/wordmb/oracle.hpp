// Exhaustive verification layer over small groups: BFS enumeration, word-map
// fibers, coset-map fibers, the quotient counting bound, the coordinate
// equation system over S^n, exponent formulas, and fiber floors exhibited
// from constant cosets.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordmb/engine.hpp"

namespace wordmb {

// Element list closed under multiplication, BFS order, identity first.
class SmallGroup {
 public:
  SmallGroup(CtxPtr ctx, std::vector<AutElem> elems);

  const GroupCtx& ctx() const { return *ctx_; }
  CtxPtr ctx_ptr() const { return ctx_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const AutElem& elem(int i) const { return elems_[static_cast<size_t>(i)]; }
  int index_of(const AutElem& g) const;  // -1 when absent

  int mul(int a, int b) const;
  int inv(int a) const;
  long long order_of(int a) const;

  // Exact lcm of element orders.
  mpz_class exponent() const;

 private:
  void build_tables();
  CtxPtr ctx_;
  std::vector<AutElem> elems_;
  std::unordered_map<std::uint64_t, std::vector<int>> lookup_;
  std::vector<std::vector<int>> table_;  // built when size^2 is affordable
  std::vector<int> inv_;
  std::vector<long long> order_;
};

// BFS closure of the given generators inside the ambient machinery.
SmallGroup enumerate_group(CtxPtr ctx, const std::vector<AutElem>& gens, std::size_t cap = 100000);

// Generators of S itself, as trivial-twist elements.
std::vector<AutElem> s_generators(const GroupCtx& ctx);

struct FiberStats {
  std::map<int, long long> fibers;  // value index -> count
  long long max_fiber = 0;          // largest fiber size
  mpz_class domain;                 // |G|^d
};

// Exact fiber statistics of the plain word map on G^d by full enumeration.
FiberStats word_fibers(const Word& w, const SmallGroup& G, long long threshold = 10000000);

// Largest coset-word-map fiber over all tuples of coset representatives of
// N in G, where both are given inside the same SmallGroup.
struct CosetGamma {
  long long gamma_abs = 0;  // largest fiber size
  mpz_class domain;         // |N|^d
};
CosetGamma coset_gamma(const Word& w, const SmallGroup& G, const std::vector<int>& n_elems,
                       long long threshold = 10000000);

// The counting bound: max fiber on G is at most (max fiber on G/N) times
// (max coset fiber of N in G). Returns the three numbers and the verdict.
struct CosetwiseBound {
  long long pi_g = 0, pi_q = 0, gamma = 0;
  bool holds = false;
};
CosetwiseBound verify_cosetwise_bound(const Word& w, const SmallGroup& G,
                                      const std::vector<int>& n_elems);

// --- coordinate equation system over S^n ------------------------------------

// An automorphism of S^n: componentwise parts followed by a coordinate
// permutation; perm[i] is the image of coordinate i.
struct WreathElem {
  std::vector<AutElem> comps;
  std::vector<int> perm;
  bool operator==(const WreathElem&) const = default;
};

WreathElem wreath_mul(const WreathElem& a, const WreathElem& b);
WreathElem wreath_identity(const GroupCtx& ctx, int n);

std::vector<int> perm_mul(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> perm_inv(const std::vector<int>& a);

// Word value in the symmetric group on the permutation parts.
std::vector<int> word_on_perms(const Word& w, const std::vector<std::vector<int>>& sigmas);

struct EquationSystemReport {
  bool psi_matches = false;     // perm part of the target equals the word value
  long long fiber_size = -1;    // direct enumeration of the coset map on S^n
  long long solution_size = -1; // solutions of the n coordinate equations
  bool sets_equal = false;      // pointwise identical solution sets
  mpz_class domain;             // |S|^(n d)
};

// alphas[k][j] is the j-th component of the k-th automorphism; sigmas[k] its
// permutation part; beta the component targets with permutation part psi.
EquationSystemReport equation_system_check(const Word& w, const SmallGroup& S, int n,
                                           const std::vector<std::vector<AutElem>>& alphas,
                                           const std::vector<std::vector<int>>& sigmas,
                                           const std::vector<AutElem>& beta,
                                           const std::vector<int>& psi,
                                           long long threshold = 10000000);

// lcm of element orders over a subset of G.
mpz_class subset_order_lcm(const SmallGroup& G, const std::vector<int>& subset);

// Exhibits the fiber floor obtained from a constant coset: enumerates the
// group generated by S and the representatives, and measures the fiber of
// the word map at the constant value. Returns (fiber size, |S|).
struct FiberFloor {
  long long fiber = 0;
  long long s_order = 0;
  bool holds = false;  // fiber >= |S|
};
FiberFloor fiber_lower_bound_witness(const Word& w, CtxPtr ctx, const Assignment& asg,
                                     std::size_t cap = 100000,
                                     long long threshold = 10000000);

}  // namespace wordmb
