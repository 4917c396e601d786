// Arithmetic in GF(p^k), elements as coefficient vectors over Z_p modulo a
// monic irreducible polynomial. Supports extension degrees in the hundreds
// and arbitrary-precision exponents.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "wordmb/intmath.hpp"

namespace wordmb {

// Coefficients low-to-high, always length k, entries reduced mod p.
using FieldElem = std::vector<std::uint64_t>;

// Dense polynomial over Z_p, low-to-high, no fixed length (used for moduli
// and the irreducibility tests).
using Poly = std::vector<std::uint64_t>;

class FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

class FieldDesc : public std::enable_shared_from_this<FieldDesc> {
 public:
  std::uint64_t p;      // prime characteristic
  int k;                // extension degree, >= 1
  Poly modulus;         // monic irreducible, degree k
  std::uint64_t seed;   // seed of the searches that built this field
  mpz_class q;          // p^k
  mpz_class q_minus_1;

  FieldElem zero() const { return FieldElem(k, 0); }
  FieldElem one() const;
  FieldElem from_int(std::uint64_t v) const;   // image of an integer in the prime field
  FieldElem gen() const;                       // residue class of x (zero when k = 1... see below)

  bool is_zero(const FieldElem& a) const;
  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;     // throws on zero
  FieldElem pow(const FieldElem& a, const mpz_class& n) const;  // n >= 0
  FieldElem pow_signed(const FieldElem& a, const mpz_class& n) const;

  // a |-> a^(p^K), 0 <= K < k, via a cached linear map per K.
  FieldElem frobenius(const FieldElem& a, int K) const;

  // Euler criterion; odd p, a != 0.
  bool is_square(const FieldElem& a) const;

  // The distinguished non-square, present for odd p.
  const std::optional<FieldElem>& nonsquare() const { return nonsquare_; }

 private:
  friend FieldPtr make_field(std::uint64_t p, int k, const std::optional<Poly>& modulus,
                             std::uint64_t seed);

  void init_tables();
  const std::vector<std::uint64_t>& frob_matrix(int K) const;

  // reduction_[i] = x^(k+i) mod modulus, i in [0, k-1)
  std::vector<Poly> reduction_;
  // base Frobenius matrix (x^(ip) mod modulus as columns), row-major k*k
  std::vector<std::uint64_t> frob_base_;
  // per-exponent matrices, built on first use (contention-free afterwards)
  mutable std::vector<std::unique_ptr<std::vector<std::uint64_t>>> frob_cache_;
  mutable std::unique_ptr<std::once_flag[]> frob_once_;
  std::optional<FieldElem> nonsquare_;
};

// Builds a field description. If no modulus is supplied, runs the seeded
// random search for a monic irreducible polynomial of degree k. A supplied
// modulus is validated (monic, degree k, irreducible). For odd p a
// non-square is located by seeded sampling and cached.
FieldPtr make_field(std::uint64_t p, int k, const std::optional<Poly>& modulus = std::nullopt,
                    std::uint64_t seed = 1);

bool is_irreducible(const Poly& f, std::uint64_t p);

// Requires p^deg(f) - 1 < 2^64 so the order of the residue class of x can be
// certified from a full factorization; throws error("unsupported size: ...")
// beyond that bound.
bool is_primitive(const Poly& f, std::uint64_t p);

Poly find_irreducible(std::uint64_t p, int k, std::uint64_t seed);

FieldElem find_nonsquare(const FieldDesc& F, std::uint64_t seed);

}  // namespace wordmb
