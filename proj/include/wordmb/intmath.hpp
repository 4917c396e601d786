// Integer utilities: deterministic RNG, 64-bit primality/factorization,
// and small helpers shared by the field and decision layers.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wordmb {

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Deterministic splitmix64 stream. Used everywhere a seeded search is
// specified; behaves identically on every platform, unlike <random>
// distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

// Stable mixing of stream labels into derived seeds, so parallel tasks get
// reproducible substreams independent of scheduling.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& label);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

// Full factorization of n (> 0) as prime -> exponent, via trial division
// plus Pollard rho. Intended for 64-bit inputs only.
std::map<std::uint64_t, int> factorize_u64(std::uint64_t n);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

int valuation2(std::uint64_t n);  // largest v with 2^v | n, n > 0

mpz_class pow_mpz(std::uint64_t base, unsigned long exp);

inline bool is_power_of_two(std::uint64_t n) { return n && !(n & (n - 1)); }

// three-way comparison against a 64-bit signed value (gmpxx has no long
// long overloads)
inline int cmp_ll(const mpz_class& a, long long b) {
  return mpz_cmp_si(a.get_mpz_t(), static_cast<long>(b));
}

}  // namespace wordmb
