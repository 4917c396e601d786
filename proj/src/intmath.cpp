#include "wordmb/intmath.hpp"

#include <algorithm>
#include <numeric>

namespace wordmb {

std::uint64_t mix_seed(std::uint64_t seed, const std::string& label) {
  std::uint64_t h = seed ^ 0x51afd54bd5c8f2e3ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  Rng r(h);
  return r.next();
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin bases for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n, Rng& rng) {
  if (!(n & 1)) return 2;
  while (true) {
    std::uint64_t c = rng.below(n - 1) + 1;
    std::uint64_t x = rng.below(n);
    std::uint64_t y = x;
    std::uint64_t d = 1;
    auto step = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(std::uint64_t n, Rng& rng, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[n]++;
    return;
  }
  std::uint64_t d = pollard_rho(n, rng);
  factor_rec(d, rng, out);
  factor_rec(n / d, rng, out);
}

}  // namespace

std::map<std::uint64_t, int> factorize_u64(std::uint64_t n) {
  if (n == 0) throw error("factorize_u64: zero");
  std::map<std::uint64_t, int> out;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      out[p]++;
      n /= p;
    }
  }
  Rng rng(0x5eedf00du);
  factor_rec(n, rng, out);
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      out.push_back(i);
      for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
  }
  return out;
}

int valuation2(std::uint64_t n) {
  if (n == 0) throw error("valuation2: zero");
  int v = 0;
  while (!(n & 1)) {
    n >>= 1;
    ++v;
  }
  return v;
}

mpz_class pow_mpz(std::uint64_t base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

}  // namespace wordmb
