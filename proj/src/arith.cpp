#include "dcomp/arith.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>

#include "dcomp/error.hpp"

namespace dcomp {

namespace {

constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 24;

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Pollard rho (Brent variant); n must be composite and odd.
std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (n <= kSieveCap) {
    for (auto [p, e] : sieve_covering(n).factorize(n))
      for (int i = 0; i < e; ++i) out.push_back(p);
    return;
  }
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) {
      out.push_back(p);
      factor_into(n / p, out);
      return;
    }
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Sieve::Sieve(std::uint64_t limit) : limit_(std::max<std::uint64_t>(limit, 2)) {
  if (limit_ > kSieveCap) throw InvalidArgument("sieve limit too large");
  spf_.assign(limit_ + 1, 0);
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit_; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

std::uint64_t Sieve::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > limit_) throw InvalidArgument("index outside sieve range");
  return spf_[n];
}

Factorization Sieve::factorize(std::uint64_t n) const {
  Factorization out;
  while (n > 1) {
    const std::uint64_t p = smallest_factor(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

const Sieve& sieve_covering(std::uint64_t n) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<Sieve>> built;  // older tables stay alive
  std::lock_guard lock(mu);
  if (built.empty() || built.back()->limit() < n) {
    std::uint64_t limit = built.empty() ? 1024 : built.back()->limit();
    while (limit < n) limit *= 2;
    built.push_back(std::make_unique<Sieve>(std::min(limit, kSieveCap)));
  }
  return *built.back();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cannot factorize 0");
  std::vector<std::uint64_t> primes;
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t a, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    auto next = checked_mul(r, a);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace dcomp
