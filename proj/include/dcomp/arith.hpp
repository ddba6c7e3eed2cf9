#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dcomp {

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
using Factorization = std::vector<std::pair<std::uint64_t, int>>;

/// Smallest-prime-factor table for [0, limit].
class Sieve {
 public:
  explicit Sieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t smallest_factor(std::uint64_t n) const;
  Factorization factorize(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// Shared read-only sieve covering at least `n`; built once and grown by
/// doubling under a lock. Returned pointer stays valid for the process.
const Sieve& sieve_covering(std::uint64_t n);

/// Factorization for any 64-bit n >= 1. Uses the shared sieve for small n
/// and Miller-Rabin plus Pollard rho beyond it.
Factorization factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// a*b, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);

/// a^k, or nullopt on overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t a, unsigned k);

/// First `count` primes in ascending order.
std::vector<std::uint64_t> first_primes(std::size_t count);

}  // namespace dcomp
