#include "dcomp/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dcomp/error.hpp"

namespace dcomp {

namespace {

// Leading components of an extensible rank-1 lattice generating vector
// (Cools-Kuo-Nuyens construction for product weights, base 2).
constexpr std::array<std::uint64_t, 16> kGenerator{
    1, 182667, 469891, 498753, 110745, 446247, 250185, 118627,
    245333, 283199, 408519, 391023, 246327, 126539, 399185, 461527};

double frac(double x) { return x - std::floor(x); }

}  // namespace

std::vector<Character> kronecker_characters(const std::vector<Index>& primes, std::size_t count) {
  std::vector<double> steps;
  for (Index p : primes) steps.push_back(frac(std::sqrt(static_cast<double>(p))));
  std::vector<Character> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::map<Index, double> angles;
    for (std::size_t j = 0; j < primes.size(); ++j)
      angles.emplace(primes[j], 2.0 * std::numbers::pi * frac(static_cast<double>(k) * steps[j]));
    out.push_back(Character::from_angles(angles));
  }
  return out;
}

ShiftedLattice::ShiftedLattice(std::size_t dim, std::size_t points, std::vector<double> shift)
    : dim_(dim), points_(points), shift_(std::move(shift)) {
  if (dim > kGenerator.size()) throw InvalidArgument("lattice dimension too large");
  if (points == 0) throw InvalidArgument("lattice needs at least one point");
  if (shift_.size() != dim) throw InvalidArgument("shift dimension mismatch");
  generator_.assign(kGenerator.begin(), kGenerator.begin() + static_cast<std::ptrdiff_t>(dim));
  for (auto& z : generator_) z %= points_;
}

double ShiftedLattice::coordinate(std::size_t k, std::size_t j) const {
  const std::uint64_t num = (static_cast<unsigned __int128>(k) * generator_[j]) % points_;
  return frac(static_cast<double>(num) / static_cast<double>(points_) + shift_[j]);
}

}  // namespace dcomp
