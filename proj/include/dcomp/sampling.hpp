#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/dirichlet.hpp"

namespace dcomp {

/// Kronecker sequence on the torus: point k has coordinates
/// frac(k * frac(sqrt(p_j))). The first point is the trivial character and
/// the first m points of a longer run are exactly a shorter run, so maxima
/// over samples only grow with the count.
std::vector<Character> kronecker_characters(const std::vector<Index>& primes, std::size_t count);

/// Randomly shifted rank-1 lattice in [0,1)^dim: x_k = frac(k z / n + shift).
class ShiftedLattice {
 public:
  /// Throws InvalidArgument for dim > 16 or points == 0.
  ShiftedLattice(std::size_t dim, std::size_t points, std::vector<double> shift);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_; }
  /// Coordinate j of point k.
  double coordinate(std::size_t k, std::size_t j) const;

 private:
  std::size_t dim_;
  std::size_t points_;
  std::vector<std::uint64_t> generator_;
  std::vector<double> shift_;
};

}  // namespace dcomp
