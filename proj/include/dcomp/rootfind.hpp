#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/symbol.hpp"

namespace dcomp {

/// Axis-aligned search window [sigma_lo, sigma_hi] x [t_lo, t_hi] in Re s > 0.
struct Rectangle {
  double sigma_lo = 0.0;
  double sigma_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  /// Throws InvalidArgument unless 0 < sigma_lo < sigma_hi and t_lo < t_hi.
  void validate() const;
  bool contains_strictly(Complex s) const;
  double diameter() const;
  Complex center() const;
};

struct Root {
  Complex s;
  int multiplicity = 1;
  double residual = 0.0;  ///< |phi(s) - w|
  bool polished = true;   ///< false when Newton stalled or for a multiplicity cluster
};

struct RootSet {
  std::vector<Root> roots;
  Rectangle window;      ///< the window actually searched (after any jitter)
  int total_winding = 0; ///< winding integer on the outer contour
  int jitter_retries = 0;

  int multiplicity_sum() const;
};

/// Winding number of phi - w around the positively oriented boundary of r.
///
/// Each boundary segment [p, q] is accepted once the Taylor bound
/// |phi'(p)| h + D2 h^2 / 2 < |phi(p) - w| (D2 bounds |phi''| on r) holds,
/// which keeps the image of the segment inside a disc that misses w; the
/// principal argument increment is then exact. Segments are bisected until
/// this holds; below length `tol` a BoundaryHit is thrown.
int winding_number(const Symbol& phi, Complex w, const Rectangle& r, double tol);

/// All preimages of w under phi strictly inside `window`, with multiplicity.
///
/// The window is bisected along its longer side while the winding integer
/// exceeds one; simple roots are polished by damped Newton, and pieces with
/// winding k >= 2 narrower than `tol` are reported as one cluster of
/// multiplicity k. Throws BoundaryHit when the outer contour passes within
/// `tol` of a root. Returns immediately with winding 0 when coefficient
/// bounds place w outside phi(window).
RootSet find_preimages(const Symbol& phi, Complex w, const Rectangle& window, double tol);

/// find_preimages with the BoundaryHit recovery policy: the window edges are
/// moved by a deterministic pseudo-random jitter (|shift| <= 10 tol, seeded by
/// w and the window) and the search retried, up to `max_retries` times.
RootSet find_preimages_robust(const Symbol& phi, Complex w, const Rectangle& window,
                              double tol, int max_retries = 5);

/// Damped Newton on phi(s) = w from `start`. Returns the final iterate and
/// its residual; `converged` reports residual <= 1e-9.
struct NewtonResult {
  Complex s;
  double residual = 0.0;
  bool converged = false;
};
NewtonResult polish_root(const Symbol& phi, Complex w, Complex start, int max_iterations = 80);

}  // namespace dcomp
