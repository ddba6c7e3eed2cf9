#pragma once

#include <string>
#include <vector>

#include "dcomp/rootfind.hpp"

namespace dcomp {

enum class CountingKind { Full, Restricted, Weighted, Mean };
const char* to_string(CountingKind k);

/// A counting-function value with the window that produced it.
struct CountingValue {
  double value = 0.0;
  CountingKind kind = CountingKind::Full;
  double alpha = -1.0;          ///< weight exponent is 2 + alpha (Weighted, Mean)
  double t_trunc = 0.0;         ///< Full: half-height of the window
  double sigma0 = 0.0;          ///< Mean
  double height = 0.0;          ///< Mean: T
  /// Full: value(T) - value(T/2), a convergence indicator for the truncation.
  double tail_increment = 0.0;
  std::size_t root_count = 0;   ///< with multiplicity
  int jitter_retries = 0;
  bool all_polished = true;
  Rectangle window;
  std::string truncation_note;
};

struct CountingParams {
  double tol = 1e-7;     ///< lower sigma cutoff and root-search tolerance
  int max_retries = 5;   ///< BoundaryHit jitter retries
};

/// Largest Re s any preimage of w can have. c0 >= 1: Re(w)/c0 + tol, since
/// Re psi >= 0. c0 = 0: smallest sigma with sum_{n>=2} |a_n| n^{-sigma} <
/// |w - a_1|; throws AdaptiveBoundFailure when w = phi(+inf).
double preimage_sigma_bound(const Symbol& phi, Complex w, double tol);

/// Sum of Re s over preimages with |Im s| < t_trunc (c0 >= 1 only).
CountingValue nevanlinna_full(const Symbol& phi, Complex w, double t_trunc = 64.0,
                              const CountingParams& params = {});

/// Sum of Re s over preimages with |Im s| < 1.
CountingValue restricted_counting(const Symbol& phi, Complex w, const CountingParams& params = {});

/// Sum of (Re s)^{2+alpha} over preimages with |Im s| < 1.
CountingValue weighted_counting(const Symbol& phi, Complex w, double alpha,
                                const CountingParams& params = {});

/// (1/T) sum of (Re s)^{2+alpha} over preimages with |Im s| < T, Re s > sigma0.
CountingValue mean_counting(const Symbol& phi, double sigma0, double height, Complex w,
                            double alpha, const CountingParams& params = {});

/// max over the grid and characters of N_{phi_chi}(w) (1 + (Im w)^2) / Re w.
/// An empirical lower estimate of the uniform constant; c0 >= 1 and
/// Re w < c0 required.
double estimate_bound_constant(const Symbol& phi, const std::vector<Complex>& w_grid,
                               const std::vector<Character>& characters,
                               const CountingParams& params = {});

enum class LittleOVerdict { Consistent, Violated, Inconclusive, NotApplicable };
const char* to_string(LittleOVerdict v);

struct LittleOParams {
  std::vector<double> im_values;        ///< Im w sampled on each line Re w = sigma
  double t_trunc = 64.0;
  std::vector<Character> characters;    ///< empty: phi itself only
  double threshold = 0.05;
  CountingParams counting;
};

struct LittleOReport {
  std::vector<double> sigmas;
  std::vector<double> ratios;           ///< R(sigma) = max N(w) / Re w
  LittleOVerdict verdict = LittleOVerdict::Inconclusive;
  /// True when the maximum also ran over sampled characters. This is a
  /// sampled check of uniformity, not the uniform statement over the torus.
  bool sampled_uniform = false;
  std::string note;
};

/// Tracks R(sigma) along a decreasing sigma sequence. Consistent: R is
/// non-increasing (5% slack) and ends below the threshold. Violated: ends at
/// or above the threshold with no decay below half its first value.
LittleOReport verify_criterion_littleo(const Symbol& phi, const std::vector<double>& sigmas,
                                       const LittleOParams& params);

}  // namespace dcomp
