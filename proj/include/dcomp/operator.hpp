#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcomp/counting.hpp"
#include "dcomp/dirichlet.hpp"
#include "dcomp/symbol.hpp"

namespace dcomp {

/// Certified bound for sum_{m > cutoff} |c_m| m^{-sigma} over the expansion
/// c of C_phi(n^{-s}) = n^{-phi(s)}, from the majorant
/// sum |b_m| m^u <= exp(log n * sum_{k>=2} |a_k| k^u) of exp(log n (a_1 - psi)).
double column_tail_bound(const Symbol& phi, Index n, Index cutoff, double sigma = 0.0);

/// Coefficients of n^{-phi(s)} at indices <= max_index (Hardy normalisation).
/// Support lies in n^{c0} times the semigroup generated by supp(psi).
/// Throws InvalidArgument when c0 >= 1 and n^{c0} > max_index.
DirichletPolynomial compose_basis_column(const Symbol& phi, Index n, Index max_index);

/// Smallest power-of-two-graded cutoff M with column_tail_bound(phi, n, M)
/// <= abs_tol, capped at 2^62. Throws TailNotNegligible when no cutoff fits.
Index column_cutoff(const Symbol& phi, Index n, double abs_tol, double sigma = 0.0);

struct Composition {
  DirichletPolynomial poly;
  double tail_bound = 0.0;  ///< bound on |f(phi(s)) - poly(s)| for Re s >= sigma
};

/// f o phi expanded as a Dirichlet polynomial, truncated so that the
/// neglected part is below abs_tol on Re s >= sigma.
Composition compose(const DirichletPolynomial& f, const Symbol& phi, double abs_tol,
                    double sigma = 0.0);

struct OperatorParams {
  double tail_rel = 1e-10;        ///< column tail mass relative to the squared column norm
  std::size_t max_rows = 100'000; ///< cap on distinct nonzero row indices
};

/// Truncation of C_phi in the orthonormal basis e_n = w_n n^{-s} of the space.
///
/// Only rows that carry a nonzero entry in some column are stored:
/// entries(i, j) is the coefficient of e_{row_indices[i]} in C_phi(e_{j+1}).
/// Every omitted row index <= M is identically zero.
struct OperatorMatrix {
  std::size_t N = 0;
  Index M = 0;                              ///< largest row cutoff over the columns
  SpaceTag space;
  std::vector<Index> row_indices;
  Eigen::MatrixXcd entries;
  std::vector<Index> column_cutoffs;
  std::vector<double> column_tail_mass;     ///< bound on the squared weighted discarded mass
  std::vector<double> column_norm_sq;       ///< squared norm of the kept part
};

OperatorMatrix assemble_matrix(const Symbol& phi, std::size_t N, const SpaceTag& space,
                               const OperatorParams& params = {});

/// Descending singular values, padded with zeros to min(M, N).
std::vector<double> singular_values(const OperatorMatrix& mx);

// ---------------------------------------------------------------------------

enum class RatioVerdict { TendsToInfinity, Fails, Inconclusive };
const char* to_string(RatioVerdict v);

enum class Conclusion { CompactConsistent, NoncompactConsistent, Inconclusive };
const char* to_string(Conclusion c);

struct RatioReport {
  bool shifted = false;                     ///< (Re phi - 1/2) / Re s for G0
  std::vector<double> sigmas;
  std::vector<double> minima;
  RatioVerdict verdict = RatioVerdict::Inconclusive;
};

/// Min over t in [-t_range, t_range] of Re phi(sigma + it) / sigma (or the
/// shifted ratio for G0) at each sigma. TendsToInfinity: minima grow by at
/// least 1.5x per two octaves and exceed 1e3 at the smallest sigma.
/// Fails: the smallest-sigma minimum stays below 1e3 and the last two-octave
/// growth is below 1.5x.
RatioReport re_ratio_check(const Symbol& phi, const std::vector<double>& sigmas,
                           double t_range = 200.0, std::size_t t_samples = 40001);

struct SpaceReport {
  SpaceTag space;
  std::vector<std::size_t> truncations;
  std::vector<std::size_t> ks;
  /// singular[i] is the full descending sequence at truncations[i].
  std::vector<std::vector<double>> singular;
  /// s_k(N) table: table[i][j] = s_{ks[j]} at truncations[i].
  std::vector<std::vector<double>> table;
  std::vector<bool> stabilized;             ///< per k, last relative change < 5%
  double largest_singular_value = 0.0;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string sufficient_condition;         ///< which criterion applies here, or "none"
  std::string sufficient_verdict;
  std::vector<std::string> flags;
};

struct ReportParams {
  std::vector<SpaceTag> spaces{SpaceTag::hardy(), SpaceTag::bergman(0.0)};
  std::vector<std::size_t> truncations{64, 128, 256, 512};
  std::vector<std::size_t> ks{5, 10, 20};
  std::vector<double> ratio_sigmas;         ///< empty: 2^-3 .. 2^-12
  bool run_littleo = true;
  std::vector<double> littleo_sigmas{0.2, 0.1, 0.05, 0.025};
  LittleOParams littleo{{0.0, 0.5, 1.0, 2.0, 3.0}, 64.0, {}, 0.05, {}};
  OperatorParams op;
};

struct CompactnessReport {
  Symbol symbol;
  RatioReport ratio;
  bool littleo_ran = false;
  LittleOReport littleo;
  std::vector<SpaceReport> spaces;
};

/// Applies the fixed singular-value rules per space and cross-references the
/// sufficient condition for that space: little-o for H^2 with c0 >= 1, the
/// Re-ratio on A_alpha. Conclusions are only ever "consistent" with a
/// property; finite truncations prove nothing.
CompactnessReport compactness_report(const Symbol& phi, const ReportParams& params = {});

}  // namespace dcomp
