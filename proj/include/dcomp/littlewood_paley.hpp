#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/counting.hpp"
#include "dcomp/dirichlet.hpp"
#include "dcomp/symbol.hpp"

namespace dcomp {

/// Finite positive measure on the real line, used as the vertical weight in
/// the Littlewood-Paley formulas.
class MeasureSpec {
 public:
  enum class Kind { UniformWindow, HalfIndicator, CauchyLike, Tabulated };

  /// Constant density on [a, b].
  static MeasureSpec uniform_window(double a, double b, double density = 1.0);
  /// (1/2) 1_{[-1,1]}(t) dt.
  static MeasureSpec half_indicator();
  /// (1 + v^2)^{-3/4} dv on the whole line.
  static MeasureSpec cauchy_like();
  /// Piecewise-linear density through (xs[i], densities[i]); zero outside.
  static MeasureSpec tabulated(std::vector<double> xs, std::vector<double> densities);

  Kind kind() const noexcept { return kind_; }
  double total_mass() const noexcept { return mass_; }
  /// Inverse of the normalised distribution function, u in (0, 1).
  double quantile(double u) const;

 private:
  MeasureSpec() = default;

  Kind kind_ = Kind::HalfIndicator;
  double a_ = -1.0, b_ = 1.0, density_ = 0.5;
  std::vector<double> xs_, densities_, cdf_;
  double mass_ = 1.0;
};

struct QuadratureParams {
  double sigma_max = 0.0;          ///< 0: chosen by the tail rule
  std::size_t sigma_nodes = 64;
  std::size_t t_nodes = 16;
  std::size_t chi_samples = 64;    ///< lattice points over the torus (times t_nodes)
  std::size_t shifts = 8;          ///< independent random shifts for the error estimate
  std::uint64_t seed = 1;
  std::size_t w_nodes_u = 128;     ///< image-side grid for the change of variables
  std::size_t w_nodes_v = 128;

  QuadratureParams doubled() const;
};

/// Smallest sigma with sum_{n>=2} |a_n|^2 (log n)^2 n^{-2 c sigma} below
/// rel_tol times its value at sigma = 0 (0 when f is constant).
double tail_sigma_max(const DirichletPolynomial& f, double rate = 1.0, double rel_tol = 1e-14);

/// Right-hand side of the Littlewood-Paley formula with the character
/// average done by orthogonality and the sigma integral in closed form.
/// Hardy: |a_1|^2 + sum_{n>=2} |a_n|^2 (equal to the norm).
/// Bergman(alpha): |a_1|^2 + Gamma(3+alpha) 2^{-(2+alpha)} sum |a_n|^2 (log n)^{-(1+alpha)},
/// the limit of the height-averaged form (1/T) int_{-T}^{T}.
double lp_norm_closed(const DirichletPolynomial& f, const SpaceTag& space);

struct McEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  double standard_error = 0.0;     ///< spread over random shifts
  double sigma_rule_error = 0.0;   ///< fine vs coarse sigma rule
  double sigma_max = 0.0;
  std::size_t evaluations = 0;
};

/// The same right-hand side the hard way: randomly shifted rank-1 lattice
/// over (chi, t) with t drawn through the quantile function of mu, and a
/// Gauss-Legendre rule in sigma. Divided by mu(R) so it estimates the
/// squared norm directly.
McEstimate lp_norm_mc(const DirichletPolynomial& f, const SpaceTag& space, const MeasureSpec& mu,
                      const QuadratureParams& q);

struct CovSide {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;                ///< |lhs - rhs| / max(|lhs|, tiny)
  std::size_t root_searches = 0;
  std::size_t unresolved = 0;      ///< image nodes where the root search failed
};

struct CovReport {
  CovSide base;
  CovSide refined;                 ///< same check with every node count doubled
  bool gap_shrinks = false;
  double sigma_max = 0.0;
  double u_max = 0.0;
  double v_lo = 0.0, v_hi = 0.0;
};

/// Compares int int |f'(phi_chi(s))|^2 |phi_chi'(s)|^2 sigma dt dsigma over
/// (0, sigma_max) x (-1, 1) with int int |f'(w)|^2 N_{phi_chi}(w) dv du over a
/// rectangle covering the image, f replaced by its twist by chi^{c0}.
CovReport change_of_variables_check(const DirichletPolynomial& f, const Symbol& phi,
                                    const Character& chi, const QuadratureParams& q,
                                    const CountingParams& counting = {});

/// (1/T) int_{sigma0}^{sigma_max} int_{-T}^{T} |f'(sigma+it)|^2 sigma^{2+alpha} dt dsigma.
double finite_T_bergman_norm(const DirichletPolynomial& f, double alpha, double sigma0,
                             double height);

}  // namespace dcomp
