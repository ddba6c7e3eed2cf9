#include "dcomp/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "dcomp/error.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/quadrature.hpp"
#include "dcomp/sampling.hpp"

namespace dcomp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sigma weight inside the Littlewood-Paley integrals.
double lp_kernel(const SpaceTag& space, double sigma) {
  if (space.is_hardy()) return 4.0 * sigma;
  return 2.0 * std::pow(sigma, 2.0 + space.alpha);
}

}  // namespace

// ---------------------------------------------------------------------------

MeasureSpec MeasureSpec::uniform_window(double a, double b, double density) {
  if (!(b > a) || !(density > 0.0)) throw InvalidArgument("uniform window needs a < b, density > 0");
  MeasureSpec m;
  m.kind_ = Kind::UniformWindow;
  m.a_ = a;
  m.b_ = b;
  m.density_ = density;
  m.mass_ = density * (b - a);
  return m;
}

MeasureSpec MeasureSpec::half_indicator() {
  MeasureSpec m;
  m.kind_ = Kind::HalfIndicator;
  m.a_ = -1.0;
  m.b_ = 1.0;
  m.density_ = 0.5;
  m.mass_ = 1.0;
  return m;
}

MeasureSpec MeasureSpec::cauchy_like() {
  MeasureSpec m;
  m.kind_ = Kind::CauchyLike;
  // int (1+v^2)^{-3/4} dv = B(1/2, 1/4)
  m.mass_ = boost::math::beta(0.5, 0.25);
  return m;
}

MeasureSpec MeasureSpec::tabulated(std::vector<double> xs, std::vector<double> densities) {
  if (xs.size() < 2 || xs.size() != densities.size())
    throw InvalidArgument("tabulated measure needs matching node and density lists");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (densities[i] < 0.0) throw InvalidArgument("density must be nonnegative");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw InvalidArgument("nodes must increase");
  }
  MeasureSpec m;
  m.kind_ = Kind::Tabulated;
  m.cdf_.assign(xs.size(), 0.0);
  for (std::size_t i = 1; i < xs.size(); ++i)
    m.cdf_[i] = m.cdf_[i - 1] + 0.5 * (densities[i] + densities[i - 1]) * (xs[i] - xs[i - 1]);
  m.mass_ = m.cdf_.back();
  if (!(m.mass_ > 0.0)) throw InvalidArgument("tabulated measure has zero mass");
  m.xs_ = std::move(xs);
  m.densities_ = std::move(densities);
  return m;
}

double MeasureSpec::quantile(double u) const {
  u = std::clamp(u, 1e-15, 1.0 - 1e-15);
  switch (kind_) {
    case Kind::UniformWindow:
    case Kind::HalfIndicator:
      return a_ + u * (b_ - a_);
    case Kind::CauchyLike: {
      // F(v) = 1/2 + sign(v)/2 * I_{v^2/(1+v^2)}(1/2, 1/4)
      const double y = std::abs(2.0 * u - 1.0);
      const double x = boost::math::ibeta_inv(0.5, 0.25, y);
      const double v = x >= 1.0 ? 1e300 : std::sqrt(x / (1.0 - x));
      return u < 0.5 ? -v : v;
    }
    case Kind::Tabulated: {
      const double target = u * mass_;
      auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
      std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
      if (i == 0) i = 1;
      const double x0 = xs_[i - 1], x1 = xs_[i];
      const double d0 = densities_[i - 1], d1 = densities_[i];
      const double slope = (d1 - d0) / (x1 - x0);
      double lo = x0, hi = x1;
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double dx = mid - x0;
        const double mass = cdf_[i - 1] + d0 * dx + 0.5 * slope * dx * dx;
        (mass < target ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return 0.0;
}

QuadratureParams QuadratureParams::doubled() const {
  QuadratureParams q = *this;
  q.sigma_nodes *= 2;
  q.t_nodes *= 2;
  q.w_nodes_u *= 2;
  q.w_nodes_v *= 2;
  return q;
}

// ---------------------------------------------------------------------------

double tail_sigma_max(const DirichletPolynomial& f, double rate, double rel_tol) {
  auto tail = [&](double sigma) {
    double acc = 0.0;
    for (const Term& t : f.terms()) {
      if (t.n == 1) continue;
      acc += std::norm(t.a) * t.log_n * t.log_n * std::exp(-2.0 * rate * sigma * t.log_n);
    }
    return acc;
  };
  const double at_zero = tail(0.0);
  if (at_zero == 0.0) return 0.0;
  const double target = rel_tol * at_zero;
  double lo = 0.0, hi = 1.0;
  while (tail(hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 100 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

double lp_norm_closed(const DirichletPolynomial& f, const SpaceTag& space) {
  double acc = std::norm(f.constant_term());
  const double scale =
      space.is_hardy() ? 1.0
                       : std::tgamma(3.0 + space.alpha) * std::pow(2.0, -(2.0 + space.alpha));
  for (const Term& t : f.terms()) {
    if (t.n == 1) continue;
    const double per_term =
        space.is_hardy() ? std::norm(t.a) : std::norm(t.a) * std::pow(t.log_n, -(1.0 + space.alpha));
    acc += scale * per_term;
  }
  return acc;
}

McEstimate lp_norm_mc(const DirichletPolynomial& f, const SpaceTag& space, const MeasureSpec& mu,
                      const QuadratureParams& q) {
  if (q.sigma_nodes == 0 || q.t_nodes == 0 || q.chi_samples == 0)
    throw InvalidArgument("quadrature node counts must be positive");
  if (q.shifts < 2) throw InvalidArgument("error estimate needs at least two shifts");

  McEstimate out;
  const double constant = std::norm(f.constant_term());
  const DirichletPolynomial g = f.without_constant();
  out.value = constant;
  if (g.empty()) return out;

  const std::vector<Index> primes = g.support_primes();
  const std::size_t dim = primes.size();
  const auto& terms = g.terms();
  std::vector<std::vector<int>> exponents(terms.size(), std::vector<int>(dim, 0));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Index n = terms[i].n;
    for (std::size_t j = 0; j < dim; ++j)
      while (n % primes[j] == 0) {
        n /= primes[j];
        ++exponents[i][j];
      }
  }

  out.sigma_max = q.sigma_max > 0.0 ? q.sigma_max : tail_sigma_max(g, 1.0);
  const std::size_t panels = std::max<std::size_t>(2, q.sigma_nodes / 8);
  const QuadratureRule fine = composite_gauss_legendre(panels, 8, 0.0, out.sigma_max);
  const QuadratureRule coarse = composite_gauss_legendre(panels / 2, 8, 0.0, out.sigma_max);

  // decay[i][k] = kernel(sigma_i) w_i e^{-sigma_i log n_k}, as (weight, factors)
  auto tabulate = [&](const QuadratureRule& rule, std::vector<double>& wk,
                      std::vector<std::vector<double>>& decay) {
    wk.resize(rule.nodes.size());
    decay.assign(rule.nodes.size(), std::vector<double>(terms.size()));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      wk[i] = rule.weights[i] * lp_kernel(space, rule.nodes[i]);
      for (std::size_t k = 0; k < terms.size(); ++k)
        decay[i][k] = std::exp(-rule.nodes[i] * terms[k].log_n);
    }
  };
  std::vector<double> wf, wc;
  std::vector<std::vector<double>> df, dc;
  tabulate(fine, wf, df);
  tabulate(coarse, wc, dc);

  const std::size_t points = q.chi_samples * q.t_nodes;
  std::mt19937_64 rng(q.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> shifts(q.shifts, std::vector<double>(dim + 1));
  for (auto& s : shifts)
    for (double& x : s) x = unit(rng);

  std::vector<double> est_fine(q.shifts), est_coarse(q.shifts);
  parallel_for(q.shifts, [&](std::size_t r) {
    const ShiftedLattice lattice(dim + 1, points, shifts[r]);
    std::vector<Complex> c(terms.size());
    double acc_f = 0.0, acc_c = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
      const double t = mu.quantile(lattice.coordinate(k, dim));
      for (std::size_t m = 0; m < terms.size(); ++m) {
        double phase = -t * terms[m].log_n;
        for (std::size_t j = 0; j < dim; ++j)
          phase += kTwoPi * exponents[m][j] * lattice.coordinate(k, j);
        c[m] = -terms[m].a * terms[m].log_n * std::polar(1.0, phase);
      }
      auto sweep = [&](const std::vector<double>& w, const std::vector<std::vector<double>>& d) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          Complex s(0.0, 0.0);
          for (std::size_t m = 0; m < terms.size(); ++m) s += c[m] * d[i][m];
          acc += w[i] * std::norm(s);
        }
        return acc;
      };
      acc_f += sweep(wf, df);
      acc_c += sweep(wc, dc);
    }
    est_fine[r] = acc_f / static_cast<double>(points);
    est_coarse[r] = acc_c / static_cast<double>(points);
  });

  const double rcount = static_cast<double>(q.shifts);
  double mean_f = 0.0, mean_c = 0.0;
  for (std::size_t r = 0; r < q.shifts; ++r) {
    mean_f += est_fine[r];
    mean_c += est_coarse[r];
  }
  mean_f /= rcount;
  mean_c /= rcount;
  double var = 0.0;
  for (double e : est_fine) var += (e - mean_f) * (e - mean_f);
  var /= (rcount - 1.0);

  out.value = constant + mean_f;
  out.standard_error = std::sqrt(var / rcount);
  out.sigma_rule_error = std::abs(mean_f - mean_c);
  out.error_estimate = out.standard_error + out.sigma_rule_error + 1e-14 * std::abs(out.value);
  out.evaluations = q.shifts * points * (fine.nodes.size() + coarse.nodes.size());
  return out;
}

// ---------------------------------------------------------------------------

CovReport change_of_variables_check(const DirichletPolynomial& f, const Symbol& phi,
                                    const Character& chi, const QuadratureParams& q,
                                    const CountingParams& counting) {
  if (phi.c0() < 1) throw InvalidArgument("change-of-variables check needs c0 >= 1");
  const Symbol phi_chi = twist_symbol(phi, chi);
  const DirichletPolynomial fd = derivative(twist(f, character_power(chi, phi.c0())));
  const double c0 = phi.c0();

  CovReport report;
  const Complex a1 = phi_chi.psi().constant_term();
  const double spread = phi_chi.psi().tail_bound(0.0, 0);
  report.sigma_max = q.sigma_max > 0.0 ? q.sigma_max : std::max(1.0, tail_sigma_max(fd, c0));
  report.u_max = c0 * report.sigma_max + a1.real() + spread;
  report.v_lo = a1.imag() - c0 - spread;
  report.v_hi = a1.imag() + c0 + spread;
  if (fd.empty()) {
    report.gap_shrinks = true;
    return report;
  }

  auto side = [&](const QuadratureParams& qq) {
    CovSide out;
    const QuadratureRule srule =
        composite_gauss_legendre(std::max<std::size_t>(1, qq.sigma_nodes / 8), 8, 0.0, report.sigma_max);
    const QuadratureRule trule =
        composite_gauss_legendre(std::max<std::size_t>(1, qq.t_nodes / 8), 8, -1.0, 1.0);
    std::vector<double> lhs_rows(srule.nodes.size());
    parallel_for(srule.nodes.size(), [&](std::size_t i) {
      const double sigma = srule.nodes[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < trule.nodes.size(); ++j) {
        auto [w, dphi] = evaluate_symbol_with_derivative(phi_chi, Complex(sigma, trule.nodes[j]));
        acc += trule.weights[j] * std::norm(evaluate(fd, w)) * std::norm(dphi);
      }
      lhs_rows[i] = srule.weights[i] * sigma * acc;
    });
    for (double v : lhs_rows) out.lhs += v;

    // u = u_max (e^{kx} - 1) / (e^k - 1) packs nodes near u = 0.
    constexpr double kappa = 3.0;
    const QuadratureRule xrule =
        composite_gauss_legendre(std::max<std::size_t>(1, qq.w_nodes_u / 8), 8, 0.0, 1.0);
    const QuadratureRule vrule =
        composite_gauss_legendre(std::max<std::size_t>(1, qq.w_nodes_v / 8), 8, report.v_lo, report.v_hi);
    const double denom = std::expm1(kappa);
    std::vector<double> rhs_rows(xrule.nodes.size());
    std::vector<std::size_t> failures(xrule.nodes.size(), 0);
    parallel_for(xrule.nodes.size(), [&](std::size_t i) {
      const double x = xrule.nodes[i];
      const double u = report.u_max * std::expm1(kappa * x) / denom;
      const double jac = report.u_max * kappa * std::exp(kappa * x) / denom;
      double acc = 0.0;
      for (std::size_t j = 0; j < vrule.nodes.size(); ++j) {
        const Complex w(u, vrule.nodes[j]);
        double n = 0.0;
        try {
          n = restricted_counting(phi_chi, w, counting).value;
        } catch (const BoundaryHit&) {
          ++failures[i];
          continue;
        }
        if (n != 0.0) acc += vrule.weights[j] * std::norm(evaluate(fd, w)) * n;
      }
      rhs_rows[i] = xrule.weights[i] * jac * acc;
    });
    for (double v : rhs_rows) out.rhs += v;
    for (std::size_t k : failures) out.unresolved += k;
    out.root_searches = xrule.nodes.size() * vrule.nodes.size();
    const double scale = std::max(std::abs(out.lhs), 1e-300);
    out.gap = (out.lhs == 0.0 && out.rhs == 0.0) ? 0.0 : std::abs(out.lhs - out.rhs) / scale;
    return out;
  };

  report.base = side(q);
  report.refined = side(q.doubled());
  report.gap_shrinks = report.refined.gap <= report.base.gap;
  return report;
}

double finite_T_bergman_norm(const DirichletPolynomial& f, double alpha, double sigma0,
                             double height) {
  if (!(sigma0 > 0.0) || !(height > 0.0)) throw InvalidArgument("need sigma0 > 0 and T > 0");
  if (!(alpha > -1.0)) throw InvalidArgument("Bergman parameter alpha must exceed -1");
  const DirichletPolynomial g = f.without_constant();
  if (g.empty()) return 0.0;
  const auto& terms = g.terms();

  const double sigma_max = std::max(tail_sigma_max(g, 1.0), sigma0 + 1.0);
  const QuadratureRule srule = composite_gauss_legendre(24, 8, sigma0, sigma_max);
  // Resolve the slowest beat frequency log(n/m) with at least two panels per period.
  double top = 0.0;
  for (const Term& a : terms)
    for (const Term& b : terms) top = std::max(top, std::abs(a.log_n - b.log_n));
  const double width = top > 0.0 ? std::min(1.0, std::numbers::pi / top) : 1.0;
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * height / width));
  const QuadratureRule trule = composite_gauss_legendre(panels, 8, -height, height);

  std::vector<std::vector<double>> decay(srule.nodes.size(), std::vector<double>(terms.size()));
  for (std::size_t i = 0; i < srule.nodes.size(); ++i)
    for (std::size_t k = 0; k < terms.size(); ++k)
      decay[i][k] = std::exp(-srule.nodes[i] * terms[k].log_n);

  std::vector<double> rows(trule.nodes.size());
  parallel_for(trule.nodes.size(), [&](std::size_t j) {
    std::vector<Complex> c(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
      c[k] = -terms[k].a * terms[k].log_n * std::polar(1.0, -trule.nodes[j] * terms[k].log_n);
    double acc = 0.0;
    for (std::size_t i = 0; i < srule.nodes.size(); ++i) {
      Complex s(0.0, 0.0);
      for (std::size_t k = 0; k < terms.size(); ++k) s += c[k] * decay[i][k];
      acc += srule.weights[i] * std::pow(srule.nodes[i], 2.0 + alpha) * std::norm(s);
    }
    rows[j] = trule.weights[j] * acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total / height;
}

}  // namespace dcomp
