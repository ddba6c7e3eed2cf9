#include "dcomp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dcomp/error.hpp"

namespace dcomp {

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence; n >= 1.
std::pair<double, double> legendre_pair(std::size_t n, double x) {
  double prev = 1.0, cur = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / static_cast<double>(k);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, q] = legendre_pair(n, x);
      dp = dn * (x * p - q) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, q] = legendre_pair(n, x);
    dp = dn * (x * p - q) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t n, double a, double b) {
  return graded_gauss_legendre(panels, n, a, b, 1.0);
}

QuadratureRule graded_gauss_legendre(std::size_t panels, std::size_t n, double a, double b,
                                     double ratio) {
  if (panels == 0) throw InvalidArgument("need at least one panel");
  if (!(ratio > 0.0)) throw InvalidArgument("panel ratio must be positive");
  double total = 0.0, width = 1.0;
  for (std::size_t p = 0; p < panels; ++p, width *= ratio) total += width;
  QuadratureRule rule;
  double left = a;
  width = (b - a) / total;
  for (std::size_t p = 0; p < panels; ++p, width *= ratio) {
    const double right = (p + 1 == panels) ? b : left + width;
    const QuadratureRule piece = gauss_legendre(n, left, right);
    rule.nodes.insert(rule.nodes.end(), piece.nodes.begin(), piece.nodes.end());
    rule.weights.insert(rule.weights.end(), piece.weights.begin(), piece.weights.end());
    left = right;
  }
  return rule;
}

}  // namespace dcomp
