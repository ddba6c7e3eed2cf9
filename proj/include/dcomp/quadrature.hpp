#pragma once

#include <cstddef>
#include <vector>

namespace dcomp {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// `panels` equal panels on [a, b], each with an n-point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t n, double a, double b);

/// Panels on [a, b] whose widths grow geometrically by `ratio`, for
/// integrands concentrated near a.
QuadratureRule graded_gauss_legendre(std::size_t panels, std::size_t n, double a, double b,
                                     double ratio);

}  // namespace dcomp
