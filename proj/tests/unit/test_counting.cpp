#include <doctest.h>

#include <cmath>
#include <random>

#include "dcomp/counting.hpp"
#include "dcomp/error.hpp"
#include "dcomp/rootfind.hpp"
#include "dcomp/sampling.hpp"
#include "oracles.hpp"

using namespace dcomp;
using doctest::Approx;

namespace {

const Symbol& two_s() {
  static const Symbol s = Symbol::certify(2, {});
  return s;
}
const Symbol& translate() {
  static const Symbol s = Symbol::certify(1, {{1, 1.0}});
  return s;
}
const Symbol& single_prime() {
  static const Symbol s = Symbol::certify(1, {{1, 1.0}, {2, -1.0}});
  return s;
}
const Symbol& five_halves() {
  static const Symbol s = Symbol::certify(0, {{1, 2.5}, {2, -1.0}, {3, -1.0}});
  return s;
}

// Every root matched one-to-one against the oracle list within tol.
bool roots_match(const RootSet& rs, const std::vector<Complex>& expected, double tol) {
  if (rs.multiplicity_sum() != int(expected.size())) return false;
  std::vector<bool> used(expected.size(), false);
  for (const auto& r : rs.roots) {
    if (r.multiplicity != 1) return false;
    bool found = false;
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (!used[k] && std::abs(expected[k] - r.s) < tol) {
        used[k] = found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

double oracle_sum_re(const std::vector<Complex>& roots, double exponent = 1.0) {
  double acc = 0.0;
  for (Complex s : roots) acc += std::pow(s.real(), exponent);
  return acc;
}

}  // namespace

TEST_CASE("find_preimages examples") {
  const auto rs = find_preimages(two_s(), 0.5, {0.01, 1.0, -1.0, 1.0}, 1e-7);
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0].s - 0.25) < 1e-12);
  CHECK(rs.roots[0].multiplicity == 1);
  CHECK(rs.total_winding == 1);

  CHECK(find_preimages(translate(), 0.5, {0.01, 2.0, -5.0, 5.0}, 1e-7).roots.empty());

  const Rectangle win{1e-4, 0.3, -1.0, 1.0};
  const auto sp = find_preimages(single_prime(), 0.3, win, 1e-7);
  const auto expected = oracle::grid_roots(oracle::plain(single_prime()), 0.3, win.sigma_lo, win.sigma_hi,
                                           win.t_lo, win.t_hi);
  CHECK(!expected.empty());
  CHECK(roots_match(sp, expected, 1e-6));
  for (const auto& r : sp.roots) {
    CHECK(r.residual <= 1e-9);
    CHECK(win.contains_strictly(r.s));
  }
}

TEST_CASE("a root on the contour raises BoundaryHit; the robust search recovers") {
  const Rectangle win{0.25, 1.0, -1.0, 1.0};
  CHECK_THROWS_AS(find_preimages(two_s(), 0.5, win, 1e-7), BoundaryHit);
  const auto rs = find_preimages_robust(two_s(), 0.5, win, 1e-7);
  CHECK(rs.jitter_retries >= 1);
  CHECK(rs.multiplicity_sum() == rs.total_winding);
  CHECK_THROWS_AS(Rectangle({0.0, 1.0, -1.0, 1.0}).validate(), InvalidArgument);
}

TEST_CASE("double roots are reported with multiplicity") {
  // phi(s) = s + (1 + 2^{-s})... use phi = 2s + psi with phi'(s0) = 0 is impossible for c0 >= 1
  // and Re psi >= 0 only at special points, so take a G0 symbol with a critical point:
  // phi = 1 + (2^{-s} - a)^2 expanded, critical where 2^{-s} = a.
  const double a = 0.25;
  const DirichletPolynomial psi{{1, 1.0 + a * a}, {2, -2.0 * a}, {4, 1.0}};
  const Symbol phi = Symbol::assume(0, psi);
  const Complex s0(2.0, 0.0);  // 2^{-2} = 1/4
  const Complex w = evaluate_symbol(phi, s0);
  const auto rs = find_preimages_robust(phi, w, {1.5, 2.5, -0.5, 0.5}, 1e-7);
  CHECK(rs.total_winding == 2);
  CHECK(rs.multiplicity_sum() == 2);
  for (const auto& r : rs.roots) CHECK(std::abs(r.s - s0) < 1e-3);
}

TEST_CASE("twist covariance of root sets") {
  const double tau = 3.7;
  const Symbol phi = single_prime();
  const Symbol twisted = twist_symbol(phi, Character::vertical_translate(tau, {2}));
  const Complex w = evaluate_symbol(twisted, Complex(0.2, 0.5));
  const auto a = find_preimages(twisted, w, {1e-3, 0.5, -2.0, 2.0}, 1e-9);
  const auto b = find_preimages(phi, w + Complex(0.0, tau), {1e-3, 0.5, -2.0 + tau, 2.0 + tau}, 1e-9);
  REQUIRE(a.roots.size() == b.roots.size());
  CHECK(!a.roots.empty());
  for (const auto& r : a.roots) {
    bool found = false;
    for (const auto& q : b.roots) found = found || std::abs(q.s - Complex(0.0, tau) - r.s) < 1e-8;
    CHECK(found);
  }
}

TEST_CASE("nevanlinna_full") {
  for (Complex w : {Complex(0.3, 0.0), Complex(1e-3, 5.0), Complex(0.5, -19.0)}) {
    CHECK(nevanlinna_full(two_s(), w).value == Approx(w.real() / 2.0).epsilon(1e-10));
    CHECK(nevanlinna_full(Symbol::certify(1, {}), w).value == Approx(w.real()).epsilon(1e-10));
  }
  CHECK(nevanlinna_full(translate(), Complex(0.9, 2.0)).value == 0.0);

  const auto v = nevanlinna_full(single_prime(), 0.2, 40.0);
  const auto expected = oracle::grid_roots(oracle::plain(single_prime()), 0.2, 1e-7, 0.2 + 1e-7, -40.0, 40.0);
  CHECK(v.value == Approx(oracle_sum_re(expected)).epsilon(1e-7));
  CHECK(v.root_count == expected.size());
  CHECK(v.value <= 0.2 + 1e-8);
  CHECK_THROWS_AS(nevanlinna_full(five_halves(), 1.0), InvalidArgument);
}

TEST_CASE("restricted and weighted counting") {
  CHECK(restricted_counting(two_s(), Complex(0.5, 3.0)).value == 0.0);
  CHECK(restricted_counting(two_s(), 0.5).value == Approx(0.25).epsilon(1e-12));
  CHECK(weighted_counting(two_s(), 0.5, 0.0).value == Approx(0.0625).epsilon(1e-12));
  CHECK(weighted_counting(translate(), 0.5, 0.3).value == 0.0);

  SUBCASE("single prime far up the line, against the grid oracle and the uniform bound") {
    const Complex w(0.1, 10.0);
    const double value = restricted_counting(single_prime(), w).value;
    const auto expected = oracle::grid_roots(oracle::plain(single_prime()), w, 1e-7, 0.1 + 1e-7, -1.0, 1.0);
    CHECK(value == Approx(oracle_sum_re(expected)).epsilon(1e-7));
    std::vector<Complex> grid;
    for (int i = 1; i <= 5; ++i)
      for (int j = -5; j <= 5; ++j) grid.emplace_back(0.1 * i, 2.0 * j);
    const double C = estimate_bound_constant(single_prime(), grid, kronecker_characters({2}, 32));
    CHECK(value <= C * 0.1 / 101.0 + 1e-12);
  }

  SUBCASE("alpha = -1 is the restricted count; restricted <= full") {
    std::mt19937_64 rng(31);
    const auto pool = oracle::smooth_indices({2, 3}, 12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
      const Symbol phi = Symbol::certify(1, oracle::random_positive_psi(rng, pool, 3, 0.0, 0.3));
      const Complex w(0.05 + 0.5 * u(rng), 4.0 * (u(rng) - 0.5) + phi.psi().constant_term().imag());
      const double r = restricted_counting(phi, w).value;
      CHECK(weighted_counting(phi, w, -1.0).value == Approx(r).epsilon(1e-12));
      CHECK(r <= nevanlinna_full(phi, w, 8.0).value + 1e-10);
    }
  }
}

TEST_CASE("preimage_sigma_bound") {
  CHECK(preimage_sigma_bound(two_s(), 0.5, 1e-7) == Approx(0.25 + 1e-7));
  CHECK_THROWS_AS(preimage_sigma_bound(five_halves(), 2.5, 1e-7), AdaptiveBoundFailure);
  // |w - 5/2| = 1 needs 2^{-sigma} + 3^{-sigma} < 1, i.e. sigma > 0.7878...
  const double hi = preimage_sigma_bound(five_halves(), 1.5, 1e-7);
  CHECK(std::pow(2.0, -hi) + std::pow(3.0, -hi) <= 1.0);
  CHECK(hi < 0.79);
}

TEST_CASE("mean_counting") {
  const double alpha = 0.0;
  const Complex w = evaluate_symbol(five_halves(), 2.0);
  const auto v = mean_counting(five_halves(), 1e-3, 10.0, w, alpha);
  CHECK(v.value >= std::pow(2.0, 2.0 + alpha) / 10.0 - 1e-12);

  CHECK(mean_counting(five_halves(), 1e-3, 10.0, Complex(5.0, 0.0), alpha).value == 0.0);
  CHECK_THROWS_AS(mean_counting(five_halves(), 1e-3, 10.0, 2.5, alpha), AdaptiveBoundFailure);

  const Complex w1(1.0, 0.01);
  // Past the initial almost-periodic transient (T ~ 40).
  const double m1 = mean_counting(five_halves(), 1e-3, 80.0, w1, alpha).value;
  const double m2 = mean_counting(five_halves(), 1e-3, 160.0, w1, alpha).value;
  CHECK(m1 > 0.0);
  CHECK(std::abs(m2 - m1) <= 0.2 * m1);

  // Against the grid oracle on a short window.
  const auto roots = oracle::grid_roots(oracle::plain(five_halves()), w1, 1e-3,
                                        preimage_sigma_bound(five_halves(), w1, 1e-7), -10.0, 10.0);
  CHECK(mean_counting(five_halves(), 1e-3, 10.0, w1, alpha).value == Approx(oracle_sum_re(roots, 2.0) / 10.0).epsilon(1e-7));
}

TEST_CASE("estimate_bound_constant") {
  std::vector<Complex> grid;
  for (int i = 1; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) grid.emplace_back(0.1 * i, 0.7 * j);
  for (int c0 : {1, 2, 3}) {
    const double C = estimate_bound_constant(Symbol::certify(c0, {}), grid, {Character::trivial()});
    CHECK(C > 0.0);
    CHECK(C <= (1.0 + c0 * c0) / c0 + 1e-12);
  }
  CHECK_THROWS_AS(estimate_bound_constant(two_s(), {}, {Character::trivial()}), InvalidArgument);
  const double c32 = estimate_bound_constant(single_prime(), grid, kronecker_characters({2}, 32));
  const double c64 = estimate_bound_constant(single_prime(), grid, kronecker_characters({2}, 64));
  CHECK(std::isfinite(c64));
  CHECK(c64 >= c32);
  CHECK(c64 - c32 < 0.1 * c32);
}

TEST_CASE("little-o criterion") {
  LittleOParams p;
  p.im_values = {0.0, 0.5, 1.0, 2.0};
  p.t_trunc = 16.0;
  const std::vector<double> sigmas{0.2, 0.1, 0.05, 0.025};

  const auto a = verify_criterion_littleo(two_s(), sigmas, p);
  for (double r : a.ratios) CHECK(r == Approx(0.5).epsilon(1e-9));
  CHECK(a.verdict == LittleOVerdict::Violated);

  const auto b = verify_criterion_littleo(translate(), sigmas, p);
  for (double r : b.ratios) CHECK(r == 0.0);
  CHECK(b.verdict == LittleOVerdict::Consistent);

  p.characters = kronecker_characters({2}, 4);
  const auto c = verify_criterion_littleo(single_prime(), sigmas, p);
  CHECK(c.sampled_uniform);
  CHECK(c.ratios.size() == sigmas.size());
  for (double r : c.ratios) CHECK(r <= 1.0 + 1e-8);

  CHECK(verify_criterion_littleo(five_halves(), sigmas, p).verdict == LittleOVerdict::NotApplicable);
}
