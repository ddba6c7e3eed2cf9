#include <doctest.h>

#include <cmath>
#include <random>

#include "dcomp/error.hpp"
#include "dcomp/symbol.hpp"
#include "oracles.hpp"

using namespace dcomp;
using doctest::Approx;

TEST_CASE("certify_class examples") {
  SUBCASE("1 - 2^{-s} is certified at margin zero") {
    const auto r = certify_class(1, {{1, 1.0}, {2, -1.0}}, 1e3, 1'000'000);
    CHECK(r.verdict == Verdict::Certified);
    CHECK(r.min_real_part >= -1e-12);
    CHECK(r.min_real_part < 1e-6);
    CHECK(r.margin_zero);
  }
  SUBCASE("5/2 - 2^{-s} - 3^{-s} is certified for G0 with min 1/2") {
    const auto r = certify_class(0, {{1, 2.5}, {2, -1.0}, {3, -1.0}}, 1e3, 1'000'000);
    CHECK(r.verdict == Verdict::Certified);
    CHECK(r.min_real_part == Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("2^{-s} fails for c0 = 1") {
    const auto r = certify_class(1, {{2, 1.0}}, 1e3, 1'000'000);
    CHECK(r.verdict == Verdict::Failed);
    CHECK(r.min_real_part < 0.0);
    CHECK_THROWS_AS(Symbol::certify(1, {{2, 1.0}}), CertificationFailure);
  }
  SUBCASE("imaginary constant and empty psi") {
    CHECK(certify_class(2, {{1, Complex(0.0, 3.0)}}, 10.0, 100).verdict == Verdict::Certified);
    CHECK(certify_class(1, {}, 10.0, 100).verdict == Verdict::Certified);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(certify_class(1, {}, 0.0, 100), InvalidArgument);
    CHECK_THROWS_AS(certify_class(-1, {}, 1.0, 100), InvalidArgument);
  }
  SUBCASE("G0 below one half fails") {
    CHECK(certify_class(0, {{1, 1.0}, {2, -0.6}}, 100.0, 10'000).verdict == Verdict::Failed);
  }
}

TEST_CASE("assumed symbols skip the check") {
  const Symbol phi = Symbol::assume(1, {{2, 1.0}});
  CHECK(phi.certification().provenance == "assumed");
  CHECK(phi.symbol_class() == SymbolClass::Gge1);
}

TEST_CASE("evaluate_symbol examples") {
  CHECK(std::abs(evaluate_symbol(Symbol::certify(2, {}), Complex(1.0, 1.0)) - Complex(2.0, 2.0)) < 1e-15);
  CHECK(std::abs(evaluate_symbol(Symbol::certify(1, {{1, 1.0}}), 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(evaluate_symbol(Symbol::certify(1, {{1, 1.0}, {2, -1.0}}), 0.0)) < 1e-15);
}

TEST_CASE("symbol_at_infinity") {
  const auto five_halves = Symbol::certify(0, {{1, 2.5}, {2, -1.0}, {3, -1.0}});
  CHECK(symbol_at_infinity(five_halves).value() == Complex(2.5));
  CHECK_FALSE(symbol_at_infinity(Symbol::certify(2, {})).has_value());
  CHECK(symbol_at_infinity(Symbol::certify(0, {{1, 0.7}})).value() == Complex(0.7));
}

TEST_CASE("twist_symbol") {
  const Symbol phi = Symbol::certify(1, {{1, 1.0}, {2, -1.0}});
  const Symbol same = twist_symbol(phi, Character::trivial());
  CHECK(same.psi() == phi.psi());
  const Symbol flipped = twist_symbol(phi, Character({{2, -1.0}}));
  CHECK(flipped.psi() == DirichletPolynomial({{1, 1.0}, {2, 1.0}}));
  CHECK(flipped.c0() == 1);
  CHECK(flipped.certification().provenance == "inherited");

  SUBCASE("matches a vertical translate with 2^{-i tau} close to chi(2)") {
    // chi(2) = e^{i theta}; choose tau = (2 pi k - theta) / log 2 for large k, then
    // phi(s + i tau) - i tau c0 = phi_chi(s) exactly up to rounding.
    const double theta = 1.1;
    const Symbol twisted = twist_symbol(phi, Character::from_angles({{2, theta}}));
    const double tau = (2.0 * oracle::kPi * 1000.0 - theta) / std::log(2.0);
    for (double sig : {0.1, 0.5, 2.0}) {
      const Complex s(sig, 0.3);
      const Complex shifted = evaluate_symbol(phi, s + Complex(0.0, tau)) - Complex(0.0, tau);
      CHECK(std::abs(shifted - evaluate_symbol(twisted, s)) < 1e-6);
    }
  }
}

TEST_CASE("Re phi >= c0 Re s on the right half-plane for certified Gge1 symbols") {
  std::mt19937_64 rng(21);
  const auto pool = oracle::smooth_indices({2, 3, 5}, 30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int c0 = 1 + trial % 2;
    const Symbol phi = Symbol::certify(c0, oracle::random_positive_psi(rng, pool, 3, 0.0));
    for (int k = 0; k < 50; ++k) {
      const Complex s(3.0 * u(rng), 200.0 * (u(rng) - 0.5));
      CHECK(evaluate_symbol(phi, s).real() >= c0 * s.real() - 1e-12);
    }
  }
}

TEST_CASE("describe") {
  CHECK(Symbol::certify(1, {{1, 1.0}, {2, -1.0}}).describe() == "s + 1 - 2^{-s}");
  CHECK(Symbol::certify(2, {}).describe() == "2s");
}
