#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace dcomp {

using Complex = std::complex<double>;
using Index = std::uint64_t;

/// One nonzero term a * n^{-s}; log n is cached because every evaluation
/// needs it.
struct Term {
  Index n;
  Complex a;
  double log_n;
};

/// Finitely supported Dirichlet series sum a_n n^{-s}.
///
/// Terms are kept sorted by ascending index and only exact zeros are
/// dropped, so near-cancellations stay visible. Immutable after
/// construction; every operation below is a pure function.
class DirichletPolynomial {
 public:
  DirichletPolynomial() = default;
  DirichletPolynomial(std::initializer_list<std::pair<const Index, Complex>> init);
  explicit DirichletPolynomial(const std::map<Index, Complex>& coeffs);

  /// Sums repeated indices. Rejects index 0.
  static DirichletPolynomial from_pairs(std::vector<std::pair<Index, Complex>> pairs);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Index max_index() const noexcept { return terms_.empty() ? 0 : terms_.back().n; }

  Complex coefficient(Index n) const;
  /// a_1, the value at +infinity.
  Complex constant_term() const { return coefficient(1); }
  /// The polynomial with the index-1 term removed.
  DirichletPolynomial without_constant() const;

  /// Primes dividing some index with a nonzero coefficient.
  std::vector<Index> support_primes() const;

  /// sum_{n>=2} |a_n| n^{-sigma} (log n)^k; bounds |f^{(k)} - a_1 [k=0]| on
  /// the closed half-plane Re s >= sigma.
  double tail_bound(double sigma, int derivative_order = 0) const;

  std::map<Index, Complex> to_map() const;

  friend DirichletPolynomial operator+(const DirichletPolynomial& f, const DirichletPolynomial& g);
  friend DirichletPolynomial operator-(const DirichletPolynomial& f, const DirichletPolynomial& g);
  friend DirichletPolynomial operator*(Complex c, const DirichletPolynomial& f);
  friend bool operator==(const DirichletPolynomial& f, const DirichletPolynomial& g) {
    return f.to_map() == g.to_map();
  }

 private:
  std::vector<Term> terms_;
};

/// A point of the polytorus, stored on finitely many primes. Primes not
/// stored act as z_p = 1.
class Character {
 public:
  Character() = default;
  /// Rejects non-prime keys and values off the unit circle by more than 1e-12.
  explicit Character(const std::map<Index, Complex>& values);
  static Character from_angles(const std::map<Index, double>& angles);
  static Character trivial() { return Character(); }
  /// z_p = p^{-i tau}: the character realised by the vertical translation
  /// s -> s + i tau.
  static Character vertical_translate(double tau, const std::vector<Index>& primes);

  const std::map<Index, Complex>& values() const noexcept { return values_; }
  Complex at_prime(Index p) const;
  bool covers(Index p) const { return values_.count(p) != 0; }

  /// chi(n) = prod z_p^{alpha_p}. Prime factors outside the stored support
  /// contribute 1 and log a notice.
  Complex operator()(Index n) const;

  Character conj() const;
  std::map<Index, double> angles() const;

 private:
  std::map<Index, Complex> values_;
};

/// Hardy space H^2 or Bergman space A_alpha (alpha > -1).
struct SpaceTag {
  enum class Kind { Hardy, Bergman };
  Kind kind = Kind::Hardy;
  double alpha = -1.0;

  static SpaceTag hardy() { return {}; }
  static SpaceTag bergman(double alpha);

  bool is_hardy() const noexcept { return kind == Kind::Hardy; }
  /// |n^{-s}|^2 in the space: 1 or (1 + log n)^{-(1+alpha)}.
  double norm_weight(Index n) const;
  /// Factor making w_n n^{-s} a unit vector: (1 + log n)^{(1+alpha)/2}.
  double basis_scale(Index n) const;
};

Complex evaluate(const DirichletPolynomial& f, Complex s);
/// f(s) and f'(s) in one pass.
std::pair<Complex, Complex> evaluate_with_derivative(const DirichletPolynomial& f, Complex s);

DirichletPolynomial derivative(const DirichletPolynomial& f);

/// Dirichlet convolution. Throws InvalidArgument on index overflow.
DirichletPolynomial multiply(const DirichletPolynomial& f, const DirichletPolynomial& g);

/// exp(f) truncated to indices <= max_index, via b_1 = e^{a_1} and
/// b_m log m = sum_{d | m, d > 1} a_d log d b_{m/d}.
/// Only the multiplicative semigroup generated by the support is visited,
/// so max_index may be huge when the support is small. Throws
/// InvalidArgument when max_index < 1 or the visited set exceeds max_terms.
DirichletPolynomial exponentiate(const DirichletPolynomial& f, Index max_index,
                                 std::size_t max_terms = 2'000'000);

DirichletPolynomial twist(const DirichletPolynomial& f, const Character& chi);

Character character_power(const Character& chi, int k);

double norm_squared(const DirichletPolynomial& f, const SpaceTag& space);

/// Sorted products (<= limit) of the given generators, including 1.
std::vector<Index> semigroup_up_to(const std::vector<Index>& generators, Index limit,
                                   std::size_t max_terms);

}  // namespace dcomp
