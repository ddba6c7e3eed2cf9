#include "dcomp/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcomp/arith.hpp"
#include "dcomp/error.hpp"
#include "dcomp/log.hpp"

namespace dcomp {

namespace {

constexpr double kUnitTolerance = 1e-12;

std::vector<Term> build_terms(std::map<Index, Complex> coeffs) {
  std::vector<Term> out;
  out.reserve(coeffs.size());
  for (const auto& [n, a] : coeffs) {
    if (n == 0) throw InvalidArgument("Dirichlet indices start at 1");
    if (a == Complex(0.0, 0.0)) continue;
    out.push_back({n, a, std::log(static_cast<double>(n))});
  }
  return out;
}

}  // namespace

DirichletPolynomial::DirichletPolynomial(
    std::initializer_list<std::pair<const Index, Complex>> init)
    : DirichletPolynomial(std::map<Index, Complex>(init)) {}

DirichletPolynomial::DirichletPolynomial(const std::map<Index, Complex>& coeffs)
    : terms_(build_terms(coeffs)) {}

DirichletPolynomial DirichletPolynomial::from_pairs(std::vector<std::pair<Index, Complex>> pairs) {
  std::map<Index, Complex> acc;
  for (const auto& [n, a] : pairs) {
    if (n == 0) throw InvalidArgument("Dirichlet indices start at 1");
    acc[n] += a;
  }
  return DirichletPolynomial(acc);
}

Complex DirichletPolynomial::coefficient(Index n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                             [](const Term& t, Index v) { return t.n < v; });
  return (it != terms_.end() && it->n == n) ? it->a : Complex(0.0, 0.0);
}

DirichletPolynomial DirichletPolynomial::without_constant() const {
  DirichletPolynomial out;
  for (const Term& t : terms_)
    if (t.n != 1) out.terms_.push_back(t);
  return out;
}

std::vector<Index> DirichletPolynomial::support_primes() const {
  std::vector<Index> primes;
  for (const Term& t : terms_)
    for (auto [p, e] : factorize(t.n)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

double DirichletPolynomial::tail_bound(double sigma, int derivative_order) const {
  double acc = 0.0;
  for (const Term& t : terms_) {
    if (t.n == 1) continue;
    acc += std::abs(t.a) * std::exp(-sigma * t.log_n) * std::pow(t.log_n, derivative_order);
  }
  return acc;
}

std::map<Index, Complex> DirichletPolynomial::to_map() const {
  std::map<Index, Complex> out;
  for (const Term& t : terms_) out.emplace(t.n, t.a);
  return out;
}

DirichletPolynomial operator+(const DirichletPolynomial& f, const DirichletPolynomial& g) {
  auto acc = f.to_map();
  for (const Term& t : g.terms()) acc[t.n] += t.a;
  return DirichletPolynomial(acc);
}

DirichletPolynomial operator-(const DirichletPolynomial& f, const DirichletPolynomial& g) {
  return f + Complex(-1.0, 0.0) * g;
}

DirichletPolynomial operator*(Complex c, const DirichletPolynomial& f) {
  std::map<Index, Complex> acc;
  for (const Term& t : f.terms()) acc.emplace(t.n, c * t.a);
  return DirichletPolynomial(acc);
}

// ---------------------------------------------------------------------------

Character::Character(const std::map<Index, Complex>& values) {
  for (const auto& [p, z] : values) {
    if (!is_prime(p)) {
      std::ostringstream os;
      os << "character key " << p << " is not prime";
      throw InvalidArgument(os.str());
    }
    if (std::abs(std::abs(z) - 1.0) > kUnitTolerance)
      throw InvalidArgument("character values must be unimodular");
  }
  values_ = values;
}

Character Character::from_angles(const std::map<Index, double>& angles) {
  std::map<Index, Complex> values;
  for (const auto& [p, theta] : angles) values.emplace(p, std::polar(1.0, theta));
  return Character(values);
}

Character Character::vertical_translate(double tau, const std::vector<Index>& primes) {
  std::map<Index, Complex> values;
  for (Index p : primes)
    values.emplace(p, std::polar(1.0, -tau * std::log(static_cast<double>(p))));
  return Character(values);
}

Complex Character::at_prime(Index p) const {
  auto it = values_.find(p);
  return it == values_.end() ? Complex(1.0, 0.0) : it->second;
}

Complex Character::operator()(Index n) const {
  if (n == 0) throw InvalidArgument("characters are defined on positive integers");
  Complex value(1.0, 0.0);
  for (const auto& [p, z] : values_) {
    if (n == 1) break;
    while (n % p == 0) {
      n /= p;
      value *= z;
    }
  }
  if (n != 1 && log_threshold() <= LogLevel::Notice) {
    std::ostringstream os;
    os << "character has no value on the prime factors of " << n << "; using z_p = 1";
    log(LogLevel::Notice, os.str());
  }
  return value;
}

Character Character::conj() const {
  std::map<Index, Complex> values;
  for (const auto& [p, z] : values_) values.emplace(p, std::conj(z));
  return Character(values);
}

std::map<Index, double> Character::angles() const {
  std::map<Index, double> out;
  for (const auto& [p, z] : values_) out.emplace(p, std::arg(z));
  return out;
}

// ---------------------------------------------------------------------------

SpaceTag SpaceTag::bergman(double alpha) {
  if (!(alpha > -1.0)) throw InvalidArgument("Bergman parameter alpha must exceed -1");
  return {Kind::Bergman, alpha};
}

double SpaceTag::norm_weight(Index n) const {
  if (is_hardy()) return 1.0;
  return std::pow(1.0 + std::log(static_cast<double>(n)), -(1.0 + alpha));
}

double SpaceTag::basis_scale(Index n) const {
  if (is_hardy()) return 1.0;
  return std::pow(1.0 + std::log(static_cast<double>(n)), 0.5 * (1.0 + alpha));
}

// ---------------------------------------------------------------------------

Complex evaluate(const DirichletPolynomial& f, Complex s) {
  Complex acc(0.0, 0.0);
  for (const Term& t : f.terms()) acc += t.a * std::exp(-s * t.log_n);
  return acc;
}

std::pair<Complex, Complex> evaluate_with_derivative(const DirichletPolynomial& f, Complex s) {
  Complex value(0.0, 0.0), slope(0.0, 0.0);
  for (const Term& t : f.terms()) {
    const Complex term = t.a * std::exp(-s * t.log_n);
    value += term;
    slope -= t.log_n * term;
  }
  return {value, slope};
}

DirichletPolynomial derivative(const DirichletPolynomial& f) {
  std::map<Index, Complex> acc;
  for (const Term& t : f.terms())
    if (t.n != 1) acc.emplace(t.n, -t.a * t.log_n);
  return DirichletPolynomial(acc);
}

DirichletPolynomial multiply(const DirichletPolynomial& f, const DirichletPolynomial& g) {
  std::map<Index, Complex> acc;
  for (const Term& x : f.terms()) {
    for (const Term& y : g.terms()) {
      auto n = checked_mul(x.n, y.n);
      if (!n) throw InvalidArgument("index overflow in Dirichlet product");
      acc[*n] += x.a * y.a;
    }
  }
  return DirichletPolynomial(acc);
}

std::vector<Index> semigroup_up_to(const std::vector<Index>& generators, Index limit,
                                   std::size_t max_terms) {
  std::vector<Index> elems{1};
  if (limit < 1) return {};
  std::vector<Index> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (Index g : gens) {
    if (g < 2) continue;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto p = checked_mul(elems[i], g);
      if (p && *p <= limit) {
        elems.push_back(*p);
        if (elems.size() > max_terms)
          throw InvalidArgument("semigroup enumeration exceeds the term budget");
      }
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  }
  return elems;
}

DirichletPolynomial exponentiate(const DirichletPolynomial& f, Index max_index,
                                 std::size_t max_terms) {
  if (max_index < 1) throw InvalidArgument("exponentiate needs max_index >= 1");
  const DirichletPolynomial g = f.without_constant();
  std::vector<Index> gens;
  for (const Term& t : g.terms()) gens.push_back(t.n);
  const std::vector<Index> elems = semigroup_up_to(gens, max_index, max_terms);

  std::vector<Complex> b(elems.size());
  b[0] = std::exp(f.constant_term());
  for (std::size_t i = 1; i < elems.size(); ++i) {
    const Index m = elems[i];
    Complex acc(0.0, 0.0);
    for (const Term& t : g.terms()) {
      if (t.n > m) break;
      if (m % t.n != 0) continue;
      const Index q = m / t.n;
      auto it = std::lower_bound(elems.begin(), elems.begin() + i, q);
      if (it == elems.begin() + i || *it != q) continue;
      acc += t.a * t.log_n * b[static_cast<std::size_t>(it - elems.begin())];
    }
    b[i] = acc / std::log(static_cast<double>(m));
  }

  std::vector<std::pair<Index, Complex>> pairs;
  pairs.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) pairs.emplace_back(elems[i], b[i]);
  return DirichletPolynomial::from_pairs(std::move(pairs));
}

DirichletPolynomial twist(const DirichletPolynomial& f, const Character& chi) {
  std::map<Index, Complex> acc;
  for (const Term& t : f.terms()) acc.emplace(t.n, t.a * chi(t.n));
  return DirichletPolynomial(acc);
}

Character character_power(const Character& chi, int k) {
  if (k < 0) throw InvalidArgument("character_power needs k >= 0");
  if (k == 0) return Character::trivial();
  std::map<Index, Complex> values;
  for (const auto& [p, z] : chi.values()) {
    // Through the angle so the result stays on the unit circle exactly.
    values.emplace(p, std::polar(1.0, std::arg(z) * k));
  }
  if (k == 1) return chi;
  return Character(values);
}

double norm_squared(const DirichletPolynomial& f, const SpaceTag& space) {
  double acc = 0.0;
  for (const Term& t : f.terms()) acc += std::norm(t.a) * space.norm_weight(t.n);
  return acc;
}

}  // namespace dcomp
