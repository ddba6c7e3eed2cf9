#pragma once

#include <optional>
#include <string>

#include "dcomp/dirichlet.hpp"

namespace dcomp {

/// Symbol subclasses: characteristic zero, or c0 >= 1.
enum class SymbolClass { G0, Gge1 };

enum class Verdict { Certified, Failed, Inconclusive };

const char* to_string(SymbolClass c);
const char* to_string(Verdict v);

/// Outcome of the numeric class check on the boundary line Re s = 0.
struct CertificationReport {
  double min_real_part = 0.0;     ///< smallest sampled Re psi(it)
  Complex attained_at{};          ///< the sample point i t achieving it
  std::size_t sample_count = 0;
  double lipschitz_bound = 0.0;   ///< sum |a_n| log n
  double curvature_bound = 0.0;   ///< sum |a_n| (log n)^2
  double t_range = 0.0;
  double spacing = 0.0;
  double threshold = 0.0;         ///< 1/2 for c0 = 0, 0 otherwise
  /// Re a_1 - sum_{n>=2} |a_n|: a lower bound for Re psi on all of Re s >= 0.
  double coefficient_bound = 0.0;
  /// Lower bound used for the verdict (grid or coefficient route).
  double certified_lower_bound = 0.0;
  double margin = 0.0;            ///< certified_lower_bound - threshold
  bool margin_zero = false;       ///< certified exactly at the threshold
  std::string method;             ///< imaginary-constant | coefficient-bound | grid | grid-failed | grid-gap
  std::string provenance = "computed";  ///< computed | inherited | assumed
  Verdict verdict = Verdict::Inconclusive;
};

struct CertifyParams {
  double t_range = 1e3;
  std::size_t samples = 1'000'000;
};

/// Checks Re psi >= 1/2 (c0 = 0) or Re psi >= 0 / psi an imaginary constant
/// (c0 >= 1) on the boundary, sampling a uniform grid of [-t_range, t_range]
/// and bridging between samples with the derivative bounds. The window is a
/// finite horizon (an even sample count is rounded up so t = 0 is a node);
/// the coefficient bound, when it clears the threshold,
/// certifies the whole half-plane.
CertificationReport certify_class(int c0, const DirichletPolynomial& psi, double t_range,
                                  std::size_t samples);

/// phi(s) = c0 s + psi(s) together with the record of its class check.
class Symbol {
 public:
  /// Runs certify_class; throws CertificationFailure unless certified.
  static Symbol certify(int c0, DirichletPolynomial psi, const CertifyParams& params = {});
  /// Accepts the class implied by c0 without a check; logs a warning.
  static Symbol assume(int c0, DirichletPolynomial psi);

  int c0() const noexcept { return c0_; }
  const DirichletPolynomial& psi() const noexcept { return psi_; }
  SymbolClass symbol_class() const noexcept { return c0_ == 0 ? SymbolClass::G0 : SymbolClass::Gge1; }
  const CertificationReport& certification() const noexcept { return cert_; }

  /// Human-readable form such as "s + 1 - 2^{-s}".
  std::string describe() const;

 private:
  Symbol(int c0, DirichletPolynomial psi, CertificationReport cert);
  friend Symbol twist_symbol(const Symbol&, const Character&);

  int c0_ = 0;
  DirichletPolynomial psi_;
  CertificationReport cert_;
};

/// phi_chi = c0 s + psi_chi; class and certificate carry over (provenance "inherited").
Symbol twist_symbol(const Symbol& phi, const Character& chi);

Complex evaluate_symbol(const Symbol& phi, Complex s);
std::pair<Complex, Complex> evaluate_symbol_with_derivative(const Symbol& phi, Complex s);

/// phi(+inf) = a_1 when c0 = 0; nullopt ("unbounded") when c0 >= 1.
std::optional<Complex> symbol_at_infinity(const Symbol& phi);

}  // namespace dcomp
