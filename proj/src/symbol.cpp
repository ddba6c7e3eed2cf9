#include "dcomp/symbol.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dcomp/error.hpp"
#include "dcomp/log.hpp"

namespace dcomp {

const char* to_string(SymbolClass c) { return c == SymbolClass::G0 ? "G0" : "Gge1"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Failed: return "failed";
    default: return "inconclusive";
  }
}

CertificationReport certify_class(int c0, const DirichletPolynomial& psi, double t_range,
                                  std::size_t samples) {
  if (c0 < 0) throw InvalidArgument("characteristic must be nonnegative");
  if (!(t_range > 0.0)) throw InvalidArgument("certification window must be positive");
  if (samples < 2) throw InvalidArgument("certification needs at least two samples");

  // An odd count centres the grid on t = 0.
  if (samples % 2 == 0) ++samples;
  const std::size_t mid = (samples - 1) / 2;

  CertificationReport r;
  r.t_range = t_range;
  r.sample_count = samples;
  r.threshold = c0 == 0 ? 0.5 : 0.0;
  r.lipschitz_bound = psi.tail_bound(0.0, 1);
  r.curvature_bound = psi.tail_bound(0.0, 2);
  r.coefficient_bound = psi.constant_term().real() - psi.tail_bound(0.0, 0);
  r.spacing = 2.0 * t_range / static_cast<double>(samples - 1);

  r.min_real_part = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = r.spacing * (static_cast<double>(j) - static_cast<double>(mid));
    const double v = evaluate(psi, Complex(0.0, t)).real();
    if (v < r.min_real_part) {
      r.min_real_part = v;
      r.attained_at = Complex(0.0, t);
    }
  }
  // Between neighbouring samples the minimum can dip below the sampled
  // values by at most min(L h / 2, L2 h^2 / 8).
  const double h = r.spacing;
  const double gap = std::min(r.lipschitz_bound * h / 2.0, r.curvature_bound * h * h / 8.0);
  const double grid_lower = r.min_real_part - gap;

  const bool imaginary_constant = c0 >= 1 && psi.max_index() <= 1 &&
                                  psi.constant_term().real() == 0.0;
  if (imaginary_constant) {
    r.method = "imaginary-constant";
    r.certified_lower_bound = 0.0;
    r.verdict = Verdict::Certified;
  } else if (r.coefficient_bound >= r.threshold) {
    r.method = "coefficient-bound";
    r.certified_lower_bound = r.coefficient_bound;
    r.verdict = Verdict::Certified;
  } else if (r.min_real_part < r.threshold) {
    r.method = "grid-failed";
    r.certified_lower_bound = grid_lower;
    r.verdict = Verdict::Failed;
  } else if (grid_lower >= r.threshold) {
    r.method = "grid";
    r.certified_lower_bound = grid_lower;
    r.verdict = Verdict::Certified;
  } else {
    r.method = "grid-gap";
    r.certified_lower_bound = grid_lower;
    r.verdict = Verdict::Inconclusive;
  }
  r.margin = r.certified_lower_bound - r.threshold;
  r.margin_zero = r.verdict == Verdict::Certified && std::abs(r.margin) <= 1e-12;
  return r;
}

Symbol::Symbol(int c0, DirichletPolynomial psi, CertificationReport cert)
    : c0_(c0), psi_(std::move(psi)), cert_(std::move(cert)) {}

Symbol Symbol::certify(int c0, DirichletPolynomial psi, const CertifyParams& params) {
  CertificationReport cert = certify_class(c0, psi, params.t_range, params.samples);
  if (cert.verdict != Verdict::Certified) {
    std::ostringstream os;
    os << "symbol with c0 = " << c0 << " is not certified in "
       << to_string(c0 == 0 ? SymbolClass::G0 : SymbolClass::Gge1) << " (verdict "
       << to_string(cert.verdict) << ", min Re psi = " << cert.min_real_part << " at t = "
       << cert.attained_at.imag() << ")";
    throw CertificationFailure(os.str());
  }
  return Symbol(c0, std::move(psi), std::move(cert));
}

Symbol Symbol::assume(int c0, DirichletPolynomial psi) {
  if (c0 < 0) throw InvalidArgument("characteristic must be nonnegative");
  CertificationReport cert;
  cert.provenance = "assumed";
  cert.method = "override";
  cert.threshold = c0 == 0 ? 0.5 : 0.0;
  cert.verdict = Verdict::Certified;
  Symbol phi(c0, std::move(psi), std::move(cert));
  log(LogLevel::Warning, "class check overridden for symbol " + phi.describe() +
                             "; results assume membership in " +
                             to_string(phi.symbol_class()));
  return phi;
}

std::string Symbol::describe() const {
  std::ostringstream os;
  bool first = true;
  auto put_scalar = [&](double x, bool leading) {
    if (leading) {
      os << x;
    } else {
      os << (x < 0 ? " - " : " + ") << std::abs(x);
    }
  };
  if (c0_ == 1) {
    os << "s";
    first = false;
  } else if (c0_ > 1) {
    os << c0_ << "s";
    first = false;
  }
  for (const Term& t : psi_.terms()) {
    const bool real = t.a.imag() == 0.0;
    if (real) {
      if (t.n == 1) {
        put_scalar(t.a.real(), first);
      } else {
        const double m = std::abs(t.a.real());
        if (first)
          os << (t.a.real() < 0 ? "-" : "");
        else
          os << (t.a.real() < 0 ? " - " : " + ");
        if (m != 1.0) os << m << "*";
        os << t.n << "^{-s}";
      }
    } else {
      if (!first) os << " + ";
      os << "(" << t.a.real() << (t.a.imag() < 0 ? "-" : "+") << std::abs(t.a.imag()) << "i)";
      if (t.n != 1) os << "*" << t.n << "^{-s}";
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Symbol twist_symbol(const Symbol& phi, const Character& chi) {
  CertificationReport cert = phi.certification();
  cert.provenance = "inherited";
  return Symbol(phi.c0(), twist(phi.psi(), chi), std::move(cert));
}

Complex evaluate_symbol(const Symbol& phi, Complex s) {
  return static_cast<double>(phi.c0()) * s + evaluate(phi.psi(), s);
}

std::pair<Complex, Complex> evaluate_symbol_with_derivative(const Symbol& phi, Complex s) {
  auto [v, d] = evaluate_with_derivative(phi.psi(), s);
  const double c0 = static_cast<double>(phi.c0());
  return {c0 * s + v, c0 + d};
}

std::optional<Complex> symbol_at_infinity(const Symbol& phi) {
  if (phi.c0() >= 1) return std::nullopt;
  return phi.psi().constant_term();
}

}  // namespace dcomp
