#include "dcomp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcomp/error.hpp"
#include "dcomp/parallel.hpp"

namespace dcomp {

const char* to_string(CountingKind k) {
  switch (k) {
    case CountingKind::Full: return "full";
    case CountingKind::Restricted: return "restricted";
    case CountingKind::Weighted: return "weighted";
    default: return "mean";
  }
}

const char* to_string(LittleOVerdict v) {
  switch (v) {
    case LittleOVerdict::Consistent: return "consistent-with-little-o";
    case LittleOVerdict::Violated: return "violated";
    case LittleOVerdict::NotApplicable: return "not-applicable";
    default: return "inconclusive";
  }
}

namespace {

void require_right_half_plane(Complex w) {
  if (!(w.real() > 0.0)) throw InvalidArgument("counting functions need Re w > 0");
}

// Sums weight(Re s) * multiplicity over roots in the window; an empty window
// (upper bound below the lower cutoff) gives an empty root set.
template <typename Weight>
CountingValue accumulate(const Symbol& phi, Complex w, const Rectangle& window,
                         const CountingParams& params, Weight weight) {
  CountingValue out;
  out.window = window;
  if (!(window.sigma_hi > window.sigma_lo)) return out;
  const RootSet rs = find_preimages_robust(phi, w, window, params.tol, params.max_retries);
  out.window = rs.window;
  out.jitter_retries = rs.jitter_retries;
  for (const Root& r : rs.roots) {
    out.value += weight(r.s) * r.multiplicity;
    out.root_count += static_cast<std::size_t>(r.multiplicity);
    out.all_polished = out.all_polished && r.polished;
  }
  return out;
}

}  // namespace

double preimage_sigma_bound(const Symbol& phi, Complex w, double tol) {
  if (phi.c0() >= 1) return w.real() / phi.c0() + tol;
  const DirichletPolynomial& psi = phi.psi();
  const double gap = std::abs(w - psi.constant_term());
  if (gap == 0.0)
    throw AdaptiveBoundFailure("w equals phi(+inf); preimages escape to +infinity");
  if (psi.tail_bound(tol, 0) < gap) return tol;
  double lo = tol, hi = 1.0;
  while (psi.tail_bound(hi, 0) >= gap) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw AdaptiveBoundFailure("no finite sigma bound for the preimages of w");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (psi.tail_bound(mid, 0) < gap ? hi : lo) = mid;
  }
  return hi * (1.0 + 1e-9) + tol;
}

CountingValue nevanlinna_full(const Symbol& phi, Complex w, double t_trunc,
                              const CountingParams& params) {
  require_right_half_plane(w);
  if (phi.c0() < 1) throw InvalidArgument("nevanlinna_full needs a symbol with c0 >= 1");
  if (!(t_trunc > 0.0)) throw InvalidArgument("truncation height must be positive");
  const Rectangle window{params.tol, preimage_sigma_bound(phi, w, params.tol), -t_trunc, t_trunc};

  CountingValue out;
  out.window = window;
  double half_value = 0.0;
  if (window.sigma_hi > window.sigma_lo) {
    const RootSet rs = find_preimages_robust(phi, w, window, params.tol, params.max_retries);
    out.window = rs.window;
    out.jitter_retries = rs.jitter_retries;
    for (const Root& r : rs.roots) {
      const double contribution = r.s.real() * r.multiplicity;
      out.value += contribution;
      if (std::abs(r.s.imag()) < 0.5 * t_trunc) half_value += contribution;
      out.root_count += static_cast<std::size_t>(r.multiplicity);
      out.all_polished = out.all_polished && r.polished;
    }
  }
  out.kind = CountingKind::Full;
  out.t_trunc = t_trunc;
  out.tail_increment = out.value - half_value;
  std::ostringstream os;
  os << "|Im s| < " << t_trunc << ", " << out.window.sigma_lo << " < Re s < "
     << out.window.sigma_hi << "; increment over last doubling " << out.tail_increment;
  out.truncation_note = os.str();
  return out;
}

CountingValue restricted_counting(const Symbol& phi, Complex w, const CountingParams& params) {
  require_right_half_plane(w);
  const Rectangle window{params.tol, preimage_sigma_bound(phi, w, params.tol), -1.0, 1.0};
  CountingValue out = accumulate(phi, w, window, params, [](Complex s) { return s.real(); });
  out.kind = CountingKind::Restricted;
  out.truncation_note = "|Im s| < 1 (finite window, no truncation)";
  return out;
}

CountingValue weighted_counting(const Symbol& phi, Complex w, double alpha,
                                const CountingParams& params) {
  require_right_half_plane(w);
  if (!(alpha > -1.0) && alpha != -1.0) throw InvalidArgument("weight needs alpha >= -1");
  const Rectangle window{params.tol, preimage_sigma_bound(phi, w, params.tol), -1.0, 1.0};
  const double exponent = 2.0 + alpha;
  CountingValue out = accumulate(phi, w, window, params,
                                 [&](Complex s) { return std::pow(s.real(), exponent); });
  out.kind = CountingKind::Weighted;
  out.alpha = alpha;
  out.truncation_note = "|Im s| < 1 (finite window, no truncation)";
  return out;
}

CountingValue mean_counting(const Symbol& phi, double sigma0, double height, Complex w,
                            double alpha, const CountingParams& params) {
  require_right_half_plane(w);
  if (!(sigma0 > 0.0) || !(height > 0.0))
    throw InvalidArgument("mean counting needs sigma0 > 0 and T > 0");
  const Rectangle window{sigma0, preimage_sigma_bound(phi, w, params.tol), -height, height};
  const double exponent = 2.0 + alpha;
  CountingValue out = accumulate(phi, w, window, params,
                                 [&](Complex s) { return std::pow(s.real(), exponent); });
  out.value /= height;
  out.kind = CountingKind::Mean;
  out.alpha = alpha;
  out.sigma0 = sigma0;
  out.height = height;
  std::ostringstream os;
  os << "|Im s| < " << height << ", " << sigma0 << " < Re s < " << out.window.sigma_hi
     << " (adaptive upper bound)";
  out.truncation_note = os.str();
  return out;
}

double estimate_bound_constant(const Symbol& phi, const std::vector<Complex>& w_grid,
                               const std::vector<Character>& characters,
                               const CountingParams& params) {
  if (phi.c0() < 1) throw InvalidArgument("bound constant needs a symbol with c0 >= 1");
  if (w_grid.empty() || characters.empty())
    throw InvalidArgument("bound constant needs nonempty w grid and character samples");
  for (Complex w : w_grid) {
    if (!(w.real() > 0.0) || !(w.real() < phi.c0()))
      throw InvalidArgument("bound constant needs 0 < Re w < c0 on the grid");
  }
  std::vector<double> per_character(characters.size(), 0.0);
  parallel_for(characters.size(), [&](std::size_t k) {
    const Symbol twisted = twist_symbol(phi, characters[k]);
    double best = 0.0;
    for (Complex w : w_grid) {
      const double n = restricted_counting(twisted, w, params).value;
      best = std::max(best, n * (1.0 + w.imag() * w.imag()) / w.real());
    }
    per_character[k] = best;
  });
  return *std::max_element(per_character.begin(), per_character.end());
}

LittleOReport verify_criterion_littleo(const Symbol& phi, const std::vector<double>& sigmas,
                                       const LittleOParams& params) {
  LittleOReport out;
  if (phi.c0() < 1) {
    out.verdict = LittleOVerdict::NotApplicable;
    out.note = "counting criterion is stated for c0 >= 1";
    return out;
  }
  if (sigmas.empty() || params.im_values.empty())
    throw InvalidArgument("little-o check needs sigma and Im w samples");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw InvalidArgument("sigma samples must be positive");
    if (i > 0 && !(sigmas[i] < sigmas[i - 1]))
      throw InvalidArgument("sigma sequence must be strictly decreasing");
  }

  std::vector<Symbol> symbols;
  if (params.characters.empty()) {
    symbols.push_back(phi);
  } else {
    for (const Character& chi : params.characters) symbols.push_back(twist_symbol(phi, chi));
    out.sampled_uniform = true;
  }

  out.sigmas = sigmas;
  out.ratios.assign(sigmas.size(), 0.0);
  const std::size_t per_sigma = params.im_values.size() * symbols.size();
  std::vector<double> cells(sigmas.size() * per_sigma, 0.0);
  parallel_for(cells.size(), [&](std::size_t idx) {
    const std::size_t i = idx / per_sigma;
    const std::size_t rest = idx % per_sigma;
    const Symbol& sym = symbols[rest / params.im_values.size()];
    const Complex w(sigmas[i], params.im_values[rest % params.im_values.size()]);
    cells[idx] = nevanlinna_full(sym, w, params.t_trunc, params.counting).value / sigmas[i];
  });
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    out.ratios[i] = *std::max_element(cells.begin() + static_cast<std::ptrdiff_t>(i * per_sigma),
                                      cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * per_sigma));

  bool non_increasing = true;
  for (std::size_t i = 1; i < out.ratios.size(); ++i)
    non_increasing = non_increasing && out.ratios[i] <= out.ratios[i - 1] * 1.05 + 1e-12;
  const double last = out.ratios.back();
  const double first = out.ratios.front();
  if (last < params.threshold && non_increasing) {
    out.verdict = LittleOVerdict::Consistent;
  } else if (last >= params.threshold && last >= 0.5 * first) {
    out.verdict = LittleOVerdict::Violated;
  } else {
    out.verdict = LittleOVerdict::Inconclusive;
  }
  std::ostringstream os;
  os << "R(sigma) = max N(w)/Re w over " << params.im_values.size() << " Im w samples";
  if (out.sampled_uniform)
    os << " and " << symbols.size() << " sampled characters (sampled, not the full torus)";
  os << "; threshold " << params.threshold << "; truncation |Im s| < " << params.t_trunc;
  out.note = os.str();
  return out;
}

}  // namespace dcomp
