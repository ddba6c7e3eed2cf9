#include "dcomp/rootfind.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "dcomp/error.hpp"
#include "dcomp/log.hpp"

namespace dcomp {

namespace {

constexpr double kResidualTarget = 1e-9;
// Split positions tried in order; off-centre values sidestep roots that sit
// exactly on a midpoint line.
constexpr std::array<double, 7> kSplitFractions{0.5, 0.5731, 0.4383, 0.6271, 0.3529, 0.7, 0.27};

struct Sample {
  Complex s;
  Complex g;
  Complex dg;
};

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

// Coefficient bounds on phi(r): if w lies outside, phi - w has no zero on
// the closed rectangle.
bool excluded_by_range(const Symbol& phi, Complex w, const Rectangle& r) {
  const double c0 = phi.c0();
  const double spread = phi.psi().tail_bound(r.sigma_lo, 0);
  const Complex a1 = phi.psi().constant_term();
  const double re_lo = c0 * r.sigma_lo + a1.real() - spread;
  const double re_hi = c0 * r.sigma_hi + a1.real() + spread;
  const double im_lo = c0 * r.t_lo + a1.imag() - spread;
  const double im_hi = c0 * r.t_hi + a1.imag() + spread;
  const double slack = 1e-12 * (1.0 + std::abs(w));
  return w.real() < re_lo - slack || w.real() > re_hi + slack || w.imag() < im_lo - slack ||
         w.imag() > im_hi + slack;
}

int winding_with_floor(const Symbol& phi, Complex w, const Rectangle& r, double min_step) {
  const double d2 = phi.psi().tail_bound(r.sigma_lo, 2);
  auto sample = [&](Complex s) {
    auto [v, d] = evaluate_symbol_with_derivative(phi, s);
    return Sample{s, v - w, d};
  };
  auto certified = [&](const Sample& x, double h) {
    return std::abs(x.dg) * h + 0.5 * d2 * h * h < std::abs(x.g);
  };

  const std::array<Complex, 4> corners{Complex(r.sigma_lo, r.t_lo), Complex(r.sigma_hi, r.t_lo),
                                       Complex(r.sigma_hi, r.t_hi), Complex(r.sigma_lo, r.t_hi)};
  double total = 0.0;
  std::vector<std::pair<Sample, Sample>> stack;
  for (int e = 0; e < 4; ++e) {
    stack.emplace_back(sample(corners[e]), sample(corners[(e + 1) % 4]));
    while (!stack.empty()) {
      auto [p, q] = stack.back();
      stack.pop_back();
      const double h = std::abs(q.s - p.s);
      if (certified(p, h) || certified(q, h)) {
        total += std::arg(q.g / p.g);
        continue;
      }
      if (h < min_step) {
        std::ostringstream os;
        os << "root of phi - w within " << min_step << " of the contour near s = " << p.s;
        throw BoundaryHit(os.str());
      }
      const Sample m = sample(0.5 * (p.s + q.s));
      stack.emplace_back(m, q);
      stack.emplace_back(p, m);
    }
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double k = std::round(turns);
  if (std::abs(turns - k) >= 0.25) throw BoundaryHit("winding integral not near an integer");
  return static_cast<int>(k);
}

}  // namespace

void Rectangle::validate() const {
  if (!(sigma_lo > 0.0)) throw InvalidArgument("rectangle must lie in Re s > 0");
  if (!(sigma_hi > sigma_lo) || !(t_hi > t_lo))
    throw InvalidArgument("rectangle must have positive area");
}

bool Rectangle::contains_strictly(Complex s) const {
  return s.real() > sigma_lo && s.real() < sigma_hi && s.imag() > t_lo && s.imag() < t_hi;
}

double Rectangle::diameter() const { return std::hypot(sigma_hi - sigma_lo, t_hi - t_lo); }

Complex Rectangle::center() const {
  return {0.5 * (sigma_lo + sigma_hi), 0.5 * (t_lo + t_hi)};
}

int RootSet::multiplicity_sum() const {
  int acc = 0;
  for (const Root& r : roots) acc += r.multiplicity;
  return acc;
}

NewtonResult polish_root(const Symbol& phi, Complex w, Complex start, int max_iterations) {
  auto residual_at = [&](Complex s) { return std::abs(evaluate_symbol(phi, s) - w); };
  Complex s = start;
  auto [v, d] = evaluate_symbol_with_derivative(phi, s);
  Complex g = v - w;
  double r = std::abs(g);
  const double floor = 1e-15 * (1.0 + std::abs(w));
  for (int it = 0; it < max_iterations && r > floor; ++it) {
    if (d == Complex(0.0, 0.0)) break;
    const Complex step = g / d;
    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Complex trial = s - lambda * step;
      const double rt = residual_at(trial);
      if (rt < r) {
        s = trial;
        r = rt;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    std::tie(v, d) = evaluate_symbol_with_derivative(phi, s);
    g = v - w;
    if (std::abs(lambda * step) <= 1e-16 * (1.0 + std::abs(s))) break;
  }
  return {s, r, r <= kResidualTarget};
}

int winding_number(const Symbol& phi, Complex w, const Rectangle& r, double tol) {
  r.validate();
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  return winding_with_floor(phi, w, r, tol);
}

RootSet find_preimages(const Symbol& phi, Complex w, const Rectangle& window, double tol) {
  window.validate();
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  RootSet out;
  out.window = window;
  if (excluded_by_range(phi, w, window)) return out;

  out.total_winding = winding_with_floor(phi, w, window, tol);
  // Interior cuts may pass much closer to roots than the outer contour.
  const double inner_step = tol * 1e-4;

  std::vector<std::pair<Rectangle, int>> stack{{window, out.total_winding}};
  while (!stack.empty()) {
    auto [r, k] = stack.back();
    stack.pop_back();
    if (k == 0) continue;
    if (k < 0) throw Error("negative winding number in subdivision");

    if (k == 1) {
      const NewtonResult nr = polish_root(phi, w, r.center());
      if (nr.converged && r.contains_strictly(nr.s)) {
        out.roots.push_back({nr.s, 1, nr.residual, true});
        continue;
      }
      if (r.diameter() < tol) {
        const bool inside = r.contains_strictly(nr.s);
        const Complex s = inside ? nr.s : r.center();
        const double res = std::abs(evaluate_symbol(phi, s) - w);
        std::ostringstream os;
        os << "Newton polishing stalled near s = " << s << " (residual " << res << ")";
        log(LogLevel::Notice, os.str());
        out.roots.push_back({s, 1, res, false});
        continue;
      }
    } else if (r.diameter() < tol) {
      const Complex s = r.center();
      out.roots.push_back({s, k, std::abs(evaluate_symbol(phi, s) - w), false});
      continue;
    }

    const bool split_sigma = (r.sigma_hi - r.sigma_lo) > (r.t_hi - r.t_lo);
    bool split_done = false;
    for (double f : kSplitFractions) {
      Rectangle a = r, b = r;
      if (split_sigma) {
        const double cut = r.sigma_lo + f * (r.sigma_hi - r.sigma_lo);
        a.sigma_hi = cut;
        b.sigma_lo = cut;
      } else {
        const double cut = r.t_lo + f * (r.t_hi - r.t_lo);
        a.t_hi = cut;
        b.t_lo = cut;
      }
      int ka = 0;
      try {
        ka = excluded_by_range(phi, w, a) ? 0 : winding_with_floor(phi, w, a, inner_step);
      } catch (const BoundaryHit&) {
        continue;
      }
      stack.emplace_back(b, k - ka);
      stack.emplace_back(a, ka);
      split_done = true;
      break;
    }
    if (!split_done) throw BoundaryHit("no admissible split line for a subrectangle");
  }

  if (out.multiplicity_sum() != out.total_winding)
    throw Error("root multiplicities do not add up to the contour winding number");
  return out;
}

RootSet find_preimages_robust(const Symbol& phi, Complex w, const Rectangle& window, double tol,
                              int max_retries) {
  try {
    return find_preimages(phi, w, window, tol);
  } catch (const BoundaryHit& first) {
    double key[6] = {w.real(), w.imag(), window.sigma_lo, window.sigma_hi, window.t_lo,
                     window.t_hi};
    std::mt19937_64 rng(fnv1a(key, sizeof key));
    std::uniform_real_distribution<double> jitter(-10.0 * tol, 10.0 * tol);
    std::string last = first.what();
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
      Rectangle moved = window;
      moved.sigma_lo = std::max(0.5 * window.sigma_lo, window.sigma_lo + jitter(rng));
      moved.sigma_hi = window.sigma_hi + jitter(rng);
      moved.t_lo = window.t_lo + jitter(rng);
      moved.t_hi = window.t_hi + jitter(rng);
      try {
        RootSet rs = find_preimages(phi, w, moved, tol);
        rs.jitter_retries = attempt;
        return rs;
      } catch (const BoundaryHit& e) {
        last = e.what();
      }
    }
    throw BoundaryHit("jitter retries exhausted: " + last);
  }
}

}  // namespace dcomp
