#include "dcomp/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/SVD>

#include "dcomp/arith.hpp"
#include "dcomp/error.hpp"
#include "dcomp/parallel.hpp"

namespace dcomp {

namespace {

constexpr Index kIndexCap = Index{1} << 62;

// log n * (a_1 - psi): the exponent whose exponential carries the column.
DirichletPolynomial column_exponent(const Symbol& phi, Index n) {
  const double ln = std::log(static_cast<double>(n));
  return Complex(-ln, 0.0) * phi.psi().without_constant();
}

Complex column_scalar(const Symbol& phi, Index n) {
  return std::exp(-phi.psi().constant_term() * std::log(static_cast<double>(n)));
}

std::optional<Index> column_base(const Symbol& phi, Index n) {
  return checked_pow(n, static_cast<unsigned>(phi.c0()));
}

// min over theta >= 0 of G(theta - sigma) - theta * log_cut, with
// G(u) = sum |g_k| k^u. Convex in theta, so golden section suffices.
double log_majorant_tail(const DirichletPolynomial& g, double sigma, double log_cut) {
  auto big_g = [&](double u) {
    double acc = 0.0;
    for (const Term& t : g.terms()) acc += std::abs(t.a) * std::exp(u * t.log_n);
    return acc;
  };
  auto slope = [&](double u) {
    double acc = 0.0;
    for (const Term& t : g.terms()) acc += std::abs(t.a) * t.log_n * std::exp(u * t.log_n);
    return acc;
  };
  auto h = [&](double theta) { return big_g(theta - sigma) - theta * log_cut; };
  if (slope(-sigma) >= log_cut) return h(0.0);
  double hi = 1.0;
  while (slope(hi - sigma) < log_cut && hi < 256.0) hi *= 2.0;
  double lo = 0.0;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double h1 = h(x1), h2 = h(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-10 * (1.0 + hi); ++i) {
    if (h1 < h2) {
      hi = x2;
      x2 = x1;
      h2 = h1;
      x1 = hi - r * (hi - lo);
      h1 = h(x1);
    } else {
      lo = x1;
      x1 = x2;
      h1 = h2;
      x2 = lo + r * (hi - lo);
      h2 = h(x2);
    }
  }
  return std::min({h1, h2, h(0.0)});
}

}  // namespace

double column_tail_bound(const Symbol& phi, Index n, Index cutoff, double sigma) {
  if (n == 0) throw InvalidArgument("basis index must be >= 1");
  if (n == 1) return cutoff >= 1 ? 0.0 : 1.0;
  const DirichletPolynomial g = column_exponent(phi, n);
  const auto base = column_base(phi, n);
  const double scale = std::abs(column_scalar(phi, n));
  const double base_decay =
      std::pow(static_cast<double>(n), -static_cast<double>(phi.c0()) * sigma);
  if (!base || *base > cutoff) return scale * base_decay * std::exp(log_majorant_tail(g, sigma, 0.0));
  if (g.empty()) return 0.0;
  const Index inner = cutoff / *base;
  const double log_cut = std::log(static_cast<double>(inner) + 1.0);
  return scale * base_decay * std::exp(log_majorant_tail(g, sigma, log_cut));
}

DirichletPolynomial compose_basis_column(const Symbol& phi, Index n, Index max_index) {
  if (n == 0) throw InvalidArgument("basis index must be >= 1");
  if (max_index < 1) throw InvalidArgument("row cutoff must be >= 1");
  if (n == 1) return DirichletPolynomial{{1, Complex(1.0, 0.0)}};
  const auto base = column_base(phi, n);
  if (!base || *base > max_index) {
    std::ostringstream os;
    os << "row cutoff " << max_index << " cannot hold index n^c0 for n = " << n;
    throw InvalidArgument(os.str());
  }
  const DirichletPolynomial expansion = exponentiate(column_exponent(phi, n), max_index / *base);
  const Complex scalar = column_scalar(phi, n);
  std::vector<std::pair<Index, Complex>> pairs;
  pairs.reserve(expansion.size());
  for (const Term& t : expansion.terms()) pairs.emplace_back(*base * t.n, scalar * t.a);
  return DirichletPolynomial::from_pairs(std::move(pairs));
}

Index column_cutoff(const Symbol& phi, Index n, double abs_tol, double sigma) {
  if (!(abs_tol > 0.0)) throw InvalidArgument("tail tolerance must be positive");
  if (n == 1) return 1;
  const auto base = column_base(phi, n);
  if (!base || *base > kIndexCap) {
    throw TailNotNegligible("index n^c0 exceeds the 2^62 index cap", n);
  }
  if (column_exponent(phi, n).empty()) return *base;
  for (Index inner = 1; inner <= kIndexCap / *base; inner *= 2) {
    const Index cutoff = *base * inner;
    if (column_tail_bound(phi, n, cutoff, sigma) <= abs_tol) return cutoff;
    if (inner > kIndexCap / 2) break;
  }
  std::ostringstream os;
  os << "column " << n << ": tail bound stays above " << abs_tol << " up to the 2^62 index cap";
  throw TailNotNegligible(os.str(), n);
}

Composition compose(const DirichletPolynomial& f, const Symbol& phi, double abs_tol,
                    double sigma) {
  if (!(abs_tol > 0.0)) throw InvalidArgument("tail tolerance must be positive");
  Composition out;
  if (f.empty()) return out;
  const double per_term = abs_tol / static_cast<double>(f.size());
  std::vector<std::pair<Index, Complex>> pairs;
  for (const Term& t : f.terms()) {
    const double weight = std::abs(t.a);
    const Index cutoff = column_cutoff(phi, t.n, per_term / weight, sigma);
    out.tail_bound += weight * column_tail_bound(phi, t.n, cutoff, sigma);
    const DirichletPolynomial column = compose_basis_column(phi, t.n, cutoff);
    for (const Term& c : column.terms()) pairs.emplace_back(c.n, t.a * c.a);
  }
  out.poly = DirichletPolynomial::from_pairs(std::move(pairs));
  return out;
}

OperatorMatrix assemble_matrix(const Symbol& phi, std::size_t N, const SpaceTag& space,
                               const OperatorParams& params) {
  if (N < 1) throw InvalidArgument("truncation order must be >= 1");
  if (!(params.tail_rel > 0.0)) throw InvalidArgument("tail tolerance must be positive");

  OperatorMatrix mx;
  mx.N = N;
  mx.space = space;
  mx.column_cutoffs.assign(N, 0);
  mx.column_tail_mass.assign(N, 0.0);
  mx.column_norm_sq.assign(N, 0.0);
  std::vector<DirichletPolynomial> columns(N);
  const double root_rel = std::sqrt(params.tail_rel);

  parallel_for(N, [&](std::size_t j) {
    const Index n = j + 1;
    const double wn = space.basis_scale(n);
    Index cutoff = 1;
    if (n > 1) {
      const auto base = column_base(phi, n);
      if (!base) throw TailNotNegligible("index n^c0 overflows", n);
      // The entry at n^c0 is exactly scalar * w_n / w_base, a floor for the
      // column norm; the l1 tail times w_n bounds the discarded l2 mass.
      const double floor = std::abs(column_scalar(phi, n)) / space.basis_scale(*base);
      cutoff = column_cutoff(phi, n, root_rel * floor);
    }
    columns[j] = compose_basis_column(phi, n, cutoff);
    mx.column_cutoffs[j] = cutoff;
    const double tail = wn * column_tail_bound(phi, n, cutoff);
    mx.column_tail_mass[j] = tail * tail;
    double norm = 0.0;
    for (const Term& t : columns[j].terms()) norm += std::norm(t.a * wn / space.basis_scale(t.n));
    mx.column_norm_sq[j] = norm;
  });

  std::map<Index, std::size_t> rows;
  for (std::size_t j = 0; j < N; ++j) {
    for (const Term& t : columns[j].terms()) {
      rows.emplace(t.n, 0);
      if (rows.size() > params.max_rows) {
        std::ostringstream os;
        os << "more than " << params.max_rows << " nonzero rows needed by column " << j + 1;
        throw TailNotNegligible(os.str(), j + 1);
      }
    }
    mx.M = std::max(mx.M, mx.column_cutoffs[j]);
  }
  mx.row_indices.reserve(rows.size());
  for (auto& [index, slot] : rows) {
    slot = mx.row_indices.size();
    mx.row_indices.push_back(index);
  }

  mx.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                      static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j) {
    const double wn = space.basis_scale(j + 1);
    for (const Term& t : columns[j].terms()) {
      mx.entries(static_cast<Eigen::Index>(rows.at(t.n)), static_cast<Eigen::Index>(j)) =
          t.a * wn / space.basis_scale(t.n);
    }
  }
  return mx;
}

std::vector<double> singular_values(const OperatorMatrix& mx) {
  std::vector<double> out;
  if (mx.entries.size() > 0) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mx.entries);
    const auto& sv = svd.singularValues();
    out.assign(sv.data(), sv.data() + sv.size());
  }
  const std::size_t length =
      mx.M < static_cast<Index>(mx.N) ? static_cast<std::size_t>(mx.M) : mx.N;
  out.resize(std::max(out.size(), length), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(RatioVerdict v) {
  switch (v) {
    case RatioVerdict::TendsToInfinity: return "tends-to-infinity-consistent";
    case RatioVerdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::CompactConsistent: return "compact-consistent";
    case Conclusion::NoncompactConsistent: return "noncompact-consistent";
    default: return "inconclusive";
  }
}

RatioReport re_ratio_check(const Symbol& phi, const std::vector<double>& sigmas, double t_range,
                           std::size_t t_samples) {
  if (sigmas.size() < 3) throw InvalidArgument("ratio check needs at least three sigmas");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw InvalidArgument("sigmas must be positive");
    if (i > 0 && std::abs(sigmas[i] - 0.5 * sigmas[i - 1]) > 1e-12 * sigmas[i - 1])
      throw InvalidArgument("ratio check sigmas must halve at each step");
  }
  if (!(t_range > 0.0) || t_samples < 2) throw InvalidArgument("bad t grid for ratio check");

  RatioReport out;
  out.shifted = phi.c0() == 0;
  out.sigmas = sigmas;
  out.minima.assign(sigmas.size(), 0.0);
  const double shift = out.shifted ? 0.5 : 0.0;
  const double h = 2.0 * t_range / static_cast<double>(t_samples - 1);
  parallel_for(sigmas.size(), [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < t_samples; ++j) {
      const double t = -t_range + static_cast<double>(j) * h;
      const double re = evaluate_symbol(phi, Complex(sigmas[i], t)).real();
      best = std::min(best, (re - shift) / sigmas[i]);
    }
    out.minima[i] = best;
  });

  bool growing = true;
  for (std::size_t i = 2; i < out.minima.size(); ++i)
    growing = growing && out.minima[i] >= 1.5 * out.minima[i - 2];
  const double last = out.minima.back();
  const double two_octaves_back = out.minima[out.minima.size() - 3];
  if (growing && last > 1e3) {
    out.verdict = RatioVerdict::TendsToInfinity;
  } else if (last < 1e3 && last < 1.5 * two_octaves_back) {
    out.verdict = RatioVerdict::Fails;
  } else {
    out.verdict = RatioVerdict::Inconclusive;
  }
  return out;
}

namespace {

void apply_singular_rules(SpaceReport& sr) {
  const auto& last = sr.table.back();
  const auto& prev = sr.table[sr.table.size() - 2];
  bool all_stable = true;
  sr.stabilized.assign(sr.ks.size(), false);
  for (std::size_t j = 0; j < sr.ks.size(); ++j) {
    const double scale = std::max(std::abs(prev[j]), 1e-300);
    sr.stabilized[j] = (prev[j] == 0.0 && last[j] == 0.0) || std::abs(last[j] - prev[j]) < 0.05 * scale;
    all_stable = all_stable && sr.stabilized[j];
  }
  bool decreasing = last.front() > last.back();
  for (std::size_t j = 1; j < last.size(); ++j) decreasing = decreasing && last[j] <= last[j - 1];
  bool all_large = true;
  for (double v : last) all_large = all_large && v > 0.5;

  if (all_stable && decreasing && last.back() < 0.1) {
    sr.conclusion = Conclusion::CompactConsistent;
  } else if (all_stable && all_large) {
    sr.conclusion = Conclusion::NoncompactConsistent;
  } else {
    sr.conclusion = Conclusion::Inconclusive;
  }
}

}  // namespace

CompactnessReport compactness_report(const Symbol& phi, const ReportParams& params) {
  if (params.truncations.size() < 2) throw InvalidArgument("need at least two truncation orders");
  if (params.ks.empty()) throw InvalidArgument("need at least one singular value index");
  for (std::size_t k : params.ks)
    if (k == 0) throw InvalidArgument("singular value indices start at 1");

  std::vector<double> sigmas = params.ratio_sigmas;
  if (sigmas.empty())
    for (int e = 3; e <= 12; ++e) sigmas.push_back(std::ldexp(1.0, -e));

  CompactnessReport report{phi, re_ratio_check(phi, sigmas), false, {}, {}};

  const bool has_hardy = std::any_of(params.spaces.begin(), params.spaces.end(),
                                     [](const SpaceTag& s) { return s.is_hardy(); });
  if (params.run_littleo && has_hardy && phi.c0() >= 1) {
    report.littleo = verify_criterion_littleo(phi, params.littleo_sigmas, params.littleo);
    report.littleo_ran = true;
  }

  for (const SpaceTag& space : params.spaces) {
    SpaceReport sr;
    sr.space = space;
    sr.truncations = params.truncations;
    sr.ks = params.ks;
    for (std::size_t N : params.truncations) {
      const OperatorMatrix mx = assemble_matrix(phi, N, space, params.op);
      std::vector<double> sv = singular_values(mx);
      std::vector<double> row;
      for (std::size_t k : params.ks) row.push_back(k <= sv.size() ? sv[k - 1] : 0.0);
      if (!sv.empty()) sr.largest_singular_value = std::max(sr.largest_singular_value, sv.front());
      sr.table.push_back(std::move(row));
      sr.singular.push_back(std::move(sv));
    }
    apply_singular_rules(sr);

    bool condition_holds = false, condition_fails = false;
    if (space.is_hardy()) {
      if (report.littleo_ran) {
        sr.sufficient_condition = "little-o counting criterion";
        sr.sufficient_verdict = to_string(report.littleo.verdict);
        condition_holds = report.littleo.verdict == LittleOVerdict::Consistent;
        condition_fails = report.littleo.verdict == LittleOVerdict::Violated;
      } else {
        sr.sufficient_condition = "none";
        sr.sufficient_verdict = "not-applicable";
      }
    } else {
      sr.sufficient_condition =
          report.ratio.shifted ? "(Re phi - 1/2)/Re s -> infinity" : "Re phi/Re s -> infinity";
      sr.sufficient_verdict = to_string(report.ratio.verdict);
      condition_holds = report.ratio.verdict == RatioVerdict::TendsToInfinity;
      condition_fails = report.ratio.verdict == RatioVerdict::Fails;
    }

    if (sr.conclusion == Conclusion::CompactConsistent && condition_fails)
      sr.flags.push_back("compact despite failed sufficient condition");
    if (sr.conclusion == Conclusion::NoncompactConsistent && condition_holds)
      sr.flags.push_back("disagreement: sufficient condition holds but singular values do not decay");
    if (sr.conclusion == Conclusion::Inconclusive && (condition_holds || condition_fails))
      sr.flags.push_back("singular values inconclusive; criterion verdict stands alone");
    if (space.is_hardy() && sr.largest_singular_value > 1.0 + 1e-6) {
      sr.flags.push_back(phi.c0() >= 1 ? "largest singular value exceeds 1"
                                       : "observed norm above 1 (no contractivity for c0 = 0)");
    }
    if (space.is_hardy() && report.littleo_ran && report.littleo.sampled_uniform)
      sr.flags.push_back("little-o checked on sampled characters only");
    sr.flags.push_back("finite truncations: verdicts are consistency statements, not proofs");
    report.spaces.push_back(std::move(sr));
  }
  return report;
}

}  // namespace dcomp
