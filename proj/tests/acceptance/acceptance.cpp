// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dcomp/counting.hpp"
#include "dcomp/error.hpp"
#include "dcomp/io.hpp"
#include "dcomp/littlewood_paley.hpp"
#include "dcomp/log.hpp"
#include "dcomp/operator.hpp"
#include "dcomp/rootfind.hpp"
#include "dcomp/sampling.hpp"
#include "oracles.hpp"

using namespace dcomp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<Complex> nc_grid() {
  std::vector<Complex> g;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) g.emplace_back(1e-3 + (0.5 - 1e-3) * i / 19.0, -20.0 + 40.0 * j / 19.0);
  return g;
}

std::vector<Symbol> gge1_corpus() {
  std::vector<Symbol> out;
  for (const auto& spec : corpus())
    if (spec.c0 >= 1) out.push_back(make_symbol(spec));
  return out;
}

// 1. Exact Hardy identity.
Outcome littlewood_paley_identity() {
  std::mt19937_64 rng(101);
  const auto all_primes = oracle::primes_below(50);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Index> ps = all_primes;
    std::shuffle(ps.begin(), ps.end(), rng);
    ps.resize(1 + trial % 3);
    auto pool = oracle::smooth_indices(ps, 50);
    const auto f = oracle::random_poly(rng, pool, 1 + trial % 8);
    const double ref = norm_squared(f, SpaceTag::hardy());
    worst = std::max(worst, std::abs(lp_norm_closed(f, SpaceTag::hardy()) - ref) / ref);
  }
  return {worst < 1e-10, fmt("max relative error %.2e over 200 polynomials", worst)};
}

// 2. Monte-Carlo path against the closed form.
Outcome littlewood_paley_mc() {
  std::mt19937_64 rng(102);
  const std::vector<Index> pool{1, 2, 3, 4, 6, 8, 9, 12};
  const std::vector<MeasureSpec> measures{MeasureSpec::half_indicator(), MeasureSpec::cauchy_like(),
                                          MeasureSpec::uniform_window(-3.0, 5.0)};
  int within = 0;
  for (int run = 0; run < 100; ++run) {
    const auto f = oracle::random_poly(rng, pool, 4);
    const SpaceTag space = run % 2 ? SpaceTag::bergman(0.5) : SpaceTag::hardy();
    QuadratureParams q;
    q.seed = 1000 + std::uint64_t(run);
    const auto e = lp_norm_mc(f, space, measures[std::size_t(run) % measures.size()], q);
    if (std::abs(e.value - lp_norm_closed(f, space)) <= 3.0 * e.error_estimate) ++within;
  }
  return {within >= 95, fmt("%.0f/100 runs within 3x the error estimate", within)};
}

// 3. N(w) <= Re(w) / c0 on the w grid.
Outcome counting_cap() {
  double worst_slack = 1e300, worst_equality = 0.0;
  for (const auto& phi : gge1_corpus()) {
    const bool linear = phi.psi().empty();
    for (Complex w : nc_grid()) {
      const double v = nevanlinna_full(phi, w).value;
      const double cap = w.real() / phi.c0();
      worst_slack = std::min(worst_slack, cap - v);
      if (linear) worst_equality = std::max(worst_equality, std::abs(cap - v));
    }
  }
  return {worst_slack >= -1e-8 && worst_equality <= 1e-10,
          fmt("min slack %.2e; max |N - Re w/c0| for c0 s: %.2e", worst_slack, worst_equality)};
}

// 4. Uniform bound constant: finite and stable from 64 to 128 characters.
Outcome bound_constant() {
  const auto grid = nc_grid();
  double worst_drift = 0.0;
  bool finite = true;
  std::string values;
  for (const auto& phi : gge1_corpus()) {
    auto primes = phi.psi().support_primes();
    if (primes.empty()) primes = {2};
    const double c64 = estimate_bound_constant(phi, grid, kronecker_characters(primes, 64));
    const double c128 = estimate_bound_constant(phi, grid, kronecker_characters(primes, 128));
    finite = finite && std::isfinite(c64) && std::isfinite(c128);
    const double drift = c64 > 0.0 ? std::abs(c128 - c64) / c64 : (c128 == 0.0 ? 0.0 : 1.0);
    worst_drift = std::max(worst_drift, drift);
    values += fmt(" %.4g->%.4g", c64, c128);
  }
  return {finite && worst_drift < 0.10, fmt("max drift %.2e;", worst_drift) + values};
}

// 5. Change of variables.
Outcome change_of_variables() {
  const QuadratureParams q;
  const DirichletPolynomial f{{2, 1.0}};
  const auto a = change_of_variables_check(f, Symbol::certify(2, {}), Character::trivial(), q);
  const auto b = change_of_variables_check(f, Symbol::certify(1, {{1, 1.0}, {2, -1.0}}), Character::trivial(), q);
  const bool ok = a.base.gap < 1e-3 && b.base.gap < 1e-2 && a.gap_shrinks && b.gap_shrinks &&
                  a.base.unresolved == 0 && b.base.unresolved == 0;
  return {ok, fmt("2s gap %.2e -> %.2e", a.base.gap, a.refined.gap) +
                  fmt("; s+1-2^{-s} gap %.2e -> %.2e", b.base.gap, b.refined.gap)};
}

// 6. Operator matrix oracles.
Outcome operator_oracles() {
  bool ok = true;
  double worst_diag = 0.0;
  const std::size_t N = 64;
  for (const auto& space : {SpaceTag::hardy(), SpaceTag::bergman(0.0)}) {
    const auto mx = assemble_matrix(Symbol::certify(1, {{1, 1.0}}), N, space);
    ok = ok && mx.row_indices.size() == N;
    for (std::size_t i = 0; i < mx.row_indices.size(); ++i)
      for (std::size_t j = 0; j < N; ++j) {
        const Complex expect = (mx.row_indices[i] == j + 1) ? Complex(1.0 / double(j + 1)) : Complex(0.0);
        worst_diag = std::max(worst_diag, std::abs(mx.entries(Eigen::Index(i), Eigen::Index(j)) - expect));
      }
  }
  ok = ok && worst_diag <= 1e-15;

  const auto iso = assemble_matrix(Symbol::certify(2, {}), N, SpaceTag::hardy());
  bool isometry = iso.row_indices.size() == N;
  for (std::size_t i = 0; isometry && i < N; ++i) {
    isometry = iso.row_indices[i] == (i + 1) * (i + 1);
    for (std::size_t j = 0; j < N; ++j)
      isometry = isometry && iso.entries(Eigen::Index(i), Eigen::Index(j)) == Complex(i == j ? 1.0 : 0.0);
  }
  ok = ok && isometry;

  // Column n = 2 of s + 1 - 2^{-s}: 2^{-s} 2^{-1} exp(log 2 * 2^{-s}).
  const Symbol sp = Symbol::certify(1, {{1, 1.0}, {2, -1.0}});
  const Index cut = Index(1) << 40;
  const auto col = compose_basis_column(sp, 2, cut);
  const auto taylor = oracle::exp_taylor({{2, std::log(2.0)}}, cut / 2, 45);
  double worst_taylor = 0.0;
  for (const auto& [m, b] : taylor) worst_taylor = std::max(worst_taylor, std::abs(col.coefficient(2 * m) - 0.5 * b));
  worst_taylor = std::max(worst_taylor, double(col.size() != taylor.size()));
  const auto mx = assemble_matrix(sp, 8, SpaceTag::hardy());
  for (std::size_t i = 0; i < mx.row_indices.size(); ++i)
    if (mx.row_indices[i] <= mx.column_cutoffs[1])
      worst_taylor = std::max(worst_taylor, std::abs(mx.entries(Eigen::Index(i), 1) - col.coefficient(mx.row_indices[i])));
  ok = ok && worst_taylor <= 1e-12;
  return {ok, fmt("diag error %.1e; partial isometry ", worst_diag) + (isometry ? "exact" : "broken") +
                  fmt("; Taylor column error %.1e", worst_taylor)};
}

// 7. Compactness corroboration.
Outcome compactness(bool& five_halves_ok) {
  const ReportParams p;
  const auto two = compactness_report(make_symbol(corpus_entry("two-s")), p);
  const auto tr = compactness_report(make_symbol(corpus_entry("translate")), p);
  ReportParams rp = p;
  rp.spaces = {SpaceTag::bergman(0.0)};
  const auto rem = compactness_report(make_symbol(corpus_entry("five-halves")), rp);

  bool two_ok = true, tr_ok = true;
  for (const auto& s : two.spaces) two_ok = two_ok && s.conclusion == Conclusion::NoncompactConsistent;
  for (const auto& s : tr.spaces) tr_ok = tr_ok && s.conclusion == Conclusion::CompactConsistent;
  const auto& rs = rem.spaces.front();
  bool flagged = false;
  for (const auto& f : rs.flags) flagged = flagged || f == "compact despite failed sufficient condition";
  five_halves_ok = rs.conclusion == Conclusion::CompactConsistent && rem.ratio.verdict == RatioVerdict::Fails && flagged;

  std::string detail = std::string("2s: ") + (two_ok ? "noncompact-consistent" : "unexpected") +
                       "; s+1: " + (tr_ok ? "compact-consistent" : "unexpected") + "; 5/2 - 2^{-s} - 3^{-s} on A_0: " +
                       to_string(rs.conclusion) + ", Re-ratio " + to_string(rem.ratio.verdict) + ", s_5(N) =";
  for (const auto& row : rs.table) detail += fmt(" %.4f", row.front());
  return {two_ok && tr_ok && five_halves_ok, detail};
}

// 8. Twist identity (f o phi)_chi = f_{chi^{c0}} o phi_chi.
Outcome twist_identity() {
  std::mt19937_64 rng(108);
  const auto pool = oracle::smooth_indices({2, 3, 5}, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int c0 = trial % 3;
    const auto f = oracle::random_poly(rng, pool, 3);
    const Symbol phi = Symbol::certify(c0, oracle::random_positive_psi(rng, pool, 3, c0 == 0 ? 0.5 + u(rng) : u(rng)));
    const Character chi = oracle::random_character(rng, {2, 3, 5});
    const Complex s(2.0 + 2.0 * u(rng), 20.0 * (u(rng) - 0.5));
    const auto comp = compose(f, phi, 1e-12, 2.0);
    const Complex lhs = evaluate(twist(comp.poly, chi), s);
    const Complex rhs = evaluate(twist(f, character_power(chi, c0)), evaluate_symbol(twist_symbol(phi, chi), s));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-8, fmt("max |lhs - rhs| %.2e over 50 tuples", worst)};
}

// 9. Root finder against winding numbers and the dense-grid oracle.
Outcome root_finder() {
  std::mt19937_64 rng(109);
  const auto pool = oracle::smooth_indices({2, 3, 5}, 15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int good = 0, roots_total = 0;
  std::string first_failure;
  for (int trial = 0; trial < 100; ++trial) {
    const int c0 = trial % 3;
    const Symbol phi = Symbol::certify(c0, oracle::random_positive_psi(rng, pool, 3, c0 == 0 ? 0.5 + u(rng) : 0.1 * u(rng)));
    const Rectangle window{0.02, 0.02 + 1.5 * (0.3 + u(rng)), -1.0 - 2.0 * u(rng), 1.0 + 2.0 * u(rng)};
    const Complex s_star(window.sigma_lo + (window.sigma_hi - window.sigma_lo) * u(rng),
                         window.t_lo + (window.t_hi - window.t_lo) * u(rng));
    const Complex w = evaluate_symbol(phi, s_star) + oracle::random_complex(rng, 0.05);
    try {
      const auto rs = find_preimages_robust(phi, w, window, 1e-8);
      const auto& win = rs.window;
      const auto expected =
          oracle::grid_roots(oracle::plain(phi), w, win.sigma_lo, win.sigma_hi, win.t_lo, win.t_hi);
      bool ok = rs.multiplicity_sum() == rs.total_winding && int(expected.size()) == rs.total_winding;
      std::vector<bool> used(expected.size(), false);
      for (const auto& r : rs.roots) {
        bool found = false;
        for (std::size_t k = 0; k < expected.size() && !found; ++k)
          if (!used[k] && std::abs(expected[k] - r.s) < 1e-6) used[k] = found = true;
        ok = ok && found && r.multiplicity == 1;
      }
      roots_total += rs.total_winding;
      if (ok) ++good;
      else if (first_failure.empty())
        first_failure = fmt("; first mismatch at trial %.0f (winding %.0f, oracle %.0f)", trial, rs.total_winding,
                            double(expected.size()));
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = fmt("; trial %.0f threw: ", trial) + e.what();
    }
  }
  return {good == 100, fmt("%.0f/100 pairs agree, %.0f roots", good, roots_total) + first_failure};
}

}  // namespace

int main() {
  set_log_threshold(LogLevel::Silent);
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  bool five_halves_ok = false;
  const std::vector<Criterion> criteria{
      {1, "Littlewood-Paley exact identity", 10.0, littlewood_paley_identity},
      {2, "Monte-Carlo Littlewood-Paley path", 120.0, littlewood_paley_mc},
      {3, "counting bound N <= Re w / c0", 300.0, counting_cap},
      {4, "uniform bound constant stability", 600.0, bound_constant},
      {5, "change of variables", 300.0, change_of_variables},
      {6, "operator matrix oracles", 60.0, operator_oracles},
      {7, "compactness corroboration", 900.0, [&] { return compactness(five_halves_ok); }},
      {8, "twist identity", 30.0, twist_identity},
      {9, "root-finder certification", 600.0, root_finder},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d [%s] %s: %s (%.1f s of %.0f s)%s\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " over budget");
    if (c.id == 7 && !five_halves_ok)
      std::printf("  criterion 7 sub-check [FAIL] 5/2 - 2^{-s} - 3^{-s} on A_0 is not compact-consistent under the "
                  "5%% stabilization rule at N <= 512\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
