// dcomp command-line front end.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dcomp/error.hpp"
#include "dcomp/io.hpp"
#include "dcomp/log.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/sampling.hpp"
#include "dcomp/version.hpp"

using namespace dcomp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertification = 2;
constexpr int kExitNumeric = 3;

struct SymbolOptions {
  std::string path;
  std::string corpus_name;
  bool assume = false;

  void attach(CLI::App* cmd) {
    auto* file = cmd->add_option("--symbol", path, "Symbol file (JSON: c0, psi, optional assume_class)")
                     ->check(CLI::ExistingFile);
    auto* named = cmd->add_option("--corpus", corpus_name, "Bundled corpus symbol by name");
    file->excludes(named);
    cmd->add_flag("--assume-class", assume, "Skip the class check and accept the class implied by c0");
  }

  SymbolSpec spec() const {
    if (!path.empty()) {
      SymbolSpec s = read_symbol_file(path);
      if (s.name.empty()) s.name = path;
      s.assume_class = s.assume_class || assume;
      return s;
    }
    if (corpus_name.empty()) throw InvalidArgument("give --symbol FILE or --corpus NAME");
    SymbolSpec s = corpus_entry(corpus_name);
    s.assume_class = assume;
    return s;
  }
};

struct Common {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
};

// lo,hi,n -> n equally spaced values (n = 1 gives lo).
std::vector<double> linear_grid(const std::vector<double>& spec, const std::string& what) {
  if (spec.size() != 3 || spec[2] < 1 || spec[2] != static_cast<double>(static_cast<long>(spec[2])))
    throw InvalidArgument(what + " must be lo,hi,count with a positive integer count");
  const auto n = static_cast<std::size_t>(spec[2]);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? spec[0] : spec[0] + (spec[1] - spec[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

SpaceTag parse_space(const std::string& name, double alpha) {
  if (name == "hardy") return SpaceTag::hardy();
  if (name == "bergman") return SpaceTag::bergman(alpha);
  throw InvalidArgument("space must be hardy or bergman");
}

MeasureSpec parse_measure(const std::string& name, const std::vector<double>& window) {
  if (name == "half") return MeasureSpec::half_indicator();
  if (name == "cauchy") return MeasureSpec::cauchy_like();
  if (name == "uniform") {
    if (window.size() != 2) throw InvalidArgument("uniform measure needs --window a,b");
    return MeasureSpec::uniform_window(window[0], window[1]);
  }
  throw InvalidArgument("measure must be half, cauchy or uniform");
}

Json parse_inline_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(what + ": " + e.what());
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InvalidArgument("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Json meta(const Json& config, std::uint64_t seed) {
  return Json{{"tool", "dcomp"},
              {"version", kVersion},
              {"config_hash", fnv1a_hex(config.dump())},
              {"seed", seed}};
}

std::string csv_header(const Json& config, std::uint64_t seed) {
  return "# dcomp " + std::string(kVersion) + " config_hash=" + fnv1a_hex(config.dump()) +
         " seed=" + std::to_string(seed) + "\n";
}

void emit_json(const Common& c, const Json& config, Json body) {
  Json doc;
  doc["meta"] = meta(config, c.seed);
  doc["config"] = config;
  for (auto& [k, v] : body.items()) doc[k] = v;
  Output out(c.out);
  out.stream() << doc.dump(2) << "\n";
}

Json symbol_config(const SymbolSpec& s) { return to_json(s); }

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

void put_f64(std::ostream& os, double x) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof x);
  std::memcpy(&bits, &x, sizeof bits);
  put_le(os, bits);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcomp: counting functions, Littlewood-Paley checks and composition-operator "
               "matrices for Dirichlet-series symbols"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML config file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string log_level;
  app.add_option("--out,-o", common.out, "Output file (default: standard output)");
  app.add_option("--seed", common.seed, "Seed recorded in the output and used by random stages");
  app.add_option("--workers", common.workers,
                 "Worker threads (default: DCOMP_WORKERS or hardware concurrency)");
  app.add_option("--log-level", log_level, "debug, info, notice, warning or silent");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate phi at points s");
  SymbolOptions eval_sym;
  eval_sym.attach(eval);
  std::vector<double> eval_points;
  eval->add_option("--s", eval_points, "Points as re,im pairs: --s 1,0.5,2,0")->delimiter(',')->required();

  // certify
  auto* certify = app.add_subcommand("certify", "Run the class check; exit 2 unless certified");
  SymbolOptions cert_sym;
  cert_sym.attach(certify);
  CertifyParams cert_params;
  certify->add_option("--t-range", cert_params.t_range, "Half-width of the boundary window")->capture_default_str();
  certify->add_option("--samples", cert_params.samples, "Grid samples on the boundary")->capture_default_str();

  // count
  auto* count = app.add_subcommand("count", "Counting functions on a grid of targets w (CSV)");
  SymbolOptions count_sym;
  count_sym.attach(count);
  std::string count_kind = "restricted";
  std::vector<double> re_grid{0.05, 0.5, 10}, im_grid{-5.0, 5.0, 10};
  double count_alpha = 0.0, count_sigma0 = 1e-3, count_height = 50.0, count_trunc = 64.0;
  CountingParams count_params;
  count->add_option("--kind", count_kind, "full, restricted, weighted or mean")
      ->check(CLI::IsMember({"full", "restricted", "weighted", "mean"}))
      ->capture_default_str();
  count->add_option("--re-grid", re_grid, "Re w grid as lo,hi,count")->delimiter(',')->capture_default_str();
  count->add_option("--im-grid", im_grid, "Im w grid as lo,hi,count")->delimiter(',')->capture_default_str();
  count->add_option("--alpha", count_alpha, "Weight parameter (weighted, mean)")->capture_default_str();
  count->add_option("--sigma0", count_sigma0, "Lower Re s cutoff (mean)")->capture_default_str();
  count->add_option("--height", count_height, "Window half-height T (mean)")->capture_default_str();
  count->add_option("--t-trunc", count_trunc, "Truncation height (full)")->capture_default_str();
  count->add_option("--tol", count_params.tol, "Root-search tolerance")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Uniform counting-bound constant and the little-o trend");
  SymbolOptions bounds_sym;
  bounds_sym.attach(bounds);
  std::vector<double> b_re{1e-3, 0.5, 20}, b_im{-20.0, 20.0, 20};
  std::size_t b_chars = 64;
  std::vector<double> littleo_sigmas{0.2, 0.1, 0.05, 0.025};
  bounds->add_option("--re-grid", b_re, "Re w grid as lo,hi,count")->delimiter(',')->capture_default_str();
  bounds->add_option("--im-grid", b_im, "Im w grid as lo,hi,count")->delimiter(',')->capture_default_str();
  bounds->add_option("--characters", b_chars, "Low-discrepancy character samples (also run at twice this)")
      ->capture_default_str();
  bounds->add_option("--littleo-sigmas", littleo_sigmas, "Decreasing Re w values for the little-o trend")
      ->delimiter(',');

  // lp-verify
  auto* lp = app.add_subcommand("lp-verify", "Littlewood-Paley norm: closed form against quadrature");
  std::string lp_f, lp_space = "hardy", lp_measure = "half";
  double lp_alpha = 0.0;
  std::vector<double> lp_window;
  QuadratureParams lp_q;
  lp->add_option("--f", lp_f, "Dirichlet polynomial as JSON, e.g. '{\"2\": [1, 0]}'")->required();
  lp->add_option("--space", lp_space, "hardy or bergman")->capture_default_str();
  lp->add_option("--alpha", lp_alpha, "Bergman parameter")->capture_default_str();
  lp->add_option("--measure", lp_measure, "half, cauchy or uniform")->capture_default_str();
  lp->add_option("--window", lp_window, "a,b for the uniform measure")->delimiter(',');
  lp->add_option("--sigma-nodes", lp_q.sigma_nodes, "Gauss-Legendre nodes in sigma")->capture_default_str();
  lp->add_option("--t-nodes", lp_q.t_nodes, "Lattice points per character")->capture_default_str();
  lp->add_option("--chi-samples", lp_q.chi_samples, "Character samples")->capture_default_str();
  lp->add_option("--shifts", lp_q.shifts, "Random lattice shifts")->capture_default_str();

  // cov-check
  auto* cov = app.add_subcommand("cov-check", "Change of variables w = phi_chi(s), both sides by quadrature");
  SymbolOptions cov_sym;
  cov_sym.attach(cov);
  std::string cov_f = "{\"2\": [1, 0]}", cov_chi = "{}";
  QuadratureParams cov_q;
  cov->add_option("--f", cov_f, "Dirichlet polynomial as JSON")->capture_default_str();
  cov->add_option("--chi", cov_chi, "Character as JSON prime -> angle")->capture_default_str();
  cov->add_option("--sigma-nodes", cov_q.sigma_nodes, "Nodes in sigma")->capture_default_str();
  cov->add_option("--t-nodes", cov_q.t_nodes, "Nodes in t")->capture_default_str();
  cov->add_option("--u-nodes", cov_q.w_nodes_u, "Nodes in Re w")->capture_default_str();
  cov->add_option("--v-nodes", cov_q.w_nodes_v, "Nodes in Im w")->capture_default_str();

  // matrix / singvals
  auto* matrix = app.add_subcommand("matrix", "Truncated operator matrix (CSV or binary)");
  SymbolOptions mat_sym;
  mat_sym.attach(matrix);
  std::size_t mat_n = 16;
  std::string mat_space = "hardy", mat_format = "csv";
  double mat_alpha = 0.0;
  OperatorParams mat_op;
  matrix->add_option("--N", mat_n, "Truncation order")->capture_default_str();
  matrix->add_option("--space", mat_space, "hardy or bergman")->capture_default_str();
  matrix->add_option("--alpha", mat_alpha, "Bergman parameter")->capture_default_str();
  matrix->add_option("--format", mat_format, "csv or binary")
      ->check(CLI::IsMember({"csv", "binary"}))
      ->capture_default_str();
  matrix->add_option("--tail-rel", mat_op.tail_rel, "Column tail mass relative to squared column norm")
      ->capture_default_str();

  auto* singvals = app.add_subcommand("singvals", "Singular values of the truncated matrix (CSV)");
  SymbolOptions sv_sym;
  sv_sym.attach(singvals);
  std::size_t sv_n = 64;
  std::string sv_space = "hardy";
  double sv_alpha = 0.0;
  OperatorParams sv_op;
  singvals->add_option("--N", sv_n, "Truncation order")->capture_default_str();
  singvals->add_option("--space", sv_space, "hardy or bergman")->capture_default_str();
  singvals->add_option("--alpha", sv_alpha, "Bergman parameter")->capture_default_str();
  singvals->add_option("--tail-rel", sv_op.tail_rel, "Column tail tolerance")->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "Compactness report (JSON)");
  SymbolOptions rep_sym;
  rep_sym.attach(report);
  ReportParams rep_params;
  std::vector<double> rep_alphas{0.0};
  bool rep_skip_littleo = false;
  report->add_option("--N", rep_params.truncations, "Truncation orders")->delimiter(',')->capture_default_str();
  report->add_option("--k", rep_params.ks, "Singular value indices")->delimiter(',')->capture_default_str();
  report->add_option("--alphas", rep_alphas, "Bergman parameters to include besides H2")->delimiter(',');
  report->add_flag("--skip-littleo", rep_skip_littleo, "Do not run the counting-function trend");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!log_level.empty()) {
      static const std::map<std::string, LogLevel> levels{{"debug", LogLevel::Debug},
                                                          {"info", LogLevel::Info},
                                                          {"notice", LogLevel::Notice},
                                                          {"warning", LogLevel::Warning},
                                                          {"silent", LogLevel::Silent}};
      auto it = levels.find(log_level);
      if (it == levels.end()) throw InvalidArgument("unknown log level " + log_level);
      set_log_threshold(it->second);
    }
    if (common.workers > 0) set_worker_count(common.workers);

    if (eval->parsed()) {
      if (eval_points.size() % 2 != 0) throw InvalidArgument("--s takes re,im pairs");
      const SymbolSpec spec = eval_sym.spec();
      const Symbol phi = make_symbol(spec);
      Json config{{"command", "eval"}, {"symbol", symbol_config(spec)}, {"s", eval_points}};
      Json values = Json::array();
      for (std::size_t i = 0; i < eval_points.size(); i += 2) {
        const Complex s(eval_points[i], eval_points[i + 1]);
        const Complex v = evaluate_symbol(phi, s);
        values.push_back({{"s", {s.real(), s.imag()}}, {"phi", {v.real(), v.imag()}}});
      }
      emit_json(common, config, Json{{"values", values}});
    } else if (certify->parsed()) {
      const SymbolSpec spec = cert_sym.spec();
      Json config{{"command", "certify"},
                  {"symbol", symbol_config(spec)},
                  {"t_range", cert_params.t_range},
                  {"samples", cert_params.samples}};
      const CertificationReport r = certify_class(spec.c0, spec.psi, cert_params.t_range, cert_params.samples);
      emit_json(common, config,
                Json{{"class", spec.c0 == 0 ? "G0" : "Gge1"}, {"certification", to_json(r)}});
      if (r.verdict != Verdict::Certified) {
        std::cerr << "dcomp: class check " << to_string(r.verdict) << " (" << r.method << ")\n";
        return kExitCertification;
      }
    } else if (count->parsed()) {
      const SymbolSpec spec = count_sym.spec();
      const Symbol phi = make_symbol(spec);
      const auto res = linear_grid(re_grid, "--re-grid");
      const auto ims = linear_grid(im_grid, "--im-grid");
      Json config{{"command", "count"},        {"symbol", symbol_config(spec)}, {"kind", count_kind},
                  {"re_grid", re_grid},        {"im_grid", im_grid},            {"alpha", count_alpha},
                  {"sigma0", count_sigma0},    {"height", count_height},        {"t_trunc", count_trunc},
                  {"tol", count_params.tol}};
      std::vector<Complex> ws;
      for (double re : res)
        for (double im : ims) ws.emplace_back(re, im);
      std::vector<CountingValue> values(ws.size());
      parallel_for(ws.size(), [&](std::size_t i) {
        if (count_kind == "full") {
          values[i] = nevanlinna_full(phi, ws[i], count_trunc, count_params);
        } else if (count_kind == "restricted") {
          values[i] = restricted_counting(phi, ws[i], count_params);
        } else if (count_kind == "weighted") {
          values[i] = weighted_counting(phi, ws[i], count_alpha, count_params);
        } else {
          values[i] = mean_counting(phi, count_sigma0, count_height, ws[i], count_alpha, count_params);
        }
      });
      Output out(common.out);
      auto& os = out.stream();
      os << csv_header(config, common.seed) << "w_re,w_im,value,kind,diagnostics\n";
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const CountingValue& v = values[i];
        os << fmt(ws[i].real()) << ',' << fmt(ws[i].imag()) << ',' << fmt(v.value) << ','
           << to_string(v.kind) << ",roots=" << v.root_count << ";retries=" << v.jitter_retries
           << ";polished=" << (v.all_polished ? 1 : 0) << ";sigma_hi=" << fmt(v.window.sigma_hi);
        if (v.kind == CountingKind::Full) os << ";tail_increment=" << fmt(v.tail_increment);
        os << '\n';
      }
    } else if (bounds->parsed()) {
      const SymbolSpec spec = bounds_sym.spec();
      const Symbol phi = make_symbol(spec);
      if (phi.c0() < 1) throw InvalidArgument("bounds needs a symbol with c0 >= 1");
      const auto res = linear_grid(b_re, "--re-grid");
      const auto ims = linear_grid(b_im, "--im-grid");
      std::vector<Complex> ws;
      for (double re : res)
        for (double im : ims) ws.emplace_back(re, im);
      std::vector<Index> primes = phi.psi().support_primes();
      if (primes.empty()) primes = {2};
      Json config{{"command", "bounds"}, {"symbol", symbol_config(spec)}, {"re_grid", b_re},
                  {"im_grid", b_im},     {"characters", b_chars},         {"littleo_sigmas", littleo_sigmas}};
      const double c1 = estimate_bound_constant(phi, ws, kronecker_characters(primes, b_chars));
      const double c2 = estimate_bound_constant(phi, ws, kronecker_characters(primes, 2 * b_chars));
      LittleOParams lp_params;
      lp_params.im_values = {0.0, 0.5, 1.0, 2.0, 3.0};
      const LittleOReport lo = verify_criterion_littleo(phi, littleo_sigmas, lp_params);
      const double drift = c1 > 0.0 ? std::abs(c2 - c1) / c1 : (c2 == 0.0 ? 0.0 : 1.0);
      emit_json(common, config,
                Json{{"bound_constant", {{"characters", b_chars}, {"value", c1}}},
                     {"bound_constant_doubled", {{"characters", 2 * b_chars}, {"value", c2}}},
                     {"relative_drift", drift},
                     {"note", "empirical lower estimate over sampled characters, not the uniform constant"},
                     {"little_o", to_json(lo)}});
    } else if (lp->parsed()) {
      const DirichletPolynomial f = polynomial_from_json(parse_inline_json(lp_f, "--f"));
      const SpaceTag space = parse_space(lp_space, lp_alpha);
      const MeasureSpec mu = parse_measure(lp_measure, lp_window);
      lp_q.seed = common.seed;
      Json config{{"command", "lp-verify"}, {"f", to_json(f)},
                  {"space", lp_space},     {"alpha", lp_alpha},
                  {"measure", lp_measure}, {"window", lp_window},
                  {"sigma_nodes", lp_q.sigma_nodes}, {"t_nodes", lp_q.t_nodes},
                  {"chi_samples", lp_q.chi_samples}, {"shifts", lp_q.shifts}};
      const double closed = lp_norm_closed(f, space);
      const McEstimate mc = lp_norm_mc(f, space, mu, lp_q);
      emit_json(common, config,
                Json{{"closed", closed},
                     {"norm_squared", norm_squared(f, space)},
                     {"mc", mc.value},
                     {"error_estimate", mc.error_estimate},
                     {"gap", std::abs(mc.value - closed)},
                     {"mc_detail", to_json(mc)}});
    } else if (cov->parsed()) {
      const SymbolSpec spec = cov_sym.spec();
      const Symbol phi = make_symbol(spec);
      const DirichletPolynomial f = polynomial_from_json(parse_inline_json(cov_f, "--f"));
      const Character chi = character_from_json(parse_inline_json(cov_chi, "--chi"));
      Json config{{"command", "cov-check"}, {"symbol", symbol_config(spec)}, {"f", to_json(f)},
                  {"chi", to_json(chi)},    {"sigma_nodes", cov_q.sigma_nodes}, {"t_nodes", cov_q.t_nodes},
                  {"u_nodes", cov_q.w_nodes_u}, {"v_nodes", cov_q.w_nodes_v}};
      emit_json(common, config, Json{{"report", to_json(change_of_variables_check(f, phi, chi, cov_q))}});
    } else if (matrix->parsed()) {
      const SymbolSpec spec = mat_sym.spec();
      const Symbol phi = make_symbol(spec);
      const SpaceTag space = parse_space(mat_space, mat_alpha);
      Json config{{"command", "matrix"}, {"symbol", symbol_config(spec)}, {"N", mat_n},
                  {"space", mat_space},  {"alpha", mat_alpha},            {"format", mat_format},
                  {"tail_rel", mat_op.tail_rel}};
      const OperatorMatrix mx = assemble_matrix(phi, mat_n, space, mat_op);
      Output out(common.out);
      auto& os = out.stream();
      if (mat_format == "csv") {
        os << csv_header(config, common.seed) << "row_index,column_index,re,im\n";
        for (Eigen::Index j = 0; j < mx.entries.cols(); ++j)
          for (Eigen::Index i = 0; i < mx.entries.rows(); ++i) {
            const Complex z = mx.entries(i, j);
            if (z == Complex(0.0, 0.0)) continue;
            os << mx.row_indices[static_cast<std::size_t>(i)] << ',' << j + 1 << ',' << fmt(z.real()) << ','
               << fmt(z.imag()) << '\n';
          }
      } else {
        if (mx.row_indices.size() > 0xffffffffULL || mat_n > 0xffffffffULL)
          throw InvalidArgument("matrix too large for the binary header");
        os.write("DCMX", 4);
        put_le<std::uint32_t>(os, static_cast<std::uint32_t>(mx.row_indices.size()));
        put_le<std::uint32_t>(os, static_cast<std::uint32_t>(mat_n));
        put_le<std::uint32_t>(os, 1u);  // bit 0: row index table follows
        for (Index r : mx.row_indices) put_le<std::uint64_t>(os, r);
        for (Eigen::Index j = 0; j < mx.entries.cols(); ++j)
          for (Eigen::Index i = 0; i < mx.entries.rows(); ++i) {
            put_f64(os, mx.entries(i, j).real());
            put_f64(os, mx.entries(i, j).imag());
          }
        const std::string trailer = Json{{"meta", meta(config, common.seed)}, {"config", config}}.dump();
        os.write(trailer.data(), static_cast<std::streamsize>(trailer.size()));
        put_le<std::uint32_t>(os, static_cast<std::uint32_t>(trailer.size()));
      }
    } else if (singvals->parsed()) {
      const SymbolSpec spec = sv_sym.spec();
      const Symbol phi = make_symbol(spec);
      const SpaceTag space = parse_space(sv_space, sv_alpha);
      Json config{{"command", "singvals"}, {"symbol", symbol_config(spec)}, {"N", sv_n},
                  {"space", sv_space},     {"alpha", sv_alpha},             {"tail_rel", sv_op.tail_rel}};
      const OperatorMatrix mx = assemble_matrix(phi, sv_n, space, sv_op);
      const std::vector<double> sv = singular_values(mx);
      Output out(common.out);
      auto& os = out.stream();
      os << csv_header(config, common.seed) << "k,singular_value\n";
      for (std::size_t k = 0; k < sv.size(); ++k) os << k + 1 << ',' << fmt(sv[k]) << '\n';
    } else if (report->parsed()) {
      const SymbolSpec spec = rep_sym.spec();
      const Symbol phi = make_symbol(spec);
      rep_params.spaces = {SpaceTag::hardy()};
      for (double a : rep_alphas) rep_params.spaces.push_back(SpaceTag::bergman(a));
      rep_params.run_littleo = !rep_skip_littleo;
      Json config{{"command", "report"},
                  {"symbol", symbol_config(spec)},
                  {"N", rep_params.truncations},
                  {"k", rep_params.ks},
                  {"alphas", rep_alphas},
                  {"little_o", rep_params.run_littleo}};
      emit_json(common, config, Json{{"report", to_json(compactness_report(phi, rep_params))}});
    }
  } catch (const CertificationFailure& e) {
    std::cerr << "dcomp: certification failure: " << e.what() << "\n";
    return kExitCertification;
  } catch (const BoundaryHit& e) {
    std::cerr << "dcomp: root search could not certify a contour: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const TailNotNegligible& e) {
    std::cerr << "dcomp: column " << e.column() << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const AdaptiveBoundFailure& e) {
    std::cerr << "dcomp: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "dcomp: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
