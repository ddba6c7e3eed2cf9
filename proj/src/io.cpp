#include "dcomp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dcomp/error.hpp"
#include "dcomp/log.hpp"

namespace dcomp {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

// JSON has no infinities; null stands in for them.
Json real_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json rectangle_json(const Rectangle& r) {
  return Json{{"sigma_lo", r.sigma_lo}, {"sigma_hi", r.sigma_hi}, {"t_lo", r.t_lo}, {"t_hi", r.t_hi}};
}

Index parse_index(const std::string& key) {
  if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("index key is not a positive decimal integer: '" + key + "'");
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(key, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("index key out of range: '" + key + "'");
  }
  if (v == 0) throw InvalidArgument("Dirichlet indices start at 1");
  return static_cast<Index>(v);
}

}  // namespace

Json to_json(const DirichletPolynomial& f) {
  Json j = Json::object();
  for (const Term& t : f.terms()) j[std::to_string(t.n)] = complex_json(t.a);
  return j;
}

DirichletPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("Dirichlet polynomial must be a JSON object");
  std::vector<std::pair<Index, Complex>> pairs;
  for (const auto& [key, value] : j.items()) {
    Complex a;
    if (value.is_number()) {
      a = Complex(value.get<double>(), 0.0);
    } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
      a = Complex(value[0].get<double>(), value[1].get<double>());
    } else {
      throw InvalidArgument("coefficient for index " + key + " must be [re, im] or a number");
    }
    pairs.emplace_back(parse_index(key), a);
  }
  return DirichletPolynomial::from_pairs(std::move(pairs));
}

Json to_json(const Character& chi) {
  Json j = Json::object();
  for (const auto& [p, theta] : chi.angles()) j[std::to_string(p)] = theta;
  return j;
}

Character character_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("character must be a JSON object prime -> angle");
  std::map<Index, double> angles;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw InvalidArgument("character angle for " + key + " must be a number");
    angles[parse_index(key)] = value.get<double>();
  }
  return Character::from_angles(angles);
}

SymbolSpec symbol_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("symbol file must hold a JSON object");
  if (!j.contains("c0") || !j["c0"].is_number_integer())
    throw InvalidArgument("symbol file needs an integer field c0");
  SymbolSpec s;
  s.c0 = j["c0"].get<int>();
  if (s.c0 < 0) throw InvalidArgument("c0 must be nonnegative");
  s.psi = polynomial_from_json(j.value("psi", Json::object()));
  s.name = j.value("name", std::string());
  s.description = j.value("description", std::string());
  s.declared_class = j.value("class", std::string());
  if (j.contains("assume_class")) {
    if (!j["assume_class"].is_boolean()) throw InvalidArgument("assume_class must be true or false");
    s.assume_class = j["assume_class"].get<bool>();
  }
  if (!s.declared_class.empty() && s.declared_class != "G0" && s.declared_class != "Gge1")
    throw InvalidArgument("class must be G0 or Gge1");
  if (!s.declared_class.empty() && s.declared_class != (s.c0 == 0 ? "G0" : "Gge1"))
    throw InvalidArgument("declared class contradicts c0");
  return s;
}

Json to_json(const SymbolSpec& spec) {
  Json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  if (!spec.description.empty()) j["description"] = spec.description;
  j["c0"] = spec.c0;
  j["psi"] = to_json(spec.psi);
  if (!spec.declared_class.empty()) j["class"] = spec.declared_class;
  if (spec.assume_class) j["assume_class"] = true;
  return j;
}

SymbolSpec read_symbol_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open symbol file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("symbol file " + path.string() + ": " + e.what());
  }
  return symbol_spec_from_json(j);
}

Symbol make_symbol(const SymbolSpec& spec, const CertifyParams& params) {
  if (spec.assume_class) {
    log(LogLevel::Warning, "symbol '" + spec.name + "': class override set in the symbol file");
    return Symbol::assume(spec.c0, spec.psi);
  }
  return Symbol::certify(spec.c0, spec.psi, params);
}

Json to_json(const CertificationReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"method", r.method},
              {"provenance", r.provenance},
              {"min_real_part", real_json(r.min_real_part)},
              {"attained_at", complex_json(r.attained_at)},
              {"sample_count", r.sample_count},
              {"t_range", r.t_range},
              {"spacing", r.spacing},
              {"lipschitz_bound", r.lipschitz_bound},
              {"curvature_bound", r.curvature_bound},
              {"coefficient_bound", r.coefficient_bound},
              {"threshold", r.threshold},
              {"certified_lower_bound", real_json(r.certified_lower_bound)},
              {"margin", real_json(r.margin)},
              {"margin_zero", r.margin_zero}};
}

Json to_json(const CountingValue& v) {
  Json j{{"value", v.value}, {"kind", to_string(v.kind)}};
  if (v.kind == CountingKind::Weighted || v.kind == CountingKind::Mean) j["alpha"] = v.alpha;
  if (v.kind == CountingKind::Full) {
    j["t_trunc"] = v.t_trunc;
    j["tail_increment"] = v.tail_increment;
  }
  if (v.kind == CountingKind::Mean) {
    j["sigma0"] = v.sigma0;
    j["height"] = v.height;
  }
  j["root_count"] = v.root_count;
  j["jitter_retries"] = v.jitter_retries;
  j["all_polished"] = v.all_polished;
  j["window"] = rectangle_json(v.window);
  j["truncation_note"] = v.truncation_note;
  return j;
}

Json to_json(const RootSet& rs) {
  Json roots = Json::array();
  for (const Root& r : rs.roots) {
    roots.push_back({{"s", complex_json(r.s)},
                     {"multiplicity", r.multiplicity},
                     {"residual", r.residual},
                     {"polished", r.polished}});
  }
  return Json{{"window", rectangle_json(rs.window)},
              {"total_winding", rs.total_winding},
              {"jitter_retries", rs.jitter_retries},
              {"roots", roots}};
}

Json to_json(const LittleOReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"sigmas", r.sigmas},
              {"ratios", r.ratios},
              {"sampled_uniform", r.sampled_uniform},
              {"note", r.note}};
}

Json to_json(const McEstimate& e) {
  return Json{{"value", e.value},
              {"error_estimate", e.error_estimate},
              {"standard_error", e.standard_error},
              {"sigma_rule_error", e.sigma_rule_error},
              {"sigma_max", e.sigma_max},
              {"evaluations", e.evaluations}};
}

Json to_json(const CovReport& r) {
  auto side = [](const CovSide& s) {
    return Json{{"lhs", s.lhs},
                {"rhs", s.rhs},
                {"gap", s.gap},
                {"root_searches", s.root_searches},
                {"unresolved", s.unresolved}};
  };
  return Json{{"base", side(r.base)},
              {"refined", side(r.refined)},
              {"gap_shrinks", r.gap_shrinks},
              {"sigma_max", r.sigma_max},
              {"u_max", r.u_max},
              {"v_range", {r.v_lo, r.v_hi}}};
}

Json to_json(const CompactnessReport& r) {
  Json j;
  j["symbol"] = r.symbol.describe();
  j["c0"] = r.symbol.c0();
  j["psi"] = to_json(r.symbol.psi());
  j["class"] = to_string(r.symbol.symbol_class());
  j["certification"] = to_json(r.symbol.certification());
  j["criterion_re_ratio"] = Json{{"ratio", r.ratio.shifted ? "(Re phi - 1/2)/Re s" : "Re phi/Re s"},
                                 {"sigmas", r.ratio.sigmas},
                                 {"minima", r.ratio.minima},
                                 {"verdict", to_string(r.ratio.verdict)}};
  if (r.littleo_ran) {
    j["criterion_little_o"] = to_json(r.littleo);
  } else {
    j["criterion_little_o"] = Json{{"verdict", to_string(LittleOVerdict::NotApplicable)}};
  }
  Json spaces = Json::array();
  for (const SpaceReport& s : r.spaces) {
    Json table = Json::array();
    for (std::size_t i = 0; i < s.truncations.size(); ++i) {
      Json row{{"N", s.truncations[i]}};
      for (std::size_t k = 0; k < s.ks.size(); ++k) row["s_" + std::to_string(s.ks[k])] = s.table[i][k];
      table.push_back(row);
    }
    Json singular = Json::object();
    for (std::size_t i = 0; i < s.truncations.size(); ++i) {
      const auto& sv = s.singular[i];
      singular[std::to_string(s.truncations[i])] =
          std::vector<double>(sv.begin(), sv.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(sv.size(), 32)));
    }
    spaces.push_back({{"space", s.space.is_hardy() ? "H2" : "A_" + Json(s.space.alpha).dump()},
                      {"conclusion", to_string(s.conclusion)},
                      {"sufficient_condition", s.sufficient_condition},
                      {"sufficient_verdict", s.sufficient_verdict},
                      {"largest_singular_value", s.largest_singular_value},
                      {"stabilized", s.stabilized},
                      {"tail_indicator", table},
                      {"leading_singular_values", singular},
                      {"flags", s.flags}});
  }
  j["spaces"] = spaces;
  if (r.symbol.c0() >= 1)
    j["open_question"] = "whether little-o is also necessary on H2 is open; singular values are evidence only";
  return j;
}

const std::vector<SymbolSpec>& corpus() {
  static const std::vector<SymbolSpec> entries = [] {
    std::vector<SymbolSpec> v;
    v.push_back({"two-s", "2s: saturates the counting bound N(w) <= Re(w)/c0", 2, {}, false, "Gge1"});
    v.push_back({"identity", "s: the identity operator", 1, {}, false, "Gge1"});
    v.push_back({"translate", "s + 1: diagonal operator n^{-1}", 1, {{1, 1.0}}, false, "Gge1"});
    v.push_back({"single-prime", "s + 1 - 2^{-s}", 1, {{1, 1.0}, {2, -1.0}}, false, "Gge1"});
    v.push_back({"two-prime", "s + (1 - 2^{-s}) + (1 - 3^{-s})", 1, {{1, 2.0}, {2, -1.0}, {3, -1.0}},
                 false, "Gge1"});
    v.push_back({"five-halves", "5/2 - 2^{-s} - 3^{-s}: compact on A_alpha without the ratio condition", 0,
                 {{1, 2.5}, {2, -1.0}, {3, -1.0}}, false, "G0"});
    return v;
  }();
  return entries;
}

const SymbolSpec& corpus_entry(const std::string& name) {
  for (const SymbolSpec& s : corpus())
    if (s.name == name) return s;
  throw InvalidArgument("no corpus symbol named '" + name + "'");
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dcomp
