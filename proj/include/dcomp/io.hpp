#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcomp/counting.hpp"
#include "dcomp/dirichlet.hpp"
#include "dcomp/littlewood_paley.hpp"
#include "dcomp/operator.hpp"
#include "dcomp/symbol.hpp"

namespace dcomp {

using Json = nlohmann::ordered_json;

/// {"2": [re, im], ...}
Json to_json(const DirichletPolynomial& f);
DirichletPolynomial polynomial_from_json(const Json& j);

/// {"2": theta, ...} with z_p = e^{i theta}.
Json to_json(const Character& chi);
Character character_from_json(const Json& j);

/// Contents of a symbol file. When assume_class is set the class check is
/// skipped (and logged); otherwise loading certifies.
struct SymbolSpec {
  std::string name;
  std::string description;
  int c0 = 0;
  DirichletPolynomial psi;
  bool assume_class = false;
  std::string declared_class;  ///< "G0" or "Gge1"; empty when not given
};

SymbolSpec symbol_spec_from_json(const Json& j);
Json to_json(const SymbolSpec& spec);
SymbolSpec read_symbol_file(const std::filesystem::path& path);

/// Builds the symbol: Symbol::assume when assume_class is set, else
/// Symbol::certify (throws CertificationFailure).
Symbol make_symbol(const SymbolSpec& spec, const CertifyParams& params = {});

Json to_json(const CertificationReport& r);
Json to_json(const CountingValue& v);
Json to_json(const RootSet& rs);
Json to_json(const LittleOReport& r);
Json to_json(const McEstimate& e);
Json to_json(const CovReport& r);
Json to_json(const CompactnessReport& r);

/// Symbols shipped with the library, in a fixed order.
const std::vector<SymbolSpec>& corpus();
const SymbolSpec& corpus_entry(const std::string& name);

/// 64-bit FNV-1a hash rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace dcomp
