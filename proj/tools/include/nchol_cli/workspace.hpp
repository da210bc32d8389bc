#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nchol/derham.hpp"
#include "nchol/deligne.hpp"
#include "nchol/ncmodule.hpp"

namespace nchol::cli {

using Json = nlohmann::json;

inline constexpr const char* kFormatName = "nchol-workspace";
inline constexpr int kFormatVersion = 1;

struct MorphismEntry {
  std::string source;
  std::string target;
  NCMorphism morphism;
};

struct Workspace {
  std::map<std::string, NCModule> modules;
  std::map<std::string, MorphismEntry> morphisms;
  std::map<std::string, LocalSystemSpec> systems;
  std::map<std::string, MonomialSpec> monomials;
};

struct ObjectReport {
  std::string kind;  // module, morphism, system, monomial
  std::string name;
  std::vector<Violation> violations;
  std::string error;  // spec-level failure (systems, monomials)
  bool valid() const { return violations.empty() && error.empty(); }
};

// Scalars: "p/q" strings on output; strings or JSON integers on input.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const GridIndex& nu);
GridIndex index_from_json(const Json& j, const std::string& where);
Json to_json(const Matrix& m);
// `rows`/`cols` shape an empty array; a nonempty array defines its own shape.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where);

Json to_json(const NCModule& m);
NCModule module_from_json(const Json& j, const std::string& where);
Json to_json(const MorphismEntry& f);
Json to_json(const LocalSystemSpec& l);
LocalSystemSpec system_from_json(const Json& j, const std::string& where);
Json to_json(const MonomialSpec& s);
MonomialSpec monomial_from_json(const Json& j, const std::string& where);
Json to_json(const Violation& v);

// Structural problems (bad JSON shape, unknown names, version) throw ParseError.
// Object-level validity is reported by check_workspace.
Workspace workspace_from_json(const Json& j);
Json to_json(const Workspace& w);
std::vector<ObjectReport> check_workspace(const Workspace& w);

Workspace load_workspace_file(const std::string& path);
std::string dump(const Json& j);

}  // namespace nchol::cli
