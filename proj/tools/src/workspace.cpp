#include "nchol_cli/workspace.hpp"

#include <fstream>
#include <sstream>

#include "nchol/errors.hpp"

namespace nchol::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) fail(where + "." + key, "expected an array");
  return a;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string at(const std::string& where, std::size_t k) { return where + "[" + std::to_string(k) + "]"; }

template <class F>
void for_each_named(const Json& j, const char* key, F&& f) {
  const Json* section = optional_field(j, key);
  if (!section) return;
  if (!section->is_object()) fail(key, "expected an object keyed by name");
  for (const auto& [name, value] : section->items()) f(name, value, std::string(key) + "." + name);
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) fail(where, "expected a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json to_json(const GridIndex& nu) {
  Json a = Json::array();
  for (const auto& e : nu.coords()) a.push_back(to_json(e.value()));
  return a;
}

GridIndex index_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "grid index must be an array");
  std::vector<Exponent> c;
  for (std::size_t k = 0; k < j.size(); ++k) {
    Rational v = rational_from_json(j[k], at(where, k));
    if (v < Rational(-1) || v > Rational(0)) fail(at(where, k), "exponent " + v.str() + " outside [-1, 0]");
    c.emplace_back(v);
  }
  return GridIndex(std::move(c));
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) fail(where, "matrix must be an array of rows");
  if (j.empty()) return Matrix(0, rows == 0 ? cols : 0);
  std::size_t nc = 0;
  std::vector<Rational> entries;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) fail(at(where, r), "matrix row must be an array");
    if (r == 0) nc = j[r].size();
    if (j[r].size() != nc) fail(at(where, r), "ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) entries.push_back(rational_from_json(j[r][c], at(at(where, r), c)));
  }
  return Matrix(j.size(), nc, std::move(entries));
}

Json to_json(const NCModule& m) {
  Json out;
  out["axes"] = m.axes();
  Json slices = Json::array();
  for (const auto& [nu, d] : m.slices()) {
    Json s;
    s["index"] = to_json(nu);
    s["dim"] = d;
    Json theta = Json::array();
    for (std::size_t i = 0; i < m.axes(); ++i) theta.push_back(to_json(m.theta(i, nu)));
    s["theta"] = std::move(theta);
    slices.push_back(std::move(s));
  }
  out["slices"] = std::move(slices);
  auto maps = [&](const char* key, auto get) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.axes(); ++i)
      for (const auto& [nu, mat] : get(i)) a.push_back({{"axis", i}, {"index", to_json(nu)}, {"matrix", to_json(mat)}});
    out[key] = std::move(a);
  };
  maps("var", [&](std::size_t i) -> const SliceMaps& { return m.var_maps(i); });
  maps("can", [&](std::size_t i) -> const SliceMaps& { return m.can_maps(i); });
  return out;
}

NCModule module_from_json(const Json& j, const std::string& where) {
  std::size_t n = size_from_json(field(j, "axes", where), where + ".axes");
  NCModule m(n);
  auto checked_index = [&](const Json& x, const std::string& w) {
    GridIndex nu = index_from_json(x, w);
    if (nu.size() != n) fail(w, "expected " + std::to_string(n) + " coordinates");
    return nu;
  };
  const Json& slices = array_field(j, "slices", where);
  for (std::size_t k = 0; k < slices.size(); ++k) {
    std::string w = at(where + ".slices", k);
    GridIndex nu = checked_index(field(slices[k], "index", w), w + ".index");
    if (m.has_slice(nu)) fail(w, "duplicate slice " + nu.str());
    std::size_t d = size_from_json(field(slices[k], "dim", w), w + ".dim");
    if (d == 0) fail(w + ".dim", "slice dimension must be positive");
    m.set_slice(nu, d);
  }
  for (std::size_t k = 0; k < slices.size(); ++k) {
    std::string w = at(where + ".slices", k);
    const Json* theta = optional_field(slices[k], "theta");
    if (!theta) continue;
    if (!theta->is_array() || theta->size() != n) fail(w + ".theta", "expected one matrix per axis");
    GridIndex nu = checked_index(slices[k]["index"], w + ".index");
    std::size_t d = m.dim(nu);
    for (std::size_t i = 0; i < n; ++i) m.set_theta(i, nu, matrix_from_json((*theta)[i], d, d, at(w + ".theta", i)));
  }
  auto read_maps = [&](const char* key, bool is_var) {
    const Json* a = optional_field(j, key);
    if (!a) return;
    if (!a->is_array()) fail(where + "." + key, "expected an array");
    for (std::size_t k = 0; k < a->size(); ++k) {
      std::string w = at(where + "." + key, k);
      const Json& e = (*a)[k];
      std::size_t axis = size_from_json(field(e, "axis", w), w + ".axis");
      if (axis >= n) fail(w + ".axis", "axis out of range");
      GridIndex nu = checked_index(field(e, "index", w), w + ".index");
      if (!nu[axis].is_minus_one()) fail(w + ".index", "map key must have coordinate -1 on its axis");
      std::size_t lo = m.dim(nu), hi = m.dim(nu.raised(axis));
      const Json& mat = field(e, "matrix", w);
      if (is_var)
        m.set_var(axis, nu, matrix_from_json(mat, hi, lo, w + ".matrix"));
      else
        m.set_can(axis, nu, matrix_from_json(mat, lo, hi, w + ".matrix"));
    }
  };
  read_maps("var", true);
  read_maps("can", false);
  return m;
}

Json to_json(const MorphismEntry& f) {
  Json maps = Json::array();
  for (const auto& [nu, mat] : f.morphism.maps()) maps.push_back({{"index", to_json(nu)}, {"matrix", to_json(mat)}});
  return {{"source", f.source}, {"target", f.target}, {"maps", std::move(maps)}};
}

namespace {

MorphismEntry morphism_from_json(const Json& j, const std::string& where, const std::map<std::string, NCModule>& modules) {
  MorphismEntry f;
  auto name = [&](const char* key) {
    const Json& x = field(j, key, where);
    if (!x.is_string()) fail(where + "." + key, "expected a module name");
    std::string s = x.get<std::string>();
    if (!modules.count(s)) fail(where + "." + key, "unknown module '" + s + "'");
    return s;
  };
  f.source = name("source");
  f.target = name("target");
  const NCModule& s = modules.at(f.source);
  const NCModule& t = modules.at(f.target);
  if (s.axes() != t.axes()) fail(where, "source and target have different axis counts");
  f.morphism = NCMorphism(s, t);
  const Json& maps = array_field(j, "maps", where);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    std::string w = at(where + ".maps", k);
    GridIndex nu = index_from_json(field(maps[k], "index", w), w + ".index");
    if (nu.size() != s.axes()) fail(w + ".index", "expected " + std::to_string(s.axes()) + " coordinates");
    f.morphism.set(nu, matrix_from_json(field(maps[k], "matrix", w), t.dim(nu), s.dim(nu), w + ".matrix"));
  }
  return f;
}

Json tuple_to_json(const ExponentTuple& t) {
  Json a = Json::array();
  for (const auto& x : t) a.push_back(to_json(x));
  return a;
}

ExponentTuple tuple_from_json(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where, "expected " + std::to_string(n) + " exponents");
  ExponentTuple t;
  for (std::size_t k = 0; k < n; ++k) t.push_back(rational_from_json(j[k], at(where, k)));
  return t;
}

}  // namespace

Json to_json(const LocalSystemSpec& l) {
  Json blocks = Json::array();
  for (const auto& b : l.blocks) {
    Json e;
    e["alpha"] = tuple_to_json(b.alpha);
    e["dim"] = b.dim;
    Json nil = Json::array();
    for (const auto& n : b.nilpotents) nil.push_back(to_json(n));
    e["nilpotents"] = std::move(nil);
    if (!b.orbit.empty()) {
      Json orbit = Json::array();
      for (const auto& t : b.orbit) orbit.push_back(tuple_to_json(t));
      e["orbit"] = std::move(orbit);
    }
    blocks.push_back(std::move(e));
  }
  return {{"axes", l.axes}, {"blocks", std::move(blocks)}};
}

LocalSystemSpec system_from_json(const Json& j, const std::string& where) {
  std::size_t n = size_from_json(field(j, "axes", where), where + ".axes");
  if (const Json* t = optional_field(j, "monodromy")) {
    if (optional_field(j, "blocks")) fail(where, "give either 'blocks' or 'monodromy', not both");
    if (!t->is_array() || t->size() != n) fail(where + ".monodromy", "expected one matrix per axis");
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < n; ++i) mats.push_back(matrix_from_json((*t)[i], 0, 0, at(where + ".monodromy", i)));
    try {
      LocalSystemSpec l = monodromy_to_spec(mats);
      l.axes = n;
      return l;
    } catch (const Error& e) {
      fail(where + ".monodromy", e.what());
    }
  }
  LocalSystemSpec l;
  l.axes = n;
  const Json& blocks = array_field(j, "blocks", where);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::string w = at(where + ".blocks", k);
    LocalSystemBlock b;
    b.alpha = tuple_from_json(field(blocks[k], "alpha", w), n, w + ".alpha");
    b.dim = size_from_json(field(blocks[k], "dim", w), w + ".dim");
    if (const Json* nil = optional_field(blocks[k], "nilpotents")) {
      if (!nil->is_array() || nil->size() != n) fail(w + ".nilpotents", "expected one matrix per axis");
      for (std::size_t i = 0; i < n; ++i)
        b.nilpotents.push_back(matrix_from_json((*nil)[i], b.dim, b.dim, at(w + ".nilpotents", i)));
    } else {
      b.nilpotents.assign(n, Matrix(b.dim, b.dim));
    }
    if (const Json* orbit = optional_field(blocks[k], "orbit")) {
      if (!orbit->is_array()) fail(w + ".orbit", "expected an array of exponent tuples");
      for (std::size_t o = 0; o < orbit->size(); ++o) b.orbit.push_back(tuple_from_json((*orbit)[o], n, at(w + ".orbit", o)));
    }
    l.blocks.push_back(std::move(b));
  }
  return l;
}

Json to_json(const MonomialSpec& s) { return {{"dx", s.dx}, {"n", s.n}, {"m", s.m}}; }

MonomialSpec monomial_from_json(const Json& j, const std::string& where) {
  MonomialSpec s;
  s.dx = size_from_json(field(j, "dx", where), where + ".dx");
  s.n = size_from_json(field(j, "n", where), where + ".n");
  const Json& m = array_field(j, "m", where);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k].is_number_integer()) fail(at(where + ".m", k), "expected an integer");
    s.m.push_back(m[k].get<long>());
  }
  return s;
}

Json to_json(const Violation& v) {
  Json j;
  j["axis"] = v.axis ? Json(*v.axis) : Json(nullptr);
  j["index"] = to_json(v.index);
  j["identity"] = v.identity;
  j["detail"] = v.detail;
  return j;
}

Workspace workspace_from_json(const Json& j) {
  if (!j.is_object()) fail("workspace", "expected a JSON object");
  const Json& version = field(j, "format_version", "workspace");
  if (!version.is_number_integer() || version.get<long long>() != kFormatVersion)
    fail("workspace.format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  if (const Json* f = optional_field(j, "format"); f && *f != kFormatName)
    fail("workspace.format", std::string("expected \"") + kFormatName + "\"");
  Workspace w;
  for_each_named(j, "modules", [&](const std::string& name, const Json& v, const std::string& where) {
    w.modules.emplace(name, module_from_json(v, where));
  });
  for_each_named(j, "morphisms", [&](const std::string& name, const Json& v, const std::string& where) {
    w.morphisms.emplace(name, morphism_from_json(v, where, w.modules));
  });
  for_each_named(j, "systems", [&](const std::string& name, const Json& v, const std::string& where) {
    w.systems.emplace(name, system_from_json(v, where));
  });
  for_each_named(j, "monomials", [&](const std::string& name, const Json& v, const std::string& where) {
    w.monomials.emplace(name, monomial_from_json(v, where));
  });
  return w;
}

Json to_json(const Workspace& w) {
  Json j;
  j["format"] = kFormatName;
  j["format_version"] = kFormatVersion;
  j["modules"] = Json::object();
  for (const auto& [name, m] : w.modules) j["modules"][name] = to_json(m);
  j["morphisms"] = Json::object();
  for (const auto& [name, f] : w.morphisms) j["morphisms"][name] = to_json(f);
  j["systems"] = Json::object();
  for (const auto& [name, l] : w.systems) j["systems"][name] = to_json(l);
  j["monomials"] = Json::object();
  for (const auto& [name, s] : w.monomials) j["monomials"][name] = to_json(s);
  return j;
}

std::vector<ObjectReport> check_workspace(const Workspace& w) {
  std::vector<ObjectReport> out;
  for (const auto& [name, m] : w.modules) out.push_back({"module", name, validate(m), ""});
  for (const auto& [name, f] : w.morphisms) {
    ObjectReport r{"morphism", name, {}, ""};
    if (!is_valid(f.morphism.source()) || !is_valid(f.morphism.target()))
      r.error = "source or target module is invalid";
    else
      r.violations = validate(f.morphism);
    out.push_back(std::move(r));
  }
  auto spec_check = [&](const char* kind, const std::string& name, auto&& check) {
    ObjectReport r{kind, name, {}, ""};
    try {
      check();
    } catch (const Error& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  };
  for (const auto& [name, l] : w.systems) spec_check("system", name, [&] { l.check(); });
  for (const auto& [name, s] : w.monomials) spec_check("monomial", name, [&] { s.check(); });
  return out;
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return workspace_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nchol::cli
