#include "nchol_cli/commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nchol/derham.hpp"
#include "nchol/errors.hpp"
#include "nchol/functors.hpp"
#include "nchol/weyl.hpp"
#include "nchol_cli/workspace.hpp"

namespace nchol::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A report that should exit 1 after being printed.
struct Outcome {
  Json report;
  std::string text;
  int code = kSuccess;
};

struct Common {
  bool text = false;
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--text", c.text, "Print a plain-text table instead of JSON");
  sub->add_option("-o,--output", c.output, "Write the report to FILE instead of stdout");
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
  return s;
}

Json module_summary(const std::string& name, const NCModule& m) {
  Json slices = Json::array();
  for (const auto& [nu, d] : m.slices()) slices.push_back({{"index", to_json(nu)}, {"dim", d}});
  return {{"name", name}, {"axes", m.axes()}, {"total_dim", m.total_dim()}, {"slices", std::move(slices)}};
}

std::string module_table(const std::string& name, const NCModule& m) {
  std::ostringstream os;
  os << name << "  axes=" << m.axes() << "  total_dim=" << m.total_dim() << "\n";
  os << "  " << pad("index", 24) << "dim\n";
  for (const auto& [nu, d] : m.slices()) os << "  " << pad(nu.str(), 24) << d << "\n";
  return os.str();
}

Json degree_report(const KoszulResult& k) {
  Json a = Json::array();
  for (const auto& [q, d] : k.dims()) a.push_back({{"degree", q}, {"dim", d}});
  return a;
}

std::string degree_table(const KoszulResult& k) {
  std::ostringstream os;
  os << pad("degree", 8) << "dim\n";
  for (const auto& [q, d] : k.dims()) os << pad(std::to_string(q), 8) << d << "\n";
  os << "euler_characteristic: " << k.euler_characteristic() << "\n";
  return os.str();
}

Json spectrum_json(const SpectrumReport& s) {
  Json a = Json::array();
  for (const auto& e : s.entries)
    a.push_back({{"degree", e.degree}, {"exponent", to_json(e.exponent)}, {"multiplicity", e.multiplicity}});
  return a;
}

std::string spectrum_table(const std::string& title, const SpectrumReport& s) {
  std::ostringstream os;
  os << title << "\n  " << pad("degree", 8) << pad("exponent", 10) << "multiplicity\n";
  for (const auto& e : s.entries)
    os << "  " << pad(std::to_string(e.degree), 8) << pad(e.exponent.str(), 10) << e.multiplicity << "\n";
  if (s.entries.empty()) os << "  (empty)\n";
  return os.str();
}

Workspace load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw UsageError("cannot open workspace '" + path + "'");
  return load_workspace_file(path);
}

const NCModule& lookup_module(const Workspace& w, const std::string& name) {
  auto it = w.modules.find(name);
  if (it == w.modules.end()) throw UsageError("no module named '" + name + "' in the workspace");
  return it->second;
}

const LocalSystemSpec& lookup_system(const Workspace& w, const std::string& name) {
  auto it = w.systems.find(name);
  if (it == w.systems.end()) throw UsageError("no local system named '" + name + "' in the workspace");
  return it->second;
}

// -------- validate

Outcome cmd_validate(const std::string& path) {
  Outcome o;
  o.report["command"] = "validate";
  o.report["file"] = path;
  Workspace w;
  try {
    w = load(path);
  } catch (const Error& e) {
    o.report["valid"] = false;
    o.report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    o.text = std::string("invalid: ") + e.what() + "\n";
    o.code = kValidationFailure;
    return o;
  }
  Json objects = Json::array();
  std::ostringstream text;
  bool valid = true;
  for (const auto& r : check_workspace(w)) {
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back(to_json(x));
    Json obj = {{"kind", r.kind}, {"name", r.name}, {"valid", r.valid()}, {"violations", std::move(v)}};
    if (!r.error.empty()) obj["error"] = r.error;
    objects.push_back(std::move(obj));
    valid = valid && r.valid();
    text << r.kind << " " << r.name << ": ";
    if (r.valid()) {
      text << "ok\n";
      continue;
    }
    if (!r.error.empty()) text << r.error << "\n";
    else text << r.violations.size() << " violation" << (r.violations.size() == 1 ? "" : "s") << "\n";
    for (const auto& x : r.violations) text << "  " << x.str() << "\n";
  }
  o.report["objects"] = std::move(objects);
  o.report["valid"] = valid;
  o.text = text.str();
  o.code = valid ? kSuccess : kValidationFailure;
  return o;
}

// -------- apply

struct ApplyArgs {
  std::string workspace, functor, module, divisors, name;
  std::vector<std::size_t> axes;
};

const std::vector<std::string> kFunctors = {"localize", "dual", "locoh", "minext", "kpush", "kpull", "sidechange"};

CoordinateDivisorSpec divisor_from(const ApplyArgs& a, std::size_t n) {
  CoordinateDivisorSpec y;
  if (!a.divisors.empty()) {
    try {
      y = CoordinateDivisorSpec::parse(a.divisors);
    } catch (const Error& e) {
      throw UsageError(std::string("--divisors: ") + e.what());
    }
  } else if (!a.axes.empty()) {
    y = CoordinateDivisorSpec::divisor(a.axes);
  } else {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    y = CoordinateDivisorSpec::divisor(all);
  }
  try {
    y.check(n);
  } catch (const Error& e) {
    throw UsageError(std::string("divisor: ") + e.what());
  }
  return y;
}

std::size_t single_axis(const ApplyArgs& a, std::size_t limit) {
  if (!a.divisors.empty()) throw UsageError(a.functor + " takes --axes with one axis, not --divisors");
  if (a.axes.size() > 1) throw UsageError(a.functor + " takes exactly one axis");
  std::size_t i = a.axes.empty() ? 0 : a.axes[0];
  if (i > limit) throw UsageError("axis " + std::to_string(i) + " out of range");
  return i;
}

Outcome cmd_apply(const ApplyArgs& a) {
  Workspace in = load(a.workspace);
  const NCModule& m = lookup_module(in, a.module);
  if (auto v = validate(m); !v.empty())
    throw Error(Errc::InvalidModule, "module '" + a.module + "' is invalid: " + v.front().str());
  std::string prefix = a.name.empty() ? a.module + "." + a.functor : a.name;
  const std::size_t n = m.axes();

  Workspace out;
  out.modules[a.module] = m;
  std::vector<std::string> outputs;
  auto put = [&](const std::string& name, NCModule r) {
    out.modules[name] = std::move(r);
    outputs.push_back(name);
  };
  auto put_map = [&](const std::string& name, const std::string& s, const std::string& t, NCMorphism f) {
    out.morphisms[name] = MorphismEntry{s, t, std::move(f)};
  };
  Json params = Json::object();

  if (a.functor == "localize") {
    std::vector<std::size_t> axes;
    if (!a.divisors.empty()) {
      CoordinateDivisorSpec y = divisor_from(a, n);
      if (y.unions.size() != 1) throw UsageError("localize takes a single union of axes");
      axes = y.unions[0];
    } else if (!a.axes.empty()) {
      axes = a.axes;
    } else {
      for (std::size_t i = 0; i < n; ++i) axes.push_back(i);
    }
    for (std::size_t i : axes)
      if (i >= n) throw UsageError("axis " + std::to_string(i) + " out of range");
    LocalizationResult r = localize(m, axes);
    params["axes"] = axes;
    put(prefix, r.module);
    put_map(prefix + ".unit", a.module, prefix, r.unit);
  } else if (a.functor == "dual") {
    put(prefix, dual(m));
  } else if (a.functor == "sidechange") {
    put(prefix, side_change(m));
  } else if (a.functor == "locoh") {
    CoordinateDivisorSpec y = divisor_from(a, n);
    params["divisors"] = y.str();
    LocalCohomology lc = local_cohomology(m, y);
    for (const auto& [j, g] : lc.gamma) put(prefix + ".gamma." + std::to_string(j), g);
    for (const auto& [j, g] : lc.cogamma) put(prefix + ".cogamma." + std::to_string(j), g);
    std::string g0 = prefix + ".gamma.0", c0 = prefix + ".cogamma.0", g1 = prefix + ".gamma.1";
    put_map(prefix + ".gamma0_to_m", g0, a.module, lc.gamma0_to_m);
    put_map(prefix + ".m_to_cogamma0", a.module, c0, lc.m_to_cogamma0);
    put_map(prefix + ".cogamma0_to_gamma1", c0, g1, lc.cogamma0_to_gamma1);
  } else if (a.functor == "minext") {
    CoordinateDivisorSpec y = divisor_from(a, n);
    params["divisors"] = y.str();
    put(prefix, minimal_extension(m, y));
  } else if (a.functor == "kpush") {
    std::size_t p = single_axis(a, n);
    params["axis"] = p;
    put(prefix, kashiwara_push(m, p));
  } else if (a.functor == "kpull") {
    if (n == 0) throw UsageError("kpull needs a module with at least one axis");
    std::size_t p = single_axis(a, n - 1);
    params["axis"] = p;
    put(prefix, kashiwara_pull(m, p));
  }

  Outcome o;
  o.report = to_json(out);
  Json summaries = Json::array();
  std::string text;
  for (const auto& name : outputs) {
    summaries.push_back(module_summary(name, out.modules.at(name)));
    text += module_table(name, out.modules.at(name));
  }
  o.report["report"] = {{"command", "apply"}, {"functor", a.functor}, {"input", a.module},
                        {"parameters", std::move(params)}, {"outputs", std::move(summaries)}};
  o.text = text;
  return o;
}

// -------- deligne, dr-stalk, dr-global

Outcome cmd_deligne(const std::string& path, const std::string& system, const std::string& name) {
  Workspace in = load(path);
  const LocalSystemSpec& l = lookup_system(in, system);
  std::string out_name = name.empty() ? system + ".deligne" : name;
  Workspace out;
  out.systems[system] = l;
  out.modules[out_name] = deligne_meromorphic(l);
  Json exps = Json::array();
  std::ostringstream text;
  text << "system " << system << "  axes=" << l.axes << "  rank=" << l.rank() << "\n";
  for (const auto& [t, k] : l.exponent_multiset()) {
    Json tj = Json::array();
    std::vector<std::string> parts;
    for (const auto& x : t) {
      tj.push_back(to_json(x));
      parts.push_back(x.str());
    }
    exps.push_back({{"alpha", std::move(tj)}, {"multiplicity", k}});
    text << "  alpha (" << join(parts, ", ") << ")  multiplicity " << k << "\n";
  }
  text << module_table(out_name, out.modules.at(out_name));
  Outcome o;
  o.report = to_json(out);
  o.report["report"] = {{"command", "deligne"}, {"system", system}, {"rank", l.rank()},
                        {"exponents", std::move(exps)},
                        {"outputs", Json::array({module_summary(out_name, out.modules.at(out_name))})}};
  o.text = text.str();
  return o;
}

Outcome degrees_outcome(const char* command, const char* key, const std::string& name, const KoszulResult& k) {
  Outcome o;
  std::size_t total = 0;
  for (const auto& [q, d] : k.dims()) total += d;
  o.report = {{"command", command}, {key, name}, {"degrees", degree_report(k)},
              {"total_dim", total}, {"euler_characteristic", k.euler_characteristic()}};
  o.text = std::string(key) + " " + name + "\n" + degree_table(k);
  return o;
}

Outcome cmd_dr_stalk(const std::string& path, const std::string& module, bool costalk) {
  Workspace in = load(path);
  const NCModule& m = lookup_module(in, module);
  return degrees_outcome(costalk ? "dr-costalk" : "dr-stalk", "module", module, costalk ? dr_costalk(m) : dr_stalk(m));
}

Outcome cmd_dr_global(const std::string& path, const std::string& system) {
  Workspace in = load(path);
  return degrees_outcome("dr-global", "system", system, dr_global_punctured(lookup_system(in, system)));
}

// -------- psi

struct PsiArgs {
  std::vector<std::string> alphas;
  std::vector<long> monomial;
  std::size_t n = 1, dx = 1;
  bool oracle = false;
};

Outcome cmd_psi(const PsiArgs& a) {
  std::vector<Rational> alpha;
  for (const auto& s : a.alphas) {
    try {
      alpha.push_back(Rational::parse(s));
    } catch (const Error& e) {
      throw UsageError("--alphas: " + std::string(e.what()));
    }
  }
  MonomialSpec spec;
  spec.dx = a.dx;
  spec.n = a.n;
  spec.m = a.monomial;
  SpectrumReport s = nearby_cycles_monomial(alpha, spec);
  Json alphas = Json::array();
  for (const auto& x : alpha) alphas.push_back(to_json(x));
  Outcome o;
  o.report = {{"command", "psi"}, {"alphas", std::move(alphas)}, {"monomial", to_json(spec)},
              {"spectrum", spectrum_json(s)}};
  o.text = spectrum_table("spectrum", s);
  if (a.oracle) {
    SpectrumReport r = psi_oracle(alpha, spec);
    bool agree = r == s;
    o.report["oracle"] = spectrum_json(r);
    o.report["agreement"] = agree;
    o.text += spectrum_table("oracle", r) + "agreement: " + (agree ? "true" : "false") + "\n";
    if (!agree) o.code = kValidationFailure;
  }
  return o;
}

// -------- iota-check

Outcome cmd_iota_check(std::size_t n, std::size_t order) {
  std::size_t checked = 0;
  Json failures = Json::array();
  for (const auto& nu : multi_indices(n, order))
    for (const auto& mu : multi_indices(n, order)) {
      std::size_t deg = 0;
      for (auto x : nu) deg += x;
      for (auto x : mu) deg += x;
      if (deg > order) continue;
      SymbolElement x(n, order);
      x.add("η", mu, nu, Rational(1));
      ++checked;
      SymbolElement y = involution_iota(involution_iota(x));
      if (!(y == x) && failures.size() < 10) failures.push_back({{"input", x.str()}, {"output", y.str()}});
    }
  Outcome o;
  bool ok = failures.empty();
  o.report = {{"command", "iota-check"}, {"n", n}, {"order", order}, {"checked", checked},
              {"failures", failures.size()}, {"failing_examples", std::move(failures)}, {"ok", ok}};
  o.text = "iota^2 = id on " + std::to_string(checked) + " basis elements (n=" + std::to_string(n) +
           ", order<=" + std::to_string(order) + "): " + (ok ? "ok" : "FAILED") + "\n";
  o.code = ok ? kSuccess : kValidationFailure;
  return o;
}

int emit(const Outcome& o, const Common& c, std::ostream& out, std::ostream& err) {
  std::string body = c.text ? o.text : dump(o.report);
  if (c.output.empty()) {
    out << body;
  } else {
    std::ofstream f(c.output);
    if (!f) {
      err << "error: cannot write '" << c.output << "'\n";
      return kUsageError;
    }
    f << body;
  }
  return o.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus of normal-crossing D-modules on the combinatorial grid model", "nchol"};
  app.require_subcommand(1, 1);
  Common common;

  std::string validate_file;
  auto* v = app.add_subcommand("validate", "Load a workspace and validate every object");
  v->add_option("file", validate_file, "Workspace JSON file")->required();
  add_common(v, common);

  ApplyArgs ap;
  auto* a = app.add_subcommand("apply", "Apply a functor to a module; the report is itself a workspace");
  a->add_option("functor", ap.functor, "localize | dual | locoh | minext | kpush | kpull | sidechange")
      ->required()
      ->check(CLI::IsMember(kFunctors));
  a->add_option("-w,--workspace", ap.workspace, "Workspace JSON file")->required();
  a->add_option("--module", ap.module, "Input module name")->required();
  auto* axes_opt = a->add_option("--axes", ap.axes, "Comma-separated 0-based axes")->delimiter(',');
  auto* div_opt = a->add_option("--divisors", ap.divisors, "Divisor spec: unions split by ';', axes by ','");
  axes_opt->excludes(div_opt);
  a->add_option("--name", ap.name, "Name for the result (default MODULE.FUNCTOR)");
  add_common(a, common);

  std::string d_ws, d_sys, d_name;
  auto* d = app.add_subcommand("deligne", "Deligne meromorphic extension of a local system");
  d->add_option("-w,--workspace", d_ws, "Workspace JSON file")->required();
  d->add_option("--system", d_sys, "Local system name")->required();
  d->add_option("--name", d_name, "Name for the result (default SYSTEM.deligne)");
  add_common(d, common);

  std::string s_ws, s_mod;
  bool s_costalk = false;
  auto* s = app.add_subcommand("dr-stalk", "De Rham stalk cohomology at the origin, degrees -n..0");
  s->add_option("-w,--workspace", s_ws, "Workspace JSON file")->required();
  s->add_option("--module", s_mod, "Module name")->required();
  s->add_flag("--costalk", s_costalk, "Report the costalk complex built from var instead");
  add_common(s, common);

  std::string g_ws, g_sys;
  auto* g = app.add_subcommand("dr-global", "Cohomology of the local system on the punctured polydisc, degrees 0..n");
  g->add_option("-w,--workspace", g_ws, "Workspace JSON file")->required();
  g->add_option("--system", g_sys, "Local system name")->required();
  add_common(g, common);

  PsiArgs pa;
  auto* p = app.add_subcommand(
      "psi", "Nearby-cycle spectrum of a monomial with a rank-one system; degrees 0..n-1, exponents in [0,1)");
  p->add_option("--alphas", pa.alphas, "Exponents alpha_i in [0,1), one per axis")->delimiter(',')->required();
  p->add_option("--monomial", pa.monomial, "Positive exponents m_1,...,m_r")->delimiter(',')->required();
  p->add_option("--n", pa.n, "Number of divisor axes")->required();
  p->add_option("--dx", pa.dx, "Ambient dimension")->required();
  p->add_flag("--oracle", pa.oracle, "Also run the Milnor-fibre oracle and compare");
  add_common(p, common);

  std::size_t i_n = 1, i_order = 4;
  auto* io = app.add_subcommand("iota-check", "Check that the symbol involution squares to the identity");
  io->add_option("--n", i_n, "Number of variables")->required();
  io->add_option("--order", i_order, "Total order bound")->required();
  add_common(io, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome o;
    if (v->parsed()) o = cmd_validate(validate_file);
    else if (a->parsed()) o = cmd_apply(ap);
    else if (d->parsed()) o = cmd_deligne(d_ws, d_sys, d_name);
    else if (s->parsed()) o = cmd_dr_stalk(s_ws, s_mod, s_costalk);
    else if (g->parsed()) o = cmd_dr_global(g_ws, g_sys);
    else if (p->parsed()) o = cmd_psi(pa);
    else o = cmd_iota_check(i_n, i_order);
    return emit(o, common, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    Outcome o;
    o.report = {{"command", command},
                {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    o.text = std::string("error: ") + e.what() + "\n";
    o.code = kValidationFailure;
    err << "error: " << e.what() << "\n";
    return emit(o, common, out, err) == kUsageError ? kUsageError : kValidationFailure;
  }
}

}  // namespace nchol::cli
