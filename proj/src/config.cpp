#include "bergman/config.hpp"

#include <fstream>
#include <set>

#include "bergman/errors.hpp"

namespace bergman {

using json = nlohmann::json;
using cd = std::complex<double>;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

cd complex_of(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

std::vector<RadialTerm> radial_terms(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of terms");
  std::vector<RadialTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    only_keys(j[i], w, {"coef", "powers"});
    out.push_back({complex_of(j[i].value("coef", json(1.0)), w + ".coef"), get<std::vector<int>>(j[i], "powers", w)});
  }
  return out;
}

InvarianceClass class_of(const json& j, const std::string& where) {
  std::string kind;
  int block = -1;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else {
    only_keys(j, where, {"kind", "block"});
    kind = get<std::string>(j, "kind", where);
    block = get_or<int>(j, "block", -1, where);
  }
  for (auto k : {InvarianceKind::General, InvarianceKind::TmInvariant, InvarianceKind::QuasiRadial,
                 InvarianceKind::SeparatelyRadial, InvarianceKind::Radial})
    if (to_string(InvarianceClass{k, -1}) == kind) return {k, -1};
  if (kind == "KJQuasiHomogeneous") {
    if (block < 0) throw ConfigError(where + ": KJQuasiHomogeneous needs a block");
    return {InvarianceKind::KJQuasiHomogeneous, block};
  }
  throw ConfigError(where + ": unknown class '" + kind + "'");
}

std::vector<KappaIndex> kappas_of(const json& j, const std::string& where) {
  std::vector<KappaIndex> out;
  try {
    for (const auto& k : j) out.emplace_back(k.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const InputError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return out;
}

json kappa_json(const KappaIndex& k) { return k.values(); }

const std::set<std::string> kFamilies{"constant", "radial-profile", "phi", "g-form", "polynomial", "xi-monomial"};
const std::set<std::string> kChecks{"offblock",       "tensor-constancy", "commutator", "trace-identity",
                                    "trace-integral", "equivariance",     "sequence"};

SymbolSpec parse_symbol(const json& j, std::size_t i) {
  const std::string where = "symbols[" + std::to_string(i) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  SymbolSpec s;
  s.name = get<std::string>(j, "name", where);
  s.family = get<std::string>(j, "family", where);
  s.raw = j;
  if (!kFamilies.count(s.family)) throw ConfigError(where + ": unknown family '" + s.family + "'");
  if (j.contains("path")) {
    const auto path = get<std::string>(j, "path", where);
    if (path != "auto") {
      try {
        s.path = provenance_from_string(path);
      } catch (const InputError& e) {
        throw ConfigError(where + ".path: " + e.what());
      }
    }
  }
  if (s.family == "constant") only_keys(j, where, {"name", "family", "path", "value"});
  if (s.family == "radial-profile") only_keys(j, where, {"name", "family", "path", "terms"});
  if (s.family == "phi") only_keys(j, where, {"name", "family", "path", "p", "q", "profile"});
  if (s.family == "g-form") only_keys(j, where, {"name", "family", "path", "block", "b", "t"});
  if (s.family == "polynomial") only_keys(j, where, {"name", "family", "path", "class", "terms"});
  if (s.family == "xi-monomial") only_keys(j, where, {"name", "family", "path", "p", "q"});
  return s;
}

CheckSpec parse_check(const json& j, std::size_t i, const RunConfig& cfg) {
  const std::string where = "checks[" + std::to_string(i) + "]";
  only_keys(j, where, {"type", "symbol", "with", "block", "kappa", "unitaries", "expect"});
  CheckSpec c;
  c.raw = j;
  c.type = get<std::string>(j, "type", where);
  if (!kChecks.count(c.type)) throw ConfigError(where + ": unknown check '" + c.type + "'");
  c.symbol = get<std::string>(j, "symbol", where);
  cfg.symbol(c.symbol);
  if (c.type == "commutator") {
    c.other = get<std::string>(j, "with", where);
    cfg.symbol(c.other);
  }
  c.block = get_or<int>(j, "block", 0, where);
  if (c.block < 0 || c.block >= cfg.partition.m()) throw ConfigError(where + ".block: out of range");
  if (j.contains("kappa")) c.kappas = kappas_of(j["kappa"], where + ".kappa");
  for (const auto& k : c.kappas)
    if (k.size() != cfg.partition.m() || k.total() > cfg.degree)
      throw ConfigError(where + ".kappa: " + to_string(k) + " does not fit the partition and degree");
  c.unitaries = get_or<int>(j, "unitaries", 1, where);
  if (c.unitaries < 1) throw ConfigError(where + ".unitaries must be positive");
  const auto expect = get_or<std::string>(j, "expect", "pass", where);
  if (expect != "pass" && expect != "fail") throw ConfigError(where + ".expect must be 'pass' or 'fail'");
  c.expect_fail = expect == "fail";
  return c;
}

json check_json(const CheckSpec& c) {
  json j{{"type", c.type}, {"symbol", c.symbol}, {"expect", c.expect_fail ? "fail" : "pass"}};
  if (!c.other.empty()) j["with"] = c.other;
  if (c.type == "tensor-constancy") j["block"] = c.block;
  if (c.type == "equivariance") j["unitaries"] = c.unitaries;
  if (!c.kappas.empty()) {
    j["kappa"] = json::array();
    for (const auto& k : c.kappas) j["kappa"].push_back(kappa_json(k));
  }
  return j;
}

}  // namespace

const SymbolSpec& RunConfig::symbol(const std::string& name) const {
  for (const auto& s : symbols)
    if (s.name == name) return s;
  throw ConfigError("unknown symbol '" + name + "'");
}

RunConfig parse_config(const json& j) {
  only_keys(j, "config", {"schema", "n", "partition", "lambda", "degree", "symbols", "quadrature", "checks", "witness",
                          "witness_threshold", "deltas", "output", "seed", "jobs"});
  const auto schema = get<std::string>(j, "schema", "config");
  if (schema != kSchema) throw ConfigError("config: schema '" + schema + "' is not " + kSchema);
  RunConfig cfg;
  try {
    cfg.partition = Partition(get<std::vector<int>>(j, "partition", "config"));
  } catch (const InputError& e) {
    throw ConfigError(std::string("config.partition: ") + e.what());
  }
  if (j.contains("n") && get<int>(j, "n", "config") != cfg.partition.n())
    throw ConfigError("config.partition: blocks sum to " + std::to_string(cfg.partition.n()) + ", but n = " +
                      std::to_string(get<int>(j, "n", "config")));
  const json& lam = j.contains("lambda") ? j["lambda"] : json(0.0);
  cfg.lambdas = lam.is_array() ? get<std::vector<double>>(j, "lambda", "config") : std::vector<double>{lam.get<double>()};
  if (cfg.lambdas.empty()) throw ConfigError("config.lambda: empty list");
  for (double l : cfg.lambdas)
    if (!(l > -1.0)) throw ConfigError("config.lambda: every lambda must be > -1");
  cfg.degree = get<int>(j, "degree", "config");
  if (cfg.degree < 0) throw ConfigError("config.degree must be non-negative");

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    only_keys(q, "config.quadrature", {"radial_nodes", "torus_nodes", "sphere_nodes", "mc_samples", "haar_samples",
                                       "invariance_samples", "invariance_tol"});
    auto& s = cfg.quadrature;
    s.radial_nodes = get_or(q, "radial_nodes", s.radial_nodes, "config.quadrature");
    s.torus_nodes = get_or(q, "torus_nodes", s.torus_nodes, "config.quadrature");
    s.sphere_nodes = get_or(q, "sphere_nodes", s.sphere_nodes, "config.quadrature");
    s.mc_samples = get_or(q, "mc_samples", s.mc_samples, "config.quadrature");
    s.haar_samples = get_or(q, "haar_samples", s.haar_samples, "config.quadrature");
    s.invariance_samples = get_or(q, "invariance_samples", s.invariance_samples, "config.quadrature");
    s.invariance_tol = get_or(q, "invariance_tol", s.invariance_tol, "config.quadrature");
  }
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0, "config");
  cfg.quadrature.seed = cfg.seed;
  cfg.quadrature.validate();
  cfg.output = get_or<std::string>(j, "output", "out", "config");
  cfg.jobs = get_or<int>(j, "jobs", 1, "config");
  if (cfg.jobs < 1) throw ConfigError("config.jobs must be positive");
  cfg.witness_threshold = get_or<double>(j, "witness_threshold", 1e-2, "config");
  if (j.contains("deltas")) cfg.deltas = get<std::vector<double>>(j, "deltas", "config");

  if (!j.contains("symbols") || !j["symbols"].is_array() || j["symbols"].empty())
    throw ConfigError("config.symbols: expected a non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < j["symbols"].size(); ++i) {
    auto s = parse_symbol(j["symbols"][i], i);
    if (!names.insert(s.name).second) throw ConfigError("config.symbols: duplicate name '" + s.name + "'");
    cfg.symbols.push_back(std::move(s));
  }
  // Build every symbol once so family constraints surface as config errors.
  for (const auto& s : cfg.symbols) make_symbol(s, cfg);

  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("config.checks: expected an array");
    for (std::size_t i = 0; i < j["checks"].size(); ++i) cfg.checks.push_back(parse_check(j["checks"][i], i, cfg));
  }
  if (j.contains("witness")) {
    if (!j["witness"].is_array()) throw ConfigError("config.witness: expected an array");
    for (std::size_t i = 0; i < j["witness"].size(); ++i) {
      const std::string where = "witness[" + std::to_string(i) + "]";
      only_keys(j["witness"][i], where, {"a", "b"});
      auto a = get<std::string>(j["witness"][i], "a", where);
      auto b = get<std::string>(j["witness"][i], "b", where);
      cfg.symbol(a);
      cfg.symbol(b);
      cfg.witness_pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json RunConfig::to_json() const {
  const auto& q = quadrature;
  json j{{"schema", kSchema},
         {"n", partition.n()},
         {"partition", partition.k()},
         {"lambda", lambdas},
         {"degree", degree},
         {"quadrature",
          {{"radial_nodes", q.radial_nodes},
           {"torus_nodes", q.torus_nodes},
           {"sphere_nodes", q.sphere_nodes},
           {"mc_samples", q.mc_samples},
           {"haar_samples", q.haar_samples},
           {"invariance_samples", q.invariance_samples},
           {"invariance_tol", q.invariance_tol}}},
         {"witness_threshold", witness_threshold},
         {"deltas", deltas},
         {"output", output},
         {"seed", seed}};
  j["symbols"] = json::array();
  for (const auto& s : symbols) j["symbols"].push_back(s.raw);
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(check_json(c));
  j["witness"] = json::array();
  for (const auto& [a, b] : witness_pairs) j["witness"].push_back({{"a", a}, {"b", b}});
  return j;
}

Symbol make_symbol(const SymbolSpec& s, const RunConfig& cfg) {
  const std::string where = "symbol '" + s.name + "'";
  const json& j = s.raw;
  const Partition& p = cfg.partition;
  ValidationOptions opts;
  opts.samples = cfg.quadrature.invariance_samples;
  opts.tol = cfg.quadrature.invariance_tol;
  try {
    if (s.family == "constant") {
      auto sym = constant_symbol(p, complex_of(j.value("value", json(1.0)), where + ".value"));
      return Symbol(p, sym.evaluator(), sym.invariance(), sym.bound(), s.name, sym.payloads(), sym.real_valued());
    }
    if (s.family == "radial-profile") return radial_polynomial(p, radial_terms(get<json>(j, "terms", where), where), s.name);
    if (s.family == "phi")
      return phi_symbol(p, get<std::vector<int>>(j, "p", where), get<std::vector<int>>(j, "q", where),
                        j.contains("profile") ? radial_terms(j["profile"], where + ".profile") : std::vector<RadialTerm>{},
                        s.name);
    if (s.family == "g-form") {
      std::vector<SphereTerm> b;
      for (const auto& t : radial_terms(get<json>(j, "b", where), where + ".b")) b.push_back({t.coef, t.powers});
      return pseudo_homogeneous(p, get<int>(j, "block", where), std::move(b), get<std::vector<int>>(j, "t", where),
                                s.name);
    }
    if (s.family == "polynomial") {
      std::vector<PolynomialTerm> terms;
      const json& tj = get<json>(j, "terms", where);
      if (!tj.is_array()) throw ConfigError(where + ".terms: expected an array");
      for (std::size_t i = 0; i < tj.size(); ++i) {
        const std::string w = where + ".terms[" + std::to_string(i) + "]";
        only_keys(tj[i], w, {"coef", "p", "q"});
        terms.push_back({complex_of(tj[i].value("coef", json(1.0)), w + ".coef"), get<std::vector<int>>(tj[i], "p", w),
                         get<std::vector<int>>(tj[i], "q", w)});
      }
      return polynomial_symbol(p, std::move(terms), class_of(get<json>(j, "class", where), where + ".class"), s.name,
                               opts);
    }
    if (s.family == "xi-monomial")
      return xi_monomial(p, get<std::vector<int>>(j, "p", where), get<std::vector<int>>(j, "q", where), s.name);
  } catch (const InputError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown family '" + s.family + "'");
}

std::vector<CheckSpec> default_checks(const RunConfig& cfg) {
  std::vector<CheckSpec> out;
  std::vector<std::pair<std::string, InvarianceClass>> classes;
  for (const auto& s : cfg.symbols) classes.emplace_back(s.name, make_symbol(s, cfg).invariance());
  auto add = [&](std::string type, const std::string& name, bool fail = false) -> CheckSpec& {
    CheckSpec c;
    c.type = std::move(type);
    c.symbol = name;
    c.expect_fail = fail;
    out.push_back(std::move(c));
    return out.back();
  };
  for (const auto& [name, cls] : classes) {
    const bool tm = guarantees(cls, Group::tm());
    add("offblock", name, !tm);
    if (!tm) continue;
    add("trace-identity", name);
    add("trace-integral", name);
    add("equivariance", name);
    if (cls.kind == InvarianceKind::KJQuasiHomogeneous) add("tensor-constancy", name).block = cls.block;
    if (cfg.partition.m() == 1) add("sequence", name);
  }
  // Pairs covered by the commutativity results.
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t k = i + 1; k < classes.size(); ++k) {
      const auto& a = classes[i].second;
      const auto& b = classes[k].second;
      if (!guarantees(a, Group::tm()) || !guarantees(b, Group::tm())) continue;
      const bool central = guarantees(a, Group::uk()) || guarantees(b, Group::uk());
      const bool split = a.kind == InvarianceKind::KJQuasiHomogeneous && b.kind == InvarianceKind::KJQuasiHomogeneous &&
                         a.block != b.block;
      if (central || split) add("commutator", classes[i].first).other = classes[k].first;
    }
  return out;
}

}  // namespace bergman
