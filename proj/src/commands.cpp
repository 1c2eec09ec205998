#include "bergman/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>

#include "bergman/errors.hpp"
#include "bergman/io.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

using json = nlohmann::json;

namespace {

// Stream ids: one family per command, then symbol or check, then lambda.
constexpr std::uint64_t kBuildStreams = 1ull << 40;
constexpr std::uint64_t kVerifyStreams = 2ull << 40;
constexpr std::uint64_t kWitnessStreams = 3ull << 40;

std::uint64_t task_id(std::uint64_t family, std::size_t item, std::size_t lambda) {
  return family | (static_cast<std::uint64_t>(item) << 16) | lambda;
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

std::string artifact(const RunConfig& cfg, const std::string& stem) {
  return (std::filesystem::path(cfg.output) / stem).string();
}

QuadratureSpec spec_for(const RunConfig& cfg, std::size_t l) {
  QuadratureSpec s = cfg.quadrature;
  s.lambda = cfg.lambdas[l];
  return s;
}

json header(const RunConfig& cfg, const std::string& kind) {
  return {{"schema", kSchema}, {"kind", kind}, {"seed", cfg.seed}, {"config", cfg.to_json()}};
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

// Operator as written by `build`: the configured path, else automatic dispatch.
BlockOperator built_operator(const Symbol& a, const SymbolSpec& s, const RunConfig& cfg, std::size_t l,
                             RandomStream& rng, int jobs) {
  const QuadratureSpec spec = spec_for(cfg, l);
  if (s.path) return toeplitz_operator_via(*s.path, a, cfg.degree, spec, rng, jobs);
  return toeplitz_operator(a, cfg.degree, spec, rng, jobs);
}

// Operator for structural checks: deterministic whenever the class allows.
BlockOperator analysis_operator(const Symbol& a, const RunConfig& cfg, std::size_t l, RandomStream& rng) {
  const QuadratureSpec spec = spec_for(cfg, l);
  const auto kind = a.invariance().kind;
  const auto& pl = a.payloads();
  const bool reduced = (pl.profile && (kind == InvarianceKind::QuasiRadial || kind == InvarianceKind::Radial)) ||
                       ((pl.f || pl.g) && kind == InvarianceKind::KJQuasiHomogeneous);
  if (!reduced && guarantees(a.invariance(), Group::tm()))
    return toeplitz_operator_via(Provenance::Quadrature, a, cfg.degree, spec, rng);
  return toeplitz_operator(a, cfg.degree, spec, rng);
}

void merge(StructureReport& into, const StructureReport& from) {
  if (into.check.empty()) {
    into.check = from.check;
    into.provenance = from.provenance;
  }
  into.metrics.insert(into.metrics.end(), from.metrics.begin(), from.metrics.end());
}

std::vector<KappaIndex> kappas_for(const CheckSpec& c, const RunConfig& cfg) {
  return c.kappas.empty() ? enumerate_kappas(cfg.partition, cfg.degree) : c.kappas;
}

StructureReport run_check(const CheckSpec& c, const RunConfig& cfg, std::size_t l, RandomStream& rng) {
  const QuadratureSpec spec = spec_for(cfg, l);
  const Symbol a = make_symbol(cfg.symbol(c.symbol), cfg);
  StructureReport rep;
  if (c.type == "offblock") {
    rep = offblock_leakage(a, cfg.degree, spec, rng);
  } else if (c.type == "tensor-constancy") {
    rep = tensor_constancy(analysis_operator(a, cfg, l, rng), c.block);
  } else if (c.type == "commutator") {
    const Symbol b = make_symbol(cfg.symbol(c.other), cfg);
    rep = commutator_report(analysis_operator(a, cfg, l, rng), analysis_operator(b, cfg, l, rng));
  } else if (c.type == "trace-identity") {
    for (const auto& k : kappas_for(c, cfg)) merge(rep, trace_identity_check(a, k, spec, rng));
  } else if (c.type == "trace-integral") {
    for (const auto& k : kappas_for(c, cfg)) merge(rep, trace_integral_check(a, k, spec, rng));
  } else if (c.type == "equivariance") {
    for (int i = 0; i < c.unitaries; ++i) {
      const Eigen::MatrixXcd A = haar_uk_sample(cfg.partition, rng);
      for (const auto& k : kappas_for(c, cfg)) merge(rep, equivariance_check(a, A, k, spec, rng));
    }
  } else if (c.type == "sequence") {
    if (cfg.partition.m() != 1) throw ConfigError("sequence checks need a single block partition");
    const Sequence s = sequence_ST(analysis_operator(a, cfg, l, rng), cfg.deltas);
    rep.check = "sequence";
    rep.provenance["symbol"] = a.name();
    // trend only: never part of pass/fail
    for (const auto& d : s.diagnostics)
      rep.add("oscillation", std::nullopt, d.value, std::numeric_limits<double>::infinity(),
              "delta " + std::to_string(d.delta) + ", " + std::to_string(d.pairs) + " pairs");
  }
  if (c.type == "commutator") rep.provenance["with"] = c.other;
  rep.provenance["lambda"] = json(cfg.lambdas[l]).dump();
  rep.expected_fail = c.expect_fail;
  return rep;
}

void require_tm(const Symbol& a, const char* command) {
  if (!guarantees(a.invariance(), Group::tm()))
    throw ConfigError(std::string(command) + ": symbol '" + a.name() + "' is not T^m-invariant (class " +
                      to_string(a.invariance()) + ")");
}

}  // namespace

CommandResult cmd_build(const RunConfig& cfg, std::ostream& log) {
  CommandResult res;
  const RandomStream root(cfg.seed);
  for (std::size_t i = 0; i < cfg.symbols.size(); ++i) {
    const Symbol a = make_symbol(cfg.symbols[i], cfg);
    for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
      RandomStream rng = root.split(task_id(kBuildStreams, i, l));
      const BlockOperator T = built_operator(a, cfg.symbols[i], cfg, l, rng, cfg.jobs);
      json j = header(cfg, "operator");
      j["operator"] = to_json(T);
      const std::string path = artifact(cfg, "operator_" + file_stem(a.name()) + "_l" + std::to_string(l) + ".json");
      write_atomic(path, dump(j));
      res.files.push_back(path);
      log << "build " << a.name() << " lambda=" << cfg.lambdas[l] << " path=" << to_string(T.provenance) << " -> "
          << path << "\n";
      for (const auto& w : T.warnings) log << "  warning: " << w << "\n";
    }
  }
  return res;
}

CommandResult cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const std::vector<CheckSpec> checks = cfg.checks.empty() ? default_checks(cfg) : cfg.checks;
  const std::size_t L = cfg.lambdas.size();
  std::vector<StructureReport> reports(checks.size() * L);
  const RandomStream root(cfg.seed);
  parallel_for(reports.size(), cfg.jobs, [&](std::size_t t) {
    const std::size_t c = t / L;
    const std::size_t l = t % L;
    RandomStream rng = root.split(task_id(kVerifyStreams, c, l));
    reports[t] = run_check(checks[c], cfg, l, rng);
  });
  CommandResult res;
  json j = header(cfg, "verify");
  j["reports"] = json::array();
  int failed = 0;
  int controls = 0;
  for (const auto& r : reports) {
    j["reports"].push_back(to_json(r));
    if (!r.as_expected()) ++failed;
    if (r.expected_fail) ++controls;
    const auto field = [&](const char* key) {
      const auto it = r.provenance.find(key);
      return it == r.provenance.end() ? std::string() : it->second;
    };
    log << (r.as_expected() ? "ok   " : "FAIL ") << r.check << " " << field("symbol")
        << (r.provenance.count("with") ? " / " + field("with") : "") << " lambda=" << field("lambda")
        << " max=" << r.max_value() << (r.expected_fail ? " (expected fail)" : "") << "\n";
  }
  j["summary"] = {{"reports", reports.size()}, {"unexpected", failed}, {"expected_fail", controls}};
  const std::string path = artifact(cfg, "report.json");
  write_atomic(path, dump(j));
  res.files.push_back(path);
  log << reports.size() << " reports, " << failed << " unexpected -> " << path << "\n";
  res.exit_code = failed ? kExitFailed : kExitOk;
  return res;
}

CommandResult cmd_trace_table(const RunConfig& cfg, std::ostream& log) {
  CommandResult res;
  std::vector<Symbol> symbols;
  for (const auto& s : cfg.symbols) {
    symbols.push_back(make_symbol(s, cfg));
    require_tm(symbols.back(), "trace-table");
  }
  const RandomStream root(cfg.seed);
  for (std::size_t i = 0; i < symbols.size(); ++i)
    for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
      RandomStream rng = root.split(task_id(kBuildStreams, i, l));
      const BlockOperator T = built_operator(symbols[i], cfg.symbols[i], cfg, l, rng, cfg.jobs);
      const std::string path =
          artifact(cfg, "traces_" + file_stem(symbols[i].name()) + "_l" + std::to_string(l) + ".csv");
      write_atomic(path, trace_table_csv(block_traces(T)));
      res.files.push_back(path);
      log << "trace-table " << symbols[i].name() << " lambda=" << cfg.lambdas[l] << " -> " << path << "\n";
    }
  return res;
}

CommandResult cmd_sequence(const RunConfig& cfg, std::ostream& log) {
  if (cfg.partition.m() != 1) throw ConfigError("sequence: needs a single block partition k = (n)");
  CommandResult res;
  const RandomStream root(cfg.seed);
  for (std::size_t i = 0; i < cfg.symbols.size(); ++i) {
    const Symbol a = make_symbol(cfg.symbols[i], cfg);
    require_tm(a, "sequence");
    for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
      RandomStream rng = root.split(task_id(kBuildStreams, i, l));
      const Sequence s = sequence_ST(built_operator(a, cfg.symbols[i], cfg, l, rng, cfg.jobs), cfg.deltas);
      const std::string stem = "sequence_" + file_stem(a.name()) + "_l" + std::to_string(l);
      write_atomic(artifact(cfg, stem + ".csv"), sequence_csv(s));
      json j = header(cfg, "sequence");
      j["symbol"] = a.name();
      j["lambda"] = cfg.lambdas[l];
      j["diagnostics"] = json::array();
      for (const auto& d : s.diagnostics)
        j["diagnostics"].push_back({{"delta", d.delta}, {"pairs", d.pairs}, {"max_difference", d.value}});
      write_atomic(artifact(cfg, stem + ".json"), dump(j));
      res.files.push_back(artifact(cfg, stem + ".csv"));
      res.files.push_back(artifact(cfg, stem + ".json"));
      log << "sequence " << a.name() << " lambda=" << cfg.lambdas[l] << " -> " << artifact(cfg, stem + ".csv") << "\n";
    }
  }
  return res;
}

CommandResult cmd_witness(const RunConfig& cfg, std::ostream& log) {
  if (cfg.witness_pairs.empty()) throw ConfigError("witness: the config lists no pairs");
  CommandResult res;
  json j = header(cfg, "witness");
  j["witnesses"] = json::array();
  const RandomStream root(cfg.seed);
  bool all = true;
  for (std::size_t i = 0; i < cfg.witness_pairs.size(); ++i) {
    const auto& [an, bn] = cfg.witness_pairs[i];
    const Symbol a = make_symbol(cfg.symbol(an), cfg);
    const Symbol b = make_symbol(cfg.symbol(bn), cfg);
    for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
      RandomStream rng = root.split(task_id(kWitnessStreams, i, l));
      const BlockOperator Ta = analysis_operator(a, cfg, l, rng);
      const BlockOperator Tb = analysis_operator(b, cfg, l, rng);
      const auto norms = commutator(Ta, Tb);
      const auto best = std::max_element(norms.begin(), norms.end(), [](const auto& x, const auto& y) {
        return x.frobenius < y.frobenius;
      });
      const bool found = best != norms.end() && best->frobenius > cfg.witness_threshold;
      all = all && found;
      json w{{"a", an}, {"b", bn}, {"lambda", cfg.lambdas[l]}, {"found", found}};
      if (best != norms.end()) {
        w["kappa"] = best->kappa.values();
        w["frobenius"] = best->frobenius;
        w["spectral"] = best->spectral;
        w["error"] = best->error;
        w["a_block"] = to_json(Ta.at(best->kappa).matrix);
        w["b_block"] = to_json(Tb.at(best->kappa).matrix);
      }
      j["witnesses"].push_back(std::move(w));
      log << (found ? "witness " : "none    ") << an << " / " << bn << " lambda=" << cfg.lambdas[l];
      if (best != norms.end()) log << " kappa=" << to_string(best->kappa) << " |[Ta,Tb]|_F=" << best->frobenius;
      log << "\n";
    }
  }
  const std::string path = artifact(cfg, "witness.json");
  write_atomic(path, dump(j));
  res.files.push_back(path);
  res.exit_code = all ? kExitOk : kExitFailed;
  return res;
}

int run_command(const std::string& name, const std::string& config_path, const Overrides& o, std::ostream& log,
                std::ostream& err) {
  try {
    RunConfig cfg = load_config(config_path);
    if (o.out) cfg.output = *o.out;
    if (o.seed) {
      cfg.seed = *o.seed;
      cfg.quadrature.seed = *o.seed;
    }
    if (o.jobs) {
      if (*o.jobs < 1) throw ConfigError("--jobs must be positive");
      cfg.jobs = *o.jobs;
    }
    CommandResult res;
    if (name == "build") res = cmd_build(cfg, log);
    else if (name == "verify") res = cmd_verify(cfg, log);
    else if (name == "trace-table") res = cmd_trace_table(cfg, log);
    else if (name == "sequence") res = cmd_sequence(cfg, log);
    else if (name == "witness") res = cmd_witness(cfg, log);
    else throw ConfigError("unknown command '" + name + "'");
    return res.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitConfig;
}

}  // namespace bergman
