#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "bergman/commands.hpp"
#include "bergman/errors.hpp"
#include "bergman/io.hpp"
#include "doctest.h"

using namespace bergman;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bergman_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json base(std::vector<int> k, int degree) {
  return {{"schema", "bergman-toeplitz/1"},
          {"partition", k},
          {"lambda", {0.0}},
          {"degree", degree},
          {"seed", 11},
          {"quadrature", {{"radial_nodes", 10}, {"sphere_nodes", 10}, {"torus_nodes", 8}, {"mc_samples", 20000},
                          {"haar_samples", 300}}},
          {"symbols", {{{"name", "one"}, {"family", "constant"}, {"value", 1}}}}};
}

int run(const std::string& cmd, const json& cfg, const fs::path& dir, Overrides o = {}, std::string* err_text = nullptr) {
  const fs::path path = dir / "config.json";
  write_atomic(path.string(), cfg.dump());
  if (!o.out) o.out = (dir / "out").string();
  std::ostringstream log, err;
  const int code = run_command(cmd, path.string(), o, log, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("config errors exit with 2") {
  const auto dir = scratch("errors");
  std::string err;
  json c = base({1, 2}, 2);
  c["n"] = 4;
  CHECK(run("verify", c, dir, {}, &err) == kExitConfig);
  CHECK(err.find("n = 4") != std::string::npos);

  c = base({1, 2}, 2);
  c["colour"] = "blue";
  CHECK(run("build", c, dir, {}, &err) == kExitConfig);
  CHECK(err.find("colour") != std::string::npos);

  c = base({1, 2}, 2);
  c["schema"] = "bergman-toeplitz/0";
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 0}, 2);
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["lambda"] = {-1.0};
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"].push_back({{"name", "phi"}, {"family", "phi"}, {"p", {0, 1, 0}}, {"q", {0, 1, 1}}});
  CHECK(run("build", c, dir, {}, &err) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"].push_back({{"name", "g"}, {"family", "g-form"}, {"block", 1}, {"b", json::array()}, {"t", {1, 0}}});
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"][0]["extra"] = 1;
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"].push_back(c["symbols"][0]);
  CHECK(run("build", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["checks"] = {{{"type", "offblock"}, {"symbol", "missing"}}};
  CHECK(run("verify", c, dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"].push_back({{"name", "z1"}, {"family", "polynomial"}, {"class", "TmInvariant"},
                          {"terms", {{{"coef", 1}, {"p", {1, 0, 0}}, {"q", {0, 0, 0}}}}}});
  CHECK(run("build", c, dir) == kExitConfig);
  std::ostringstream sink;
  CHECK(run_command("build", (dir / "absent.json").string(), {}, sink, sink) == kExitConfig);
  CHECK(sink.str().find("absent.json") != std::string::npos);
  CHECK(run("sequence", base({1, 2}, 2), dir) == kExitConfig);
  CHECK(run("witness", base({1, 2}, 2), dir) == kExitConfig);
  c = base({1, 2}, 2);
  c["symbols"].push_back({{"name", "xi"}, {"family", "xi-monomial"}, {"p", {1, 0, 0}}, {"q", {0, 0, 0}}});
  CHECK(run("trace-table", c, dir) == kExitConfig);
}

TEST_CASE("build writes identity blocks that round-trip") {
  const auto dir = scratch("build");
  REQUIRE(run("build", base({1, 2}, 3), dir) == kExitOk);
  const std::string text = read_file((dir / "out" / "operator_one_l0.json").string());
  const json j = json::parse(text);
  CHECK(j["config"]["seed"] == 11);
  const BlockOperator T = operator_from_json(j["operator"]);
  CHECK(T.blocks.size() == enumerate_kappas(Partition{1, 2}, 3).size());
  for (const auto& b : T.blocks) CHECK((b.matrix - Eigen::MatrixXcd::Identity(b.dim(), b.dim())).norm() < 1e-8);
  CHECK(to_json(T) == j["operator"]);
  CHECK(to_json(operator_from_json(to_json(T))).dump() == j["operator"].dump());
}

TEST_CASE("oracle builds are deterministic in the seed") {
  const auto dir = scratch("seed");
  json c = base({2, 1}, 2);
  c["symbols"].push_back({{"name", "poly"}, {"family", "polynomial"}, {"class", "TmInvariant"}, {"path", "oracle"},
                          {"terms", {{{"coef", 1}, {"p", {1, 0, 1}}, {"q", {0, 1, 1}}}, {{"coef", 1}, {"p", {0, 1, 0}}, {"q", {1, 0, 0}}}}}});
  const auto file = (dir / "out" / "operator_poly_l0.json").string();
  REQUIRE(run("build", c, dir) == kExitOk);
  const std::string first = read_file(file);
  REQUIRE(run("build", c, dir, {.out = {}, .seed = {}, .jobs = 3}) == kExitOk);
  CHECK(read_file(file) == first);
  REQUIRE(run("build", c, dir, {.out = {}, .seed = 12345, .jobs = {}}) == kExitOk);
  const std::string other = read_file(file);
  CHECK(other != first);
  const BlockOperator A = operator_from_json(json::parse(first)["operator"]);
  const BlockOperator B = operator_from_json(json::parse(other)["operator"]);
  CHECK(A.provenance == Provenance::Oracle);
  for (std::size_t i = 0; i < A.blocks.size(); ++i) {
    const auto& a = A.blocks[i];
    const auto& b = B.blocks[i];
    for (int r = 0; r < a.dim(); ++r)
      for (int s = 0; s < a.dim(); ++s)
        CHECK(std::abs(a.matrix(r, s) - b.matrix(r, s)) <= 5.0 * std::hypot(a.stderr_(r, s), b.stderr_(r, s)) + 1e-12);
  }
}

TEST_CASE("verify exit codes and expected failures") {
  const auto dir = scratch("verify");
  json c = base({2, 1}, 2);
  c["symbols"].push_back({{"name", "xi"}, {"family", "xi-monomial"}, {"p", {1, 0, 0}}, {"q", {0, 0, 0}}});
  c["symbols"].push_back({{"name", "phi"}, {"family", "phi"}, {"p", {1, 0, 0}}, {"q", {0, 1, 0}}});
  c["checks"] = {{{"type", "offblock"}, {"symbol", "xi"}, {"expect", "fail"}},
                 {{"type", "offblock"}, {"symbol", "phi"}},
                 {{"type", "tensor-constancy"}, {"symbol", "phi"}, {"block", 0}},
                 {{"type", "commutator"}, {"symbol", "one"}, {"with", "phi"}}};
  CHECK(run("verify", c, dir) == kExitOk);
  const json rep = json::parse(read_file((dir / "out" / "report.json").string()));
  CHECK(rep["reports"].size() == 4);
  CHECK(rep["reports"][0]["expected_fail"] == true);
  CHECK(rep["reports"][0]["passed"] == false);
  CHECK(rep["summary"]["unexpected"] == 0);
  CHECK(rep["config"]["checks"].size() == 4);
  const std::string text = read_file((dir / "out" / "report.json").string());
  CHECK(run("verify", c, dir, {.out = {}, .seed = {}, .jobs = 2}) == kExitOk);
  CHECK(read_file((dir / "out" / "report.json").string()) == text);

  c["checks"][0]["expect"] = "pass";
  CHECK(run("verify", c, dir) == kExitFailed);
  c["checks"] = {{{"type", "offblock"}, {"symbol", "phi"}, {"expect", "fail"}}};
  CHECK(run("verify", c, dir) == kExitFailed);
}

TEST_CASE("default suite on k = (1,2)") {
  const auto dir = scratch("default");
  json c = base({1, 2}, 2);
  c["symbols"].push_back({{"name", "phi"}, {"family", "phi"}, {"p", {0, 1, 0}}, {"q", {0, 0, 1}}});
  c["symbols"].push_back({{"name", "rad"}, {"family", "radial-profile"}, {"terms", {{{"coef", 1}, {"powers", {2, 2}}}}}});
  CHECK(run("verify", c, dir) == kExitOk);
  const json rep = json::parse(read_file((dir / "out" / "report.json").string()));
  std::set<std::string> kinds;
  for (const auto& r : rep["reports"]) kinds.insert(r["check"].get<std::string>());
  for (const char* k : {"offblock", "trace-identity", "trace-integral", "equivariance", "tensor-constancy", "commutator"})
    CHECK(kinds.count(k) == 1);
}

TEST_CASE("trace tables and sequences") {
  const auto dir = scratch("traces");
  json c = base({1}, 6);
  c["symbols"].push_back({{"name", "abs2"}, {"family", "radial-profile"}, {"terms", {{{"coef", 1}, {"powers", {2}}}}}});
  REQUIRE(run("trace-table", c, dir) == kExitOk);
  std::istringstream in(read_file((dir / "out" / "traces_abs2_l0.csv").string()));
  std::string line;
  std::getline(in, line);
  CHECK(line == "kappa,dim,trace_re,trace_im,normalized_re,normalized_im,stderr");
  for (int k = 0; std::getline(in, line); ++k) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 7);
    CHECK(std::stoi(f[0]) == k);
    CHECK(std::stod(f[4]) == doctest::Approx((k + 1.0) / (k + 2.0)).epsilon(1e-10));
  }
  std::istringstream ones(read_file((dir / "out" / "traces_one_l0.csv").string()));
  std::getline(ones, line);
  while (std::getline(ones, line)) {
    std::stringstream ls(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(ls, field, ',');
    CHECK(std::stod(field) == doctest::Approx(1.0).epsilon(1e-10));
  }
  REQUIRE(run("sequence", c, dir) == kExitOk);
  const json seq = json::parse(read_file((dir / "out" / "sequence_abs2_l0.json").string()));
  CHECK(seq["diagnostics"].size() == 3);
  CHECK(fs::exists(dir / "out" / "sequence_abs2_l0.csv"));
}

TEST_CASE("witness") {
  const auto dir = scratch("witness");
  json c = base({2, 2}, 2);
  c["symbols"].push_back({{"name", "a"}, {"family", "polynomial"}, {"class", {{"kind", "KJQuasiHomogeneous"}, {"block", 0}}},
                          {"terms", {{{"coef", 0.5}, {"p", {1, 0, 0, 0}}, {"q", {0, 1, 0, 0}}}, {{"coef", 0.5}, {"p", {0, 1, 0, 0}}, {"q", {1, 0, 0, 0}}}}}});
  c["symbols"].push_back({{"name", "b"}, {"family", "polynomial"}, {"class", {{"kind", "KJQuasiHomogeneous"}, {"block", 0}}},
                          {"terms", {{{"coef", 1}, {"p", {1, 0, 0, 0}}, {"q", {1, 0, 0, 0}}}, {{"coef", -1}, {"p", {0, 1, 0, 0}}, {"q", {0, 1, 0, 0}}}}}});
  c["witness"] = {{{"a", "a"}, {"b", "b"}}};
  CHECK(run("witness", c, dir) == kExitOk);
  const json w = json::parse(read_file((dir / "out" / "witness.json").string()));
  CHECK(w["witnesses"][0]["found"] == true);
  CHECK(w["witnesses"][0]["frobenius"].get<double>() > 1e-2);
  c["witness"] = {{{"a", "one"}, {"b", "b"}}};
  CHECK(run("witness", c, dir) == kExitFailed);
}
