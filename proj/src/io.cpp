#include "bergman/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "bergman/errors.hpp"

namespace bergman {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string kappa_label(const KappaIndex& k) {
  std::string out;
  for (int i = 0; i < k.size(); ++i) out += (i ? " " : "") + std::to_string(k[i]);
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const Eigen::MatrixXcd& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back({M(r, c).real(), M(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd complex_matrix_from_json(const json& j) {
  try {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Eigen::MatrixXcd M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols) throw InputError("ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) {
        const json& v = row.at(static_cast<std::size_t>(c));
        if (v.size() != 2) throw InputError("matrix entries must be [re, im]");
        M(r, c) = {v.at(0).get<double>(), v.at(1).get<double>()};
      }
    }
    return M;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matrix: ") + e.what());
  }
}

Eigen::MatrixXd real_matrix_from_json(const json& j) {
  try {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols) throw InputError("ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return M;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matrix: ") + e.what());
  }
}

json to_json(const BlockOperator& T) {
  json j{{"partition", T.partition.k()}, {"lambda", T.lambda},   {"degree", T.degree},
         {"provenance", to_string(T.provenance)}, {"seed", T.seed}, {"symbol", T.symbol},
         {"warnings", T.warnings}};
  j["blocks"] = json::array();
  for (const auto& b : T.blocks) {
    json alphas = json::array();
    for (const auto& a : b.basis.alphas) alphas.push_back(a.values());
    j["blocks"].push_back({{"kappa", b.kappa().values()},
                           {"alphas", std::move(alphas)},
                           {"matrix", to_json(b.matrix)},
                           {"stderr", to_json(b.stderr_)},
                           {"trace_stderr", b.trace_stderr}});
  }
  return j;
}

BlockOperator operator_from_json(const json& j) {
  try {
    BlockOperator T;
    T.partition = Partition(j.at("partition").get<std::vector<int>>());
    T.lambda = j.at("lambda").get<double>();
    T.degree = j.at("degree").get<int>();
    T.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    T.seed = j.at("seed").get<std::uint64_t>();
    T.symbol = j.at("symbol").get<std::string>();
    T.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const json& bj : j.at("blocks")) {
      Block b;
      b.basis = enumerate_basis(T.partition, KappaIndex(bj.at("kappa").get<std::vector<int>>()));
      std::vector<MultiIndex> alphas;
      for (const json& a : bj.at("alphas")) alphas.emplace_back(a.get<std::vector<int>>());
      if (alphas != b.basis.alphas) throw InputError("block basis does not match the partition order");
      b.matrix = complex_matrix_from_json(bj.at("matrix"));
      b.stderr_ = real_matrix_from_json(bj.at("stderr"));
      b.trace_stderr = bj.at("trace_stderr").get<double>();
      if (b.matrix.rows() != b.dim() || b.matrix.cols() != b.dim() || b.stderr_.rows() != b.dim())
        throw InputError("block matrix has the wrong size");
      T.blocks.push_back(std::move(b));
    }
    return T;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed operator: ") + e.what());
  }
}

json to_json(const StructureReport& r) {
  json metrics = json::array();
  for (const auto& m : r.metrics) {
    json mj{{"name", m.name},
            {"value", finite_or_null(m.value)},
            {"tolerance", finite_or_null(m.tolerance)},
            {"passed", m.passed},
            {"detail", m.detail}};
    mj["kappa"] = m.kappa ? json(m.kappa->values()) : json(nullptr);
    metrics.push_back(std::move(mj));
  }
  return {{"check", r.check},
          {"expected_fail", r.expected_fail},
          {"passed", r.passed()},
          {"as_expected", r.as_expected()},
          {"max", finite_or_null(r.max_value())},
          {"mean", finite_or_null(r.mean_value())},
          {"provenance", r.provenance},
          {"metrics", std::move(metrics)}};
}

std::string trace_table_csv(const std::vector<TraceEntry>& rows) {
  std::ostringstream os;
  os << "kappa,dim,trace_re,trace_im,normalized_re,normalized_im,stderr\n";
  for (const auto& e : rows)
    os << kappa_label(e.kappa) << ',' << e.dim << ',' << shortest(e.trace.real()) << ',' << shortest(e.trace.imag())
       << ',' << shortest(e.normalized.real()) << ',' << shortest(e.normalized.imag()) << ',' << shortest(e.stderr_)
       << '\n';
  return os.str();
}

std::string sequence_csv(const Sequence& s) {
  std::ostringstream os;
  os << "kappa,x_re,x_im,stderr\n";
  for (std::size_t k = 0; k < s.x.size(); ++k)
    os << k << ',' << shortest(s.x[k].real()) << ',' << shortest(s.x[k].imag()) << ',' << shortest(s.stderr_[k]) << '\n';
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory '" + target.parent_path().string() + "': " + ec.message());
  }
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move '" + tmp.string() + "' into place: " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace bergman
