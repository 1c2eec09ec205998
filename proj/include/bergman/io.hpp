#pragma once

// JSON and CSV forms of operators and reports. Matrices are row-major lists
// of [re, im] pairs; doubles use the shortest decimal that round-trips.

#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/structure.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

nlohmann::json to_json(const Eigen::MatrixXcd& M);
nlohmann::json to_json(const Eigen::MatrixXd& M);
Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j);
Eigen::MatrixXd real_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BlockOperator& T);
/// Inverse of to_json; throws InputError on malformed input.
BlockOperator operator_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StructureReport& r);

/// kappa, dim, trace_re, trace_im, normalized_re, normalized_im, stderr
std::string trace_table_csv(const std::vector<TraceEntry>& rows);

/// kappa, x_re, x_im, stderr
std::string sequence_csv(const Sequence& s);

/// Writes through a temporary file in the same directory and renames it into
/// place; creates missing parent directories. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace bergman
