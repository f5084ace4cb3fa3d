#pragma once

// File formats for the command-line tool: operator sets and search reports as
// JSON, Gram matrices as CSV.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "antilinear/construct.hpp"
#include "antilinear/search.hpp"
#include "antilinear/structure.hpp"

namespace antilinear::io {

/// Unreadable or malformed input files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchemaVersion = "1";

struct OperatorSetFile {
  int dim = 0;
  std::string kind = "general";  // "conjugation" | "skew" | "general"
  std::string meta;
  double tol = kDefaultTol;
  std::vector<Matrix> matrices;
};

OperatorSetFile from_ortho_set(const OrthoSet& set, double tol = kDefaultTol);
/// Throws IoError when the file kind is "general".
OrthoSet to_ortho_set(const OperatorSetFile& file);

nlohmann::json to_json(const OperatorSetFile& file);
OperatorSetFile operator_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchReport& report, bool include_timing);

void write_operator_set(const std::filesystem::path& path, const OperatorSetFile& file);
OperatorSetFile read_operator_set(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// One Gram cell, "re+imi" / "re-imi" with 17 significant digits.
std::string format_cell(Complex z);
/// Rows of comma-separated cells.
std::string gram_csv(const GramMatrix& g);

}  // namespace antilinear::io
