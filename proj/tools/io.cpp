#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace antilinear::io {

using nlohmann::json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw IoError("matrix must have " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw IoError("matrix row must have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const json& cell = row[c];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
        throw IoError("matrix entries must be [re, im] number pairs");
      }
      m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

}  // namespace

OperatorSetFile from_ortho_set(const OrthoSet& set, double tol) {
  OperatorSetFile file;
  file.dim = set.dim;
  file.kind = std::string(to_string(set.kind));
  file.meta = set.meta;
  file.tol = tol;
  for (const auto& op : set.ops) file.matrices.push_back(op.mat());
  return file;
}

OrthoSet to_ortho_set(const OperatorSetFile& file) {
  if (file.kind == "general") throw IoError("operator set of kind 'general' makes no parity claim");
  OrthoSet set{file.dim, parse_set_kind(file.kind), {}, file.meta};
  for (const auto& m : file.matrices) set.ops.emplace_back(file.dim, m);
  return set;
}

json to_json(const OperatorSetFile& file) {
  json mats = json::array();
  for (const auto& m : file.matrices) mats.push_back(matrix_to_json(m));
  return json{{"schema_version", kSchemaVersion}, {"dim", file.dim},   {"kind", file.kind},
              {"meta", file.meta},                {"tol", file.tol},   {"matrices", std::move(mats)}};
}

OperatorSetFile operator_set_from_json(const json& j) {
  try {
    if (!j.is_object()) throw IoError("operator set must be a JSON object");
    if (j.at("schema_version").get<std::string>() != kSchemaVersion) {
      throw IoError("unsupported schema_version '" + j.at("schema_version").get<std::string>() + "'");
    }
    OperatorSetFile file;
    file.dim = j.at("dim").get<int>();
    if (file.dim < 1) throw IoError("dim must be positive");
    file.kind = j.at("kind").get<std::string>();
    if (file.kind != "conjugation" && file.kind != "skew" && file.kind != "general") {
      throw IoError("unknown kind '" + file.kind + "'");
    }
    file.meta = j.value("meta", std::string());
    file.tol = j.value("tol", kDefaultTol);
    const json& mats = j.at("matrices");
    if (!mats.is_array()) throw IoError("matrices must be an array");
    for (const auto& m : mats) file.matrices.push_back(matrix_from_json(m, file.dim));
    return file;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed operator set: ") + e.what());
  }
}

json to_json(const SearchReport& report, bool include_timing) {
  const SearchConfig& c = report.config;
  json config{{"dim", c.dim},
              {"kind", std::string(to_string(c.kind))},
              {"target_k", c.target_k},
              {"restarts", c.restarts},
              {"max_iters", c.max_iters},
              {"step_size", c.step_size},
              {"tol_loss", c.tol_loss},
              {"seed", c.seed},
              {"strategy", std::string(to_string(c.strategy))}};
  json losses = json::array();
  for (double l : report.per_restart_losses) losses.push_back(number_or_null(l));

  json j{{"config", std::move(config)},
         {"best_loss", number_or_null(report.best_loss)},
         {"witness_found", report.achieved.has_value()},
         {"achieved", report.achieved ? to_json(from_ortho_set(*report.achieved, 1e-6)) : json(nullptr)},
         {"iterations_used", report.iterations_used},
         {"per_restart_losses", std::move(losses)},
         {"best_restart", report.best_restart},
         {"budget_exhausted", report.budget_exhausted}};
  if (report.gradient_check_error) j["gradient_check_error"] = *report.gradient_check_error;
  if (report.prefix_verified) j["prefix_verified"] = *report.prefix_verified;
  if (include_timing) j["wall_time_s"] = report.wall_time_s;
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_operator_set(const std::filesystem::path& path, const OperatorSetFile& file) {
  write_json(path, to_json(file));
}

OperatorSetFile read_operator_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return operator_set_from_json(j);
}

std::string format_cell(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string gram_csv(const GramMatrix& g) {
  std::ostringstream out;
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      if (b) out << ',';
      out << format_cell(g(a, b));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace antilinear::io
