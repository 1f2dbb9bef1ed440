/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "cop/state_io.hpp"

#include <fstream>

namespace cop {

namespace {

using nlohmann::json;

cplx read_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw validation_error(path + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<int> read_factor_dims(const json& j) {
  std::vector<int> dims;
  if (!j.contains("factor_dims")) return dims;
  const auto& f = j.at("factor_dims");
  if (!f.is_array()) throw validation_error("factor_dims: expected array");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_number_integer())
      throw validation_error("factor_dims[" + std::to_string(i) +
                             "]: expected integer");
    dims.push_back(f[i].get<int>());
  }
  return dims;
}

Matrix read_matrix(const json& j, int dim, const std::string& key) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw validation_error(key + ": expected " + std::to_string(dim) +
                           " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw validation_error(key + "[" + std::to_string(r) + "]: expected " +
                             std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = read_complex(row[c], key + "[" + std::to_string(r) + "][" +
                                         std::to_string(c) + "]");
  }
  return m;
}

int read_dim(const json& j) {
  if (!j.contains("dim")) throw validation_error("dim: missing");
  if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1)
    throw validation_error("dim: expected positive integer");
  return j.at("dim").get<int>();
}

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LoadedState load_state(const json& j) {
  if (!j.is_object()) throw validation_error("$: expected object");
  const int dim = read_dim(j);
  auto factors = read_factor_dims(j);

  if (j.contains("vector")) {
    const auto& v = j.at("vector");
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
      throw validation_error("vector: expected " + std::to_string(dim) +
                             " entries");
    Vector vec(dim);
    for (int i = 0; i < dim; ++i)
      vec[i] = read_complex(v[i], "vector[" + std::to_string(i) + "]");
    return PureState(std::move(vec), std::move(factors));
  }
  if (j.contains("matrix"))
    return DensityOperator(read_matrix(j.at("matrix"), dim, "matrix"),
                           std::move(factors));
  throw validation_error("$: expected a \"matrix\" or \"vector\" field");
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open state file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
  return load_state(j);
}

DensityOperator load_density_file(const std::string& path) {
  auto loaded = load_state_file(path);
  if (std::holds_alternative<DensityOperator>(loaded))
    return std::get<DensityOperator>(std::move(loaded));
  return std::get<PureState>(loaded).to_density();
}

nlohmann::json to_json(const DensityOperator& state) {
  json j;
  j["dim"] = state.dim();
  if (state.has_factors()) j["factor_dims"] = state.factor_dims();
  j["matrix"] = matrix_json(state.matrix());
  return j;
}

nlohmann::json to_json(const PureState& state) {
  json j;
  j["dim"] = state.dim();
  if (!state.factor_dims().empty()) j["factor_dims"] = state.factor_dims();
  json v = json::array();
  for (int i = 0; i < state.dim(); ++i) v.push_back(complex_json(state.vector()[i]));
  j["vector"] = std::move(v);
  return j;
}

nlohmann::json to_json(const KrausChannel& channel) {
  json j;
  j["dim"] = channel.dim_in();
  j["class"] = to_string(channel.class_tag());
  json ops = json::array();
  for (const auto& k : channel.operators()) ops.push_back(matrix_json(k));
  j["kraus"] = std::move(ops);
  return j;
}

KrausChannel load_channel(const json& j) {
  if (!j.is_object()) throw validation_error("$: expected object");
  const int dim = read_dim(j);
  if (!j.contains("kraus") || !j.at("kraus").is_array() ||
      j.at("kraus").empty())
    throw validation_error("kraus: expected non-empty array");
  std::vector<Matrix> ops;
  for (std::size_t n = 0; n < j.at("kraus").size(); ++n)
    ops.push_back(read_matrix(j.at("kraus")[n], dim,
                              "kraus[" + std::to_string(n) + "]"));
  ChannelClass tag = ChannelClass::general;
  if (j.contains("class")) tag = channel_class_from_string(j.at("class"));
  return KrausChannel(std::move(ops), tag);
}

KrausChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open channel file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
  return load_channel(j);
}

void save_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace cop
