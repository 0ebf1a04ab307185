// SPDX-License-Identifier: Apache-2.0
#include "ellrange/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellrange/errors.hpp"
#include "ellrange/version.hpp"

namespace ellrange::io {
namespace {

Complex entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ParseError("matrix entries must be [re, im] pairs");
  }
  const Complex z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParseError("matrix entries must be finite");
  }
  return z;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

MatrixFile matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix file must be a JSON object");
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
      throw ParseError("\"n\" must be a positive integer");
    rows = cols = j["n"].get<Eigen::Index>();
  } else if (j.contains("rows") && j.contains("cols")) {
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() ||
        j["rows"].get<long long>() < 1 || j["cols"].get<long long>() < 1)
      throw ParseError("\"rows\" and \"cols\" must be positive integers");
    rows = j["rows"].get<Eigen::Index>();
    cols = j["cols"].get<Eigen::Index>();
  } else {
    throw ParseError("matrix file needs \"n\" (or \"rows\" and \"cols\")");
  }
  if (!j.contains("data") || !j["data"].is_array()) throw ParseError("missing \"data\" array");
  const json& data = j["data"];
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ParseError("\"data\" has " + std::to_string(data.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  }
  MatrixFile f;
  f.matrix.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      f.matrix(i, k) = entry_from_json(data[static_cast<std::size_t>(i * cols + k)]);
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
    f.name = j["name"].get<std::string>();
  }
  return f;
}

json matrix_to_json(const ComplexMatrix& m, const std::string& name) {
  json j;
  if (m.rows() == m.cols()) {
    j["n"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back({m(i, k).real(), m(i, k).imag()});
  j["data"] = std::move(data);
  if (!name.empty()) j["name"] = name;
  return j;
}

MatrixFile read_matrix_file(const std::string& path) { return matrix_from_json(read_json(path)); }

std::vector<Complex> coeffs_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("coeffs") ? j["coeffs"] : j;
  if (!arr.is_array() || arr.empty()) throw ParseError("coefficients must be a non-empty array");
  std::vector<Complex> c;
  c.reserve(arr.size());
  for (const json& e : arr) c.push_back(entry_from_json(e));
  return c;
}

std::vector<Complex> read_coeffs_file(const std::string& path) {
  return coeffs_from_json(read_json(path));
}

json certificate_to_json(const DilationCertificate& cert, double delta,
                         std::optional<std::uint64_t> seed) {
  json j;
  j["gamma"] = matrix_to_json(cert.gamma);
  j["delta_matrix"] = matrix_to_json(cert.delta_matrix);
  j["E"] = matrix_to_json(cert.E);
  j["Y"] = matrix_to_json(cert.Y);
  j["residuals"] = {{"lmi_residual", cert.residuals.lmi},
                    {"isometry_residual", cert.residuals.isometry},
                    {"series_residual", cert.residuals.series},
                    {"delta_column_residual", cert.residuals.delta_column},
                    {"scaled_norm", cert.residuals.contraction}};
  json meta = {{"delta", delta}, {"version", kVersion}};
  meta["seed"] = seed ? json(*seed) : json(nullptr);
  j["meta"] = std::move(meta);
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace ellrange::io
