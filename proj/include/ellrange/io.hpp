// SPDX-License-Identifier: Apache-2.0
//
// JSON matrix files {"n": 2, "data": [[re, im], ...], "name": "..."} (row
// major; non-square matrices use "rows"/"cols" instead of "n") and
// certificate files {gamma, delta_matrix, E, Y, residuals, meta}.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellrange/dilation.hpp"
#include "ellrange/mats.hpp"
#include "json.hpp"

namespace ellrange::io {

using json = nlohmann::json;

struct MatrixFile {
  ComplexMatrix matrix;
  std::string name;
};

/// Throws ParseError on schema violations or non-finite entries.
MatrixFile matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m, const std::string& name = {});

MatrixFile read_matrix_file(const std::string& path);

/// Coefficient list: [[re, im], ...] or plain numbers, ascending powers.
std::vector<Complex> coeffs_from_json(const json& j);
std::vector<Complex> read_coeffs_file(const std::string& path);

json certificate_to_json(const DilationCertificate& cert, double delta,
                         std::optional<std::uint64_t> seed = std::nullopt);

/// Writes content to path + ".tmp" and renames over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ellrange::io
