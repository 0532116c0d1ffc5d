// json_io.hpp
// JSON serialization helpers: full-precision number output and the shared
// matrix file format
//   {"kind": "density" | "hamiltonian" (optional), "dim": n,
//    "entries": [[re, im], ...]}   (row-major)

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qthermo/matrix.hpp"
#include "qthermo/states.hpp"

namespace qthermo {

using ordered_json = nlohmann::ordered_json;

// Like ordered_json::dump, but floating-point values are written with 17
// significant digits. Non-finite numbers become null.
std::string dump_json(const ordered_json& value, int indent = 2);

// printf("%.17g"), with ".0" appended to integral values so the number
// parses back as floating point.
std::string format_double(double value);

struct MatrixFile {
  std::optional<std::string> kind;
  ComplexMatrix matrix;
};

ordered_json matrix_to_json(const ComplexMatrix& m, std::optional<std::string> kind = std::nullopt);
MatrixFile matrix_from_json(const ordered_json& j);

void write_matrix_file(const std::string& path, const ComplexMatrix& m,
                       std::optional<std::string> kind = std::nullopt);
MatrixFile read_matrix_file(const std::string& path);

// Typed loaders; reject files whose `kind` says otherwise.
DensityMatrix load_density(const std::string& path);
Hamiltonian load_hamiltonian(const std::string& path);

}  // namespace qthermo
