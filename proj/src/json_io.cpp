// json_io.cpp

#include "qthermo/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void dump_into(std::ostringstream& out, const ordered_json& v, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << ordered_json(key).dump() << (indent < 0 ? ":" : ": ");
        dump_into(out, item, indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& item : v) flat = flat && !item.is_structured();
      out << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(out, item, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& value, int indent) {
  std::ostringstream out;
  dump_into(out, value, indent, 0);
  return out.str();
}

ordered_json matrix_to_json(const ComplexMatrix& m, std::optional<std::string> kind) {
  ordered_json j;
  if (kind) j["kind"] = *kind;
  j["dim"] = m.dim();
  ordered_json entries = ordered_json::array();
  for (const auto& z : m.entries()) entries.push_back(ordered_json::array({z.real(), z.imag()}));
  j["entries"] = std::move(entries);
  return j;
}

MatrixFile matrix_from_json(const ordered_json& j) {
  try {
    MatrixFile f{std::nullopt, ComplexMatrix(1)};
    if (j.contains("kind")) {
      const auto kind = j.at("kind").get<std::string>();
      if (kind != "density" && kind != "hamiltonian")
        throw InvalidConfig("matrix kind must be \"density\" or \"hamiltonian\", got \"" + kind + "\"");
      f.kind = kind;
    }
    const auto dim = j.at("dim").get<std::size_t>();
    const auto& entries = j.at("entries");
    std::vector<cplx> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) throw InvalidConfig("matrix entries must be [re, im] pairs");
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    f.matrix = ComplexMatrix(dim, std::move(values));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("malformed matrix document: ") + e.what());
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m, std::optional<std::string> kind) {
  std::ofstream out(path);
  if (!out) throw InvalidConfig("cannot open " + path + " for writing");
  out << dump_json(matrix_to_json(m, std::move(kind))) << '\n';
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

DensityMatrix load_density(const std::string& path) {
  auto f = read_matrix_file(path);
  if (f.kind && *f.kind != "density") throw InvalidConfig(path + " is not a density matrix file");
  return DensityMatrix(std::move(f.matrix));
}

Hamiltonian load_hamiltonian(const std::string& path) {
  auto f = read_matrix_file(path);
  if (f.kind && *f.kind != "hamiltonian") throw InvalidConfig(path + " is not a Hamiltonian file");
  return Hamiltonian(std::move(f.matrix));
}

}  // namespace qthermo
