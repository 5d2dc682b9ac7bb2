#include "rains/state_io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <vector>

#include "rains/errors.hpp"
#include "rains/states.hpp"

namespace rains {

using nlohmann::json;

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

std::string at_line(std::string_view text, std::size_t offset) {
  const Position pos = position_of(text, offset);
  return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

// Best-effort location of a top-level key, for semantic errors.
std::string key_location(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto found = text.find(quoted);
  if (found == std::string_view::npos) return "line 1";
  return "line " + std::to_string(position_of(text, found).line);
}

const json& require_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> numbers_at(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

StateSpec spec_from_json(const json& j, std::string_view text) {
  if (!j.is_object()) throw FormatError("line 1: state description must be a JSON object");
  if (j.contains("family")) {
    const json& name = j.at("family");
    if (!name.is_string()) {
      throw FormatError(key_location(text, "family") + ": \"family\" must be a string");
    }
    FamilyState fam{name.get<std::string>(), j.value("params", json::object())};
    if (!fam.params.is_object()) {
      throw FormatError(key_location(text, "params") + ": \"params\" must be an object");
    }
    return fam;
  }
  const std::string dims_where = key_location(text, "dims");
  const std::string matrix_where = key_location(text, "matrix");
  const std::vector<double> dims = numbers_at(require_field(j, "dims", dims_where), dims_where);
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] != static_cast<int>(dims[0]) ||
      dims[1] != static_cast<int>(dims[1])) {
    throw FormatError(dims_where + ": \"dims\" must be two positive integers");
  }
  ExplicitState st;
  st.dims = {static_cast<int>(dims[0]), static_cast<int>(dims[1])};
  st.matrix = matrix_from_json(require_field(j, "matrix", matrix_where), matrix_where);
  if (st.matrix.rows() != st.dims.total()) {
    throw FormatError(matrix_where + ": matrix dimension " + std::to_string(st.matrix.rows()) +
                      " does not match dims " + std::to_string(st.dims.a) + "x" +
                      std::to_string(st.dims.b));
  }
  return st;
}

std::array<double, 4> four_probabilities(const json& params) {
  const std::vector<double> p = numbers_at(require_field(params, "p", "bell_diagonal"), "p");
  if (p.size() != 4) throw FormatError("bell_diagonal: \"p\" must have 4 entries");
  return {p[0], p[1], p[2], p[3]};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw FormatError(where + ": matrix must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError(where + ": matrix row " + std::to_string(i) + " must have " +
                        std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& e = row[k];
      const std::string at = where + ": entry (" + std::to_string(i) + ", " + std::to_string(k) + ")";
      if (!e.is_array() || e.size() != 2) throw FormatError(at + " must be [re, im]");
      m(i, k) = Complex(number_at(e[0], at), number_at(e[1], at));
    }
  }
  return m;
}

StateSpec parse_state_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw FormatError(at_line(text, offset) + ": malformed JSON (" + e.what() + ")");
  }
  return spec_from_json(j, text);
}

StateSpec read_state_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open state file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_state_spec(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json to_json(const StateSpec& spec) {
  if (const auto* st = std::get_if<ExplicitState>(&spec)) {
    return {{"dims", {st->dims.a, st->dims.b}}, {"matrix", matrix_to_json(st->matrix)}};
  }
  const auto& fam = std::get<FamilyState>(spec);
  return {{"family", fam.family}, {"params", fam.params}};
}

std::string dump_state_spec(const StateSpec& spec, int indent) {
  return to_json(spec).dump(indent);
}

DensityMatrix to_density(const StateSpec& spec) {
  try {
    if (const auto* st = std::get_if<ExplicitState>(&spec)) {
      return DensityMatrix(st->matrix, st->dims, kInputTolerances);
    }
    const auto& fam = std::get<FamilyState>(spec);
    const json& p = fam.params;
    if (fam.family == "isotropic") {
      const double k = number_at(require_field(p, "K", "isotropic"), "isotropic: K");
      if (k != static_cast<int>(k)) throw FormatError("isotropic: K must be an integer");
      return isotropic(static_cast<int>(k),
                       number_at(require_field(p, "F", "isotropic"), "isotropic: F"));
    }
    if (fam.family == "bell_diagonal") return bell_diagonal(four_probabilities(p));
    if (fam.family == "max_correlated") {
      return max_correlated(matrix_from_json(require_field(p, "alpha", "max_correlated"),
                                             "max_correlated: alpha"));
    }
    if (fam.family == "pure") {
      return pure_state(numbers_at(require_field(p, "schmidt", "pure"), "pure: schmidt"));
    }
    if (fam.family == "counterexample_rho") return counterexample_pair().rho;
    if (fam.family == "counterexample_sigma") return counterexample_pair().sigma;
    throw FormatError("unknown family \"" + fam.family + "\"");
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid state: ") + e.what());
  }
}

ExplicitState to_spec(const DensityMatrix& rho) { return {rho.dims(), rho.matrix()}; }

}  // namespace rains
