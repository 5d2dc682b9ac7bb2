#pragma once

// JSON state descriptions.
//
//   explicit: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}
//   family:   {"family": "isotropic", "params": {"K": 2, "F": 0.75}}
//
// Families and their params:
//   isotropic            {"K": int, "F": real}
//   bell_diagonal        {"p": [4 reals]}
//   max_correlated       {"alpha": matrix as above}
//   pure                 {"schmidt": [reals]}
//   counterexample_rho   {}
//   counterexample_sigma {}

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "rains/density_matrix.hpp"

namespace rains {

struct ExplicitState {
  BipartiteDims dims;
  ComplexMatrix matrix;
};

struct FamilyState {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
};

using StateSpec = std::variant<ExplicitState, FamilyState>;

// Throws FormatError; syntax errors carry "line L, column C".
StateSpec parse_state_spec(std::string_view text);
StateSpec read_state_spec(const std::filesystem::path& path);

nlohmann::json to_json(const StateSpec& spec);
std::string dump_state_spec(const StateSpec& spec, int indent = 2);

// Explicit matrices are validated with kInputTolerances.
DensityMatrix to_density(const StateSpec& spec);

ExplicitState to_spec(const DensityMatrix& rho);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace rains
