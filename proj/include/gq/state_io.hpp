#pragma once

// JSON state files.
//   pure:  {"n_qubits": k, "amplitudes": [[re, im], ...]}
//   mixed: {"n_qubits": k, "matrix": [[[re, im], ...], ...]}   (row-major)

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gq/states.hpp"

namespace gq {

using AnyState = std::variant<PureState, DensityMatrix>;

/// Inputs whose norm (pure) or trace (mixed) is within this distance of 1 are
/// rescaled before validation, so hand-written files with rounded decimals load.
inline constexpr double kFileRenormTol = 1e-6;

/// Throws ParseError for malformed documents; validation errors keep their codes.
AnyState parse_state(std::string_view json_text);
AnyState load_state(const std::filesystem::path& path);

std::string to_json(const PureState& psi);
std::string to_json(const DensityMatrix& rho);
std::string to_json(const AnyState& s);

}  // namespace gq
