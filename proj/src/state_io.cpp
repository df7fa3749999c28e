#include "gq/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gq/error.hpp"
#include "json.hpp"

namespace gq {

namespace {

using nlohmann::json;

cplx read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::ParseError, "complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json write_complex(cplx z) { return json::array({z.real(), z.imag()}); }

int read_qubits(const json& doc) {
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer())
    fail(ErrorCode::ParseError, "missing integer field n_qubits");
  const int n = doc["n_qubits"].get<int>();
  if (n < 1 || n > kMaxQubits) fail(ErrorCode::SizeOutOfRange, "n_qubits must lie in 1..6");
  return n;
}

PureState read_pure(const json& doc, int n) {
  const json& arr = doc["amplitudes"];
  if (!arr.is_array()) fail(ErrorCode::ParseError, "amplitudes must be an array");
  const std::size_t dim = std::size_t{1} << n;
  if (arr.size() != dim) fail(ErrorCode::ParseError, "expected " + std::to_string(dim) + " amplitudes");
  std::vector<cplx> amps;
  amps.reserve(dim);
  for (const json& z : arr) amps.push_back(read_complex(z));
  double norm = 0.0;
  for (const cplx& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) <= kFileRenormTol) return PureState::normalized(n, std::move(amps));
  return PureState(n, std::move(amps));
}

DensityMatrix read_mixed(const json& doc, int n) {
  const json& rows = doc["matrix"];
  const std::size_t dim = std::size_t{1} << n;
  if (!rows.is_array() || rows.size() != dim) fail(ErrorCode::ParseError, "matrix must have 2^n rows");
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) fail(ErrorCode::ParseError, "matrix rows must have 2^n entries");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = read_complex(rows[i][j]);
  }
  const cplx tr = m.trace();
  if (std::isfinite(tr.real()) && std::abs(tr - 1.0) <= kFileRenormTol) m *= 1.0 / tr.real();
  return DensityMatrix(n, std::move(m));
}

}  // namespace

AnyState parse_state(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "state document must be a JSON object");
  const int n = read_qubits(doc);
  const bool pure = doc.contains("amplitudes");
  const bool mixed = doc.contains("matrix");
  if (pure == mixed) fail(ErrorCode::ParseError, "exactly one of amplitudes or matrix is required");
  try {
    if (pure) return read_pure(doc, n);
    return read_mixed(doc, n);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

AnyState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

std::string to_json(const PureState& psi) {
  json amps = json::array();
  for (const cplx& a : psi.amplitudes()) amps.push_back(write_complex(a));
  return json{{"n_qubits", psi.n_qubits()}, {"amplitudes", amps}}.dump();
}

std::string to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) row.push_back(write_complex(rho(i, j)));
    rows.push_back(row);
  }
  return json{{"n_qubits", rho.n_qubits()}, {"matrix", rows}}.dump();
}

std::string to_json(const AnyState& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

}  // namespace gq
