#include "gq/register.hpp"

#include <bit>

#include "gq/error.hpp"

namespace gq {

QubitSet::QubitSet(int n_qubits, std::span<const int> labels) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    fail(ErrorCode::SizeOutOfRange, "register must have 1.." + std::to_string(kMaxQubits) + " qubits");
  for (int l : labels) {
    if (l < 0 || l >= n_qubits) fail(ErrorCode::BadSubsystem, "qubit label " + std::to_string(l) + " out of range");
    if ((mask_ >> l) & 1u) fail(ErrorCode::BadSubsystem, "qubit label " + std::to_string(l) + " repeated");
    mask_ |= 1u << l;
  }
}

QubitSet QubitSet::from_mask(int n_qubits, std::uint32_t mask) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    fail(ErrorCode::SizeOutOfRange, "register must have 1.." + std::to_string(kMaxQubits) + " qubits");
  if (mask >> n_qubits) fail(ErrorCode::BadSubsystem, "mask has labels outside the register");
  QubitSet s;
  s.n_ = n_qubits;
  s.mask_ = mask;
  return s;
}

int QubitSet::size() const noexcept { return std::popcount(mask_); }

std::vector<int> QubitSet::labels() const {
  std::vector<int> out;
  for (int l = 0; l < n_; ++l)
    if (contains(l)) out.push_back(l);
  return out;
}

QubitSet QubitSet::complement() const { return from_mask(n_, ~mask_ & ((1u << n_) - 1u)); }

Bipartition::Bipartition(QubitSet side_a) : a_(side_a) {
  if (a_.n_qubits() < 2) fail(ErrorCode::BadCut, "a cut needs at least two qubits");
  if (a_.empty() || a_.full()) fail(ErrorCode::BadCut, "both sides of a cut must be nonempty");
}

Bipartition Bipartition::single(int n_qubits, int label) {
  if (label < 0 || label >= n_qubits) fail(ErrorCode::BadCut, "label out of range");
  return Bipartition(QubitSet(n_qubits, {label}));
}

std::string Bipartition::to_string() const {
  std::string s;
  for (int l : a_.labels()) s += std::to_string(l);
  s += '|';
  for (int l : side_b().labels()) s += std::to_string(l);
  return s;
}

}  // namespace gq
