#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gq {

inline constexpr int kMaxQubits = 6;

/// Set of qubit labels on an n-qubit register. Label 0 is the most
/// significant bit of the computational-basis index.
class QubitSet {
 public:
  QubitSet() = default;
  QubitSet(int n_qubits, std::span<const int> labels);
  QubitSet(int n_qubits, std::initializer_list<int> labels)
      : QubitSet(n_qubits, std::span<const int>(labels.begin(), labels.size())) {}

  static QubitSet from_mask(int n_qubits, std::uint32_t mask);

  int n_qubits() const noexcept { return n_; }
  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept;
  bool contains(int label) const noexcept { return label >= 0 && label < n_ && ((mask_ >> label) & 1u); }
  /// Labels in ascending order.
  std::vector<int> labels() const;
  QubitSet complement() const;
  bool empty() const noexcept { return mask_ == 0; }
  bool full() const noexcept { return mask_ == ((1u << n_) - 1u); }

  /// Bit position of `label` inside a basis index of the full register.
  int bit_of(int label) const noexcept { return n_ - 1 - label; }

  friend bool operator==(const QubitSet&, const QubitSet&) = default;

 private:
  int n_ = 0;
  std::uint32_t mask_ = 0;  // bit `label` set when label is a member
};

/// A split of the register into two nonempty parts; side A is `side_a`.
class Bipartition {
 public:
  Bipartition(QubitSet side_a);
  static Bipartition single(int n_qubits, int label);

  const QubitSet& side_a() const noexcept { return a_; }
  QubitSet side_b() const { return a_.complement(); }
  int n_qubits() const noexcept { return a_.n_qubits(); }
  std::string to_string() const;  // e.g. "0|12"

 private:
  QubitSet a_;
};

}  // namespace gq
