#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zstates {

// Tensor product of single-qubit Paulis; letter i acts on qubit i+1.
class PauliString {
 public:
  PauliString() = default;
  // Throws std::invalid_argument on anything but I/X/Y/Z.
  explicit PauliString(std::string letters);
  static PauliString identity(int n_qubits);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  char operator[](int qubit) const { return letters_[qubit - 1]; }
  bool is_identity() const;
  // Qubits (1-based) carrying a non-identity letter.
  std::vector<int> support() const;
  // Number of Y letters, needed for conjugation signs.
  int y_count() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::string letters_;
};

// All 4^n strings in lexicographic I < X < Y < Z order.
std::vector<PauliString> all_pauli_strings(int n_qubits);

}  // namespace zstates
