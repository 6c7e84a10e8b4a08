#include "zstates/pauli.h"

#include <algorithm>
#include <stdexcept>

namespace zstates {

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("empty Pauli label");
  for (char c : letters_) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("malformed Pauli label '" + letters_ + "'");
    }
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(std::string(static_cast<std::size_t>(n_qubits), 'I'));
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int i = 0; i < n_qubits(); ++i) {
    if (letters_[i] != 'I') out.push_back(i + 1);
  }
  return out;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), 'Y'));
}

std::vector<PauliString> all_pauli_strings(int n_qubits) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  std::size_t total = std::size_t{1} << (2 * n_qubits);
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
      s[q] = kLetters[(code >> (2 * (n_qubits - 1 - q))) & 3];
    }
    out.emplace_back(std::move(s));
  }
  return out;
}

}  // namespace zstates
