#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>

#include "grover/errors.hpp"

namespace grover {

/// Qubit caps for the three storage paths. The state-vector cap can be moved
/// with the GROVER_DECOMP_MAX_N environment variable; the dense caps never
/// exceed it.
struct Limits {
  int state_qubits = 26;     // matrix-free O(N) kernels
  int dense_qubits = 12;     // N x N matrices
  int parallel_qubits = 6;   // N^2 x N^2 matrices

  static Limits from_environment() {
    Limits lim;
    if (const char* raw = std::getenv("GROVER_DECOMP_MAX_N"); raw != nullptr && *raw != '\0') {
      char* end = nullptr;
      const long v = std::strtol(raw, &end, 10);
      if (end != raw && *end == '\0' && v >= 1 && v <= 40) {
        lim.state_qubits = static_cast<int>(v);
        lim.dense_qubits = std::min(lim.dense_qubits, lim.state_qubits);
        lim.parallel_qubits = std::min(lim.parallel_qubits, lim.state_qubits);
      }
    }
    return lim;
  }
};

inline const Limits& limits() {
  static const Limits lim = Limits::from_environment();
  return lim;
}

inline void require_state_cap(int n) {
  if (n > limits().state_qubits) {
    throw CapExceeded("n=" + std::to_string(n) + " exceeds the state-vector cap of " +
                      std::to_string(limits().state_qubits) + " qubits");
  }
}

inline void require_dense_cap(int n) {
  if (n > limits().dense_qubits) {
    throw TooLargeForDense("n=" + std::to_string(n) + " exceeds the dense-matrix cap of " +
                           std::to_string(limits().dense_qubits) + " qubits");
  }
}

inline void require_parallel_cap(int n) {
  if (n > limits().parallel_qubits) {
    throw TooLargeForDense("n=" + std::to_string(n) + " exceeds the tensor-space cap of " +
                           std::to_string(limits().parallel_qubits) + " qubits");
  }
}

}  // namespace grover
