#pragma once

// Oracle U(alpha), diffusion W(-alpha) and the search kernel
// G(alpha) = W(-alpha) U(alpha), matrix-free on state vectors and as dense
// matrices, plus the kernel restricted to span{|R>, |T>}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grover/complex_linalg.hpp"
#include "grover/diagnostics.hpp"
#include "grover/errors.hpp"
#include "grover/exact_search_params.hpp"
#include "grover/limits.hpp"

namespace grover {

/// Marked basis states of an n-qubit register.
class TargetSet {
 public:
  /// Throws OutOfRange unless indices are strictly increasing, inside [0, 2^n)
  /// and non-empty.
  TargetSet(int n, std::vector<std::size_t> indices) : n_(n), indices_(std::move(indices)) {
    if (n < 1) throw OutOfRange("qubit count must be >= 1, got " + std::to_string(n));
    require_state_cap(n);
    if (indices_.empty()) throw OutOfRange("target set is empty");
    const std::size_t dim = dimension();
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] >= dim) {
        throw OutOfRange("target index " + std::to_string(indices_[i]) + " outside [0, " +
                         std::to_string(dim) + ")");
      }
      if (i > 0 && indices_[i] <= indices_[i - 1]) {
        throw OutOfRange("target indices must be strictly increasing");
      }
    }
  }

  /// Targets {0, ..., m-1}.
  static TargetSet first(int n, std::size_t m) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    return TargetSet(n, std::move(idx));
  }

  int qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
  std::size_t count() const noexcept { return indices_.size(); }
  double lambda() const noexcept {
    return static_cast<double>(count()) / static_cast<double>(dimension());
  }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  bool contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  /// Smallest non-target index, or dimension() if every state is marked.
  std::size_t first_non_target() const {
    std::size_t j = 0;
    for (std::size_t t : indices_) {
      if (t != j) return j;
      ++j;
    }
    return j;
  }

 private:
  int n_;
  std::vector<std::size_t> indices_;
};

struct KernelSpectrum {
  Complex eps_plus;
  Complex eps_minus;
  double theta = 0.0;
};

/// Amplitudes on |T> (success) and |R> (failure).
struct TwoDimAmplitudes {
  Complex d_k;
  Complex u_k;
};

namespace detail {

inline std::size_t checked_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw DimensionMismatch("state length " + std::to_string(dim) + " is not 2^n with n >= 1");
  }
  return dim;
}

inline void check_state_matches(std::span<const Complex> state, const TargetSet& targets) {
  if (state.size() != targets.dimension()) {
    throw DimensionMismatch("state of length " + std::to_string(state.size()) +
                            " does not match " + std::to_string(targets.qubits()) +
                            "-qubit targets");
  }
}

// Neumaier summation; plain summation drifts over long iterations at large N.
inline Complex compensated_sum(std::span<const Complex> values) {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  for (const auto& z : values) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  return {re + cre, im + cim};
}

}  // namespace detail

/// Uniform superposition (1/sqrt(N)) Sum_l |l>.
inline ComplexVector initial_state(int n) {
  if (n < 1) throw OutOfRange("qubit count must be >= 1, got " + std::to_string(n));
  require_state_cap(n);
  const std::size_t dim = std::size_t{1} << n;
  return ComplexVector(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
}

// In-place kernels. Each output entry depends only on the matching input entry
// (plus, for the diffusion, one precomputed reduction), so disjoint chunks may
// be processed independently.

/// Multiplies target amplitudes by e^{i alpha}.
inline void apply_oracle_inplace(std::span<Complex> state, const TargetSet& targets, double alpha,
                                 Diagnostics* diag = nullptr) {
  detail::check_state_matches(state, targets);
  const Complex phase = std::polar(1.0, alpha);
  for (std::size_t t : targets.indices()) state[t] *= phase;
  if (diag != nullptr) ++diag->oracle_calls;
}

/// state <- e^{-i alpha} state + (1 - e^{-i alpha}) <phi0|state> |phi0>.
inline void apply_diffusion_inplace(std::span<Complex> state, double alpha,
                                    Diagnostics* diag = nullptr) {
  const std::size_t dim = detail::checked_dimension(state.size());
  const Complex sum = detail::compensated_sum(state);
  const Complex phase = std::polar(1.0, -alpha);
  // (1 - e^{-ia}) <phi0|state> / sqrt(N) = (1 - e^{-ia}) * sum / N
  const Complex shift = (1.0 - phase) * sum / static_cast<double>(dim);
  for (auto& z : state) z = phase * z + shift;
  if (diag != nullptr) ++diag->diffusion_calls;
}

inline ComplexVector apply_oracle(std::span<const Complex> state, const TargetSet& targets,
                                  double alpha, Diagnostics* diag = nullptr) {
  ComplexVector out(state.begin(), state.end());
  apply_oracle_inplace(out, targets, alpha, diag);
  return out;
}

inline ComplexVector apply_diffusion(std::span<const Complex> state, double alpha,
                                     Diagnostics* diag = nullptr) {
  ComplexVector out(state.begin(), state.end());
  apply_diffusion_inplace(out, alpha, diag);
  return out;
}

/// Applies G(alpha) k times. k = 0 returns the input.
inline ComplexVector grover_iterate(std::span<const Complex> state, const TargetSet& targets,
                                    double alpha, int k, Diagnostics* diag = nullptr) {
  if (k < 0) throw OutOfRange("iteration count must be non-negative");
  detail::check_state_matches(state, targets);
  ComplexVector out(state.begin(), state.end());
  for (int i = 0; i < k; ++i) {
    apply_oracle_inplace(out, targets, alpha, diag);
    apply_diffusion_inplace(out, alpha, diag);
  }
  return out;
}

/// Dense G(alpha): entry (i, j) = u_j [e^{-i alpha} delta_ij + (1 - e^{-i alpha}) / N]
/// with u_j = e^{i alpha} on targets and 1 elsewhere.
inline ComplexMatrix dense_kernel_matrix(const TargetSet& targets, double alpha) {
  require_dense_cap(targets.qubits());
  const std::size_t dim = targets.dimension();
  const Complex em = std::polar(1.0, -alpha);
  const Complex ep = std::polar(1.0, alpha);
  const Complex off = (1.0 - em) / static_cast<double>(dim);
  ComplexMatrix g(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const Complex u = targets.contains(j) ? ep : Complex{1.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) g(i, j) = u * ((i == j ? em : Complex{}) + off);
  }
  return g;
}

/// Dense diagonal oracle U(alpha).
inline ComplexMatrix dense_oracle_matrix(const TargetSet& targets, double alpha) {
  require_dense_cap(targets.qubits());
  ComplexMatrix u = ComplexMatrix::identity(targets.dimension());
  for (std::size_t t : targets.indices()) u(t, t) = std::polar(1.0, alpha);
  return u;
}

/// Kernel in the basis {|R>, |T>}.
inline ComplexMatrix two_dim_kernel(double lambda, double alpha) {
  detail::check_lambda(lambda);
  const Complex ep = std::polar(1.0, alpha);
  const Complex em = std::polar(1.0, -alpha);
  const double s = std::sqrt(lambda * (1.0 - lambda));
  return ComplexMatrix{{1.0 - (1.0 - em) * lambda, -(1.0 - ep) * s},
                       {(1.0 - em) * s, 1.0 - (1.0 - ep) * lambda}};
}

/// eps_pm = 1 - x +- i sqrt(x (2 - x)), x = lambda (1 - cos alpha).
inline KernelSpectrum kernel_eigenvalues(double lambda, double alpha) {
  detail::check_lambda(lambda);
  const double x = lambda * (1.0 - std::cos(alpha));
  const double im = std::sqrt(std::max(0.0, x * (2.0 - x)));
  return {Complex{1.0 - x, im}, Complex{1.0 - x, -im}, rotation_phase(lambda, alpha)};
}

/// Success and failure amplitudes after k iterations:
///   d_k = sqrt(lambda) / sin(theta/2) { sin((k+1/2) theta)
///           - (1 + e^{-i alpha}) sin(k theta) / (2 cos(theta/2)) }
///   u_k = sqrt(1 - lambda) / cos(theta/2) cos((k+1/2) theta)
/// Where sin(theta/2) or cos(theta/2) vanishes the closed form is 0/0 and the
/// amplitudes are taken from the two-dimensional kernel power instead.
inline TwoDimAmplitudes two_dim_amplitudes(double lambda, double alpha, int k) {
  detail::check_lambda(lambda);
  if (k < 0) throw OutOfRange("iteration count must be non-negative");
  const double theta = rotation_phase(lambda, alpha);
  const double sh = std::sin(0.5 * theta);
  const double ch = std::cos(0.5 * theta);
  constexpr double kSingular = 1e-7;
  if (sh < kSingular || ch < kSingular) {
    const ComplexMatrix g = two_dim_kernel(lambda, alpha);
    ComplexVector v{Complex{std::sqrt(1.0 - lambda), 0.0}, Complex{std::sqrt(lambda), 0.0}};
    for (int i = 0; i < k; ++i) v = multiply(g, v);
    return {v[1], v[0]};
  }
  const double kh = (static_cast<double>(k) + 0.5) * theta;
  const Complex d = std::sqrt(lambda) / sh *
                    (std::sin(kh) - (1.0 + std::polar(1.0, -alpha)) * std::sin(k * theta) / (2.0 * ch));
  const Complex u = std::sqrt(1.0 - lambda) / ch * std::cos(kh);
  return {d, u};
}

}  // namespace grover
