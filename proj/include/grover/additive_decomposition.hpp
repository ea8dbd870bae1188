#pragma once

// Additive decomposition of G^k |phi0>.
//
// With f_0 = 0, f_1 = 1, f_j = 2 cos(theta) f_{j-1} - f_{j-2}:
//
//   G^k |phi0> = [f_k G - f_{k-1} I] |phi0>                 (one kernel call)
//              = [g_k I + h_k U(-alpha)] |phi0>             (one oracle call)
//
// with g_k = f_k f_2 - f_{k-1}, h_k = -f_k. Both hold whenever
// cos(theta) = 1 - lambda (1 - cos(alpha)).

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "grover/complex_linalg.hpp"
#include "grover/diagnostics.hpp"
#include "grover/errors.hpp"
#include "grover/exact_search_params.hpp"
#include "grover/grover_operators.hpp"
#include "grover/limits.hpp"

namespace grover {

struct DecompositionCoeffs {
  std::vector<double> f;  // f_0 .. f_k
  double g_k = 1.0;
  double h_k = 0.0;
  double theta = 0.0;

  int k() const noexcept { return static_cast<int>(f.size()) - 1; }
  /// f_{k-1}; for k = 0 the backward recurrence gives f_{-1} = -1.
  double f_prev() const noexcept { return f.size() >= 2 ? f[f.size() - 2] : -1.0; }
  double f_last() const noexcept { return f.back(); }
};

struct AmplitudePair {
  Complex v_t;
  Complex v_nt;
};

/// f_0..f_k plus g_k and h_k. k = 0 yields g = 1, h = 0 (the identity).
inline DecompositionCoeffs f_coefficients(double theta, int k) {
  if (k < 0) throw OutOfRange("decomposition order must be non-negative");
  DecompositionCoeffs c;
  c.theta = theta;
  const double two_cos = 2.0 * std::cos(theta);
  c.f.resize(static_cast<std::size_t>(k) + 1);
  c.f[0] = 0.0;
  if (k >= 1) c.f[1] = 1.0;
  for (int j = 2; j <= k; ++j) c.f[j] = two_cos * c.f[j - 1] - c.f[j - 2];
  const double f2 = two_cos;
  c.g_k = c.f_last() * f2 - c.f_prev();
  c.h_k = -c.f_last();
  return c;
}

namespace detail {

inline void check_theta(const TargetSet& targets, double alpha, double theta, Diagnostics* diag) {
  const double expected = 1.0 - targets.lambda() * (1.0 - std::cos(alpha));
  const double residual = std::abs(std::cos(theta) - expected);
  if (residual > kDefaultTol && diag != nullptr) {
    std::ostringstream msg;
    msg << "ThetaInconsistent: |cos(theta) - (1 - lambda(1 - cos alpha))| = " << residual;
    diag->warn(msg.str());
  }
}

}  // namespace detail

/// [f_k G(alpha) - f_{k-1} I] |phi0>, using one kernel application.
/// An inconsistent theta is reported as a warning; the result is then simply
/// not equal to G^k |phi0>.
inline ComplexVector reduced_state_I(const TargetSet& targets, double alpha, double theta, int k,
                                     Diagnostics* diag = nullptr) {
  if (k < 0) throw OutOfRange("iteration count must be non-negative");
  detail::check_theta(targets, alpha, theta, diag);
  const DecompositionCoeffs c = f_coefficients(theta, k);
  ComplexVector state = initial_state(targets.qubits());
  const Complex base = state.front();
  apply_oracle_inplace(state, targets, alpha, diag);
  apply_diffusion_inplace(state, alpha, diag);
  const double fk = c.f_last();
  const double fprev = c.f_prev();
  for (auto& z : state) z = fk * z - fprev * base;
  return state;
}

/// g |phi0> + h |phi_U>, where phi_U = U(-alpha) |phi0> is given.
inline ComplexVector combine_with_oracle_state(std::span<const Complex> phi_u, double g, double h) {
  const Complex base{1.0 / std::sqrt(static_cast<double>(phi_u.size())), 0.0};
  ComplexVector out(phi_u.size());
  for (std::size_t i = 0; i < phi_u.size(); ++i) out[i] = g * base + h * phi_u[i];
  return out;
}

/// [g_k I + h_k U(-alpha)] |phi0>: a single oracle call with phase -alpha and
/// no diffusion.
inline ComplexVector reduced_state_II(const TargetSet& targets, double alpha, double theta, int k,
                                      Diagnostics* diag = nullptr) {
  if (k < 0) throw OutOfRange("iteration count must be non-negative");
  detail::check_theta(targets, alpha, theta, diag);
  const DecompositionCoeffs c = f_coefficients(theta, k);
  ComplexVector state = initial_state(targets.qubits());
  const Complex base = state.front();
  apply_oracle_inplace(state, targets, -alpha, diag);
  for (auto& z : state) z = c.g_k * base + c.h_k * z;
  return state;
}

// ---------------------------------------------------------------------------
// Stepwise expansion tables for k = 1..6.
//
// Each entry lists the integer multiples m of theta whose phases e^{i m theta}
// sum to the coefficient of G and of I respectively. The identity coefficient
// carries an extra e^{i pi}.

struct StepwiseExpansion {
  int k = 0;
  std::vector<int> kernel_multiples;
  std::vector<int> identity_multiples;
  bool identity_has_pi_phase = true;

  Complex kernel_coefficient(double theta) const { return phase_sum(kernel_multiples, theta); }
  Complex identity_coefficient(double theta) const {
    const Complex s = phase_sum(identity_multiples, theta);
    return identity_has_pi_phase ? -s : s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "|phi_" << k << "> = [(" << terms(kernel_multiples) << ") G + ("
       << terms(identity_multiples) << ")" << (identity_has_pi_phase ? " e^{i pi}" : "")
       << " I] |phi_0>";
    return os.str();
  }

 private:
  static Complex phase_sum(const std::vector<int>& ms, double theta) {
    Complex s{0.0, 0.0};
    for (int m : ms) s += std::polar(1.0, m * theta);
    return s;
  }
  static std::string terms(const std::vector<int>& ms) {
    if (ms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i > 0) os << " + ";
      if (ms[i] == 0) {
        os << "1";
      } else {
        os << "e^{" << (ms[i] < 0 ? "-" : "") << (std::abs(ms[i]) == 1 ? "" : std::to_string(std::abs(ms[i])))
           << "i theta}";
      }
    }
    return os.str();
  }
};

/// Tabulated expansions. k = 1 is G itself (identity coefficient f_0 = 0).
inline StepwiseExpansion stepwise_expansion(int k) {
  switch (k) {
    case 1: return {1, {0}, {}, true};
    case 2: return {2, {1, -1}, {0}, true};
    case 3: return {3, {2, -2, 0}, {1, -1}, true};
    case 4: return {4, {3, -3, 1, -1}, {2, -2, 0}, true};
    case 5: return {5, {4, -4, 2, -2, 0}, {3, -3, 1, -1}, true};
    case 6: return {6, {5, -5, 3, -3, 1, -1}, {4, -4, 2, -2, 0}, true};
    default:
      throw OutOfRange("stepwise expansion is tabulated for k = 1..6, got " + std::to_string(k));
  }
}

/// Largest deviation of the table's phase sums from f_k and -f_{k-1} at theta.
inline double stepwise_expansion_residual(const StepwiseExpansion& e, double theta) {
  const DecompositionCoeffs c = f_coefficients(theta, e.k);
  return std::max(std::abs(e.kernel_coefficient(theta) - c.f_last()),
                  std::abs(e.identity_coefficient(theta) + c.f_prev()));
}

// ---------------------------------------------------------------------------
// Even/odd base schemes.

enum class Parity { even, odd };

/// even: e^{ik theta}|phi_k> + e^{-ik theta}|phi_k> - |phi_0>      (= |phi_2k>)
/// odd:  e^{ik theta}|phi_{k+1}> + e^{-ik theta}|phi_{k+1}> - |phi_1> (= |phi_2k+1>)
/// Each |phi_j> is produced by direct iteration.
inline ComplexVector even_odd_split(const TargetSet& targets, double alpha, double theta, int k,
                                    Parity parity, Diagnostics* diag = nullptr) {
  if (k < 0) throw OutOfRange("split order must be non-negative");
  const ComplexVector phi0 = initial_state(targets.qubits());
  const int hi = parity == Parity::even ? k : k + 1;
  const int lo = parity == Parity::even ? 0 : 1;
  const ComplexVector phi_hi = grover_iterate(phi0, targets, alpha, hi, diag);
  const ComplexVector phi_lo = grover_iterate(phi0, targets, alpha, lo, diag);
  const Complex a = std::polar(1.0, k * theta) + std::polar(1.0, -k * theta);
  ComplexVector out(phi0.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * phi_hi[i] - phi_lo[i];
  return out;
}

/// Picks the parity and half-order so that the split reproduces |phi_total>.
inline ComplexVector even_odd_state(const TargetSet& targets, double alpha, double theta,
                                    int total, Diagnostics* diag = nullptr) {
  if (total < 0) throw OutOfRange("iteration count must be non-negative");
  if (total % 2 == 0) return even_odd_split(targets, alpha, theta, total / 2, Parity::even, diag);
  return even_odd_split(targets, alpha, theta, (total - 1) / 2, Parity::odd, diag);
}

// ---------------------------------------------------------------------------

/// Per-target and per-non-target amplitudes from the single-oracle form:
///   v_t = (g_k + h_k e^{-i alpha}) / sqrt(N), v_nt = (g_k + h_k) / sqrt(N).
inline AmplitudePair target_amplitudes(double lambda, double alpha, double theta, int k,
                                       std::size_t dim) {
  detail::check_lambda(lambda);
  const double m = lambda * static_cast<double>(dim);
  if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, m)) {
    throw NonIntegralM("lambda * N = " + std::to_string(m) + " is not an integer");
  }
  const DecompositionCoeffs c = f_coefficients(theta, k);
  const double inv = 1.0 / std::sqrt(static_cast<double>(dim));
  return {(c.g_k + c.h_k * std::polar(1.0, -alpha)) * inv, Complex{(c.g_k + c.h_k) * inv, 0.0}};
}

/// Dense f_k G(alpha) - f_{k-1} I.
inline ComplexMatrix reduced_operator_I_matrix(const TargetSet& targets, double alpha,
                                               double theta, int k) {
  const DecompositionCoeffs c = f_coefficients(theta, k);
  ComplexMatrix m = dense_kernel_matrix(targets, alpha);
  for (auto& z : m.data()) z *= c.f_last();
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= c.f_prev();
  return m;
}

/// Dense g_k I + h_k U(-alpha).
inline ComplexMatrix reduced_operator_II_matrix(const TargetSet& targets, double alpha,
                                                double theta, int k) {
  const DecompositionCoeffs c = f_coefficients(theta, k);
  ComplexMatrix m = dense_oracle_matrix(targets, -alpha);
  for (auto& z : m.data()) z *= c.h_k;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += c.g_k;
  return m;
}

inline bool check_reduced_operator_unitarity(const TargetSet& targets, double alpha, double theta,
                                             int k, double tol = kDefaultTol) {
  return is_unitary(reduced_operator_I_matrix(targets, alpha, theta, k), tol);
}

}  // namespace grover
