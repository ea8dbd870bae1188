#pragma once

// Shortcut operator C = Sum_i |phi_k^(i)><phi_0^(i)|: a unitary that takes
// |phi0> straight to |phi_k>, assembled from the single-oracle form of
// |phi_k> and two Gram-Schmidt completed bases.

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <vector>

#include "grover/additive_decomposition.hpp"
#include "grover/complex_linalg.hpp"
#include "grover/diagnostics.hpp"
#include "grover/exact_search_params.hpp"
#include "grover/grover_operators.hpp"
#include "grover/limits.hpp"
#include "grover/verification.hpp"

namespace grover {

struct ShortcutOperator {
  ComplexMatrix matrix;
  SearchParams params;
  TargetSet targets;
  std::vector<ComplexVector> basis_in;   // basis_in[0] = |phi0>
  std::vector<ComplexVector> basis_out;  // basis_out[0] = |phi_k>

  const ComplexVector& final_state() const { return basis_out.front(); }
};

/// Input basis: |phi0> completed with seeds |w_0>, ..., |w_{N-2}> in order.
inline std::vector<ComplexVector> shortcut_input_basis(int n) {
  const ComplexVector phi0 = initial_state(n);
  const std::size_t dim = phi0.size();
  std::vector<ComplexVector> seeds;
  seeds.reserve(dim - 1);
  for (std::size_t i = 0; i + 1 < dim; ++i) seeds.push_back(basis_vector(dim, i));
  return gram_schmidt_complete(phi0, seeds);
}

/// Output basis about |phi_k>, completed with canonical seeds in index order.
/// For an exact single-target state v_t |w_t> this yields |w_j>, j != t.
inline std::vector<ComplexVector> shortcut_output_basis(const ComplexVector& phi_k) {
  return complete_basis(phi_k);
}

/// Builds C for the given search. |phi_k> comes from g_k |phi0> + h_k U(-alpha)|phi0>,
/// so construction costs exactly one oracle call. When |phi_k> still has
/// non-target weight (params not exact) a NonExactParams warning is recorded.
inline ShortcutOperator build_shortcut(const TargetSet& targets, const SearchParams& params,
                                       Diagnostics* diag = nullptr) {
  require_dense_cap(targets.qubits());
  const int n = targets.qubits();
  ComplexVector phi_k = reduced_state_II(targets, params.alpha, params.theta, params.k, diag);

  double leak = 0.0;
  for (std::size_t i = 0; i < phi_k.size(); ++i)
    if (!targets.contains(i)) leak = std::max(leak, std::abs(phi_k[i]));
  if (leak > kDefaultTol && diag != nullptr) {
    std::ostringstream msg;
    msg << "NonExactParams: non-target amplitude " << leak
        << " remains; output basis completed by generic Gram-Schmidt";
    diag->warn(msg.str());
  }

  ShortcutOperator op{ComplexMatrix{}, params, targets, shortcut_input_basis(n),
                      shortcut_output_basis(phi_k)};
  op.matrix = sum_of_outer_products(op.basis_out, op.basis_in);
  return op;
}

/// G(alpha)^k by repeated dense multiplication.
inline ComplexMatrix iterative_matrix_power(const TargetSet& targets, double alpha, int k) {
  if (k < 0) throw OutOfRange("matrix power must be non-negative");
  require_dense_cap(targets.qubits());
  if (k == 0) return ComplexMatrix::identity(targets.dimension());
  const ComplexMatrix g = dense_kernel_matrix(targets, alpha);
  ComplexMatrix acc = g;
  for (int i = 1; i < k; ++i) acc = multiply(acc, g);
  return acc;
}

/// Compares the shortcut against the iterated kernel:
///   first_row_equal, row_sums_zero, first_row_sum, unitary_shortcut,
///   unitary_iterated, same_final_state.
inline VerificationReport verify_shortcut(const ShortcutOperator& c, const ComplexMatrix& g_pow,
                                          double tol = kDefaultTol) {
  const ComplexMatrix& m = c.matrix;
  if (m.rows() != g_pow.rows() || m.cols() != g_pow.cols()) {
    throw DimensionMismatch("shortcut and iterated kernel differ in shape");
  }
  const std::size_t dim = m.rows();
  const double root_n = std::sqrt(static_cast<double>(dim));
  VerificationReport report;

  report.add("first_row_equal", max_abs_diff(m.row(0), g_pow.row(0)), tol);

  double row_sum_worst = 0.0;
  for (std::size_t r = 1; r < dim; ++r) {
    Complex sc{}, sg{};
    for (std::size_t j = 0; j < dim; ++j) {
      sc += m(r, j);
      sg += g_pow(r, j);
    }
    row_sum_worst = std::max({row_sum_worst, std::abs(sc), std::abs(sg)});
  }
  report.add("row_sums_zero", row_sum_worst, tol);

  const Complex expected = root_n * c.final_state().front();
  Complex first_c{}, first_g{};
  for (std::size_t j = 0; j < dim; ++j) {
    first_c += m(0, j);
    first_g += g_pow(0, j);
  }
  report.add("first_row_sum", std::max(std::abs(first_c - expected), std::abs(first_g - expected)),
             tol);

  report.add("unitary_shortcut", unitarity_residual(m), tol);
  report.add("unitary_iterated", unitarity_residual(g_pow), tol);

  const ComplexVector phi0(dim, Complex{1.0 / root_n, 0.0});
  report.add("same_final_state", max_abs_diff(multiply(m, phi0), multiply(g_pow, phi0)), tol);
  return report;
}

}  // namespace grover
