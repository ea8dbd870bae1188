#pragma once

// Two-channel tensor-space operator
//
//   C^P = Sum_{p,q} (|phi_k^(p)> (x) |chi^(q)>)(<phi_0^(p)| (x) <phi_U^(q)|)
//
// which maps |phi0> (x) |phi_U> to |phi_k> (x) |chi> and factors as
// (Sum_p |phi_k^(p)><phi_0^(p)|) (x) (Sum_q |chi^(q)><phi_U^(q)|).

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grover/additive_decomposition.hpp"
#include "grover/complex_linalg.hpp"
#include "grover/diagnostics.hpp"
#include "grover/exact_search_params.hpp"
#include "grover/grover_operators.hpp"
#include "grover/limits.hpp"
#include "grover/verification.hpp"

namespace grover {

/// The four single-channel orthonormal sets and the two N x N factors.
struct ParallelFactors {
  TargetSet targets;
  SearchParams params;
  ComplexVector phi0;
  ComplexVector phi_u;  // U(-alpha) |phi0>
  ComplexVector phi_k;
  ComplexVector chi;
  std::vector<ComplexVector> basis_phi0;
  std::vector<ComplexVector> basis_phi_k;
  std::vector<ComplexVector> basis_phi_u;
  std::vector<ComplexVector> basis_chi;
  ComplexMatrix search_factor;     // Sum_p |phi_k^(p)><phi_0^(p)|
  ComplexMatrix ancillary_factor;  // Sum_q |chi^(q)><phi_U^(q)|
};

struct ParallelOperator {
  ComplexMatrix matrix;  // N^2 x N^2, assembled from the tensor-product bases
  ComplexVector chi;
  std::pair<ComplexMatrix, ComplexMatrix> factors;  // in channel order
  // When true the first channel carries phi_U -> chi and the second phi0 -> phi_k.
  bool channels_exchanged = false;
  ParallelFactors parts;

  ComplexVector input_state() const {
    return channels_exchanged ? tensor_product(parts.phi_u, parts.phi0)
                              : tensor_product(parts.phi0, parts.phi_u);
  }
  ComplexVector output_state() const {
    return channels_exchanged ? tensor_product(parts.chi, parts.phi_k)
                              : tensor_product(parts.phi_k, parts.chi);
  }
};

/// Builds the single-channel pieces. phi_U is computed with one oracle call
/// and phi_k is formed from it, so the whole construction uses one call.
/// `chi` defaults to |w_0>.
inline ParallelFactors build_parallel_factors(const TargetSet& targets, const SearchParams& params,
                                              std::optional<ComplexVector> chi = std::nullopt,
                                              Diagnostics* diag = nullptr) {
  require_dense_cap(targets.qubits());
  const std::size_t dim = targets.dimension();
  detail::check_theta(targets, params.alpha, params.theta, diag);

  ParallelFactors f{targets, params, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  f.phi0 = initial_state(targets.qubits());
  f.phi_u = apply_oracle(f.phi0, targets, -params.alpha, diag);
  const DecompositionCoeffs c = f_coefficients(params.theta, params.k);
  f.phi_k = combine_with_oracle_state(f.phi_u, c.g_k, c.h_k);
  f.chi = chi.has_value() ? std::move(*chi) : basis_vector(dim, 0);
  if (f.chi.size() != dim) throw DimensionMismatch("ancillary state has the wrong length");

  f.basis_phi0 = complete_basis(f.phi0);
  f.basis_phi_k = complete_basis(f.phi_k);
  f.basis_phi_u = complete_basis(f.phi_u);
  f.basis_chi = complete_basis(f.chi);
  f.search_factor = sum_of_outer_products(f.basis_phi_k, f.basis_phi0);
  f.ancillary_factor = sum_of_outer_products(f.basis_chi, f.basis_phi_u);
  return f;
}

/// Assembles C^P from the N^2 tensor-product basis pairs. Dense, so capped at
/// the tensor-space limit.
inline ParallelOperator build_parallel_operator(const TargetSet& targets,
                                                const SearchParams& params,
                                                std::optional<ComplexVector> chi = std::nullopt,
                                                bool exchange_channels = false,
                                                Diagnostics* diag = nullptr) {
  require_parallel_cap(targets.qubits());
  ParallelOperator op{ComplexMatrix{}, {}, {}, exchange_channels,
                      build_parallel_factors(targets, params, std::move(chi), diag)};
  op.chi = op.parts.chi;

  const auto& f = op.parts;
  const std::size_t dim = f.phi0.size();
  std::vector<ComplexVector> psi_in;
  std::vector<ComplexVector> psi_out;
  psi_in.reserve(dim * dim);
  psi_out.reserve(dim * dim);
  for (std::size_t p = 0; p < dim; ++p) {
    for (std::size_t q = 0; q < dim; ++q) {
      if (exchange_channels) {
        psi_in.push_back(tensor_product(f.basis_phi_u[p], f.basis_phi0[q]));
        psi_out.push_back(tensor_product(f.basis_chi[p], f.basis_phi_k[q]));
      } else {
        psi_in.push_back(tensor_product(f.basis_phi0[p], f.basis_phi_u[q]));
        psi_out.push_back(tensor_product(f.basis_phi_k[p], f.basis_chi[q]));
      }
    }
  }
  op.matrix = sum_of_outer_products(psi_out, psi_in);
  op.factors = exchange_channels ? std::make_pair(f.ancillary_factor, f.search_factor)
                                 : std::make_pair(f.search_factor, f.ancillary_factor);
  return op;
}

/// Applies each factor to its own channel; no N^2 storage.
inline std::pair<ComplexVector, ComplexVector> apply_channels(const ParallelFactors& f,
                                                              std::span<const Complex> first,
                                                              std::span<const Complex> second) {
  return {multiply(f.search_factor, first), multiply(f.ancillary_factor, second)};
}

namespace detail {

inline void append_decoupling_checks(VerificationReport& report, const ParallelOperator& p,
                                     const std::string& prefix, double tol) {
  const auto& f = p.parts;
  const ComplexMatrix kron = tensor_product(p.factors.first, p.factors.second);
  report.add(prefix + "factorization", max_abs_diff(p.matrix, kron), tol);
  report.add(prefix + "search_channel", max_abs_diff(multiply(f.search_factor, f.phi0), f.phi_k),
             tol);
  report.add(prefix + "ancillary_channel",
             max_abs_diff(multiply(f.ancillary_factor, f.phi_u), f.chi), tol);
  report.add(prefix + "maps_input_to_output",
             max_abs_diff(multiply(p.matrix, p.input_state()), p.output_state()), tol);
  report.add(prefix + "unitary", unitarity_residual(p.matrix), tol);
}

}  // namespace detail

/// Factorization, per-channel action, tensor mapping and unitarity, then the
/// same again for the operator rebuilt with the channels exchanged (prefixed
/// "exchanged_").
inline VerificationReport verify_decoupling(const ParallelOperator& p, double tol = kDefaultTol) {
  VerificationReport report;
  detail::append_decoupling_checks(report, p, "", tol);
  const ParallelOperator swapped = build_parallel_operator(
      p.parts.targets, p.parts.params, p.parts.chi, !p.channels_exchanged);
  detail::append_decoupling_checks(report, swapped, "exchanged_", tol);
  return report;
}

}  // namespace grover
