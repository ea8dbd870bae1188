#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "grover/parallel_scheme.hpp"
#include "oracles.hpp"

using namespace grover;

namespace {

ComplexVector random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexVector v(dim);
  for (auto& z : v) z = {g(rng), g(rng)};
  const double r = norm(v);
  for (auto& z : v) z /= r;
  return v;
}

oracle::Mat to_nested(const ComplexMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

TEST(Parallel, ExactSearchesForOneToThreeQubits) {
  for (int n = 1; n <= 3; ++n) {
    const TargetSet t(n, {0});
    const SearchParams p = solve(t.lambda());
    const ParallelOperator op = build_parallel_operator(t, p);
    const std::size_t dim = t.dimension();
    ASSERT_EQ(op.matrix.rows(), dim * dim);
    EXPECT_TRUE(is_unitary(op.matrix)) << "n " << n;

    // phi_k taken from brute-force iteration, phi_U from the definition.
    const auto phi_k = oracle::iterated_state(n, t.indices(), p.alpha, p.k);
    ComplexVector phi_u = initial_state(n);
    phi_u[0] *= std::polar(1.0, -p.alpha);
    const auto out = multiply(op.matrix, tensor_product(initial_state(n), phi_u));
    const auto expected = tensor_product(ComplexVector(phi_k.begin(), phi_k.end()), basis_vector(dim, 0));
    EXPECT_LE(max_abs_diff(out, expected), 1e-10) << "n " << n;

    const oracle::Mat ref = oracle::kron(to_nested(op.parts.search_factor), to_nested(op.parts.ancillary_factor));
    double w = 0.0;
    for (std::size_t i = 0; i < dim * dim; ++i)
      for (std::size_t j = 0; j < dim * dim; ++j) w = std::max(w, std::abs(op.matrix(i, j) - ref[i][j]));
    EXPECT_LE(w, 1e-10) << "n " << n;

    const VerificationReport r = verify_decoupling(op);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << "n " << n << " " << c.name << " " << c.residual;
    EXPECT_EQ(r.checks.size(), 10u);
  }
}

TEST(Parallel, ExchangedChannels) {
  const TargetSet t(2, {3});
  const SearchParams p = solve(t.lambda());
  const ParallelOperator op = build_parallel_operator(t, p, std::nullopt, true);
  EXPECT_TRUE(op.channels_exchanged);
  EXPECT_TRUE(is_unitary(op.matrix));
  EXPECT_LE(max_abs_diff(multiply(op.matrix, op.input_state()), op.output_state()), 1e-10);
  EXPECT_LE(max_abs_diff(op.matrix, tensor_product(op.parts.ancillary_factor, op.parts.search_factor)), 1e-10);
  EXPECT_TRUE(verify_decoupling(op).passed());
}

TEST(Parallel, SetsAreOrthonormal) {
  const TargetSet t(3, {0});
  const ParallelFactors f = build_parallel_factors(t, solve(t.lambda()));
  for (const auto* b : {&f.basis_phi0, &f.basis_phi_k, &f.basis_phi_u, &f.basis_chi}) {
    EXPECT_LE(orthonormality_residual(*b), 1e-12);
    EXPECT_LE(completeness_residual(*b), 1e-12);
  }
  std::vector<ComplexVector> big;
  for (const auto& a : f.basis_phi0)
    for (const auto& b : f.basis_phi_u) big.push_back(tensor_product(a, b));
  EXPECT_LE(orthonormality_residual(big), 1e-12);
}

TEST(Parallel, FactorBuildUsesOneOracleCall) {
  const TargetSet t(3, {0});
  Diagnostics d;
  build_parallel_factors(t, solve(t.lambda()), std::nullopt, &d);
  EXPECT_EQ(d.oracle_calls, 1);
  EXPECT_EQ(d.diffusion_calls, 0);
}

TEST(Parallel, CorruptedEntryFailsFactorization) {
  const TargetSet t(2, {0});
  ParallelOperator op = build_parallel_operator(t, solve(t.lambda()));
  op.matrix(3, 5) += 1e-6;
  const VerificationReport r = verify_decoupling(op);
  EXPECT_FALSE(r.passed("factorization"));
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.passed("exchanged_factorization"));
}

TEST(Parallel, RandomAncillaAndTargets) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 6; ++c) {
    const int n = 1 + c % 3;
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, dim)(rng);
    const TargetSet t = TargetSet::first(n, m);
    const SearchParams p = solve(t.lambda());
    const ComplexVector chi = random_unit(rng, dim);
    const ParallelOperator op = build_parallel_operator(t, p, chi, c % 2 == 1);
    EXPECT_TRUE(verify_decoupling(op).passed()) << "case " << c;
    EXPECT_LE(max_abs_diff(op.chi, chi), 0.0);
    for (int s = 0; s < 5; ++s) {
      const ComplexVector v = random_unit(rng, dim * dim);
      EXPECT_NEAR(norm(multiply(op.matrix, v)), 1.0, 1e-10);
    }
  }
}

TEST(Parallel, ChannelApplicationWithoutFullMatrix) {
  const TargetSet t(7, {4});
  const SearchParams p = solve(t.lambda());
  const ParallelFactors f = build_parallel_factors(t, p);
  const auto [a, b] = apply_channels(f, f.phi0, f.phi_u);
  EXPECT_LE(max_abs_diff(a, grover_iterate(initial_state(7), t, p.alpha, p.k)), 1e-10);
  EXPECT_LE(max_abs_diff(b, basis_vector(128, 0)), 1e-10);
  EXPECT_THROW(build_parallel_operator(t, p), TooLargeForDense);
}

TEST(Parallel, AncillaLengthChecked) {
  const TargetSet t(2, {0});
  EXPECT_THROW(build_parallel_factors(t, solve(t.lambda()), ComplexVector(3, 0.5)), DimensionMismatch);
}
