#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "grover/grover_operators.hpp"
#include "oracles.hpp"

using namespace grover;
using std::numbers::pi;

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kAlpha2 = std::acos(-5.0 + 2.0 * kSqrt5);
const Complex kVt = Complex{2.0 * (kSqrt5 - 1.0), std::sqrt(5.0 * kSqrt5 - 11.0) * (kSqrt5 + 1.0)} /
                    std::sqrt(8.0);

TargetSet random_targets(std::mt19937_64& rng, int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> idx;
  std::bernoulli_distribution pick(0.3);
  for (std::size_t i = 0; i < dim; ++i)
    if (pick(rng)) idx.push_back(i);
  if (idx.empty()) idx.push_back(std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng));
  return TargetSet(n, idx);
}

ComplexVector random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexVector v(dim);
  for (auto& z : v) z = {g(rng), g(rng)};
  const double r = norm(v);
  for (auto& z : v) z /= r;
  return v;
}

double max_abs(const ComplexMatrix& a, const oracle::Mat& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w = std::max(w, std::abs(a(i, j) - b[i][j]));
  return w;
}

}  // namespace

TEST(TargetSet, ValidatesIndices) {
  EXPECT_THROW(TargetSet(3, {}), OutOfRange);
  EXPECT_THROW(TargetSet(3, {8}), OutOfRange);
  EXPECT_THROW(TargetSet(3, {2, 1}), OutOfRange);
  EXPECT_THROW(TargetSet(3, {1, 1}), OutOfRange);
  EXPECT_THROW(TargetSet(0, {0}), OutOfRange);
  const TargetSet t(3, {1, 4});
  EXPECT_DOUBLE_EQ(t.lambda(), 0.25);
  EXPECT_TRUE(t.contains(4));
  EXPECT_FALSE(t.contains(0));
  EXPECT_EQ(t.first_non_target(), 0u);
  EXPECT_EQ(TargetSet::first(3, 8).first_non_target(), 8u);
  EXPECT_EQ(TargetSet::first(3, 2).first_non_target(), 2u);
}

TEST(InitialState, Examples) {
  const auto s3 = initial_state(3);
  ASSERT_EQ(s3.size(), 8u);
  for (const auto& z : s3) EXPECT_EQ(z, Complex(1.0 / std::sqrt(8.0), 0.0));
  const auto s1 = initial_state(1);
  EXPECT_EQ(s1, (ComplexVector{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}));
  const auto s10 = initial_state(10);
  for (const auto& z : s10) EXPECT_EQ(z, Complex(1.0 / 32.0, 0.0));
  EXPECT_NEAR(norm(s10), 1.0, 1e-14);
  EXPECT_THROW(initial_state(0), OutOfRange);
  EXPECT_THROW(initial_state(40), CapExceeded);
}

TEST(Oracle, Examples) {
  const TargetSet t(3, {0});
  const auto phi0 = initial_state(3);
  EXPECT_EQ(apply_oracle(phi0, t, 0.0), phi0);
  const auto flipped = apply_oracle(phi0, t, pi);
  EXPECT_NEAR(std::abs(flipped[0] + 1.0 / std::sqrt(8.0)), 0.0, 1e-15);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(flipped[i], phi0[i]);
  const auto general = apply_oracle(phi0, t, 1.1);
  EXPECT_NEAR(std::abs(general[0] - std::polar(1.0, 1.1) / std::sqrt(8.0)), 0.0, 1e-15);
  EXPECT_THROW(apply_oracle(ComplexVector(4), t, 1.0), DimensionMismatch);
}

TEST(Oracle, NegativePhaseIsInverse) {
  std::mt19937_64 rng(2);
  const TargetSet t = random_targets(rng, 5);
  const auto s = random_state(rng, 32);
  EXPECT_LE(max_abs_diff(apply_oracle(apply_oracle(s, t, 0.7), t, -0.7), s), 1e-15);
}

TEST(Diffusion, Examples) {
  const auto phi0 = initial_state(4);
  for (double a : {0.3, 1.0, pi}) EXPECT_LE(max_abs_diff(apply_diffusion(phi0, a), phi0), 1e-15);
  std::mt19937_64 rng(4);
  const auto s = random_state(rng, 16);
  EXPECT_LE(max_abs_diff(apply_diffusion(s, 0.0), s), 1e-15);

  // A vector orthogonal to phi0 is only rephased.
  ComplexVector orth(16, 0.0);
  orth[0] = 1.0 / std::sqrt(2.0);
  orth[5] = -1.0 / std::sqrt(2.0);
  const auto out = apply_diffusion(orth, 0.9);
  for (std::size_t i = 0; i < 16; ++i)
    EXPECT_NEAR(std::abs(out[i] - std::polar(1.0, -0.9) * orth[i]), 0.0, 1e-15);
  EXPECT_THROW(apply_diffusion(ComplexVector(6), 1.0), DimensionMismatch);
}

TEST(Diffusion, MatchesHadamardConstruction) {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 6; ++n) {
    const double a = std::uniform_real_distribution<double>(-pi, pi)(rng);
    const auto s = random_state(rng, std::size_t{1} << n);
    const auto reference = oracle::matvec(oracle::diffusion_matrix(n, a), s);
    EXPECT_LE(oracle::max_abs(apply_diffusion(s, a), reference), 1e-12) << "n " << n;
  }
}

TEST(Iterate, Examples) {
  const TargetSet t(3, {0});
  const auto phi0 = initial_state(3);
  EXPECT_EQ(grover_iterate(phi0, t, kAlpha2, 0), phi0);

  const auto one = grover_iterate(phi0, t, kAlpha2, 1);
  const double scale = std::sqrt(2.0) / 32.0;
  const Complex ep = std::polar(1.0, kAlpha2), em = std::polar(1.0, -kAlpha2);
  EXPECT_NEAR(std::abs(one[0] - scale * (14.0 + ep - 7.0 * em)), 0.0, 1e-14);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_NEAR(std::abs(one[i] - scale * (6.0 + ep + em)), 0.0, 1e-14);

  const auto two = grover_iterate(phi0, t, kAlpha2, 2);
  EXPECT_NEAR(std::abs(two[0] - kVt), 0.0, 1e-14);
  EXPECT_NEAR(kVt.real(), 0.874032049, 1e-9);
  EXPECT_NEAR(kVt.imag(), 0.485868272, 1e-9);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_LE(std::abs(two[i]), 1e-14);
  EXPECT_THROW(grover_iterate(phi0, t, kAlpha2, -1), OutOfRange);
}

TEST(Iterate, CountsOracleCalls) {
  const TargetSet t(4, {3});
  Diagnostics d;
  grover_iterate(initial_state(4), t, 1.0, 7, &d);
  EXPECT_EQ(d.oracle_calls, 7);
  EXPECT_EQ(d.diffusion_calls, 7);
}

TEST(DenseKernel, MatchesClosedFormEntries) {
  const TargetSet t(3, {0});
  const ComplexMatrix g = dense_kernel_matrix(t, kAlpha2);
  const Complex ep = std::polar(1.0, kAlpha2), em = std::polar(1.0, -kAlpha2);
  EXPECT_NEAR(std::abs(g(0, 0) - (7.0 + ep) / 8.0), 0.0, 1e-15);
  for (std::size_t i = 1; i < 8; ++i) {
    EXPECT_NEAR(std::abs(g(i, 0) - (ep - 1.0) / 8.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g(0, i) - (1.0 - em) / 8.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g(i, i) - (1.0 + 7.0 * em) / 8.0), 0.0, 1e-15);
    for (std::size_t j = 1; j < 8; ++j) {
      if (j == i) continue;
      EXPECT_NEAR(std::abs(g(i, j) - (1.0 - em) / 8.0), 0.0, 1e-15);
    }
  }
  EXPECT_LE(max_abs(g, oracle::kernel_matrix(3, {0}, kAlpha2)), 1e-14);
}

TEST(DenseKernel, ZeroPhaseIsIdentityAndRandomIsUnitary) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 8; ++n) {
    const TargetSet t = random_targets(rng, n);
    EXPECT_LE(max_abs_deviation_from_identity(dense_kernel_matrix(t, 0.0)), 0.0);
    const double a = std::uniform_real_distribution<double>(-pi, pi)(rng);
    EXPECT_TRUE(is_unitary(dense_kernel_matrix(t, a))) << "n " << n;
  }
}

TEST(DenseKernel, MatchesHadamardProductsForRandomTargets) {
  std::mt19937_64 rng(10);
  for (int n = 1; n <= 5; ++n) {
    const TargetSet t = random_targets(rng, n);
    const double a = std::uniform_real_distribution<double>(0.0, pi)(rng);
    EXPECT_LE(max_abs(dense_kernel_matrix(t, a), oracle::kernel_matrix(n, t.indices(), a)), 1e-13);
  }
}

TEST(DenseKernel, CapIsEnforced) {
  EXPECT_THROW(dense_kernel_matrix(TargetSet(13, {0}), 1.0), TooLargeForDense);
}

TEST(MatrixFree, AgreesWithDensePowers) {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 40; ++c) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const int k = std::uniform_int_distribution<int>(0, 10)(rng);
    const TargetSet t = random_targets(rng, n);
    const double a = std::uniform_real_distribution<double>(0.0, pi)(rng);
    const auto s = random_state(rng, t.dimension());
    const ComplexMatrix g = dense_kernel_matrix(t, a);
    ComplexVector dense = s;
    for (int i = 0; i < k; ++i) dense = multiply(g, dense);
    const auto free = grover_iterate(s, t, a, k);
    EXPECT_LE(max_abs_diff(free, dense), 1e-12) << "n " << n << " k " << k;
    EXPECT_NEAR(norm(free), 1.0, 1e-12);
  }
  // Brute force from definitions, small n.
  for (int n = 1; n <= 4; ++n) {
    const TargetSet t = random_targets(rng, n);
    const auto ref = oracle::iterated_state(n, t.indices(), 1.3, 5);
    EXPECT_LE(oracle::max_abs(grover_iterate(initial_state(n), t, 1.3, 5), ref), 1e-12);
  }
}

TEST(Spectrum, SumWithAdjointHasUniformEigenstate) {
  std::mt19937_64 rng(14);
  for (int n = 1; n <= 8; ++n) {
    const TargetSet t = random_targets(rng, n);
    const double a = std::uniform_real_distribution<double>(0.0, pi)(rng);
    const ComplexMatrix g = dense_kernel_matrix(t, a);
    const ComplexMatrix gd = adjoint(g);
    const auto phi0 = initial_state(n);
    const double ev = 2.0 * (1.0 - t.lambda() * (1.0 - std::cos(a)));
    const auto lhs = multiply(g, phi0);
    const auto rhs = multiply(gd, phi0);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi0.size(); ++i)
      worst = std::max(worst, std::abs(lhs[i] + rhs[i] - ev * phi0[i]));
    EXPECT_LE(worst, 1e-10) << "n " << n;

    // k-th power relation with theta from the rotation phase.
    const double theta = rotation_phase(t.lambda(), a);
    ComplexVector fwd = phi0, bwd = phi0;
    for (int k = 1; k <= 12; ++k) {
      fwd = multiply(g, fwd);
      bwd = multiply(gd, bwd);
      double w = 0.0;
      for (std::size_t i = 0; i < phi0.size(); ++i)
        w = std::max(w, std::abs(fwd[i] + bwd[i] - 2.0 * std::cos(k * theta) * phi0[i]));
      EXPECT_LE(w, 1e-9) << "n " << n << " k " << k;
    }
  }
}

TEST(TwoDimKernel, Examples) {
  EXPECT_LE(max_abs_deviation_from_identity(two_dim_kernel(0.3, 0.0)), 1e-15);
  const ComplexMatrix g = two_dim_kernel(1.0 / 8.0, kAlpha2);
  EXPECT_NEAR(std::abs(g(0, 0) + g(1, 1) - 2.0 * std::cos(pi / 5.0)), 0.0, 1e-12);
  const ComplexMatrix m = two_dim_kernel(1.0, pi);
  EXPECT_NEAR(std::abs(m(0, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) + 1.0), 0.0, 1e-15);
  EXPECT_LE(std::abs(m(0, 1)) + std::abs(m(1, 0)), 1e-15);
  EXPECT_TRUE(is_unitary(two_dim_kernel(0.37, 2.2)));
  EXPECT_THROW(two_dim_kernel(0.0, 1.0), OutOfRange);
}

TEST(TwoDimKernel, ActsLikeFullKernelOnInvariantPlane) {
  // |R>, |T> built by hand for targets {0, 5} on 8 states.
  const TargetSet t(3, {0, 5});
  ComplexVector r(8, 1.0 / std::sqrt(6.0)), tt(8, 0.0);
  r[0] = r[5] = 0.0;
  tt[0] = tt[5] = 1.0 / std::sqrt(2.0);
  const double a = 1.7;
  const ComplexMatrix g2 = two_dim_kernel(t.lambda(), a);
  const auto gr = grover_iterate(r, t, a, 1);
  const auto gt = grover_iterate(tt, t, a, 1);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(gr[i] - (g2(0, 0) * r[i] + g2(1, 0) * tt[i])), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(gt[i] - (g2(0, 1) * r[i] + g2(1, 1) * tt[i])), 0.0, 1e-14);
  }
  // Cayley-Hamilton in two dimensions: G + G^dagger = Tr(G) I.
  const ComplexMatrix s = adjoint(g2);
  const Complex tr = g2(0, 0) + g2(1, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_NEAR(std::abs(g2(i, j) + s(i, j) - (i == j ? tr : Complex{})), 0.0, 1e-14);
}

TEST(KernelEigenvalues, Examples) {
  const KernelSpectrum s = kernel_eigenvalues(0.25, pi);
  EXPECT_NEAR(std::abs(s.eps_plus - std::polar(1.0, pi / 3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.eps_minus - std::polar(1.0, -pi / 3.0)), 0.0, 1e-12);
  EXPECT_NEAR(s.theta, pi / 3.0, 1e-12);
}

TEST(KernelEigenvalues, UnitModulusAndMatchCharacteristicPolynomial) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> lam(1e-4, 1.0), al(0.0, pi);
  for (int c = 0; c < 500; ++c) {
    const double l = lam(rng), a = al(rng);
    const KernelSpectrum s = kernel_eigenvalues(l, a);
    EXPECT_NEAR(std::abs(s.eps_plus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(s.eps_minus), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(s.eps_plus * s.eps_minus - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.eps_plus - std::conj(s.eps_minus)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.eps_plus - std::polar(1.0, s.theta)), 0.0, 1e-7);

    const ComplexMatrix g = two_dim_kernel(l, a);
    const Complex tr = g(0, 0) + g(1, 1);
    const Complex det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex r1 = 0.5 * (tr + disc), r2 = 0.5 * (tr - disc);
    if (r1.imag() < r2.imag()) std::swap(r1, r2);
    EXPECT_NEAR(std::abs(r1 - s.eps_plus), 0.0, 1e-7);  // root-finding near a double root
    EXPECT_NEAR(std::abs(r2 - s.eps_minus), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(r1 * r2 - s.eps_plus * s.eps_minus), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r1 + r2 - (s.eps_plus + s.eps_minus)), 0.0, 1e-12);
  }
}

TEST(TwoDimAmplitudes, Examples) {
  const TwoDimAmplitudes z = two_dim_amplitudes(0.3, 1.2, 0);
  EXPECT_NEAR(std::abs(z.d_k - std::sqrt(0.3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(z.u_k - std::sqrt(0.7)), 0.0, 1e-14);
  const TwoDimAmplitudes e = two_dim_amplitudes(1.0 / 8.0, kAlpha2, 2);
  EXPECT_NEAR(std::abs(e.d_k), 1.0, 1e-12);
  EXPECT_LE(std::abs(e.u_k), 1e-12);
  EXPECT_NEAR(std::abs(e.d_k - kVt), 0.0, 1e-12);
}

TEST(TwoDimAmplitudes, MatchTwoByTwoPowersIncludingSingularAngles) {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> lam(1e-3, 1.0), al(0.0, pi);
  auto check = [](double l, double a, int k) {
    const TwoDimAmplitudes z = two_dim_amplitudes(l, a, k);
    const ComplexMatrix g = two_dim_kernel(l, a);
    ComplexVector v{std::sqrt(1.0 - l), std::sqrt(l)};
    for (int i = 0; i < k; ++i) v = multiply(g, v);
    EXPECT_NEAR(std::abs(z.d_k - v[1]), 0.0, 1e-10) << l << " " << a << " " << k;
    EXPECT_NEAR(std::abs(z.u_k - v[0]), 0.0, 1e-10) << l << " " << a << " " << k;
    EXPECT_NEAR(std::norm(z.d_k) + std::norm(z.u_k), 1.0, 1e-10);
  };
  for (int c = 0; c < 300; ++c) check(lam(rng), al(rng), std::uniform_int_distribution<int>(0, 20)(rng));
  check(0.5, 0.0, 3);   // theta = 0
  check(1.0, pi, 4);    // theta = pi
  check(0.4, 1e-9, 5);  // theta tiny
}
