#pragma once

// Parameters for phase-matched search with certainty: iteration count k,
// matching phase alpha and rotation phase theta as functions of the target
// fraction lambda = M / N.

#include <cmath>
#include <numbers>
#include <string>

#include "grover/complex_linalg.hpp"
#include "grover/errors.hpp"

namespace grover {

/// Arguments of acos within this distance outside [-1, 1] are clamped.
inline constexpr double kAcosClampSlack = 1e-12;

/// Slack applied before taking the ceiling of the optimal-k bound, so that
/// boundary fractions such as 1/4 (bound exactly 1) are not pushed up by
/// rounding.
inline constexpr double kIterationBoundSlack = 1e-9;

struct SearchParams {
  double lambda = 1.0;
  int k = 0;
  double alpha = 0.0;  // radians, [0, pi]
  double theta = 0.0;  // radians, [0, pi]
  // lambda = 1: every basis state is a target and no iteration is needed.
  bool no_iteration = false;

  /// |cos(theta) - (1 - lambda (1 - cos(alpha)))|
  double consistency_residual() const {
    return std::abs(std::cos(theta) - (1.0 - lambda * (1.0 - std::cos(alpha))));
  }
  bool is_consistent(double tol = kDefaultTol) const { return consistency_residual() <= tol; }
};

namespace detail {

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw OutOfRange("target fraction lambda=" + std::to_string(lambda) +
                     " is outside (0, 1]");
  }
}

// acos with tolerance for arguments that overshoot [-1, 1] by rounding.
// Returns false when the argument is genuinely out of range.
inline bool clamped_acos(double arg, double& out) {
  if (arg < -1.0 - kAcosClampSlack || arg > 1.0 + kAcosClampSlack) return false;
  out = std::acos(std::clamp(arg, -1.0, 1.0));
  return true;
}

// acos is ill-conditioned next to -1, so a few ulps of rounding in the
// argument become ~1e-8 in the angle. Arguments this close are taken as -1.
inline constexpr double kAcosSnapBand = 1e-14;

inline bool boundary_acos(double arg, double& out) {
  if (arg < -1.0 + kAcosSnapBand) arg = std::min(arg, -1.0);
  return clamped_acos(arg, out);
}

}  // namespace detail

/// Smallest k >= (pi - acos(1 - 2 lambda)) / (2 acos(1 - 2 lambda)).
inline int optimal_iterations(double lambda) {
  detail::check_lambda(lambda);
  const double a = std::acos(std::clamp(1.0 - 2.0 * lambda, -1.0, 1.0));
  const double bound = (std::numbers::pi - a) / (2.0 * a);
  const double k = std::ceil(bound - kIterationBoundSlack);
  return k < 0.0 ? 0 : static_cast<int>(k);
}

/// pi / (2k + 1)
inline double exact_rotation_phase(int k) {
  if (k < 1) throw OutOfRange("exact rotation phase needs k >= 1, got " + std::to_string(k));
  return std::numbers::pi / (2.0 * k + 1.0);
}

/// alpha_k(lambda) = acos[1 - (1 - cos(pi / (2k + 1))) / lambda]
inline double matching_phase(double lambda, int k) {
  detail::check_lambda(lambda);
  if (k < 1) throw OutOfRange("matching phase needs k >= 1, got " + std::to_string(k));
  const double arg = 1.0 - (1.0 - std::cos(exact_rotation_phase(k))) / lambda;
  double alpha = 0.0;
  if (!detail::boundary_acos(arg, alpha)) {
    throw InfeasibleK("k=" + std::to_string(k) + " is below the optimal iteration count for lambda=" +
                      std::to_string(lambda) + " (acos argument " + std::to_string(arg) + ")");
  }
  return alpha;
}

/// theta = acos(1 - lambda (1 - cos alpha)), in [0, pi].
inline double rotation_phase(double lambda, double alpha) {
  detail::check_lambda(lambda);
  double theta = 0.0;
  detail::clamped_acos(1.0 - lambda * (1.0 - std::cos(alpha)), theta);
  return theta;
}

/// Same angle through the arctangent form, evaluated with atan2 so that the
/// branch at x = 1 lands in [0, pi]. Kept as an independent cross-check.
inline double rotation_phase_arctan(double lambda, double alpha) {
  detail::check_lambda(lambda);
  const double x = lambda * (1.0 - std::cos(alpha));
  return std::atan2(std::sqrt(std::max(0.0, x * (2.0 - x))), 1.0 - x);
}

/// Inverse of rotation_phase for a fixed lambda: cos(alpha) = 1 - (1 - cos theta) / lambda.
inline double phase_from_rotation(double lambda, double theta) {
  detail::check_lambda(lambda);
  double alpha = 0.0;
  if (!detail::clamped_acos(1.0 - (1.0 - std::cos(theta)) / lambda, alpha)) {
    throw InfeasibleK("rotation phase " + std::to_string(theta) +
                      " is not reachable for lambda=" + std::to_string(lambda));
  }
  return alpha;
}

/// Parameters of the exact search for lambda. For lambda = 1 the optimal count
/// is zero: alpha and theta are reported as 0 and `no_iteration` is set.
inline SearchParams solve(double lambda) {
  detail::check_lambda(lambda);
  SearchParams p;
  p.lambda = lambda;
  p.k = optimal_iterations(lambda);
  if (p.k == 0) {
    p.no_iteration = true;
    return p;
  }
  p.alpha = matching_phase(lambda, p.k);
  p.theta = exact_rotation_phase(p.k);
  return p;
}

/// Exact-search parameters for a caller-chosen k (any k >= optimal).
inline SearchParams params_for_k(double lambda, int k) {
  SearchParams p;
  p.lambda = lambda;
  p.k = k;
  p.alpha = matching_phase(lambda, k);
  p.theta = exact_rotation_phase(k);
  return p;
}

/// Build from {k, alpha}; theta follows from the rotation relation.
inline SearchParams params_from_k_alpha(double lambda, int k, double alpha) {
  if (k < 0) throw OutOfRange("k must be non-negative");
  SearchParams p;
  p.lambda = lambda;
  p.k = k;
  p.alpha = alpha;
  p.theta = rotation_phase(lambda, alpha);
  return p;
}

/// Build from {k, theta}; alpha follows from the rotation relation.
inline SearchParams params_from_k_theta(double lambda, int k, double theta) {
  if (k < 0) throw OutOfRange("k must be non-negative");
  SearchParams p;
  p.lambda = lambda;
  p.k = k;
  p.theta = theta;
  p.alpha = phase_from_rotation(lambda, theta);
  return p;
}

}  // namespace grover
