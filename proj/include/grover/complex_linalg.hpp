#pragma once

// Dense complex vector and matrix primitives shared by the search modules.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "grover/errors.hpp"

namespace grover {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Default absolute tolerance on max-abs entry comparisons.
inline constexpr double kDefaultTol = 1e-10;

/// Gram-Schmidt rejects a seed whose projected residual is shorter than this.
inline constexpr double kDegeneracyThreshold = 1e-8;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("matrix data has " + std::to_string(data_.size()) +
                              " entries, expected " + std::to_string(rows_ * cols_));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Complex>& data() const noexcept { return data_; }
  std::vector<Complex>& data() noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("inner product of length " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cannot compare vectors of length " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("cannot compare matrices of different shapes");
  }
  return max_abs_diff(std::span<const Complex>(a.data()), std::span<const Complex>(b.data()));
}

inline ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  ComplexVector v(dim, Complex{0.0, 0.0});
  v.at(index) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Matrix algebra

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

/// Plain i-k-j product; summation order is fixed so results are reproducible.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("cannot multiply " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

inline ComplexVector multiply(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) {
    throw DimensionMismatch("matrix with " + std::to_string(m.cols()) +
                            " columns applied to vector of length " + std::to_string(v.size()));
  }
  ComplexVector out(m.rows(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < m.cols(); ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

/// |a><b|
inline ComplexMatrix outer_product(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix out(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

/// Sum_i |outs[i]><ins[i]|, the operator that carries each ins[i] to outs[i].
inline ComplexMatrix sum_of_outer_products(const std::vector<ComplexVector>& outs,
                                           const std::vector<ComplexVector>& ins) {
  if (outs.size() != ins.size() || outs.empty()) {
    throw DimensionMismatch("outer-product sum needs equally sized non-empty bases");
  }
  const std::size_t rows = outs.front().size();
  const std::size_t cols = ins.front().size();
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (outs[i].size() != rows || ins[i].size() != cols) {
      throw DimensionMismatch("basis vectors have inconsistent lengths");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const Complex a = outs[i][r];
      if (a == Complex{0.0, 0.0}) continue;
      auto out_row = out.row(r);
      for (std::size_t c = 0; c < cols; ++c) out_row[c] += a * std::conj(ins[i][c]);
    }
  }
  return out;
}

inline double max_abs_deviation_from_identity(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Complex expected = r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(m(r, c) - expected));
    }
  return worst;
}

/// max(|m^dag m - I|, |m m^dag - I|) over entries.
inline double unitarity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw NonSquare("unitarity check on a " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " matrix");
  }
  const ComplexMatrix mh = adjoint(m);
  return std::max(max_abs_deviation_from_identity(multiply(mh, m)),
                  max_abs_deviation_from_identity(multiply(m, mh)));
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol) {
  return unitarity_residual(m) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!m.is_square()) throw NonSquare("hermiticity check on a non-square matrix");
  return max_abs_diff(m, adjoint(m)) <= tol;
}

// ---------------------------------------------------------------------------
// Kronecker products. Index (p, q) maps to p * dim(b) + q.

inline ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) out[p * b.size() + q] = a[p] * b[q];
  return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  return tensor_product(std::span<const Complex>(a), std::span<const Complex>(b));
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        Complex* dst = &out(ar * b.rows() + br, ac * b.cols());
        const auto src = b.row(br);
        for (std::size_t bc = 0; bc < b.cols(); ++bc) dst[bc] = s * src[bc];
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Gram-Schmidt

namespace detail {

// Orthogonalise `v` against every accepted vector, one projection at a time
// (modified Gram-Schmidt). Returns the residual norm.
inline double project_out(ComplexVector& v, const std::vector<ComplexVector>& accepted) {
  for (const auto& q : accepted) {
    const Complex c = inner_product(q, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
  }
  return norm(v);
}

inline void check_fixed_first(std::span<const Complex> fixed_first, double tol) {
  if (fixed_first.empty()) throw DimensionMismatch("Gram-Schmidt on an empty vector");
  if (std::abs(norm(fixed_first) - 1.0) > tol) {
    throw DegenerateSeed("leading Gram-Schmidt vector is not normalised");
  }
}

}  // namespace detail

/// Completes `fixed_first` to an orthonormal basis using exactly the given
/// seeds, in order. The first output vector is `fixed_first` untouched.
/// Requires dim - 1 seeds; throws DegenerateSeed if any seed is (numerically)
/// dependent on its predecessors.
inline std::vector<ComplexVector> gram_schmidt_complete(const ComplexVector& fixed_first,
                                                        const std::vector<ComplexVector>& seeds,
                                                        double tol = kDefaultTol) {
  detail::check_fixed_first(fixed_first, 1e3 * tol);
  const std::size_t dim = fixed_first.size();
  if (seeds.size() + 1 != dim) {
    throw DimensionMismatch("Gram-Schmidt completion in dimension " + std::to_string(dim) +
                            " needs " + std::to_string(dim - 1) + " seeds, got " +
                            std::to_string(seeds.size()));
  }
  std::vector<ComplexVector> basis;
  basis.reserve(dim);
  basis.push_back(fixed_first);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (seeds[s].size() != dim) {
      throw DimensionMismatch("seed " + std::to_string(s) + " has length " +
                              std::to_string(seeds[s].size()) + ", expected " +
                              std::to_string(dim));
    }
    ComplexVector v = seeds[s];
    const double r = detail::project_out(v, basis);
    if (r < kDegeneracyThreshold) {
      throw DegenerateSeed("seed " + std::to_string(s) + " is linearly dependent (residual " +
                           std::to_string(r) + ")");
    }
    for (auto& z : v) z /= r;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Completes `fixed_first` to an orthonormal basis using canonical basis
/// vectors e_0, e_1, ... as seeds, silently skipping any that degenerate.
inline std::vector<ComplexVector> complete_basis(const ComplexVector& fixed_first,
                                                 double tol = kDefaultTol) {
  detail::check_fixed_first(fixed_first, 1e3 * tol);
  const std::size_t dim = fixed_first.size();
  std::vector<ComplexVector> basis;
  basis.reserve(dim);
  basis.push_back(fixed_first);
  for (std::size_t s = 0; s < dim && basis.size() < dim; ++s) {
    ComplexVector v = basis_vector(dim, s);
    const double r = detail::project_out(v, basis);
    if (r < kDegeneracyThreshold) continue;
    for (auto& z : v) z /= r;
    basis.push_back(std::move(v));
  }
  if (basis.size() != dim) {
    throw DegenerateSeed("canonical seeds did not span the space");
  }
  return basis;
}

/// max |<b_i|b_j> - delta_ij| over the whole set.
inline double orthonormality_residual(const std::vector<ComplexVector>& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex expected = i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(inner_product(basis[i], basis[j]) - expected));
    }
  return worst;
}

/// max |Sum_i |b_i><b_i| - I| over entries.
inline double completeness_residual(const std::vector<ComplexVector>& basis) {
  return max_abs_deviation_from_identity(sum_of_outer_products(basis, basis));
}

}  // namespace grover
