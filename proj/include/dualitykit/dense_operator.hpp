#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dualitykit {

using cplx = std::complex<double>;

/// Square complex matrix, row-major. Rows index the output basis state and
/// columns the input one; basis states are lexicographic in the site values
/// with site 0 most significant.
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static DenseOperator identity(std::size_t dim);
  static DenseOperator from_eigen(const Eigen::MatrixXcd& m);

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  cplx* row(std::size_t r) { return data_.data() + r * dim_; }
  const cplx* row(std::size_t r) const { return data_.data() + r * dim_; }
  const std::vector<cplx>& data() const { return data_; }

  Eigen::MatrixXcd to_eigen() const;

  DenseOperator adjoint() const;
  DenseOperator operator*(const DenseOperator& other) const;
  DenseOperator operator+(const DenseOperator& other) const;
  DenseOperator operator-(const DenseOperator& other) const;
  DenseOperator operator*(cplx s) const;
  DenseOperator& operator+=(const DenseOperator& other);

  cplx trace() const;
  /// Frobenius inner product tr(this^† other).
  cplx inner(const DenseOperator& other) const;
  double frobenius_norm() const;
  double max_abs() const;
  double max_abs_diff(const DenseOperator& other) const;
  double spectral_norm() const;
  int rank(double tol = 1e-10) const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Row-major little-endian complex128 dump, no header.
  void write_binary(const std::string& path) const;

 private:
  void require_same(const DenseOperator& other) const;

  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

}  // namespace dualitykit
