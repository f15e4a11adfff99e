#include "dualitykit/dense_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "dualitykit/errors.hpp"
#include "dualitykit/kernels.hpp"

namespace dualitykit {

DenseOperator DenseOperator::identity(std::size_t dim) {
  DenseOperator op(dim);
  for (std::size_t i = 0; i < dim; ++i) op(i, i) = 1.0;
  return op;
}

DenseOperator DenseOperator::from_eigen(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw DomainError("DenseOperator: matrix is not square");
  DenseOperator op(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) op(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return op;
}

Eigen::MatrixXcd DenseOperator::to_eigen() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = (*this)(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return m;
}

void DenseOperator::require_same(const DenseOperator& other) const {
  if (dim_ != other.dim_)
    throw DomainError("operator dimensions differ: " + std::to_string(dim_) + " vs " + std::to_string(other.dim_));
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

DenseOperator DenseOperator::operator*(const DenseOperator& other) const {
  require_same(other);
  DenseOperator out(dim_);
  // Row-axpy form: out.row(i) += A(i,k) * B.row(k), skipping structural zeros.
  for (std::size_t i = 0; i < dim_; ++i) {
    const cplx* a = row(i);
    cplx* o = out.row(i);
    for (std::size_t k = 0; k < dim_; ++k)
      if (a[k] != 0.0) kernels::axpy(dim_, a[k], other.row(k), o);
  }
  return out;
}

DenseOperator DenseOperator::operator+(const DenseOperator& other) const {
  DenseOperator out = *this;
  out += other;
  return out;
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& other) {
  require_same(other);
  kernels::axpy(data_.size(), 1.0, other.data_.data(), data_.data());
  return *this;
}

DenseOperator DenseOperator::operator-(const DenseOperator& other) const {
  require_same(other);
  DenseOperator out = *this;
  kernels::axpy(data_.size(), -1.0, other.data_.data(), out.data_.data());
  return out;
}

DenseOperator DenseOperator::operator*(cplx s) const {
  DenseOperator out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

cplx DenseOperator::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

cplx DenseOperator::inner(const DenseOperator& other) const {
  require_same(other);
  return kernels::dotc(data_.size(), data_.data(), other.data_.data());
}

double DenseOperator::frobenius_norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

double DenseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
  require_same(other);
  return kernels::max_abs_diff(data_.size(), data_.data(), other.data_.data());
}

double DenseOperator::spectral_norm() const {
  if (dim_ == 0) return 0.0;
  const Eigen::MatrixXcd m = to_eigen();
  const Eigen::MatrixXcd g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

int DenseOperator::rank(double tol) const {
  if (dim_ == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen());
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(1.0, top)) ++r;
  return r;
}

bool DenseOperator::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

void DenseOperator::write_binary(const std::string& path) const {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size() * sizeof(cplx)));
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) { return a * b - b * a; }

}  // namespace dualitykit
