#pragma once

// Brute-force reference constructions built straight from the defining
// formulas, without going through the library's tensors or label tables.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

inline std::vector<int> digits(long index, const std::vector<int>& radix) {
  std::vector<int> out(radix.size());
  for (std::size_t k = radix.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % radix[k]);
    index /= radix[k];
  }
  return out;
}

inline long undigits(const std::vector<int>& d, const std::vector<int>& radix) {
  long index = 0;
  for (std::size_t k = 0; k < radix.size(); ++k) index = index * radix[k] + d[k];
  return index;
}

inline int order(const std::vector<int>& factors) {
  return std::accumulate(factors.begin(), factors.end(), 1, std::multiplies<>());
}

inline int exponent(const std::vector<int>& factors) {
  int e = 1;
  for (int n : factors) e = std::lcm(e, n);
  return e;
}

/// exp(2πi Σ M_ij a_i b_j / N) for element indices a, b.
inline cplx chi(const std::vector<int>& factors, const std::vector<std::vector<long>>& m, int a, int b) {
  const auto x = digits(a, factors);
  const auto y = digits(b, factors);
  long s = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) s += m[i][j] * x[i] * y[j];
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s) / exponent(factors));
}

/// Diagonal pairing Σ a_k b_k / n_k written as an integer matrix over N.
inline std::vector<std::vector<long>> standard_matrix(const std::vector<int>& factors) {
  const int e = exponent(factors);
  std::vector<std::vector<long>> m(factors.size(), std::vector<long>(factors.size(), 0));
  for (std::size_t k = 0; k < factors.size(); ++k) m[k][k] = e / factors[k];
  return m;
}

inline int add(const std::vector<int>& factors, int a, int b, int sign = 1) {
  auto x = digits(a, factors);
  const auto y = digits(b, factors);
  for (std::size_t k = 0; k < factors.size(); ++k) x[k] = ((x[k] + sign * y[k]) % factors[k] + factors[k]) % factors[k];
  return static_cast<int>(undigits(x, factors));
}

/// ⟨o|D|i⟩ = Π_s χ(o_s, i_s - i_{s-1}) on a periodic chain.
inline Eigen::MatrixXcd duality(const std::vector<int>& factors, const std::vector<std::vector<long>>& m, int L) {
  const int n = order(factors);
  const std::vector<int> sites(static_cast<std::size_t>(L), n);
  long dim = 1;
  for (int s = 0; s < L; ++s) dim *= n;
  Eigen::MatrixXcd d(dim, dim);
  for (long o = 0; o < dim; ++o)
    for (long i = 0; i < dim; ++i) {
      const auto os = digits(o, sites);
      const auto is = digits(i, sites);
      cplx v = 1.0;
      for (int s = 0; s < L; ++s)
        v *= chi(factors, m, os[static_cast<std::size_t>(s)],
                 add(factors, is[static_cast<std::size_t>(s)], is[static_cast<std::size_t>((s + L - 1) % L)], -1));
      d(o, i) = v;
    }
  return d;
}

/// Permutation sending the value at site s to site s + k.
inline Eigen::MatrixXcd shift(int n, int L, int k) {
  const std::vector<int> sites(static_cast<std::size_t>(L), n);
  long dim = 1;
  for (int s = 0; s < L; ++s) dim *= n;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    const auto in = digits(i, sites);
    std::vector<int> out(in.size());
    for (int s = 0; s < L; ++s) out[static_cast<std::size_t>(((s + k) % L + L) % L)] = in[static_cast<std::size_t>(s)];
    p(undigits(out, sites), i) = 1.0;
  }
  return p;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline Eigen::MatrixXcd pauli_z() {
  Eigen::MatrixXcd z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

/// ⊗ over `qubits` qubits with the given single-qubit operators placed at their sites.
inline Eigen::MatrixXcd on_qubits(int qubits, const std::vector<std::pair<int, Eigen::MatrixXcd>>& ops) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(2, 2);
    for (const auto& [site, op] : ops)
      if (((site % qubits) + qubits) % qubits == q) f = f * op;
    out = kron(out, f);
  }
  return out;
}

/// -Σ ½(1 + Z_i Z_{i+1}) - Σ ½(1 + X_i) on a periodic qubit chain.
inline Eigen::MatrixXcd tfim(int L) {
  const long dim = 1L << L;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < L; ++i) {
    h -= 0.5 * (id + on_qubits(L, {{i, pauli_z()}, {i + 1, pauli_z()}}));
    h -= 0.5 * (id + on_qubits(L, {{i, pauli_x()}}));
  }
  return h;
}

}  // namespace oracle
