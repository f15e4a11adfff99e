#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualitykit/abelian_group.hpp"
#include "dualitykit/dense_operator.hpp"

namespace dualitykit {

/// Default bound on the dense dimension |A|^L; DUALITYKIT_CAP overrides it.
std::size_t default_cap();

/// Periodic chain of L qudits with local space C[A].
struct ChainConfig {
  Bicharacter chi;
  int length = 2;
  std::size_t cap = 4096;

  const FiniteAbelianGroup& group() const { return chi.group(); }
  int local_dim() const { return group().order(); }
  /// |A|^L, saturating at SIZE_MAX.
  std::size_t dense_dim() const;
};

/// Validates L >= 2 and |A|^L <= cap (CapExceeded otherwise).
ChainConfig make_chain(Bicharacter chi, int length, std::size_t cap = default_cap());

/// W[left][right][in][out], flattened in that order.
struct SiteTensor {
  int left = 1;
  int right = 1;
  int phys = 1;
  std::vector<cplx> data;

  SiteTensor() = default;
  SiteTensor(int left, int right, int phys)
      : left(left), right(right), phys(phys),
        data(static_cast<std::size_t>(left) * right * phys * phys, 0.0) {}

  cplx& at(int l, int r, int in, int out) { return data[index(l, r, in, out)]; }
  const cplx& at(int l, int r, int in, int out) const { return data[index(l, r, in, out)]; }

 private:
  std::size_t index(int l, int r, int in, int out) const {
    return ((static_cast<std::size_t>(l) * right + static_cast<std::size_t>(r)) * phys + static_cast<std::size_t>(in)) *
               phys +
           static_cast<std::size_t>(out);
  }
};

/// Periodic MPO: ⟨out|O|in⟩ = prefactor · Tr Π_i W_i[·,·; in_i, out_i].
struct MPO {
  std::string name;
  std::vector<SiteTensor> tensors;
  cplx prefactor = 1.0;

  int length() const { return static_cast<int>(tensors.size()); }
  int phys() const { return tensors.empty() ? 0 : tensors.front().phys; }
  /// Throws DomainError if neighbouring bond dimensions disagree.
  void validate() const;
};

/// top·bottom with bottom applied first. Bond index = l_top * D_bottom + l_bottom.
MPO stack(const MPO& top, const MPO& bottom);
MPO identity_mpo(const ChainConfig& cfg);

/// ℋ[a][b] = χ(a,b)/sqrt|A|. Throws PreconditionError for a degenerate chi.
DenseOperator hadamard_tensor(const Bicharacter& chi);

/// Group-algebra spiders on C[A]. white = m with white[x][y][z] = δ(z = x+y)
/// (z the output); black = m^† with black[z][x][y] = δ(z = x+y).
struct Spiders {
  int n = 0;
  std::vector<double> white;
  std::vector<double> black;

  double m(int x, int y, int z) const {
    return white[(static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)) *
                     static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(z)];
  }
  double mdag(int z, int x, int y) const {
    return black[(static_cast<std::size_t>(z) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x)) *
                     static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(y)];
  }
};

Spiders spider_tensors(const FiniteAbelianGroup& group);

/// Duality MPO, bond dimension |A|. direction +1 is D+, -1 is D- = D+^†.
/// ⟨out|D+|in⟩ = Π_i χ(out_i, in_i - in_{i-1}). Throws PreconditionError for odd L.
MPO build_duality_mpo(const ChainConfig& cfg, int direction);
/// Cell tensor of D± assembled from the spiders, the ℋ boxes and the
/// physical-leg rotation, before any simplification.
SiteTensor duality_cell_from_diagram(const Bicharacter& chi, int direction);

/// T+ moves the value on site i-1 to site i; T- is its inverse. With
/// dressed_by = b, the output leg carries the shift by b (η_b T±).
MPO build_translation_mpo(const ChainConfig& cfg, int direction,
                          std::optional<GroupElement> dressed_by = std::nullopt);

/// Bond-dimension-1 MPO of the global shift η_b = ⊗ X^{(b)}.
MPO symmetry_mpo(const ChainConfig& cfg, const GroupElement& b);

/// ⊗_i X^{(b)} with b = chi~^{-1}(φ); ∏ X_i for Z2.
DenseOperator build_symmetry_operator(const ChainConfig& cfg, const Character& phi);

/// Dense cyclic shift by `shift` sites: site i receives the value of site i - shift.
DenseOperator translation_operator(const ChainConfig& cfg, int shift);

struct ContractionStats {
  std::size_t dim = 0;
  std::size_t axpy_calls = 0;
  std::size_t flops = 0;
};

/// Exact dense contraction. Throws CapExceeded when |A|^L exceeds cap.
DenseOperator contract(const MPO& mpo, std::size_t cap = default_cap(), ContractionStats* stats = nullptr);

/// Π_{sites} op_site as a dense operator on the chain (sites not listed act as identity).
DenseOperator site_product(const ChainConfig& cfg, const std::map<int, DenseOperator>& ops);

/// X^{(b)}|a⟩ = |a+b⟩ on one qudit.
DenseOperator shift_matrix(const FiniteAbelianGroup& group, const GroupElement& b);
/// Z^{(ψ)}|a⟩ = ψ(a)|a⟩ on one qudit.
DenseOperator clock_matrix(const FiniteAbelianGroup& group, const Character& psi);
/// (1/|A|) Σ_b X^{(b)} on site i.
DenseOperator projector_x(const ChainConfig& cfg, int site);
/// Projector onto a_i = a_j.
DenseOperator projector_equal(const ChainConfig& cfg, int i, int j);

}  // namespace dualitykit
