#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dualitykit/mpo.hpp"

namespace dualitykit {

/// Bond-level solution of ι ρ_a = ρ_{b⊗c} ι (or the fusion direction
/// ρ_a φ = φ ρ_{b⊗c}), read off the first site tensor of each MPO.
struct Intertwiner {
  /// into: rows index the b⊗c bond (l_b * D_c + l_c), columns the a bond.
  /// fuse: rows index the a bond, columns the b⊗c bond.
  Eigen::MatrixXcd map;
  int nullspace_dim = 0;
  /// Smallest singular value outside the nullspace, for diagnostics.
  double gap = 0.0;
  /// Per-site scalar λ with ι (λ W_a) = W_{b⊗c} ι. It is 1 whenever an
  /// unscaled solution exists; otherwise it absorbs the normalization of
  /// non-invertible MPOs (D+ carries √|A| per site relative to T+).
  cplx scale = 1.0;
};

/// ι with ι W_a = W_{b⊗c} ι, in canonical gauge: Frobenius norm sqrt(D_a) and
/// the first entry above 1e-8 made real positive. When no unscaled solution
/// exists the per-site scalar λ is searched as well. std::nullopt when no λ
/// admits a solution. Sites must be translation invariant.
std::optional<Intertwiner> find_intertwiner(const MPO& a, const MPO& b, const MPO& c, double tol = 1e-10);
/// φ with W_a φ = φ W_{b⊗c}, same gauge.
std::optional<Intertwiner> find_fusion_map(const MPO& a, const MPO& b, const MPO& c, double tol = 1e-10);

/// min over phases θ of max |x - e^{iθ} y|, with the optimal phase.
std::pair<double, cplx> distance_up_to_phase(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// One associativity scalar for a triple of invertible lattice objects:
/// the two reduction paths x⊗y⊗z -> xyz differ by `scalar`.
struct FScalar {
  std::string x;
  std::string y;
  std::string z;
  cplx scalar;
  /// max |L - scalar R| between the two reduction paths.
  double residual = 0.0;
  bool unique = true;
};

/// All triples from {η, T+, T-, ηT+, ηT-} (η the shift by the first
/// generator) that contain at most one translation.
std::vector<FScalar> translation_f_scalars(const ChainConfig& cfg, double tol = 1e-10);

}  // namespace dualitykit
