#pragma once

#include <string>
#include <vector>

#include "dualitykit/dense_operator.hpp"
#include "dualitykit/mpo.hpp"

namespace dualitykit {

enum class Model { clock, cluster, custom };

Model parse_model(const std::string& name);
std::string model_name(Model m);

struct HamiltonianSpec {
  Model model = Model::clock;
  /// clock: weight of the Σ P^{ZZ} bond terms. cluster: overall coupling.
  double j = 1.0;
  /// clock: weight of the Σ P^X site terms. Self-dual at j == h.
  double h = 1.0;
  /// custom: summed as given.
  std::vector<DenseOperator> terms;
};

/// clock:   H = -j Σ_i P^{ZZ}_{i,i+1} - h Σ_i P^X_i, with P^X_i = (1/|A|) Σ_b X^{(b)}_i and
///          P^{ZZ} the projector onto a_i = a_{i+1}; for Z2 these are ½(1+Z Z) and ½(1+X).
/// cluster: A = Z2xZ2 read as a qubit pair per cell (coordinate c of cell k is qubit 2k+c),
///          H = -j Σ_k (Z_{2k-1} X_{2k} Z_{2k+1} + Z_{2k} X_{2k+1} Z_{2k+2}).
/// Throws PreconditionError for cluster on any other group and
/// ConsistencyError if the assembled matrix is not Hermitian.
DenseOperator build_hamiltonian(const ChainConfig& cfg, const HamiltonianSpec& spec);

/// Individual cluster stabilizers, in the order they enter the sum.
std::vector<DenseOperator> cluster_terms(const ChainConfig& cfg);

}  // namespace dualitykit
