#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualitykit/dense_operator.hpp"
#include "dualitykit/hamiltonian.hpp"
#include "dualitykit/mpo.hpp"

namespace dualitykit {

/// ‖lhs - c·rhs‖ (entrywise max) at the least-squares c = ⟨rhs,lhs⟩/⟨rhs,rhs⟩.
/// When rhs vanishes c = 0 and the error is max |lhs|.
struct IdentityFit {
  double max_error = 0.0;
  cplx scale = 0.0;
};

IdentityFit fit_identity(const DenseOperator& lhs, const DenseOperator& rhs);

/// A factor of an operator word; MPOs are contracted on demand.
using Factor = std::variant<MPO, DenseOperator>;

/// Product of the factors, leftmost applied last.
DenseOperator evaluate_word(const std::vector<Factor>& word, std::size_t cap = default_cap());
IdentityFit verify_identity(const std::vector<Factor>& lhs, const std::vector<Factor>& rhs,
                            std::size_t cap = default_cap());

/// Φ(op) = D op D† / κ with κ = ‖D‖² (spectral), so Φ(1) = D D†/κ is the
/// projector onto the symmetric sector.
struct ChannelOperator {
  DenseOperator d;
  double kappa = 1.0;
  DenseOperator projector;

  static ChannelOperator from_dense(DenseOperator d);
  static ChannelOperator from_mpo(const MPO& mpo, std::size_t cap = default_cap());
};

DenseOperator channel_action(const ChannelOperator& channel, const DenseOperator& op);

struct IdentityReport {
  std::string identity;
  int L = 0;
  std::string group;
  double max_error = 0.0;
  cplx fitted_scale = 0.0;
  bool pass = false;
  /// Variants that are reported but do not decide the exit status.
  bool required = true;
  std::string detail;
};

enum class Suite { fusion, selfdual, qca, intertwiner, all };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);

struct SuiteOptions {
  Model model = Model::clock;
  /// Identities among exactly representable tensors.
  double tol_exact = 1e-12;
  /// Identities that pass through an eigensolve, SVD or fitted scale.
  double tol_numeric = 1e-10;
  std::uint64_t seed = 0x5eed;
};

/// Runs the suite; results come back in a fixed order regardless of scheduling.
std::vector<IdentityReport> run_suite(const ChainConfig& cfg, Suite suite, const SuiteOptions& opts = {});

/// Evaluates independent jobs concurrently and concatenates their reports in job order.
std::vector<IdentityReport> run_batch(const std::vector<std::function<std::vector<IdentityReport>()>>& jobs);

bool all_required_pass(const std::vector<IdentityReport>& reports);

/// Convex weights of Φ_D ∘ Φ_D over the grade-2 words η_b T+, measured from
/// the contracted D+², next to the weights predicted by the channel catalog.
struct CompositionWeights {
  std::vector<std::string> names;
  std::vector<double> measured;
  std::vector<double> predicted;
  /// Raw coefficients a_b in D+² = Σ_b a_b η_b T+.
  std::vector<cplx> coefficients;
  double fit_error = 0.0;
};

CompositionWeights measure_composition_weights(const ChainConfig& cfg, std::uint64_t seed = 0x5eed);

/// Exact tensor identities of the spiders and of the Hadamard box.
struct TensorAxiomReport {
  double associativity = 0.0;
  double coassociativity = 0.0;
  double frobenius = 0.0;
  /// max |m m† - |A|·1|.
  double special = 0.0;
  double hadamard_unitarity = 0.0;

  bool pass(double tol = 1e-14) const;
};

TensorAxiomReport check_tensor_axioms(const Bicharacter& chi);

}  // namespace dualitykit
