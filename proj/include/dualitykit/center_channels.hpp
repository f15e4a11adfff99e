#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualitykit/abelian_group.hpp"
#include "dualitykit/fusion_ring.hpp"

namespace dualitykit {

using cplx = std::complex<double>;

/// Simple object (a, φ) of Z(Hilb_A) ≅ Hilb_{A×Â}.
struct CenterLabel {
  GroupElement a;
  Character phi;

  friend auto operator<=>(const CenterLabel&, const CenterLabel&) = default;
};

/// Label arithmetic of the center for a fixed non-degenerate chi. Labels are
/// indexed as index(a) * |A| + index(φ).
class Center {
 public:
  /// Throws PreconditionError if chi is degenerate.
  explicit Center(Bicharacter chi);

  const Bicharacter& chi() const { return chi_; }
  const FiniteAbelianGroup& group() const { return chi_.group(); }
  int size() const { return group().order() * group().order(); }

  CenterLabel label(int index) const;
  int index(const CenterLabel& label) const;
  std::string label_string(int index) const;

  int add(int s, int t) const;
  int negate(int s) const;
  int zero() const { return 0; }
  /// φ(a), the twist of (a, φ).
  Phase twist(int s) const;
  /// Braiding phase of s past t, ψ(a) for s = (a, φ), t = (b, ψ).
  Phase braid(int s, int t) const;
  /// (a, φ) -> (chi~^{-1}(φ), chi~(a)).
  int alpha(int s) const { return alpha_[static_cast<std::size_t>(s)]; }
  int alpha_inverse(int s) const { return alpha_inv_[static_cast<std::size_t>(s)]; }
  int alpha_power(int s, int power) const;

  friend bool operator==(const Center& x, const Center& y) {
    return x.group() == y.group() && x.chi_.matrix() == y.chi_.matrix();
  }

 private:
  Bicharacter chi_;
  std::vector<int> alpha_;
  std::vector<int> alpha_inv_;
};

/// One nonzero structure constant m(e_s ⊗ e_t) = coef · e_u, indices into summands.
struct MultEntry {
  int s = 0;
  int t = 0;
  int u = 0;
  cplx coef;
};

/// Commutative Q-system on a multiplicity-free direct sum of center simples.
struct LagrangianAlgebra {
  std::string name;
  /// Center label index per summand, sorted ascending.
  std::vector<int> summands;
  std::vector<MultEntry> mult;
  /// Unit embedding 1 -> L, one coefficient per summand.
  std::vector<cplx> unit;

  int size() const { return static_cast<int>(summands.size()); }
  /// Position of a center label among the summands, or -1.
  int position(int label) const;
};

/// L1 = C[A] x 1 and L2 = 1 x C[Â], normalized so that m m^† = id.
std::pair<LagrangianAlgebra, LagrangianAlgebra> canonical_lagrangians(const Center& center);

/// Applies alpha^power to every summand and carries the structure maps along.
LagrangianAlgebra alpha_twist(const Center& center, const LagrangianAlgebra& algebra, int power);

struct QSystemReport {
  bool associative = false;
  bool unital = false;
  bool commutative = false;
  bool frobenius = false;
  bool special = false;
  bool lagrangian = false;
  double max_error = 0.0;

  bool pass() const { return associative && unital && commutative && frobenius && special && lagrangian; }
};

QSystemReport check_q_system(const Center& center, const LagrangianAlgebra& algebra, double tol = 1e-12);

/// Hom(source, target) in the center with the convolution product
/// f*g = m_t (f⊗g) m_s^†. Elements are coefficient vectors on basis().
class ConvolutionAlgebra {
 public:
  /// Throws DomainError if the two algebras live in different centers.
  ConvolutionAlgebra(const Center& center, LagrangianAlgebra source, LagrangianAlgebra target);

  const LagrangianAlgebra& source() const { return source_; }
  const LagrangianAlgebra& target() const { return target_; }
  /// Shared center labels; basis vector k is the identity on summand basis()[k].
  const std::vector<int>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  /// Structure constant: (e_i * e_j) has coefficient product(i, j, k) on e_k.
  cplx product(int i, int j, int k) const {
    const auto d = static_cast<std::size_t>(dim());
    return product_[(static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k)];
  }
  /// e_i^# = e_{involution(i)}; the map is antilinear.
  int involution(int i) const { return involution_[static_cast<std::size_t>(i)]; }

  std::vector<cplx> convolve(const std::vector<cplx>& f, const std::vector<cplx>& g) const;
  std::vector<cplx> sharp(const std::vector<cplx>& f) const;
  /// ι_t ι_s^†.
  const std::vector<cplx>& unit() const { return unit_; }
  /// f ∘ ι_s expressed as a multiple of ι_t.
  cplx apply_to_unit(const std::vector<cplx>& f) const;

  /// Largest |f*g - g*f| over basis pairs.
  double commutator_defect() const;

 private:
  LagrangianAlgebra source_;
  LagrangianAlgebra target_;
  std::vector<int> basis_;
  std::vector<cplx> product_;
  std::vector<int> involution_;
  std::vector<cplx> unit_;
};

ConvolutionAlgebra hom_space(const Center& center, const LagrangianAlgebra& source,
                             const LagrangianAlgebra& target);

/// Extreme duality channel: a minimal projection p with p ∘ ι = λ ι, channel
/// Φ = p / λ and Φ*Φ = Φ / d^2.
struct DualityChannel {
  int grade = 0;
  /// Position within its grade.
  int index = 0;
  std::string name;
  std::vector<cplx> idempotent;
  double lambda = 0.0;
  double qdim = 0.0;

  std::vector<cplx> channel() const;
};

/// Minimal projections of a commutative convolution algebra, found by
/// diagonalizing a generic self-adjoint element drawn from `seed`.
/// Throws ConsistencyError on a non-commutative algebra.
std::vector<DualityChannel> minimal_idempotents(const ConvolutionAlgebra& algebra, int grade,
                                                std::uint64_t seed = 0x5eed);

struct CompositionTerm {
  int index = 0;
  double weight = 0.0;
};

using CompositionResult = std::variant<std::vector<CompositionTerm>, OutOfWindow>;

/// Extreme channels over the grades [min_grade, max_grade] for H(α^g(L1), L1).
class ChannelCatalog {
 public:
  ChannelCatalog(const Bicharacter& chi, int min_grade, int max_grade, std::uint64_t seed = 0x5eed);

  const Center& center() const { return center_; }
  int min_grade() const { return min_grade_; }
  int max_grade() const { return max_grade_; }
  bool has_grade(int g) const { return g >= min_grade_ && g <= max_grade_; }

  const ConvolutionAlgebra& algebra(int grade) const;
  const std::vector<DualityChannel>& channels(int grade) const;
  /// Index of the unit channel in grade 0.
  int unit_index() const { return unit_index_; }

  /// Φ_x ∘ Φ_y as a convex combination of grade gx+gy channels.
  CompositionResult compose(int gx, int x, int gy, int y) const;
  /// Composite Φ_x ∘ Φ_y as a vector in the grade gx+gy convolution algebra.
  std::vector<cplx> compose_raw(int gx, int x, int gy, int y) const;

 private:
  Center center_;
  int min_grade_;
  int max_grade_;
  std::vector<ConvolutionAlgebra> algebras_;
  std::vector<std::vector<DualityChannel>> channels_;
  int unit_index_ = 0;
};

/// Φ_x ∘ Φ_y for two channels taken from `catalog`.
CompositionResult compose_channels(const ChannelCatalog& catalog, const DualityChannel& x,
                                   const DualityChannel& y);

}  // namespace dualitykit
