#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualitykit/abelian_group.hpp"

namespace dualitykit {

/// A product whose grade falls outside the truncation window of a graded ring.
struct OutOfWindow {
  int grade = 0;
};

/// (label index, multiplicity) pairs with nonzero multiplicity, in label order.
using FusionTerms = std::vector<std::pair<int, int>>;
using FusionProduct = std::variant<FusionTerms, OutOfWindow>;

/// Fusion ring on an explicit basis. N(x, y, z) = N^z_{xy}.
///
/// A graded ring carries an integer grade per label and optionally a window
/// [-w, w]; the stored tensor is complete for every product whose grade lies
/// in the window.
class FusionRing {
 public:
  FusionRing() = default;
  FusionRing(std::string name, std::vector<std::string> labels, int unit, std::vector<int> dual,
             std::vector<int> tensor, std::vector<int> grades = {},
             std::optional<int> window = std::nullopt);

  const std::string& name() const { return name_; }
  int rank() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int x) const { return labels_.at(static_cast<std::size_t>(x)); }
  /// Throws DomainError for an unknown label.
  int index_of(std::string_view label) const;

  int unit() const { return unit_; }
  int dual(int x) const { return dual_.at(static_cast<std::size_t>(x)); }
  const std::vector<int>& duals() const { return dual_; }

  int N(int x, int y, int z) const {
    const auto r = static_cast<std::size_t>(rank());
    return tensor_[(static_cast<std::size_t>(x) * r + static_cast<std::size_t>(y)) * r +
                   static_cast<std::size_t>(z)];
  }
  const std::vector<int>& tensor() const { return tensor_; }

  bool graded() const { return !grades_.empty(); }
  int grade(int x) const { return graded() ? grades_.at(static_cast<std::size_t>(x)) : 0; }
  const std::vector<int>& grades() const { return grades_; }
  std::optional<int> window() const { return window_; }
  bool in_window(int g) const { return !window_ || (g >= -*window_ && g <= *window_); }

  /// Cached FP dimensions; empty until set by a constructor function or with_dims.
  const std::vector<double>& dims() const { return dims_; }
  FusionRing with_dims(std::vector<double> dims) const;
  /// Copy with a single coefficient overwritten and cached dims dropped.
  FusionRing with_coefficient(int x, int y, int z, int value) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  int unit_ = 0;
  std::vector<int> dual_;
  std::vector<int> tensor_;
  std::vector<int> grades_;
  std::optional<int> window_;
  std::vector<double> dims_;
};

FusionProduct fuse(const FusionRing& ring, int x, int y);

FusionRing group_ring(const FiniteAbelianGroup& group);
/// Labels are the group elements followed by "m".
FusionRing tambara_yamagami(const FiniteAbelianGroup& group);
/// {1, τ} with τ⊗τ = 1 ⊕ τ.
FusionRing fibonacci_ring();

/// Z-graded extension of Hilb_A by the duality twist of chi, truncated to
/// grades [-window, window]. Simples of grade g are the extreme channels over
/// the g-th power of the twist; fusion coefficients come from channel
/// composition. Throws PreconditionError for a degenerate chi.
FusionRing z_graded_extension(const FiniteAbelianGroup& group, const Bicharacter& chi, int window,
                              std::uint64_t seed = 0x5eed);

/// Perron-Frobenius dimensions with d_unit = 1. Graded rings are solved on the
/// grade-0 subring and extended by d_X^2 = sum_Z N^Z_{X Xbar} d_Z.
/// Throws PreconditionError for a ring that fails verify_ring_axioms.
std::vector<double> fp_dimensions(const FusionRing& ring);

/// True iff every d_X^2 is within tol of a positive integer.
bool is_weakly_integral(const FusionRing& ring, double tol = 1e-9);

struct RingAxiomReport {
  bool pass = true;
  /// "unit", "associativity", "frobenius", "dual" or "grading"; empty on pass.
  std::string failed_axiom;
  /// Label indices of the first counterexample.
  std::vector<int> counterexample;
  std::string message;
};

/// Checks unit, associativity, Frobenius reciprocity N^z_{xy} = N^y_{xbar z},
/// the dual involution and grading additivity. For a windowed ring only
/// triples whose intermediate grades stay in the window are checked.
RingAxiomReport verify_ring_axioms(const FusionRing& ring);

}  // namespace dualitykit
