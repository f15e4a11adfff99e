#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualitykit/errors.hpp"

namespace dualitykit {

/// Exact root of unity exp(2*pi*i * num/den), kept reduced with 0 <= num < den.
class Phase {
 public:
  Phase() = default;
  Phase(std::int64_t num, std::int64_t den);

  static Phase one() { return Phase{}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_one() const { return num_ == 0; }

  Phase operator*(const Phase& other) const;
  Phase conj() const;
  std::complex<double> to_complex() const;

  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of a product of cyclic groups, coordinates reduced mod each factor.
struct GroupElement {
  std::vector<int> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z_{n_1} x ... x Z_{n_k}. The empty factor list is the trivial group Z1.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> factors);

  /// Parses `Z<n>(xZ<m>)*`, e.g. "Z2", "Z2xZ2", "Z3". "Z1" yields the trivial group.
  static FiniteAbelianGroup parse(std::string_view spec);

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int order() const { return order_; }
  /// lcm of the factors (1 for the trivial group).
  int exponent() const { return exponent_; }

  /// All elements in lexicographic order; the first one is the identity.
  std::vector<GroupElement> elements() const;

  GroupElement identity() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, int k) const;
  GroupElement unit_vector(int axis) const;

  bool contains(const GroupElement& a) const;
  /// Throws DomainError if `a` is not a reduced element of this group.
  void require(const GroupElement& a) const;

  /// Mixed-radix index, first coordinate most significant. Matches elements().
  int index_of(const GroupElement& a) const;
  GroupElement element_at(int index) const;

  /// "Z2xZ2" style; "Z1" for the trivial group.
  std::string to_string() const;
  /// Short display name: "1" for the identity, "η" / "η^k" for cyclic groups,
  /// "η(1,0)" for products.
  std::string element_label(const GroupElement& a) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<int> factors_;
  int order_ = 1;
  int exponent_ = 1;
};

/// Character x -> exp(2*pi*i * sum_k coords_k x_k / n_k). The coordinates live
/// in the dual group, which has the same cyclic factors.
struct Character {
  std::vector<int> coords;

  Phase operator()(const FiniteAbelianGroup& group, const GroupElement& x) const;
  bool is_trivial() const;

  friend auto operator<=>(const Character&, const Character&) = default;
};

/// Every character of `group`, enumerated in the same lexicographic order as
/// the group elements (the dual group has the same factors).
std::vector<Character> characters(const FiniteAbelianGroup& group);

Character character_product(const FiniteAbelianGroup& group, const Character& a,
                            const Character& b);
Character character_inverse(const FiniteAbelianGroup& group, const Character& a);

/// chi(a,b) = exp(2*pi*i * sum_ij M_ij a_i b_j / N) with N the group exponent.
class Bicharacter {
 public:
  /// Validates that M is well defined on the group (M_ij n_i = M_ij n_j = 0 mod N)
  /// and that it is symmetric. Throws DomainError otherwise.
  Bicharacter(FiniteAbelianGroup group, std::vector<std::vector<std::int64_t>> matrix);

  /// The diagonal pairing exp(2*pi*i * sum_k a_k b_k / n_k).
  static Bicharacter standard(const FiniteAbelianGroup& group);
  /// The all-zero pairing chi = 1, degenerate for any nontrivial group.
  static Bicharacter trivial(const FiniteAbelianGroup& group);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }

  Phase operator()(const GroupElement& a, const GroupElement& b) const;

  /// chi~(a) = chi(a, .) as a character.
  Character tilde(const GroupElement& a) const;
  /// Inverse of chi~; std::nullopt when phi is not in the image.
  std::optional<GroupElement> tilde_inverse(const Character& phi) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<std::vector<std::int64_t>> matrix_;
};

/// chi~ evaluated on every element, together with the bijectivity flag.
struct ChiTilde {
  std::vector<GroupElement> domain;
  std::vector<Character> image;
  bool is_isomorphism = false;
};

Phase chi_eval(const Bicharacter& chi, const GroupElement& a, const GroupElement& b);
ChiTilde chi_tilde(const Bicharacter& chi);
bool is_nondegenerate(const Bicharacter& chi);

/// Parses a JSON integer matrix such as "[[1,0],[0,1]]".
Bicharacter parse_bicharacter(const FiniteAbelianGroup& group, std::string_view json);

}  // namespace dualitykit
