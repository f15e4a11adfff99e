#include "dualitykit/abelian_group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dualitykit {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("Phase: denominator must be positive");
  num = floor_mod(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

Phase Phase::operator*(const Phase& other) const {
  const std::int64_t l = std::lcm(den_, other.den_);
  return Phase(num_ * (l / den_) + other.num_ * (l / other.den_), l);
}

Phase Phase::conj() const { return Phase(-num_, den_); }

std::complex<double> Phase::to_complex() const {
  // Exact values on the axes avoid 1e-17 noise in the quarter turns.
  if (num_ == 0) return {1.0, 0.0};
  if (2 * num_ == den_) return {-1.0, 0.0};
  if (4 * num_ == den_) return {0.0, 1.0};
  if (4 * num_ == 3 * den_) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return {std::cos(angle), std::sin(angle)};
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  for (int n : factors_) {
    if (n < 2) throw DomainError("FiniteAbelianGroup: every cyclic factor must be >= 2");
    order_ *= n;
    exponent_ = std::lcm(exponent_, n);
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec) {
  std::vector<int> factors;
  std::size_t pos = 0;
  if (spec.empty()) throw DomainError("group spec is empty");
  while (pos < spec.size()) {
    if (spec[pos] != 'Z') throw DomainError("group spec: expected 'Z' in \"" + std::string(spec) + "\"");
    ++pos;
    const std::size_t start = pos;
    long value = 0;
    while (pos < spec.size() && spec[pos] >= '0' && spec[pos] <= '9') {
      value = value * 10 + (spec[pos] - '0');
      if (value > 1'000'000) throw DomainError("group spec: factor too large");
      ++pos;
    }
    if (pos == start) throw DomainError("group spec: missing order after 'Z' in \"" + std::string(spec) + "\"");
    if (value < 1) throw DomainError("group spec: cyclic order must be >= 1");
    if (value > 1) factors.push_back(static_cast<int>(value));
    if (pos < spec.size()) {
      if (spec[pos] != 'x') throw DomainError("group spec: expected 'x' separator in \"" + std::string(spec) + "\"");
      ++pos;
      if (pos == spec.size()) throw DomainError("group spec: trailing 'x'");
    }
  }
  return FiniteAbelianGroup(std::move(factors));
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (int i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

GroupElement FiniteAbelianGroup::identity() const {
  return GroupElement{std::vector<int>(factors_.size(), 0)};
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  GroupElement c{std::vector<int>(factors_.size())};
  for (std::size_t k = 0; k < factors_.size(); ++k) c.coords[k] = (a.coords[k] + b.coords[k]) % factors_[k];
  return c;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  require(a);
  GroupElement c{std::vector<int>(factors_.size())};
  for (std::size_t k = 0; k < factors_.size(); ++k) c.coords[k] = (factors_[k] - a.coords[k]) % factors_[k];
  return c;
}

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, int k) const {
  require(a);
  GroupElement c{std::vector<int>(factors_.size())};
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c.coords[i] = static_cast<int>(floor_mod(static_cast<std::int64_t>(a.coords[i]) * k, factors_[i]));
  return c;
}

GroupElement FiniteAbelianGroup::unit_vector(int axis) const {
  if (axis < 0 || axis >= rank()) throw DomainError("unit_vector: axis out of range");
  GroupElement e = identity();
  e.coords[static_cast<std::size_t>(axis)] = 1;
  return e;
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
  if (a.coords.size() != factors_.size()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (a.coords[k] < 0 || a.coords[k] >= factors_[k]) return false;
  return true;
}

void FiniteAbelianGroup::require(const GroupElement& a) const {
  if (!contains(a)) throw DomainError("element is not a reduced element of " + to_string());
}

int FiniteAbelianGroup::index_of(const GroupElement& a) const {
  require(a);
  int index = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) index = index * factors_[k] + a.coords[k];
  return index;
}

GroupElement FiniteAbelianGroup::element_at(int index) const {
  if (index < 0 || index >= order_) throw DomainError("element_at: index out of range");
  GroupElement a{std::vector<int>(factors_.size())};
  for (std::size_t k = factors_.size(); k-- > 0;) {
    a.coords[k] = index % factors_[k];
    index /= factors_[k];
  }
  return a;
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "Z1";
  std::string s;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) s += "x";
    s += "Z" + std::to_string(factors_[k]);
  }
  return s;
}

std::string FiniteAbelianGroup::element_label(const GroupElement& a) const {
  require(a);
  if (a == identity()) return "1";
  if (factors_.size() == 1) {
    return a.coords[0] == 1 ? std::string("η") : "η^" + std::to_string(a.coords[0]);
  }
  std::string s = "η(";
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a.coords[k]);
  }
  return s + ")";
}

Phase Character::operator()(const FiniteAbelianGroup& group, const GroupElement& x) const {
  group.require(x);
  if (coords.size() != group.factors().size()) throw DomainError("character does not belong to " + group.to_string());
  const std::int64_t n = group.exponent();
  std::int64_t num = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const std::int64_t nk = group.factors()[k];
    num += static_cast<std::int64_t>(coords[k]) * x.coords[k] * (n / nk);
  }
  return Phase(num, n);
}

bool Character::is_trivial() const {
  for (int c : coords)
    if (c != 0) return false;
  return true;
}

std::vector<Character> characters(const FiniteAbelianGroup& group) {
  std::vector<Character> out;
  for (const auto& e : group.elements()) out.push_back(Character{e.coords});
  return out;
}

Character character_product(const FiniteAbelianGroup& group, const Character& a, const Character& b) {
  return Character{group.add(GroupElement{a.coords}, GroupElement{b.coords}).coords};
}

Character character_inverse(const FiniteAbelianGroup& group, const Character& a) {
  return Character{group.negate(GroupElement{a.coords}).coords};
}

Bicharacter::Bicharacter(FiniteAbelianGroup group, std::vector<std::vector<std::int64_t>> matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
  const auto k = static_cast<std::size_t>(group_.rank());
  if (matrix_.size() != k) throw DomainError("bicharacter matrix must be " + std::to_string(k) + "x" + std::to_string(k));
  const std::int64_t n = group_.exponent();
  for (std::size_t i = 0; i < k; ++i) {
    if (matrix_[i].size() != k) throw DomainError("bicharacter matrix must be square");
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t m = matrix_[i][j];
      if (floor_mod(m * group_.factors()[i], n) != 0 || floor_mod(m * group_.factors()[j], n) != 0)
        throw DomainError("bicharacter entry M[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] is not well defined on " + group_.to_string());
    }
  }
  // Bilinearity reduces symmetry to the generators.
  for (int i = 0; i < group_.rank(); ++i)
    for (int j = 0; j < group_.rank(); ++j)
      if ((*this)(group_.unit_vector(i), group_.unit_vector(j)) != (*this)(group_.unit_vector(j), group_.unit_vector(i)))
        throw DomainError("bicharacter is not symmetric");
}

Bicharacter Bicharacter::standard(const FiniteAbelianGroup& group) {
  const auto k = static_cast<std::size_t>(group.rank());
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = group.exponent() / group.factors()[i];
  return Bicharacter(group, std::move(m));
}

Bicharacter Bicharacter::trivial(const FiniteAbelianGroup& group) {
  const auto k = static_cast<std::size_t>(group.rank());
  return Bicharacter(group, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
}

Phase Bicharacter::operator()(const GroupElement& a, const GroupElement& b) const {
  group_.require(a);
  group_.require(b);
  std::int64_t num = 0;
  for (std::size_t i = 0; i < matrix_.size(); ++i)
    for (std::size_t j = 0; j < matrix_.size(); ++j)
      num += matrix_[i][j] * a.coords[i] * b.coords[j];
  return Phase(num, group_.exponent());
}

Character Bicharacter::tilde(const GroupElement& a) const {
  group_.require(a);
  const std::int64_t n = group_.exponent();
  Character phi{std::vector<int>(matrix_.size())};
  for (std::size_t j = 0; j < matrix_.size(); ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < matrix_.size(); ++i) s += matrix_[i][j] * a.coords[i];
    const std::int64_t nj = group_.factors()[j];
    phi.coords[j] = static_cast<int>(floor_mod(s * nj / n, nj));
  }
  return phi;
}

std::optional<GroupElement> Bicharacter::tilde_inverse(const Character& phi) const {
  for (const auto& a : group_.elements())
    if (tilde(a) == phi) return a;
  return std::nullopt;
}

Phase chi_eval(const Bicharacter& chi, const GroupElement& a, const GroupElement& b) { return chi(a, b); }

ChiTilde chi_tilde(const Bicharacter& chi) {
  ChiTilde out;
  out.domain = chi.group().elements();
  for (const auto& a : out.domain) out.image.push_back(chi.tilde(a));
  std::vector<Character> sorted = out.image;
  std::sort(sorted.begin(), sorted.end());
  out.is_isomorphism = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return out;
}

bool is_nondegenerate(const Bicharacter& chi) {
  for (const auto& a : chi.group().elements()) {
    if (a == chi.group().identity()) continue;
    if (chi.tilde(a).is_trivial()) return false;
  }
  return true;
}

Bicharacter parse_bicharacter(const FiniteAbelianGroup& group, std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bicharacter JSON: ") + e.what());
  }
  if (!j.is_array()) throw DomainError("bicharacter JSON must be an array of integer rows");
  std::vector<std::vector<std::int64_t>> m;
  for (const auto& row : j) {
    if (!row.is_array()) throw DomainError("bicharacter JSON rows must be arrays");
    std::vector<std::int64_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw DomainError("bicharacter JSON entries must be integers");
      r.push_back(v.get<std::int64_t>());
    }
    m.push_back(std::move(r));
  }
  return Bicharacter(group, std::move(m));
}

}  // namespace dualitykit
