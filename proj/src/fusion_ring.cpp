#include "dualitykit/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace dualitykit {

FusionRing::FusionRing(std::string name, std::vector<std::string> labels, int unit,
                       std::vector<int> dual, std::vector<int> tensor, std::vector<int> grades,
                       std::optional<int> window)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      unit_(unit),
      dual_(std::move(dual)),
      tensor_(std::move(tensor)),
      grades_(std::move(grades)),
      window_(window) {
  const auto r = labels_.size();
  if (r == 0) throw DomainError("FusionRing: no labels");
  if (unit_ < 0 || static_cast<std::size_t>(unit_) >= r) throw DomainError("FusionRing: unit index out of range");
  if (dual_.size() != r) throw DomainError("FusionRing: dual table has wrong size");
  for (int d : dual_)
    if (d < 0 || static_cast<std::size_t>(d) >= r) throw DomainError("FusionRing: dual index out of range");
  if (tensor_.size() != r * r * r) throw DomainError("FusionRing: tensor must have rank^3 entries");
  for (int v : tensor_)
    if (v < 0) throw DomainError("FusionRing: negative fusion coefficient");
  if (!grades_.empty() && grades_.size() != r) throw DomainError("FusionRing: grade table has wrong size");
  if (window_ && *window_ < 0) throw DomainError("FusionRing: negative window");
}

int FusionRing::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw DomainError("unknown label \"" + std::string(label) + "\" in ring " + name_);
}

FusionRing FusionRing::with_dims(std::vector<double> dims) const {
  if (dims.size() != labels_.size()) throw DomainError("with_dims: wrong length");
  FusionRing copy = *this;
  copy.dims_ = std::move(dims);
  return copy;
}

FusionRing FusionRing::with_coefficient(int x, int y, int z, int value) const {
  if (value < 0) throw DomainError("with_coefficient: negative value");
  for (int i : {x, y, z})
    if (i < 0 || i >= rank()) throw DomainError("with_coefficient: index out of range");
  FusionRing copy = *this;
  const auto r = static_cast<std::size_t>(rank());
  copy.tensor_[(static_cast<std::size_t>(x) * r + static_cast<std::size_t>(y)) * r + static_cast<std::size_t>(z)] = value;
  copy.dims_.clear();
  return copy;
}

FusionProduct fuse(const FusionRing& ring, int x, int y) {
  if (x < 0 || x >= ring.rank() || y < 0 || y >= ring.rank()) throw DomainError("fuse: index out of range");
  if (ring.graded()) {
    const int g = ring.grade(x) + ring.grade(y);
    if (!ring.in_window(g)) return OutOfWindow{g};
  }
  FusionTerms terms;
  for (int z = 0; z < ring.rank(); ++z)
    if (const int n = ring.N(x, y, z); n != 0) terms.emplace_back(z, n);
  return terms;
}

FusionRing group_ring(const FiniteAbelianGroup& group) {
  const auto elems = group.elements();
  const int r = group.order();
  std::vector<std::string> labels;
  std::vector<int> dual(static_cast<std::size_t>(r));
  std::vector<int> tensor(static_cast<std::size_t>(r) * r * r, 0);
  for (int x = 0; x < r; ++x) {
    labels.push_back(group.element_label(elems[static_cast<std::size_t>(x)]));
    dual[static_cast<std::size_t>(x)] = group.index_of(group.negate(elems[static_cast<std::size_t>(x)]));
    for (int y = 0; y < r; ++y) {
      const int z = group.index_of(group.add(elems[static_cast<std::size_t>(x)], elems[static_cast<std::size_t>(y)]));
      tensor[(static_cast<std::size_t>(x) * r + y) * r + z] = 1;
    }
  }
  FusionRing ring("group(" + group.to_string() + ")", std::move(labels), 0, std::move(dual), std::move(tensor));
  return ring.with_dims(std::vector<double>(static_cast<std::size_t>(r), 1.0));
}

FusionRing tambara_yamagami(const FiniteAbelianGroup& group) {
  const auto elems = group.elements();
  const int n = group.order();
  const int r = n + 1;
  const int m = n;
  std::vector<std::string> labels;
  std::vector<int> dual(static_cast<std::size_t>(r));
  std::vector<int> tensor(static_cast<std::size_t>(r) * r * r, 0);
  auto at = [&](int x, int y, int z) -> int& { return tensor[(static_cast<std::size_t>(x) * r + y) * r + z]; };
  for (int x = 0; x < n; ++x) {
    labels.push_back(group.element_label(elems[static_cast<std::size_t>(x)]));
    dual[static_cast<std::size_t>(x)] = group.index_of(group.negate(elems[static_cast<std::size_t>(x)]));
    for (int y = 0; y < n; ++y)
      at(x, y, group.index_of(group.add(elems[static_cast<std::size_t>(x)], elems[static_cast<std::size_t>(y)]))) = 1;
    at(x, m, m) = 1;
    at(m, x, m) = 1;
    at(m, m, x) = 1;
  }
  labels.push_back("m");
  dual[static_cast<std::size_t>(m)] = m;
  FusionRing ring("TY(" + group.to_string() + ")", std::move(labels), 0, std::move(dual), std::move(tensor));
  return ring.with_dims(fp_dimensions(ring));
}

FusionRing fibonacci_ring() {
  // index 0 = 1, index 1 = τ
  std::vector<int> tensor(8, 0);
  auto at = [&](int x, int y, int z) -> int& { return tensor[static_cast<std::size_t>((x * 2 + y) * 2 + z)]; };
  at(0, 0, 0) = 1;
  at(0, 1, 1) = 1;
  at(1, 0, 1) = 1;
  at(1, 1, 0) = 1;
  at(1, 1, 1) = 1;
  FusionRing ring("fibonacci", {"1", "τ"}, 0, {0, 1}, std::move(tensor));
  return ring.with_dims(fp_dimensions(ring));
}

namespace {

std::vector<double> perron_vector(const std::vector<int>& subset, const FusionRing& ring) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(k, k);
  // total(z, y) = sum_x N^z_{xy}; d is a right eigenvector of the transpose action.
  for (Eigen::Index zi = 0; zi < k; ++zi)
    for (Eigen::Index yi = 0; yi < k; ++yi)
      for (int x : subset)
        total(zi, yi) += ring.N(x, subset[static_cast<std::size_t>(yi)], subset[static_cast<std::size_t>(zi)]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(total.transpose());
  if (es.info() != Eigen::Success) throw ConsistencyError("fp_dimensions: eigen-solve failed");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < k; ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  Eigen::VectorXcd v = es.eigenvectors().col(best);
  // Phase-fix so the unit entry is real positive.
  std::size_t unit_pos = 0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    if (subset[i] == ring.unit()) unit_pos = i;
  const std::complex<double> u = v[static_cast<Eigen::Index>(unit_pos)];
  if (std::abs(u) < 1e-14) throw ConsistencyError("fp_dimensions: Perron vector vanishes on the unit");
  v /= u;
  std::vector<double> d(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const auto c = v[static_cast<Eigen::Index>(i)];
    if (c.real() <= 0.0 || std::abs(c.imag()) > 1e-9) throw ConsistencyError("fp_dimensions: Perron vector is not positive");
    d[i] = c.real();
  }
  return d;
}

}  // namespace

std::vector<double> fp_dimensions(const FusionRing& ring) {
  const auto report = verify_ring_axioms(ring);
  if (!report.pass) throw PreconditionError("fp_dimensions: ring fails " + report.failed_axiom + ": " + report.message);
  if (!ring.graded()) return perron_vector([&] {
    std::vector<int> all(static_cast<std::size_t>(ring.rank()));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }(), ring);

  std::vector<int> zero;
  for (int x = 0; x < ring.rank(); ++x)
    if (ring.grade(x) == 0) zero.push_back(x);
  if (zero.empty()) throw PreconditionError("fp_dimensions: graded ring has no grade-0 component");
  const auto d0 = perron_vector(zero, ring);
  std::vector<double> d(static_cast<std::size_t>(ring.rank()), 0.0);
  for (std::size_t i = 0; i < zero.size(); ++i) d[static_cast<std::size_t>(zero[i])] = d0[i];
  for (int x = 0; x < ring.rank(); ++x) {
    if (ring.grade(x) == 0) continue;
    double s = 0.0;
    for (int z : zero) s += ring.N(x, ring.dual(x), z) * d[static_cast<std::size_t>(z)];
    if (s <= 0.0) throw ConsistencyError("fp_dimensions: X ⊗ Xbar has no grade-0 content for " + ring.label(x));
    d[static_cast<std::size_t>(x)] = std::sqrt(s);
  }
  return d;
}

bool is_weakly_integral(const FusionRing& ring, double tol) {
  const auto d = ring.dims().empty() ? fp_dimensions(ring) : ring.dims();
  for (double x : d) {
    const double sq = x * x;
    const double nearest = std::round(sq);
    if (nearest < 1.0 || std::abs(sq - nearest) > tol) return false;
  }
  return true;
}

RingAxiomReport verify_ring_axioms(const FusionRing& ring) {
  RingAxiomReport rep;
  const int r = ring.rank();
  auto fail = [&](std::string axiom, std::vector<int> where, std::string msg) {
    rep.pass = false;
    rep.failed_axiom = std::move(axiom);
    rep.counterexample = std::move(where);
    rep.message = std::move(msg);
    return rep;
  };
  auto lbl = [&](int x) { return ring.label(x); };
  const int u = ring.unit();

  for (int y = 0; y < r; ++y)
    for (int z = 0; z < r; ++z) {
      const int want = y == z ? 1 : 0;
      if (ring.N(u, y, z) != want) return fail("unit", {u, y, z}, "N^" + lbl(z) + "_{1," + lbl(y) + "} != δ");
      if (ring.N(y, u, z) != want) return fail("unit", {y, u, z}, "N^" + lbl(z) + "_{" + lbl(y) + ",1} != δ");
    }

  auto ok_grade = [&](int g) { return ring.in_window(g); };

  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int z = 0; z < r; ++z) {
        const int gxy = ring.grade(x) + ring.grade(y);
        const int gyz = ring.grade(y) + ring.grade(z);
        const int gxyz = gxy + ring.grade(z);
        if (!ok_grade(gxy) || !ok_grade(gyz) || !ok_grade(gxyz)) continue;
        for (int w = 0; w < r; ++w) {
          long lhs = 0;
          long rhs = 0;
          for (int e = 0; e < r; ++e) {
            lhs += static_cast<long>(ring.N(x, y, e)) * ring.N(e, z, w);
            rhs += static_cast<long>(ring.N(y, z, e)) * ring.N(x, e, w);
          }
          if (lhs != rhs)
            return fail("associativity", {x, y, z, w},
                        "(" + lbl(x) + "⊗" + lbl(y) + ")⊗" + lbl(z) + " and " + lbl(x) + "⊗(" + lbl(y) + "⊗" +
                            lbl(z) + ") differ at " + lbl(w) + ": " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs));
        }
      }

  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) {
      if (!ok_grade(ring.grade(x) + ring.grade(y))) continue;
      for (int z = 0; z < r; ++z)
        if (ring.N(x, y, z) != ring.N(ring.dual(x), z, y))
          return fail("frobenius", {x, y, z},
                      "N^" + lbl(z) + "_{" + lbl(x) + "," + lbl(y) + "} != N^" + lbl(y) + "_{" + lbl(ring.dual(x)) +
                          "," + lbl(z) + "}");
    }

  for (int x = 0; x < r; ++x) {
    if (ring.dual(ring.dual(x)) != x) return fail("dual", {x}, "dual is not an involution at " + lbl(x));
    if (ring.graded() && !ok_grade(ring.grade(x) + ring.grade(ring.dual(x)))) continue;
    if (ring.N(x, ring.dual(x), u) != 1) return fail("dual", {x}, lbl(x) + "⊗" + lbl(ring.dual(x)) + " must contain 1 once");
    for (int y = 0; y < r; ++y)
      if (y != ring.dual(x) && ring.N(x, y, u) != 0) return fail("dual", {x, y}, lbl(x) + "⊗" + lbl(y) + " contains 1");
  }

  if (ring.graded()) {
    if (ring.grade(u) != 0) return fail("grading", {u}, "unit is not in grade 0");
    for (int x = 0; x < r; ++x) {
      if (!ring.in_window(ring.grade(x))) return fail("grading", {x}, lbl(x) + " lies outside the window");
      if (ring.grade(ring.dual(x)) != -ring.grade(x)) return fail("grading", {x}, "dual of " + lbl(x) + " has wrong grade");
      for (int y = 0; y < r; ++y)
        for (int z = 0; z < r; ++z)
          if (ring.N(x, y, z) != 0 && ring.grade(z) != ring.grade(x) + ring.grade(y))
            return fail("grading", {x, y, z}, lbl(x) + "⊗" + lbl(y) + " → " + lbl(z) + " breaks grading");
    }
  }
  return rep;
}

}  // namespace dualitykit
