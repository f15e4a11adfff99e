#include "dualitykit/center_channels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <Eigen/Dense>

namespace dualitykit {

namespace {

constexpr double kClusterTol = 1e-9;
constexpr double kVerifyTol = 1e-9;
constexpr int kMaxSeedRetries = 8;

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<cplx> axpby(cplx a, const std::vector<cplx>& x, cplx b, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

// Dense view of a Q-system: coefficient and product summand for each pair.
struct MultTable {
  int n = 0;
  std::vector<cplx> coef;
  std::vector<int> prod;

  explicit MultTable(const LagrangianAlgebra& alg) : n(alg.size()) {
    coef.assign(static_cast<std::size_t>(n * n), 0.0);
    prod.assign(static_cast<std::size_t>(n * n), -1);
    for (const auto& e : alg.mult) {
      const auto k = static_cast<std::size_t>(e.s * n + e.t);
      if (prod[k] != -1) throw ConsistencyError("Q-system " + alg.name + ": duplicate structure constant");
      prod[k] = e.u;
      coef[k] = e.coef;
    }
  }
  cplx c(int s, int t) const { return coef[static_cast<std::size_t>(s * n + t)]; }
  int p(int s, int t) const { return prod[static_cast<std::size_t>(s * n + t)]; }
};

}  // namespace

Center::Center(Bicharacter chi) : chi_(std::move(chi)) {
  if (!is_nondegenerate(chi_)) throw PreconditionError("bicharacter on " + group().to_string() + " is degenerate");
  const int total = size();
  alpha_.resize(static_cast<std::size_t>(total));
  alpha_inv_.resize(static_cast<std::size_t>(total));
  for (int s = 0; s < total; ++s) {
    const auto [a, phi] = label(s);
    const auto pre = chi_.tilde_inverse(phi);
    const int image = index(CenterLabel{*pre, chi_.tilde(a)});
    alpha_[static_cast<std::size_t>(s)] = image;
    alpha_inv_[static_cast<std::size_t>(image)] = s;
  }
}

CenterLabel Center::label(int index) const {
  if (index < 0 || index >= size()) throw DomainError("center label index out of range");
  const int n = group().order();
  return CenterLabel{group().element_at(index / n), Character{group().element_at(index % n).coords}};
}

int Center::index(const CenterLabel& label) const {
  return group().index_of(label.a) * group().order() + group().index_of(GroupElement{label.phi.coords});
}

std::string Center::label_string(int index) const {
  const auto l = label(index);
  std::string s = "(" + group().element_label(l.a) + ",";
  s += l.phi.is_trivial() ? std::string("triv") : "φ" + group().element_label(GroupElement{l.phi.coords});
  return s + ")";
}

int Center::add(int s, int t) const {
  const auto x = label(s);
  const auto y = label(t);
  return index(CenterLabel{group().add(x.a, y.a), character_product(group(), x.phi, y.phi)});
}

int Center::negate(int s) const {
  const auto x = label(s);
  return index(CenterLabel{group().negate(x.a), character_inverse(group(), x.phi)});
}

Phase Center::twist(int s) const {
  const auto x = label(s);
  return x.phi(group(), x.a);
}

Phase Center::braid(int s, int t) const {
  const auto x = label(s);
  const auto y = label(t);
  return y.phi(group(), x.a);
}

int Center::alpha_power(int s, int power) const {
  for (; power > 0; --power) s = alpha(s);
  for (; power < 0; ++power) s = alpha_inverse(s);
  return s;
}

int LagrangianAlgebra::position(int label) const {
  const auto it = std::lower_bound(summands.begin(), summands.end(), label);
  if (it == summands.end() || *it != label) return -1;
  return static_cast<int>(it - summands.begin());
}

namespace {

// Subgroup algebra with m(e_s ⊗ e_t) = e_{s+t} / sqrt(n) and ι = sqrt(n) e_0.
LagrangianAlgebra subgroup_algebra(const Center& center, std::string name, std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  LagrangianAlgebra alg;
  alg.name = std::move(name);
  alg.summands = std::move(labels);
  const int n = alg.size();
  const double root = std::sqrt(static_cast<double>(n));
  // Every simple of an abelian center has dimension 1, so the sqrt(d) factors
  // of the general structure maps are all 1.0 here.
  const double sqrt_dims = 1.0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int u = alg.position(center.add(alg.summands[static_cast<std::size_t>(s)], alg.summands[static_cast<std::size_t>(t)]));
      if (u < 0) throw ConsistencyError(alg.name + ": summands are not closed under fusion");
      alg.mult.push_back(MultEntry{s, t, u, sqrt_dims / root});
    }
  alg.unit.assign(static_cast<std::size_t>(n), 0.0);
  alg.unit[static_cast<std::size_t>(alg.position(center.zero()))] = root * sqrt_dims;
  return alg;
}

}  // namespace

std::pair<LagrangianAlgebra, LagrangianAlgebra> canonical_lagrangians(const Center& center) {
  const auto& g = center.group();
  std::vector<int> l1;
  std::vector<int> l2;
  const Character triv{g.identity().coords};
  for (const auto& a : g.elements()) {
    l1.push_back(center.index(CenterLabel{a, triv}));
    l2.push_back(center.index(CenterLabel{g.identity(), Character{a.coords}}));
  }
  return {subgroup_algebra(center, "L1", std::move(l1)), subgroup_algebra(center, "L2", std::move(l2))};
}

LagrangianAlgebra alpha_twist(const Center& center, const LagrangianAlgebra& algebra, int power) {
  if (power == 0) return algebra;
  std::vector<std::pair<int, int>> moved;  // (new label, old position)
  for (int s = 0; s < algebra.size(); ++s)
    moved.emplace_back(center.alpha_power(algebra.summands[static_cast<std::size_t>(s)], power), s);
  std::sort(moved.begin(), moved.end());
  std::vector<int> new_pos(static_cast<std::size_t>(algebra.size()));
  LagrangianAlgebra out;
  out.name = "alpha^" + std::to_string(power) + "(" + algebra.name + ")";
  for (std::size_t k = 0; k < moved.size(); ++k) {
    out.summands.push_back(moved[k].first);
    new_pos[static_cast<std::size_t>(moved[k].second)] = static_cast<int>(k);
  }
  out.unit.assign(algebra.unit.size(), 0.0);
  for (std::size_t s = 0; s < algebra.unit.size(); ++s) out.unit[static_cast<std::size_t>(new_pos[s])] = algebra.unit[s];
  for (const auto& e : algebra.mult)
    out.mult.push_back(MultEntry{new_pos[static_cast<std::size_t>(e.s)], new_pos[static_cast<std::size_t>(e.t)],
                                 new_pos[static_cast<std::size_t>(e.u)], e.coef});
  return out;
}

QSystemReport check_q_system(const Center& center, const LagrangianAlgebra& algebra, double tol) {
  QSystemReport rep;
  const MultTable m(algebra);
  const int n = m.n;
  double err = 0.0;
  auto track = [&](double e) {
    err = std::max(err, e);
    return e <= tol;
  };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (m.p(s, t) < 0) {
        rep.max_error = 1.0;
        return rep;
      }

  rep.associative = true;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int v = 0; v < n; ++v) {
        const int left = m.p(m.p(s, t), v);
        const int right = m.p(s, m.p(t, v));
        const cplx cl = m.c(s, t) * m.c(m.p(s, t), v);
        const cplx cr = m.c(t, v) * m.c(s, m.p(t, v));
        if (left != right || !track(std::abs(cl - cr))) rep.associative = false;
      }

  rep.unital = true;
  for (int t = 0; t < n; ++t) {
    std::vector<cplx> left(static_cast<std::size_t>(n), 0.0);
    std::vector<cplx> right(static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
      left[static_cast<std::size_t>(m.p(x, t))] += algebra.unit[static_cast<std::size_t>(x)] * m.c(x, t);
      right[static_cast<std::size_t>(m.p(t, x))] += algebra.unit[static_cast<std::size_t>(x)] * m.c(t, x);
    }
    left[static_cast<std::size_t>(t)] -= 1.0;
    right[static_cast<std::size_t>(t)] -= 1.0;
    if (!track(max_abs(left)) || !track(max_abs(right))) rep.unital = false;
  }

  rep.commutative = true;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const cplx b = center.braid(algebra.summands[static_cast<std::size_t>(s)], algebra.summands[static_cast<std::size_t>(t)]).to_complex();
      if (m.p(s, t) != m.p(t, s) || !track(std::abs(b * m.c(t, s) - m.c(s, t)))) rep.commutative = false;
    }

  // (m ⊗ 1)(1 ⊗ m†) = m† m = (1 ⊗ m)(m† ⊗ 1), compared entrywise on e_s ⊗ e_t -> e_p ⊗ e_q.
  rep.frobenius = true;
  const auto nn = static_cast<std::size_t>(n);
  std::vector<cplx> lhs(nn * nn * nn * nn);
  std::vector<cplx> mid(nn * nn * nn * nn);
  std::vector<cplx> rhs(nn * nn * nn * nn);
  auto at = [&](std::vector<cplx>& v, int s, int t, int p, int q) -> cplx& {
    return v[((static_cast<std::size_t>(s) * nn + static_cast<std::size_t>(t)) * nn + static_cast<std::size_t>(p)) * nn +
             static_cast<std::size_t>(q)];
  };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (m.p(x, y) == t) at(lhs, s, t, m.p(s, x), y) += m.c(s, x) * std::conj(m.c(x, y));
          if (m.p(x, y) == s) at(rhs, s, t, x, m.p(y, t)) += m.c(y, t) * std::conj(m.c(x, y));
          if (m.p(x, y) == m.p(s, t)) at(mid, s, t, x, y) += m.c(s, t) * std::conj(m.c(x, y));
        }
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!track(std::abs(lhs[i] - mid[i])) || !track(std::abs(rhs[i] - mid[i]))) rep.frobenius = false;

  rep.special = true;
  std::vector<double> mm(nn, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mm[static_cast<std::size_t>(m.p(x, y))] += std::norm(m.c(x, y));
  for (double v : mm)
    if (!track(std::abs(v - 1.0))) rep.special = false;
  double unit_norm = 0.0;
  for (const auto& u : algebra.unit) unit_norm += std::norm(u);
  if (!track(std::abs(unit_norm - n))) rep.special = false;

  rep.lagrangian = n == center.group().order();
  rep.max_error = err;
  return rep;
}

ConvolutionAlgebra::ConvolutionAlgebra(const Center& center, LagrangianAlgebra source, LagrangianAlgebra target)
    : source_(std::move(source)), target_(std::move(target)) {
  for (int l : source_.summands)
    if (l < 0 || l >= center.size()) throw DomainError("hom_space: source is not an algebra in this center");
  for (int l : target_.summands)
    if (l < 0 || l >= center.size()) throw DomainError("hom_space: target is not an algebra in this center");
  if (source_.size() != center.group().order() || target_.size() != center.group().order())
    throw DomainError("hom_space: algebras do not belong to this center");
  for (int l : source_.summands)
    if (target_.position(l) >= 0) basis_.push_back(l);

  const auto d = static_cast<std::size_t>(dim());
  std::map<int, int> basis_pos;
  for (std::size_t k = 0; k < d; ++k) basis_pos[basis_[k]] = static_cast<int>(k);

  // Target multiplication keyed by center labels.
  std::map<std::pair<int, int>, std::pair<int, cplx>> tgt_mult;
  for (const auto& e : target_.mult)
    tgt_mult[{target_.summands[static_cast<std::size_t>(e.s)], target_.summands[static_cast<std::size_t>(e.t)]}] = {
        target_.summands[static_cast<std::size_t>(e.u)], e.coef};

  // m_t (e_i ⊗ e_j) m_s^† as a dense map on labels, then read off its diagonal.
  product_.assign(d * d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::map<std::pair<int, int>, cplx> dense;  // (out label, in label) -> coefficient
      for (const auto& e : source_.mult) {
        const int ls = source_.summands[static_cast<std::size_t>(e.s)];
        const int lt = source_.summands[static_cast<std::size_t>(e.t)];
        if (ls != basis_[i] || lt != basis_[j]) continue;
        const int lu = source_.summands[static_cast<std::size_t>(e.u)];
        const auto it = tgt_mult.find({ls, lt});
        if (it == tgt_mult.end()) continue;
        dense[{it->second.first, lu}] += it->second.second * std::conj(e.coef);
      }
      for (const auto& [key, value] : dense) {
        if (key.first != key.second) {
          if (std::abs(value) > 1e-14) throw ConsistencyError("convolution product leaves the hom-space");
          continue;
        }
        product_[(i * d + j) * d + static_cast<std::size_t>(basis_pos.at(key.first))] += value;
      }
    }

  involution_.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto it = basis_pos.find(center.negate(basis_[k]));
    if (it == basis_pos.end()) throw ConsistencyError("hom-space basis is not closed under #");
    involution_[k] = it->second;
  }

  unit_.assign(d, 0.0);
  for (int x = 0; x < target_.size(); ++x)
    for (int y = 0; y < source_.size(); ++y) {
      const cplx v = target_.unit[static_cast<std::size_t>(x)] * std::conj(source_.unit[static_cast<std::size_t>(y)]);
      if (std::abs(v) == 0.0) continue;
      const int lx = target_.summands[static_cast<std::size_t>(x)];
      const int ly = source_.summands[static_cast<std::size_t>(y)];
      if (lx != ly) throw ConsistencyError("ι_t ι_s^† is not a hom-space element");
      unit_[static_cast<std::size_t>(basis_pos.at(lx))] += v;
    }
}

std::vector<cplx> ConvolutionAlgebra::convolve(const std::vector<cplx>& f, const std::vector<cplx>& g) const {
  const auto d = static_cast<std::size_t>(dim());
  if (f.size() != d || g.size() != d) throw DomainError("convolve: vector length does not match the hom-space");
  std::vector<cplx> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (f[i] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (g[j] == 0.0) continue;
      const cplx fg = f[i] * g[j];
      for (std::size_t k = 0; k < d; ++k) out[k] += fg * product_[(i * d + j) * d + k];
    }
  }
  return out;
}

std::vector<cplx> ConvolutionAlgebra::sharp(const std::vector<cplx>& f) const {
  if (f.size() != static_cast<std::size_t>(dim())) throw DomainError("sharp: vector length does not match the hom-space");
  std::vector<cplx> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[static_cast<std::size_t>(involution_[k])] = std::conj(f[k]);
  return out;
}

cplx ConvolutionAlgebra::apply_to_unit(const std::vector<cplx>& f) const {
  cplx num = 0.0;
  double den = 0.0;
  for (int x = 0; x < target_.size(); ++x) den += std::norm(target_.unit[static_cast<std::size_t>(x)]);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const cplx in = source_.unit[static_cast<std::size_t>(source_.position(basis_[k]))];
    const cplx out = target_.unit[static_cast<std::size_t>(target_.position(basis_[k]))];
    num += std::conj(out) * f[k] * in;
  }
  return num / den;
}

double ConvolutionAlgebra::commutator_defect() const {
  const int d = dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m = std::max(m, std::abs(product(i, j, k) - product(j, i, k)));
  return m;
}

ConvolutionAlgebra hom_space(const Center& center, const LagrangianAlgebra& source, const LagrangianAlgebra& target) {
  return ConvolutionAlgebra(center, source, target);
}

std::vector<cplx> DualityChannel::channel() const {
  std::vector<cplx> out = idempotent;
  for (auto& x : out) x /= lambda;
  return out;
}

namespace {

std::optional<std::vector<DualityChannel>> try_idempotents(const ConvolutionAlgebra& alg, int grade, std::uint64_t seed) {
  const int d = alg.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // h = Σ z_k e_k + (z_k e_k)^#, a random real combination of the #-symmetrized basis.
  std::vector<cplx> h(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < d; ++k) {
    const cplx z(normal(rng), normal(rng));
    std::vector<cplx> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(k)] = z;
    const auto es = alg.sharp(e);
    for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i)] + es[static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) left(k, j) += h[static_cast<std::size_t>(i)] * alg.product(i, j, k);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(left, true);
  if (es.info() != Eigen::Success) return std::nullopt;

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return es.eigenvalues()[a].real() < es.eigenvalues()[b].real(); });
  double scale = 1.0;
  for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(es.eigenvalues()[i]));
  // Minimal projections of a d-dimensional commutative semisimple algebra number d.
  for (int i = 1; i < d; ++i)
    if (std::abs(es.eigenvalues()[order[static_cast<std::size_t>(i)]] - es.eigenvalues()[order[static_cast<std::size_t>(i - 1)]]) <=
        kClusterTol * scale)
      return std::nullopt;

  const auto& unit = alg.unit();
  std::vector<DualityChannel> out;
  std::vector<cplx> total(static_cast<std::size_t>(d), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    // Each eigenvector of left multiplication is a multiple of one minimal idempotent.
    std::vector<cplx> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = es.eigenvectors()(i, order[k]);
    const auto pp = alg.convolve(p, p);
    const cplx c = inner(p, p) / inner(p, pp);
    for (auto& x : p) x *= c;
    for (int it = 0; it < 3; ++it) {
      const auto p2 = alg.convolve(p, p);
      const auto p3 = alg.convolve(p2, p);
      p = axpby(3.0, p2, -2.0, p3);
    }
    const double norm = std::max(1.0, max_abs(p));
    if (max_abs(axpby(1.0, alg.convolve(p, p), -1.0, p)) > kVerifyTol * norm) return std::nullopt;
    if (max_abs(axpby(1.0, alg.sharp(p), -1.0, p)) > kVerifyTol * norm) return std::nullopt;
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];

    DualityChannel ch;
    ch.grade = grade;
    ch.index = static_cast<int>(k);
    ch.idempotent = std::move(p);
    const cplx lam = alg.apply_to_unit(ch.idempotent);
    if (std::abs(lam.imag()) > kVerifyTol * norm || lam.real() < 1e-12) return std::nullopt;
    ch.lambda = lam.real();
    const auto phi = ch.channel();
    const auto sq = alg.convolve(phi, phi);
    const cplx kappa = inner(phi, sq) / inner(phi, phi);
    if (max_abs(axpby(1.0, sq, -kappa, phi)) > kVerifyTol * std::max(1.0, max_abs(sq))) return std::nullopt;
    if (kappa.real() <= 0.0 || std::abs(kappa.imag()) > kVerifyTol) return std::nullopt;
    ch.qdim = 1.0 / std::sqrt(kappa.real());
    out.push_back(std::move(ch));
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (max_abs(alg.convolve(out[a].idempotent, out[b].idempotent)) > kVerifyTol) return std::nullopt;
  if (max_abs(axpby(1.0, total, -1.0, unit)) > kVerifyTol * std::max(1.0, max_abs(unit))) return std::nullopt;
  return out;
}

}  // namespace

std::vector<DualityChannel> minimal_idempotents(const ConvolutionAlgebra& algebra, int grade, std::uint64_t seed) {
  if (algebra.commutator_defect() > 1e-12) throw ConsistencyError("convolution algebra is not commutative");
  for (int attempt = 0; attempt < kMaxSeedRetries; ++attempt)
    if (auto found = try_idempotents(algebra, grade, seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL))
      return *found;
  throw ConsistencyError("minimal_idempotents: no separating element found");
}

namespace {

std::string repeat(const std::string& s, int k) {
  std::string out;
  for (int i = 0; i < k; ++i) out += s;
  return out;
}

// Names channels and sorts even grades by the group element they carry.
void name_channels(const Center& center, const ConvolutionAlgebra& alg, int grade, std::vector<DualityChannel>& chans) {
  const auto& g = center.group();
  const std::string t = grade > 0 ? "T+" : "T-";
  if (grade % 2 != 0) {
    const std::string head = grade > 0 ? "D+" : "D-";
    const int k = (std::abs(grade) - 1) / 2;
    for (std::size_t i = 0; i < chans.size(); ++i)
      chans[i].name = head + repeat(t, k) + (chans.size() > 1 ? "#" + std::to_string(i) : "");
    return;
  }
  const int k = std::abs(grade) / 2;
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t i = 0; i < chans.size(); ++i) {
    const auto& p = chans[i].idempotent;
    int found = -1;
    std::size_t zero_pos = 0;
    bool on_l1 = true;
    for (std::size_t b = 0; b < alg.basis().size(); ++b) {
      if (alg.basis()[b] == center.zero()) zero_pos = b;
      if (!center.label(alg.basis()[b]).phi.is_trivial()) on_l1 = false;
    }
    if (on_l1 && std::abs(p[zero_pos]) > 1e-12) {
      for (const auto& psi : characters(g)) {
        double err = 0.0;
        for (std::size_t b = 0; b < alg.basis().size(); ++b) {
          const auto a = center.label(alg.basis()[b]).a;
          err = std::max(err, std::abs(p[b] / p[zero_pos] - psi(g, a).to_complex()));
        }
        if (err < 1e-8) {
          found = g.index_of(*center.chi().tilde_inverse(psi));
          break;
        }
      }
    }
    order.emplace_back(found < 0 ? g.order() + static_cast<int>(i) : found, i);
    if (found < 0) {
      chans[i].name = "Φ[" + std::to_string(grade) + "," + std::to_string(i) + "]";
    } else {
      const std::string elem = g.element_label(g.element_at(found));
      if (k == 0) chans[i].name = elem;
      else chans[i].name = (elem == "1" ? std::string() : elem) + repeat(t, k);
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<DualityChannel> sorted;
  for (const auto& [key, i] : order) {
    sorted.push_back(std::move(chans[i]));
    sorted.back().index = static_cast<int>(sorted.size() - 1);
  }
  chans = std::move(sorted);
}

}  // namespace

ChannelCatalog::ChannelCatalog(const Bicharacter& chi, int min_grade, int max_grade, std::uint64_t seed)
    : center_(chi), min_grade_(std::min(min_grade, 0)), max_grade_(std::max(max_grade, 0)) {
  if (min_grade > max_grade) throw DomainError("ChannelCatalog: empty grade range");
  const auto [l1, l2] = canonical_lagrangians(center_);
  (void)l2;
  for (int g = min_grade_; g <= max_grade_; ++g) {
    algebras_.push_back(hom_space(center_, alpha_twist(center_, l1, g), l1));
    auto chans = minimal_idempotents(algebras_.back(), g, seed);
    name_channels(center_, algebras_.back(), g, chans);
    channels_.push_back(std::move(chans));
  }
  const auto& zero = channels(0);
  unit_index_ = -1;
  for (const auto& ch : zero)
    if (ch.name == "1") unit_index_ = ch.index;
  if (unit_index_ < 0) throw ConsistencyError("ChannelCatalog: no unit channel in grade 0");
}

const ConvolutionAlgebra& ChannelCatalog::algebra(int grade) const {
  if (!has_grade(grade)) throw DomainError("grade " + std::to_string(grade) + " is outside the catalog");
  return algebras_[static_cast<std::size_t>(grade - min_grade_)];
}

const std::vector<DualityChannel>& ChannelCatalog::channels(int grade) const {
  if (!has_grade(grade)) throw DomainError("grade " + std::to_string(grade) + " is outside the catalog");
  return channels_[static_cast<std::size_t>(grade - min_grade_)];
}

std::vector<cplx> ChannelCatalog::compose_raw(int gx, int x, int gy, int y) const {
  const int gz = gx + gy;
  const auto& ax = algebra(gx);
  const auto& ay = algebra(gy);
  const auto& az = algebra(gz);
  const auto fx = channels(gx).at(static_cast<std::size_t>(x)).channel();
  const auto fy = channels(gy).at(static_cast<std::size_t>(y)).channel();
  // Φ_y is carried through α^{gx} before composing: its value at label l moves to α^{gx}(l).
  std::vector<cplx> out(static_cast<std::size_t>(az.dim()), 0.0);
  for (std::size_t k = 0; k < az.basis().size(); ++k) {
    const int label = az.basis()[k];
    const auto px = std::find(ax.basis().begin(), ax.basis().end(), label);
    const auto py = std::find(ay.basis().begin(), ay.basis().end(), center_.alpha_power(label, -gx));
    if (px == ax.basis().end() || py == ay.basis().end()) continue;
    out[k] = fx[static_cast<std::size_t>(px - ax.basis().begin())] * fy[static_cast<std::size_t>(py - ay.basis().begin())];
  }
  return out;
}

CompositionResult ChannelCatalog::compose(int gx, int x, int gy, int y) const {
  const int gz = gx + gy;
  if (!has_grade(gz)) return OutOfWindow{gz};
  const auto f = compose_raw(gx, x, gy, y);
  const auto& chans = channels(gz);
  const auto d = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXcd basis(d, static_cast<Eigen::Index>(chans.size()));
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const auto phi = chans[c].channel();
    for (Eigen::Index i = 0; i < d; ++i) basis(i, static_cast<Eigen::Index>(c)) = phi[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXcd rhs(d);
  for (Eigen::Index i = 0; i < d; ++i) rhs(i) = f[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd coef = basis.colPivHouseholderQr().solve(rhs);
  if ((basis * coef - rhs).cwiseAbs().maxCoeff() > 1e-9) throw ConsistencyError("composite is outside the channel span");
  std::vector<CompositionTerm> terms;
  for (Eigen::Index c = 0; c < coef.size(); ++c) {
    if (std::abs(coef(c).imag()) > 1e-9 || coef(c).real() < -1e-9)
      throw ConsistencyError("composition coefficient is not a nonnegative real");
    if (std::abs(coef(c)) > 1e-9) terms.push_back(CompositionTerm{static_cast<int>(c), coef(c).real()});
  }
  return terms;
}

CompositionResult compose_channels(const ChannelCatalog& catalog, const DualityChannel& x, const DualityChannel& y) {
  return catalog.compose(x.grade, x.index, y.grade, y.index);
}

}  // namespace dualitykit
