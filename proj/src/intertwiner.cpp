#include "dualitykit/intertwiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dualitykit {

namespace {

// Right nullspace of m by SVD, columns are orthonormal.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double tol, double* gap) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  const double cut = tol * std::max(1.0, top);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  if (gap) *gap = rank > 0 ? s(rank - 1) : 0.0;
  const Eigen::Index cols = m.cols();
  return svd.matrixV().rightCols(cols - rank);
}

void canonical_gauge(Eigen::MatrixXcd& x, double target_norm) {
  const double norm = x.norm();
  if (norm == 0.0) return;
  x *= target_norm / norm;
  const double big = x.cwiseAbs().maxCoeff();
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      if (std::abs(x(r, c)) > 1e-8 * big) {
        x *= std::conj(x(r, c)) / std::abs(x(r, c));
        for (auto& v : x.reshaped())
          if (std::abs(v) < 1e-14) v = 0.0;
        return;
      }
}

struct Setup {
  SiteTensor wa;
  SiteTensor wbc;
};

Setup prepare(const MPO& a, const MPO& b, const MPO& c) {
  a.validate();
  if (a.length() != b.length() || a.length() != c.length()) throw DomainError("intertwiner: MPO lengths differ");
  const MPO bc = stack(b, c);
  for (const auto& m : {&a, &bc})
    for (const auto& t : m->tensors)
      if (t.data != m->tensors.front().data) throw DomainError("intertwiner: MPO " + m->name + " is not translation invariant");
  return {a.tensors.front(), bc.tensors.front()};
}

// Rows of the linear system for the unknown map, split as (A - λ B) x = 0 where
// A carries the b⊗c tensor and B the a tensor.
struct System {
  Eigen::MatrixXcd bc_part;
  Eigen::MatrixXcd a_part;
  int rows_map = 0;
  int cols_map = 0;
};

System assemble(const SiteTensor& wa, const SiteTensor& wbc, bool into) {
  const int da = wa.left;
  const int dbc = wbc.left;
  const int d = wa.phys;
  if (wa.right != da || wbc.right != dbc) throw DomainError("intertwiner: open-boundary bond shapes are not supported");
  System sys;
  sys.rows_map = into ? dbc : da;
  sys.cols_map = into ? da : dbc;
  const Eigen::Index unknowns = static_cast<Eigen::Index>(sys.rows_map) * sys.cols_map;
  auto var = [&](int r, int c) { return static_cast<Eigen::Index>(r) * sys.cols_map + c; };
  const Eigen::Index eqs = unknowns * d * d;
  sys.bc_part = Eigen::MatrixXcd::Zero(eqs, unknowns);
  sys.a_part = Eigen::MatrixXcd::Zero(eqs, unknowns);
  Eigen::Index row = 0;
  for (int l = 0; l < sys.rows_map; ++l)
    for (int r = 0; r < sys.cols_map; ++r)
      for (int in = 0; in < d; ++in)
        for (int out = 0; out < d; ++out, ++row) {
          if (into) {
            // Σ_k Wbc[l][k] ι[k][r] = λ Σ_k ι[l][k] Wa[k][r]
            for (int k = 0; k < dbc; ++k) sys.bc_part(row, var(k, r)) += wbc.at(l, k, in, out);
            for (int k = 0; k < da; ++k) sys.a_part(row, var(l, k)) += wa.at(k, r, in, out);
          } else {
            // Σ_k φ[l][k] Wbc[k][r] = λ Σ_k Wa[l][k] φ[k][r]
            for (int k = 0; k < dbc; ++k) sys.bc_part(row, var(l, k)) += wbc.at(k, r, in, out);
            for (int k = 0; k < da; ++k) sys.a_part(row, var(k, r)) += wa.at(l, k, in, out);
          }
        }
  return sys;
}

std::optional<Intertwiner> at_scale(const System& sys, cplx lambda, double tol, double target_norm) {
  Intertwiner out;
  const Eigen::MatrixXcd ns = nullspace(sys.bc_part - lambda * sys.a_part, tol, &out.gap);
  out.nullspace_dim = static_cast<int>(ns.cols());
  if (out.nullspace_dim == 0) return std::nullopt;
  out.scale = lambda;
  out.map.resize(sys.rows_map, sys.cols_map);
  for (int r = 0; r < sys.rows_map; ++r)
    for (int c = 0; c < sys.cols_map; ++c)
      out.map(r, c) = ns(static_cast<Eigen::Index>(r) * sys.cols_map + c, 0);
  canonical_gauge(out.map, target_norm);
  return out;
}

std::optional<Intertwiner> solve(const SiteTensor& wa, const SiteTensor& wbc, bool into, double tol) {
  const System sys = assemble(wa, wbc, into);
  const double target = std::sqrt(static_cast<double>(into ? wa.left : wbc.left));
  if (auto exact = at_scale(sys, 1.0, tol, target)) return exact;

  // Rescaled sites: candidate λ are eigenvalues of B^+ A, kept when the
  // pencil A - λ B actually drops rank.
  const Eigen::MatrixXcd reduced = sys.a_part.completeOrthogonalDecomposition().solve(sys.bc_part);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(reduced, false);
  std::vector<cplx> candidates;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx l = es.eigenvalues()(i);
    if (std::abs(l) < 1e-8) continue;
    // Snap to real when the imaginary part is round-off.
    const cplx snapped = std::abs(l.imag()) < 1e-9 * std::abs(l) ? cplx(l.real(), 0.0) : l;
    bool seen = false;
    for (const auto& c : candidates) seen = seen || std::abs(c - snapped) < 1e-8 * std::abs(snapped);
    if (!seen) candidates.push_back(snapped);
  }
  std::sort(candidates.begin(), candidates.end(), [](cplx x, cplx y) {
    if (std::abs(x.real() - y.real()) > 1e-12) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  for (const auto& lambda : candidates)
    if (auto found = at_scale(sys, lambda, tol, target)) return found;
  return std::nullopt;
}

}  // namespace

std::optional<Intertwiner> find_intertwiner(const MPO& a, const MPO& b, const MPO& c, double tol) {
  const auto s = prepare(a, b, c);
  return solve(s.wa, s.wbc, true, tol);
}

std::optional<Intertwiner> find_fusion_map(const MPO& a, const MPO& b, const MPO& c, double tol) {
  const auto s = prepare(a, b, c);
  return solve(s.wa, s.wbc, false, tol);
}

std::pair<double, cplx> distance_up_to_phase(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return {std::numeric_limits<double>::infinity(), 1.0};
  const cplx overlap = (y.adjoint() * x).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return {(x - phase * y).cwiseAbs().maxCoeff(), phase};
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

struct Word {
  int eta = 0;    // power of the generator shift
  int shift = 0;  // -1, 0, +1
};

std::string word_name(const Word& w) {
  std::string s = w.eta ? (w.eta == 1 ? "η" : "η^" + std::to_string(w.eta)) : "";
  if (w.shift == 1) s += "T+";
  if (w.shift == -1) s += "T-";
  return s.empty() ? "1" : s;
}

MPO word_mpo(const ChainConfig& cfg, const Word& w) {
  const auto& g = cfg.group();
  const GroupElement b = g.scale(g.unit_vector(0), w.eta);
  if (w.shift == 0) return b == g.identity() ? identity_mpo(cfg) : symmetry_mpo(cfg, b);
  return build_translation_mpo(cfg, w.shift, b);
}

}  // namespace

std::vector<FScalar> translation_f_scalars(const ChainConfig& cfg, double tol) {
  if (cfg.group().rank() == 0) return {};
  const int order = cfg.group().factors().front();
  const std::vector<Word> objects = {{1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}};
  auto times = [&](Word x, Word y) { return Word{(x.eta + y.eta) % order, x.shift + y.shift}; };
  auto iota = [&](Word x, Word y, bool& unique) {
    const auto found = find_intertwiner(word_mpo(cfg, times(x, y)), word_mpo(cfg, x), word_mpo(cfg, y), tol);
    if (!found) throw ConsistencyError("no intertwiner " + word_name(x) + "⊗" + word_name(y) + " -> " + word_name(times(x, y)));
    if (found->nullspace_dim != 1) unique = false;
    return found->map;
  };
  std::vector<FScalar> out;
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects) {
        if ((x.shift != 0) + (y.shift != 0) + (z.shift != 0) > 1) continue;
        FScalar f{word_name(x), word_name(y), word_name(z), 1.0, 0.0, true};
        const Word xy = times(x, y);
        const Word yz = times(y, z);
        const auto dz = word_mpo(cfg, z).tensors.front().left;
        const auto dx = word_mpo(cfg, x).tensors.front().left;
        const Eigen::MatrixXcd left =
            kron(iota(x, y, f.unique), Eigen::MatrixXcd::Identity(dz, dz)) * iota(xy, z, f.unique);
        const Eigen::MatrixXcd right =
            kron(Eigen::MatrixXcd::Identity(dx, dx), iota(y, z, f.unique)) * iota(x, yz, f.unique);
        const cplx num = (right.adjoint() * left).trace();
        const cplx den = (right.adjoint() * right).trace();
        f.scalar = num / den;
        f.residual = (left - f.scalar * right).cwiseAbs().maxCoeff();
        out.push_back(std::move(f));
      }
  return out;
}

}  // namespace dualitykit
