#include "dualitykit/mpo.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "dualitykit/kernels.hpp"

namespace dualitykit {

std::size_t default_cap() {
  if (const char* env = std::getenv("DUALITYKIT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::size_t ChainConfig::dense_dim() const {
  std::size_t d = 1;
  const auto n = static_cast<std::size_t>(local_dim());
  for (int i = 0; i < length; ++i) {
    if (d > std::numeric_limits<std::size_t>::max() / n) return std::numeric_limits<std::size_t>::max();
    d *= n;
  }
  return d;
}

ChainConfig make_chain(Bicharacter chi, int length, std::size_t cap) {
  if (length < 2) throw DomainError("chain length must be >= 2");
  ChainConfig cfg{std::move(chi), length, cap};
  if (cfg.dense_dim() > cap)
    throw CapExceeded("dense dimension " + std::to_string(cfg.local_dim()) + "^" + std::to_string(length) +
                      " exceeds the cap " + std::to_string(cap));
  return cfg;
}

void MPO::validate() const {
  if (tensors.empty()) throw DomainError("MPO " + name + " has no sites");
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& next = tensors[(i + 1) % tensors.size()];
    if (tensors[i].right != next.left) throw DomainError("MPO " + name + ": bond mismatch after site " + std::to_string(i));
    if (tensors[i].phys != tensors.front().phys) throw DomainError("MPO " + name + ": physical dimension varies");
  }
}

MPO stack(const MPO& top, const MPO& bottom) {
  top.validate();
  bottom.validate();
  if (top.length() != bottom.length() || top.phys() != bottom.phys()) throw DomainError("stack: MPO shapes differ");
  MPO out;
  out.name = top.name + "·" + bottom.name;
  out.prefactor = top.prefactor * bottom.prefactor;
  const int d = top.phys();
  for (int i = 0; i < top.length(); ++i) {
    const auto& a = top.tensors[static_cast<std::size_t>(i)];
    const auto& b = bottom.tensors[static_cast<std::size_t>(i)];
    SiteTensor w(a.left * b.left, a.right * b.right, d);
    for (int la = 0; la < a.left; ++la)
      for (int ra = 0; ra < a.right; ++ra)
        for (int mid = 0; mid < d; ++mid)
          for (int out_ = 0; out_ < d; ++out_) {
            const cplx x = a.at(la, ra, mid, out_);
            if (x == 0.0) continue;
            for (int lb = 0; lb < b.left; ++lb)
              for (int rb = 0; rb < b.right; ++rb)
                for (int in = 0; in < d; ++in) {
                  const cplx y = b.at(lb, rb, in, mid);
                  if (y != 0.0) w.at(la * b.left + lb, ra * b.right + rb, in, out_) += x * y;
                }
          }
    out.tensors.push_back(std::move(w));
  }
  return out;
}

MPO identity_mpo(const ChainConfig& cfg) {
  MPO out;
  out.name = "1";
  const int n = cfg.local_dim();
  for (int i = 0; i < cfg.length; ++i) {
    SiteTensor w(1, 1, n);
    for (int a = 0; a < n; ++a) w.at(0, 0, a, a) = 1.0;
    out.tensors.push_back(std::move(w));
  }
  return out;
}

DenseOperator hadamard_tensor(const Bicharacter& chi) {
  if (!is_nondegenerate(chi)) throw PreconditionError("hadamard_tensor: degenerate bicharacter gives a non-unitary box");
  const auto& g = chi.group();
  const auto n = static_cast<std::size_t>(g.order());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  DenseOperator h(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      h(a, b) = chi(g.element_at(static_cast<int>(a)), g.element_at(static_cast<int>(b))).to_complex() * norm;
  return h;
}

Spiders spider_tensors(const FiniteAbelianGroup& group) {
  Spiders s;
  s.n = group.order();
  const auto n = static_cast<std::size_t>(s.n);
  s.white.assign(n * n * n, 0.0);
  s.black.assign(n * n * n, 0.0);
  const auto elems = group.elements();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto z = static_cast<std::size_t>(group.index_of(group.add(elems[x], elems[y])));
      s.white[(x * n + y) * n + z] = 1.0;
      s.black[(z * n + x) * n + y] = 1.0;
    }
  return s;
}

namespace {

// Conjugates the physical legs by ℋ: W_site = ℋ W_add ℋ^†, one bond pair at a time.
SiteTensor rotate_physical(const SiteTensor& add, const DenseOperator& h) {
  const int n = add.phys;
  SiteTensor site(add.left, add.right, n);
  for (int u = 0; u < add.left; ++u)
    for (int v = 0; v < add.right; ++v)
      for (int beta = 0; beta < n; ++beta)
        for (int alpha = 0; alpha < n; ++alpha) {
          const cplx w = add.at(u, v, beta, alpha);
          if (w == 0.0) continue;
          for (int in = 0; in < n; ++in) {
            const cplx right = w * std::conj(h(static_cast<std::size_t>(in), static_cast<std::size_t>(beta)));
            for (int out = 0; out < n; ++out)
              site.at(u, v, in, out) += h(static_cast<std::size_t>(out), static_cast<std::size_t>(alpha)) * right;
          }
        }
  return site;
}

void clean(SiteTensor& w) {
  for (auto& x : w.data) {
    if (std::abs(x.real()) < 1e-14) x.real(0.0);
    if (std::abs(x.imag()) < 1e-14) x.imag(0.0);
  }
}

}  // namespace

SiteTensor duality_cell_from_diagram(const Bicharacter& chi, int direction) {
  if (direction != 1 && direction != -1) throw DomainError("duality direction must be +1 or -1");
  const DenseOperator h = hadamard_tensor(chi);
  const Spiders sp = spider_tensors(chi.group());
  const int n = sp.n;
  auto H = [&](int a, int b) { return h(static_cast<std::size_t>(a), static_cast<std::size_t>(b)); };
  auto Hdag = [&](int a, int b) { return std::conj(h(static_cast<std::size_t>(b), static_cast<std::size_t>(a))); };
  // Legs in the group-algebra basis: u left bond, v right bond, beta input, alpha output.
  SiteTensor add(n, n, n);
  if (direction == 1) {
    // white(out) — ℋ — black(in) — ℋ^†
    for (int u = 0; u < n; ++u)
      for (int x = 0; x < n; ++x)
        for (int alpha = 0; alpha < n; ++alpha) {
          if (sp.m(u, x, alpha) == 0.0) continue;
          for (int y = 0; y < n; ++y)
            for (int beta = 0; beta < n; ++beta)
              for (int w = 0; w < n; ++w) {
                if (sp.mdag(beta, y, w) == 0.0) continue;
                const cplx c = H(x, y);
                for (int v = 0; v < n; ++v) add.at(u, v, beta, alpha) += c * Hdag(w, v);
              }
        }
  } else {
    // black(in) — ℋ^† — white(out) — ℋ
    for (int u = 0; u < n; ++u)
      for (int y = 0; y < n; ++y)
        for (int beta = 0; beta < n; ++beta) {
          if (sp.mdag(beta, u, y) == 0.0) continue;
          for (int x = 0; x < n; ++x)
            for (int w = 0; w < n; ++w)
              for (int alpha = 0; alpha < n; ++alpha) {
                if (sp.m(x, w, alpha) == 0.0) continue;
                const cplx c = Hdag(y, x);
                for (int v = 0; v < n; ++v) add.at(u, v, beta, alpha) += c * H(w, v);
              }
        }
  }
  SiteTensor site = rotate_physical(add, h);
  clean(site);
  return site;
}

MPO build_duality_mpo(const ChainConfig& cfg, int direction) {
  if (cfg.length % 2 != 0)
    throw PreconditionError("duality MPO needs an even chain length, got L = " + std::to_string(cfg.length));
  const SiteTensor cell = duality_cell_from_diagram(cfg.chi, direction);
  MPO out;
  out.name = direction == 1 ? "D+" : "D-";
  out.tensors.assign(static_cast<std::size_t>(cfg.length), cell);
  return out;
}

MPO build_translation_mpo(const ChainConfig& cfg, int direction, std::optional<GroupElement> dressed_by) {
  if (direction != 1 && direction != -1) throw DomainError("translation direction must be +1 or -1");
  const auto& g = cfg.group();
  const int n = g.order();
  const GroupElement b = dressed_by ? *dressed_by : g.identity();
  g.require(b);
  SiteTensor w(n, n, n);
  for (int k = 0; k < n; ++k)
    for (int in = 0; in < n; ++in) {
      const int out = g.index_of(g.add(g.element_at(k), b));
      // T+: out = left bond, right bond = in. T-: out = right bond, left bond = in.
      if (direction == 1) w.at(k, in, in, out) = 1.0;
      else w.at(in, k, in, out) = 1.0;
    }
  MPO mpo;
  const std::string t = direction == 1 ? "T+" : "T-";
  mpo.name = b == g.identity() ? t : g.element_label(b) + t;
  mpo.tensors.assign(static_cast<std::size_t>(cfg.length), w);
  return mpo;
}

MPO symmetry_mpo(const ChainConfig& cfg, const GroupElement& b) {
  const auto& g = cfg.group();
  g.require(b);
  const int n = g.order();
  SiteTensor w(1, 1, n);
  for (int in = 0; in < n; ++in) w.at(0, 0, in, g.index_of(g.add(g.element_at(in), b))) = 1.0;
  MPO mpo;
  mpo.name = g.element_label(b);
  mpo.tensors.assign(static_cast<std::size_t>(cfg.length), w);
  return mpo;
}

DenseOperator shift_matrix(const FiniteAbelianGroup& group, const GroupElement& b) {
  const auto n = static_cast<std::size_t>(group.order());
  DenseOperator x(n);
  for (int a = 0; a < group.order(); ++a)
    x(static_cast<std::size_t>(group.index_of(group.add(group.element_at(a), b))), static_cast<std::size_t>(a)) = 1.0;
  return x;
}

DenseOperator clock_matrix(const FiniteAbelianGroup& group, const Character& psi) {
  const auto n = static_cast<std::size_t>(group.order());
  DenseOperator z(n);
  for (int a = 0; a < group.order(); ++a)
    z(static_cast<std::size_t>(a), static_cast<std::size_t>(a)) = psi(group, group.element_at(a)).to_complex();
  return z;
}

DenseOperator site_product(const ChainConfig& cfg, const std::map<int, DenseOperator>& ops) {
  const std::size_t dim = cfg.dense_dim();
  if (dim > cfg.cap) throw CapExceeded("site_product: dense dimension exceeds the cap");
  const auto n = static_cast<std::size_t>(cfg.local_dim());
  std::vector<std::size_t> weight(static_cast<std::size_t>(cfg.length));
  std::size_t p = 1;
  for (int i = cfg.length - 1; i >= 0; --i) {
    weight[static_cast<std::size_t>(i)] = p;
    p *= n;
  }
  for (const auto& [site, op] : ops) {
    if (site < 0 || site >= cfg.length) throw DomainError("site_product: site out of range");
    if (op.dim() != n) throw DomainError("site_product: local operator has the wrong dimension");
  }
  DenseOperator out(dim);
  std::vector<std::pair<std::size_t, cplx>> cur;
  std::vector<std::pair<std::size_t, cplx>> next;
  for (std::size_t col = 0; col < dim; ++col) {
    cur.assign(1, {col, 1.0});
    for (const auto& [site, op] : ops) {
      const std::size_t wgt = weight[static_cast<std::size_t>(site)];
      next.clear();
      for (const auto& [idx, amp] : cur) {
        const std::size_t digit = (idx / wgt) % n;
        for (std::size_t o = 0; o < n; ++o) {
          const cplx v = op(o, digit);
          if (v != 0.0) next.emplace_back(idx - digit * wgt + o * wgt, amp * v);
        }
      }
      cur.swap(next);
    }
    for (const auto& [idx, amp] : cur) out(idx, col) += amp;
  }
  return out;
}

DenseOperator build_symmetry_operator(const ChainConfig& cfg, const Character& phi) {
  const auto b = cfg.chi.tilde_inverse(phi);
  if (!b) throw PreconditionError("build_symmetry_operator: character is not in the image of chi~");
  std::map<int, DenseOperator> ops;
  const DenseOperator x = shift_matrix(cfg.group(), *b);
  for (int i = 0; i < cfg.length; ++i) ops.emplace(i, x);
  return site_product(cfg, ops);
}

DenseOperator translation_operator(const ChainConfig& cfg, int shift) {
  const std::size_t dim = cfg.dense_dim();
  if (dim > cfg.cap) throw CapExceeded("translation_operator: dense dimension exceeds the cap");
  const auto n = static_cast<std::size_t>(cfg.local_dim());
  const int L = cfg.length;
  DenseOperator out(dim);
  std::vector<std::size_t> digits(static_cast<std::size_t>(L));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int i = L - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = rest % n;
      rest /= n;
    }
    std::size_t row = 0;
    for (int i = 0; i < L; ++i) row = row * n + digits[static_cast<std::size_t>(((i - shift) % L + L) % L)];
    out(row, col) = 1.0;
  }
  return out;
}

DenseOperator projector_x(const ChainConfig& cfg, int site) {
  const auto& g = cfg.group();
  DenseOperator avg(static_cast<std::size_t>(g.order()));
  for (const auto& b : g.elements()) avg += shift_matrix(g, b);
  avg = avg * cplx(1.0 / g.order());
  return site_product(cfg, {{site, avg}});
}

DenseOperator projector_equal(const ChainConfig& cfg, int i, int j) {
  const std::size_t dim = cfg.dense_dim();
  if (dim > cfg.cap) throw CapExceeded("projector_equal: dense dimension exceeds the cap");
  const int L = cfg.length;
  i = ((i % L) + L) % L;
  j = ((j % L) + L) % L;
  const auto n = static_cast<std::size_t>(cfg.local_dim());
  std::size_t wi = 1;
  std::size_t wj = 1;
  for (int k = L - 1; k > i; --k) wi *= n;
  for (int k = L - 1; k > j; --k) wj *= n;
  DenseOperator out(dim);
  for (std::size_t s = 0; s < dim; ++s)
    if ((s / wi) % n == (s / wj) % n) out(s, s) = 1.0;
  return out;
}

DenseOperator contract(const MPO& mpo, std::size_t cap, ContractionStats* stats) {
  mpo.validate();
  const int L = mpo.length();
  const auto n = static_cast<std::size_t>(mpo.phys());
  std::size_t dim = 1;
  for (int i = 0; i < L; ++i) {
    if (dim > cap / n) throw CapExceeded("contract: dense dimension exceeds the cap " + std::to_string(cap));
    dim *= n;
  }
  const auto d0 = static_cast<std::size_t>(mpo.tensors.front().left);
  DenseOperator out(dim);
  std::vector<cplx> state;
  std::vector<cplx> next;
  std::vector<std::size_t> in(static_cast<std::size_t>(L));
  std::size_t calls = 0;
  std::size_t flops = 0;

  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int i = L - 1; i >= 0; --i) {
      in[static_cast<std::size_t>(i)] = rest % n;
      rest /= n;
    }
    // state[(r * d0 + l0) * len + outs]: open bond r, closing bond l0, outputs of sites > i.
    std::size_t len = 1;
    std::size_t bond = d0;
    state.assign(d0 * d0, 0.0);
    for (std::size_t r = 0; r < d0; ++r) state[r * d0 + r] = 1.0;
    for (int i = L - 1; i >= 0; --i) {
      const auto& w = mpo.tensors[static_cast<std::size_t>(i)];
      const auto dl = static_cast<std::size_t>(w.left);
      const auto dr = static_cast<std::size_t>(w.right);
      if (dr != bond) throw DomainError("contract: bond mismatch");
      const std::size_t nlen = len * n;
      next.assign(dl * d0 * nlen, 0.0);
      const int ii = static_cast<int>(in[static_cast<std::size_t>(i)]);
      for (std::size_t l = 0; l < dl; ++l)
        for (std::size_t r = 0; r < dr; ++r)
          for (std::size_t o = 0; o < n; ++o) {
            const cplx c = w.at(static_cast<int>(l), static_cast<int>(r), ii, static_cast<int>(o));
            if (c == 0.0) continue;
            for (std::size_t l0 = 0; l0 < d0; ++l0) {
              kernels::axpy(len, c, state.data() + (r * d0 + l0) * len, next.data() + (l * d0 + l0) * nlen + o * len);
              ++calls;
              flops += 8 * len;
            }
          }
      state.swap(next);
      len = nlen;
      bond = dl;
    }
    for (std::size_t l0 = 0; l0 < d0; ++l0) {
      const cplx* block = state.data() + (l0 * d0 + l0) * len;
      for (std::size_t k = 0; k < len; ++k)
        if (block[k] != 0.0) out(k, col) += mpo.prefactor * block[k];
    }
  }
  if (stats) {
    stats->dim = dim;
    stats->axpy_calls = calls;
    stats->flops = flops;
  }
  return out;
}

}  // namespace dualitykit
