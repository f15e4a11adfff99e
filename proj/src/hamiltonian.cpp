#include "dualitykit/hamiltonian.hpp"

namespace dualitykit {

Model parse_model(const std::string& name) {
  if (name == "clock") return Model::clock;
  if (name == "cluster") return Model::cluster;
  if (name == "custom") return Model::custom;
  throw DomainError("unknown model \"" + name + "\" (expected clock|cluster|custom)");
}

std::string model_name(Model m) {
  switch (m) {
    case Model::clock: return "clock";
    case Model::cluster: return "cluster";
    case Model::custom: return "custom";
  }
  return "?";
}

namespace {

void require_qubit_pairs(const ChainConfig& cfg) {
  if (cfg.group().factors() != std::vector<int>{2, 2})
    throw PreconditionError("cluster model needs the group Z2xZ2, got " + cfg.group().to_string());
}

// Pauli on coordinate c of one Z2xZ2 cell.
DenseOperator cell_pauli(const FiniteAbelianGroup& g, char kind, int c) {
  if (kind == 'X') return shift_matrix(g, g.unit_vector(c));
  return clock_matrix(g, Character{g.unit_vector(c).coords});
}

// Multiplies single-site factors that may share a cell.
void put(std::map<int, DenseOperator>& ops, int cell, const DenseOperator& m) {
  auto it = ops.find(cell);
  if (it == ops.end()) ops.emplace(cell, m);
  else it->second = it->second * m;
}

}  // namespace

std::vector<DenseOperator> cluster_terms(const ChainConfig& cfg) {
  require_qubit_pairs(cfg);
  const auto& g = cfg.group();
  const int L = cfg.length;
  auto wrap = [L](int k) { return ((k % L) + L) % L; };
  std::vector<DenseOperator> terms;
  for (int k = 0; k < L; ++k) {
    // Z_{2k-1} X_{2k} Z_{2k+1}
    std::map<int, DenseOperator> a;
    put(a, wrap(k - 1), cell_pauli(g, 'Z', 1));
    put(a, k, cell_pauli(g, 'X', 0));
    put(a, k, cell_pauli(g, 'Z', 1));
    terms.push_back(site_product(cfg, a));
    // Z_{2k} X_{2k+1} Z_{2k+2}
    std::map<int, DenseOperator> b;
    put(b, k, cell_pauli(g, 'Z', 0));
    put(b, k, cell_pauli(g, 'X', 1));
    put(b, wrap(k + 1), cell_pauli(g, 'Z', 0));
    terms.push_back(site_product(cfg, b));
  }
  return terms;
}

DenseOperator build_hamiltonian(const ChainConfig& cfg, const HamiltonianSpec& spec) {
  const std::size_t dim = cfg.dense_dim();
  if (dim > cfg.cap) throw CapExceeded("build_hamiltonian: dense dimension exceeds the cap");
  DenseOperator h(dim);
  switch (spec.model) {
    case Model::clock:
      for (int i = 0; i < cfg.length; ++i) {
        h += projector_equal(cfg, i, i + 1) * cplx(-spec.j);
        h += projector_x(cfg, i) * cplx(-spec.h);
      }
      break;
    case Model::cluster:
      for (const auto& t : cluster_terms(cfg)) h += t * cplx(-spec.j);
      break;
    case Model::custom:
      for (const auto& t : spec.terms) h += t;
      break;
  }
  if (!h.is_hermitian(1e-12)) throw ConsistencyError("assembled " + model_name(spec.model) + " Hamiltonian is not Hermitian");
  return h;
}

}  // namespace dualitykit
