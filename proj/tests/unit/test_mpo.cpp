#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "dualitykit/errors.hpp"
#include "dualitykit/mpo.hpp"
#include "oracles.hpp"

using namespace dualitykit;

namespace {

ChainConfig chain(const char* spec, int L) { return make_chain(Bicharacter::standard(FiniteAbelianGroup::parse(spec)), L, 4096); }

double diff(const DenseOperator& a, const Eigen::MatrixXcd& b) { return (a.to_eigen() - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Hadamard, Z2IsStandardHadamard) {
  const auto h = hadamard_tensor(Bicharacter::standard(FiniteAbelianGroup::parse("Z2")));
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd want(2, 2);
  want << r, r, r, -r;
  EXPECT_LT(diff(h, want), 1e-15);
}

TEST(Hadamard, Z3IsScaledDft) {
  const auto h = hadamard_tensor(Bicharacter::standard(FiniteAbelianGroup::parse("Z3")));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_LT(std::abs(h(a, b) - std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi * a * b / 3.0)), 1e-15);
}

TEST(Hadamard, DegenerateRejected) {
  EXPECT_THROW(hadamard_tensor(Bicharacter::trivial(FiniteAbelianGroup::parse("Z2"))), PreconditionError);
}

TEST(Spiders, Z2BlackAndWhite) {
  const auto sp = spider_tensors(FiniteAbelianGroup::parse("Z2"));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        EXPECT_EQ(sp.m(x, y, z), (x + y) % 2 == z ? 1.0 : 0.0);
        EXPECT_EQ(sp.mdag(z, x, y), sp.m(x, y, z));
      }
}

TEST(ChainConfig, Validates) {
  EXPECT_THROW(chain("Z2", 1), DomainError);
  EXPECT_THROW(make_chain(Bicharacter::standard(FiniteAbelianGroup::parse("Z2")), 13, 4096), CapExceeded);
  EXPECT_EQ(chain("Z3", 4).dense_dim(), 81u);
}

TEST(DualityMpo, MatchesBruteForceFormula) {
  for (const auto& [spec, L] : std::vector<std::pair<const char*, int>>{{"Z2", 2}, {"Z2", 4}, {"Z2", 6}, {"Z3", 2}, {"Z3", 4}, {"Z4", 4}, {"Z2xZ2", 2}, {"Z2xZ2", 4}}) {
    const auto cfg = chain(spec, L);
    const auto g = cfg.group();
    const auto want = oracle::duality(g.factors(), oracle::standard_matrix(g.factors()), L);
    const auto dp = contract(build_duality_mpo(cfg, +1));
    const auto dm = contract(build_duality_mpo(cfg, -1));
    EXPECT_LT(diff(dp, want), 1e-12) << spec << " L=" << L;
    EXPECT_LT(diff(dm, want.adjoint()), 1e-12) << spec << " L=" << L;
  }
}

TEST(DualityMpo, DiagramCellMatchesBuiltTensor) {
  for (const char* spec : {"Z2", "Z3", "Z2xZ2"}) {
    const auto chi = Bicharacter::standard(FiniteAbelianGroup::parse(spec));
    const auto cfg = make_chain(chi, 2, 4096);
    for (int dir : {+1, -1}) {
      const auto cell = duality_cell_from_diagram(chi, dir);
      const auto built = build_duality_mpo(cfg, dir).tensors.front();
      ASSERT_EQ(cell.data.size(), built.data.size());
      for (std::size_t i = 0; i < cell.data.size(); ++i) EXPECT_LT(std::abs(cell.data[i] - built.data[i]), 1e-12);
    }
  }
}

TEST(DualityMpo, Z2LengthTwoHasRankTwo) {
  const auto d = contract(build_duality_mpo(chain("Z2", 2), +1));
  EXPECT_EQ(d.dim(), 4u);
  EXPECT_EQ(d.rank(), 2);
}

TEST(DualityMpo, OddLengthRejected) {
  EXPECT_THROW(build_duality_mpo(chain("Z2", 3), +1), PreconditionError);
}

TEST(TranslationMpo, IsCyclicShift) {
  for (const auto& [spec, L] : std::vector<std::pair<const char*, int>>{{"Z2", 4}, {"Z2", 5}, {"Z3", 3}, {"Z2xZ2", 3}}) {
    const auto cfg = chain(spec, L);
    const int n = cfg.local_dim();
    EXPECT_LT(diff(contract(build_translation_mpo(cfg, +1)), oracle::shift(n, L, 1)), 1e-15);
    EXPECT_LT(diff(contract(build_translation_mpo(cfg, -1)), oracle::shift(n, L, -1)), 1e-15);
    EXPECT_LT(diff(translation_operator(cfg, 2), oracle::shift(n, L, 2)), 1e-15);
  }
}

TEST(TranslationMpo, DressedEqualsProduct) {
  const auto cfg = chain("Z3", 4);
  const auto b = cfg.group().element_at(2);
  const auto eta = contract(symmetry_mpo(cfg, b));
  for (int dir : {+1, -1}) {
    const auto dressed = contract(build_translation_mpo(cfg, dir, b));
    const auto plain = contract(build_translation_mpo(cfg, dir));
    EXPECT_LT(dressed.max_abs_diff(eta * plain), 1e-12);
  }
}

TEST(SymmetryOperator, Z2IsProductOfX) {
  const auto cfg = chain("Z2", 4);
  const auto g = cfg.group();
  const auto eta = build_symmetry_operator(cfg, characters(g)[1]);
  const auto want = oracle::on_qubits(4, {{0, oracle::pauli_x()}, {1, oracle::pauli_x()}, {2, oracle::pauli_x()}, {3, oracle::pauli_x()}});
  EXPECT_LT(diff(eta, want), 1e-15);
  EXPECT_LT((eta * eta).max_abs_diff(DenseOperator::identity(16)), 1e-15);
  EXPECT_LT(build_symmetry_operator(cfg, characters(g)[0]).max_abs_diff(DenseOperator::identity(16)), 1e-15);
}

TEST(Contract, IdentityAndProducts) {
  const auto cfg = chain("Z3", 4);
  EXPECT_LT(contract(identity_mpo(cfg)).max_abs_diff(DenseOperator::identity(81)), 1e-15);
  const auto d = build_duality_mpo(cfg, +1);
  const auto t = build_translation_mpo(cfg, +1, cfg.group().element_at(1));
  const auto stacked = contract(stack(d, t));
  EXPECT_LT(stacked.max_abs_diff(contract(d) * contract(t)), 1e-12);
  const auto stacked2 = contract(stack(d, d));
  EXPECT_LT(stacked2.max_abs_diff(contract(d) * contract(d)), 1e-12);
}

TEST(Contract, ReportsCostAndRespectsCap) {
  const auto cfg = chain("Z2", 6);
  ContractionStats stats;
  const auto d = contract(build_duality_mpo(cfg, +1), 4096, &stats);
  EXPECT_EQ(stats.dim, 64u);
  EXPECT_GT(stats.axpy_calls, 0u);
  EXPECT_GT(stats.flops, 0u);
  EXPECT_THROW(contract(build_duality_mpo(cfg, +1), 32), CapExceeded);
  // Deterministic: a second run is bit-identical.
  EXPECT_EQ(d.data(), contract(build_duality_mpo(cfg, +1)).data());
}

TEST(Contract, CapFromEnvironment) {
  ::setenv("DUALITYKIT_CAP", "100", 1);
  EXPECT_EQ(default_cap(), 100u);
  ::unsetenv("DUALITYKIT_CAP");
  EXPECT_EQ(default_cap(), 4096u);
}

TEST(LocalOperators, ProjectorsMatchPaulis) {
  const auto cfg = chain("Z2", 4);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT(diff(projector_x(cfg, i), 0.5 * (id + oracle::on_qubits(4, {{i, oracle::pauli_x()}}))), 1e-15);
    EXPECT_LT(diff(projector_equal(cfg, i, (i + 1) % 4),
                   0.5 * (id + oracle::on_qubits(4, {{i, oracle::pauli_z()}, {i + 1, oracle::pauli_z()}}))),
              1e-15);
  }
}

TEST(LocalOperators, ClockAndShiftCommuteUpToPhase) {
  const auto g = FiniteAbelianGroup::parse("Z3");
  const auto x = shift_matrix(g, g.element_at(1));
  const auto z = clock_matrix(g, characters(g)[1]);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  EXPECT_LT((z * x).max_abs_diff(x * z * w), 1e-15);
}

TEST(DenseOperator, BinaryDumpIsRowMajorComplex128) {
  DenseOperator op(2);
  op(0, 1) = cplx(1.5, -2.0);
  op(1, 0) = cplx(3.0, 0.25);
  const std::string path = ::testing::TempDir() + "/dk_dump.bin";
  op.write_binary(path);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  ASSERT_NE(f, nullptr);
  double buf[8];
  ASSERT_EQ(std::fread(buf, sizeof(double), 8, f), 8u);
  std::fclose(f);
  EXPECT_EQ(buf[2], 1.5);
  EXPECT_EQ(buf[3], -2.0);
  EXPECT_EQ(buf[4], 3.0);
  EXPECT_EQ(buf[5], 0.25);
}
