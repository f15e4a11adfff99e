#include <gtest/gtest.h>

#include <set>

#include "dualitykit/abelian_group.hpp"
#include "dualitykit/errors.hpp"
#include "oracles.hpp"

using namespace dualitykit;
using oracle::cplx;

namespace {

const std::vector<std::string> kGroups = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"};

}  // namespace

TEST(AbelianGroup, ParsesSpecs) {
  const auto g = FiniteAbelianGroup::parse("Z2xZ4");
  EXPECT_EQ(g.factors(), (std::vector<int>{2, 4}));
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(g.to_string(), "Z2xZ4");

  const auto trivial = FiniteAbelianGroup::parse("Z1");
  EXPECT_EQ(trivial.order(), 1);
  EXPECT_EQ(trivial.rank(), 0);
  EXPECT_EQ(FiniteAbelianGroup::parse("Z1xZ3").factors(), (std::vector<int>{3}));

  for (const char* bad : {"", "Z", "Z0", "X2", "Z2x", "Z2*Z3", "Z-2"}) EXPECT_THROW(FiniteAbelianGroup::parse(bad), DomainError) << bad;
}

TEST(AbelianGroup, ElementIndexIsMixedRadix) {
  for (const auto& spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto elems = g.elements();
    ASSERT_EQ(static_cast<int>(elems.size()), g.order());
    for (int i = 0; i < g.order(); ++i) {
      EXPECT_EQ(g.index_of(elems[static_cast<std::size_t>(i)]), i);
      EXPECT_EQ(elems[static_cast<std::size_t>(i)].coords, oracle::digits(i, g.factors()));
    }
  }
}

TEST(AbelianGroup, GroupLaws) {
  for (const auto& spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    for (const auto& a : g.elements()) {
      EXPECT_EQ(g.add(a, g.negate(a)), g.identity());
      EXPECT_EQ(g.scale(a, g.exponent()), g.identity());
      for (const auto& b : g.elements())
        EXPECT_EQ(g.index_of(g.add(a, b)), oracle::add(g.factors(), g.index_of(a), g.index_of(b)));
    }
  }
}

TEST(AbelianGroup, Labels) {
  const auto z3 = FiniteAbelianGroup::parse("Z3");
  EXPECT_EQ(z3.element_label(z3.element_at(0)), "1");
  EXPECT_EQ(z3.element_label(z3.element_at(1)), "η");
  EXPECT_EQ(z3.element_label(z3.element_at(2)), "η^2");
  const auto v = FiniteAbelianGroup::parse("Z2xZ2");
  EXPECT_EQ(v.element_label(v.element_at(2)), "η(1,0)");
}

TEST(Characters, MatchBruteForce) {
  for (const auto& spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto chars = characters(g);
    ASSERT_EQ(static_cast<int>(chars.size()), g.order());
    std::set<std::vector<int>> distinct;
    for (int c = 0; c < g.order(); ++c) {
      std::vector<int> values;
      for (int x = 0; x < g.order(); ++x) {
        const cplx expected = oracle::chi(g.factors(), oracle::standard_matrix(g.factors()), c, x);
        const cplx got = chars[static_cast<std::size_t>(c)](g, g.element_at(x)).to_complex();
        EXPECT_LT(std::abs(got - expected), 1e-14);
        values.push_back(static_cast<int>(std::lround(std::arg(got) * 1000)));
      }
      distinct.insert(values);
    }
    EXPECT_EQ(static_cast<int>(distinct.size()), g.order());
  }
}

TEST(Characters, ProductAndInverse) {
  const auto g = FiniteAbelianGroup::parse("Z2xZ4");
  const auto chars = characters(g);
  for (const auto& a : chars)
    for (const auto& b : chars) {
      const auto ab = character_product(g, a, b);
      for (const auto& x : g.elements()) EXPECT_EQ(ab(g, x), a(g, x) * b(g, x));
    }
  for (const auto& a : chars) EXPECT_TRUE(character_product(g, a, character_inverse(g, a)).is_trivial());
}

TEST(Phase, ExactArithmetic) {
  EXPECT_EQ(Phase(3, 6), Phase(1, 2));
  EXPECT_EQ(Phase(-1, 4), Phase(3, 4));
  EXPECT_TRUE((Phase(1, 3) * Phase(2, 3)).is_one());
  EXPECT_EQ(Phase(1, 4).to_complex(), cplx(0.0, 1.0));
  EXPECT_EQ(Phase(1, 2).to_complex(), cplx(-1.0, 0.0));
  EXPECT_THROW(Phase(1, 0), DomainError);
}

TEST(Bicharacter, StandardMatchesBruteForce) {
  for (const auto& spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto chi = Bicharacter::standard(g);
    const auto m = oracle::standard_matrix(g.factors());
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        EXPECT_LT(std::abs(chi(g.element_at(a), g.element_at(b)).to_complex() - oracle::chi(g.factors(), m, a, b)), 1e-14);
    EXPECT_TRUE(is_nondegenerate(chi)) << spec;
  }
}

TEST(Bicharacter, Z2HasEntriesPlusMinusOne) {
  const auto g = FiniteAbelianGroup::parse("Z2");
  const auto chi = Bicharacter::standard(g);
  EXPECT_EQ(chi(g.element_at(1), g.element_at(1)).to_complex(), cplx(-1.0));
  EXPECT_EQ(chi(g.element_at(0), g.element_at(1)).to_complex(), cplx(1.0));
}

TEST(Bicharacter, TildeIsInvertible) {
  for (const auto& spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto chi = Bicharacter::standard(g);
    const auto t = chi_tilde(chi);
    EXPECT_TRUE(t.is_isomorphism);
    for (const auto& a : g.elements()) {
      const auto back = chi.tilde_inverse(chi.tilde(a));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, a);
      for (const auto& b : g.elements()) EXPECT_EQ(chi.tilde(a)(g, b), chi(a, b));
    }
  }
}

TEST(Bicharacter, DegenerateAndInvalid) {
  const auto g = FiniteAbelianGroup::parse("Z2xZ2");
  EXPECT_FALSE(is_nondegenerate(Bicharacter::trivial(g)));
  EXPECT_FALSE(is_nondegenerate(parse_bicharacter(g, "[[1,0],[0,0]]")));
  // Off-diagonal pairing is a valid non-degenerate alternative.
  EXPECT_TRUE(is_nondegenerate(parse_bicharacter(g, "[[0,1],[1,0]]")));
  EXPECT_THROW(parse_bicharacter(g, "[[1,1],[0,1]]"), DomainError);
  EXPECT_THROW(parse_bicharacter(g, "[[1,0]]"), DomainError);
  EXPECT_THROW(parse_bicharacter(g, "not json"), DomainError);
  // On Z2xZ4 the Z2 factor cannot pair with itself at a quarter turn.
  const auto h = FiniteAbelianGroup::parse("Z2xZ4");
  EXPECT_THROW(parse_bicharacter(h, "[[1,0],[0,1]]"), DomainError);
  EXPECT_FALSE(is_nondegenerate(parse_bicharacter(FiniteAbelianGroup::parse("Z4"), "[[2]]")));
}

TEST(Bicharacter, TrivialGroup) {
  const auto g = FiniteAbelianGroup::parse("Z1");
  const auto chi = Bicharacter::standard(g);
  EXPECT_TRUE(is_nondegenerate(chi));
  EXPECT_TRUE(chi(g.identity(), g.identity()).is_one());
}
