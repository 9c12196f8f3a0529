#include <gtest/gtest.h>

#include "infoax/constructions.hpp"
#include "infoax/corpus.hpp"
#include "infoax/errors.hpp"
#include "infoax/measures.hpp"
#include "support.hpp"

using namespace infoax;

namespace {

struct CoinAndConstant {
  SpacePtr space = uniform_space(2);
  FiniteRandomVariable coin{space, std::vector<Label>{"h", "t"}};
  FiniteRandomVariable constant = FiniteRandomVariable::constant(space);
  Pmf half{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}};
};

}  // namespace

TEST(ConvexSum, SingleSummandKeepsPmfUpToTagging) {
  CoinAndConstant c;
  const auto sum = convex_sum(Pmf{{"0", Rational(1)}}, {{"0", c.coin}});
  EXPECT_EQ(pmf(sum), (Pmf{{"(0,h)", Rational(1, 2)}, {"(0,t)", Rational(1, 2)}}));
}

TEST(ConvexSum, CoinAndConstant) {
  CoinAndConstant c;
  const auto sum = convex_sum(c.half, {{"0", c.coin}, {"1", c.constant}});
  EXPECT_EQ(pmf(sum),
            (Pmf{{"(0,h)", Rational(1, 4)}, {"(0,t)", Rational(1, 4)}, {"(1,*)", Rational(1, 2)}}));
  EXPECT_NEAR(entropy(sum), 1.5, 1e-12);
}

TEST(ConvexSum, Errors) {
  CoinAndConstant c;
  const auto other = infoax::testing::ThreePoint{}.x;
  EXPECT_THROW(convex_sum(Pmf{{"0", Rational(1, 2)}}, {{"0", c.coin}}), NotAPmf);
  EXPECT_THROW(convex_sum(Pmf{{"0", Rational(3, 2)}, {"1", Rational(-1, 2)}}, {{"0", c.coin}, {"1", c.coin}}),
               NotAPmf);
  EXPECT_THROW(convex_sum(c.half, {{"0", c.coin}, {"1", other}}), DomainMismatch);
  EXPECT_THROW(convex_sum(c.half, {{"0", c.coin}}), AlphabetMismatch);
  EXPECT_THROW(convex_sum_pairs(c.half, {{"0", {c.coin, c.coin}}, {"1", {c.coin, other}}}), DomainMismatch);
}

TEST(ConvexSumPairs, StrongAdditivityHandExample) {
  CoinAndConstant c;
  const auto [y, z] = convex_sum_pairs(c.half, {{"0", {c.coin, c.coin}}, {"1", {c.constant, c.constant}}});
  EXPECT_NEAR(mutual_information(y, z), 1.5, 1e-12);
}

TEST(ConvexSumPairs, SingleMemberIsThePairUpToTagging) {
  CoinAndConstant c;
  const infoax::testing::ThreePoint t;
  const auto [y, z] = convex_sum_pairs(Pmf{{"k", Rational(1)}}, {{"k", {t.x, t.y}}});
  EXPECT_DOUBLE_EQ(mutual_information(y, z), mutual_information(t.x, t.y));
}

TEST(ConvexProduct, ExactEqualityOnHandExample) {
  CoinAndConstant c;
  const auto cmp = compare_convex_product(c.half, {{"0", {c.coin, c.coin}}, {"1", {c.constant, c.coin}}});
  EXPECT_TRUE(cmp.equal());
  EXPECT_EQ(cmp.outcomes_checked, 4u);
}

TEST(Relabeling, IdentityAndCoin) {
  const auto coin = infoax::testing::fair_coin();
  const auto same = relabel(coin, Relabeling::identity(coin.alphabet()));
  EXPECT_EQ(same.alphabet(), coin.alphabet());
  EXPECT_EQ(same.codes(), coin.codes());
  const Relabeling bits(std::map<Label, Label>{{"h", "0"}, {"t", "1"}});
  EXPECT_EQ(pmf(relabel(coin, bits)), (Pmf{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}}));
  EXPECT_EQ(bits.inverse()("1"), "t");
}

TEST(Relabeling, Errors) {
  const auto coin = infoax::testing::fair_coin();
  EXPECT_THROW(Relabeling(std::map<Label, Label>{{"h", "0"}, {"t", "0"}}), ValidationError);
  EXPECT_THROW(relabel(coin, Relabeling(std::map<Label, Label>{{"h", "0"}})), AlphabetMismatch);
  EXPECT_THROW(relabel(coin, Relabeling(std::map<Label, Label>{{"h", "0"}, {"t", "1"}, {"x", "2"}})), AlphabetMismatch);
  EXPECT_THROW(map_labels(coin, {{"h", "0"}}), AlphabetMismatch);
}

TEST(MapLabels, MergesLabels) {
  const auto x = infoax::testing::ThreePoint{}.y;
  EXPECT_TRUE(map_labels(x, {{"u", "k"}, {"v", "k"}}).is_constant());
}

TEST(InversePolynomial, EvaluatesExactly) {
  const InversePolynomial p({Rational(1, 2), Rational(1), Rational(-2)});
  EXPECT_EQ(p(1), Rational(-1, 2));
  EXPECT_EQ(p(2), Rational(1, 2));
  EXPECT_EQ(p.limit(), Rational(1, 2));
  EXPECT_THROW(p(0), ValidationError);
}

TEST(WeakConvergence, ConstantSequenceHasZeroDeviation) {
  const Pmf p{{"a", Rational(1, 3)}, {"b", Rational(2, 3)}};
  const PmfSequence seq{{"a", "b"}, [p](std::uint64_t) { return p; }, 1};
  const auto report = check_weak_convergence(seq, p, 1e-12, 10);
  for (const auto& probe : report.probes) {
    EXPECT_TRUE(probe.max_deviation.is_zero());
    EXPECT_EQ(probe.entropy_gap, 0.0);
  }
  EXPECT_TRUE(report.within_tolerance);
}

TEST(WeakConvergence, ShiftedCoinDeviationIsOneOverNPlusTwo) {
  const PmfSequence seq{{"a", "b"},
                        [](std::uint64_t n) {
                          const Rational d(1, static_cast<long>(n) + 2);
                          return Pmf{{"a", Rational(1, 2) + d}, {"b", Rational(1, 2) - d}};
                        },
                        1};
  const Pmf limit{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  const auto report = check_weak_convergence(seq, limit, 1e-2, 1000);
  EXPECT_EQ(report.at_probe().max_deviation, Rational(1, 1002));
  EXPECT_TRUE(report.within_tolerance);
  EXPECT_TRUE(report.monotone);
  EXPECT_LT(report.probes.back().entropy_gap, report.probes.front().entropy_gap);
  EXPECT_LT(report.at_probe().entropy_gap, 1e-5);
}

TEST(WeakConvergence, Errors) {
  const PmfSequence seq{{"a", "b"},
                        [](std::uint64_t n) {
                          if (n < 5) return Pmf{{"a", Rational(1)}};
                          return Pmf{{"a", Rational(1, 2)}, {"c", Rational(1, 2)}};
                        },
                        5};
  const Pmf limit{{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  EXPECT_THROW(check_weak_convergence(seq, limit, 1e-3, 2), ValidationError);
  EXPECT_THROW(check_weak_convergence(seq, limit, 1e-3, 10), AlphabetMismatch);
  EXPECT_THROW(check_weak_convergence(seq, Pmf{{"a", Rational(1)}}, 1e-3, 10), AlphabetMismatch);
}

TEST(WeakConvergence, JointSequenceReportsInformationGap) {
  const Rational q(1, 4);
  const auto seq = inverse_polynomial_sequence(
      {"0", "1"}, {"0", "1"},
      {InversePolynomial({q, q}), InversePolynomial({q, -q}), InversePolynomial({q, -q}),
       InversePolynomial({q, q})},
      1);
  const auto limit = JointTable({"0", "1"}, {"0", "1"}, {q, q, q, q});
  const auto report = check_weak_convergence(seq, limit, 1e-3, 1000);
  ASSERT_TRUE(report.at_probe().information_gap);
  EXPECT_LT(*report.at_probe().information_gap, 1e-6);
  EXPECT_TRUE(report.monotone);
}

// --- properties --------------------------------------------------------------

TEST(ConstructionProperties, ConvexSumPmfIsWeightTimesMemberPmf) {
  InstanceGenerator gen(301);
  for (int i = 0; i < 200; ++i) {
    const auto m = gen.mixture();
    std::map<Label, FiniteRandomVariable> ys;
    for (const auto& [x, yz] : m.family) ys.emplace(x, yz.first);
    const auto sum = convex_sum(m.weights, ys);
    Pmf expected;
    for (const auto& [x, y] : ys) {
      for (const auto& [label, mass] : pmf(y)) expected[pair_label(x, label)] += m.weights.at(x) * mass;
    }
    EXPECT_EQ(pmf(sum), expected);

    double rhs = entropy(m.weights);
    for (const auto& [x, y] : ys) rhs += m.weights.at(x).to_double() * entropy(y);
    EXPECT_NEAR(entropy(sum), rhs, 1e-9);
  }
}

TEST(ConstructionProperties, ConvexProductIsExactFunctionEquality) {
  InstanceGenerator gen(302);
  for (int i = 0; i < 200; ++i) {
    const auto m = gen.mixture();
    const auto cmp = compare_convex_product(m.weights, m.family);
    EXPECT_TRUE(cmp.equal()) << cmp.mismatches << " mismatches";
    EXPECT_GT(cmp.outcomes_checked, 0u);
  }
}

TEST(ConstructionProperties, RelabelingPreservesInformationAndPmfMultiset) {
  InstanceGenerator gen(303);
  for (int i = 0; i < 300; ++i) {
    const auto inst = gen.pair();
    const auto f = gen.bijection(inst.x.alphabet(), "f");
    const auto g = gen.bijection(inst.y.alphabet(), "g");
    const auto fx = relabel(inst.x, f);
    const auto gy = relabel(inst.y, g);
    EXPECT_EQ(mutual_information(fx, gy), mutual_information(inst.x, inst.y));
    auto a = inst.x.pmf_values();
    auto b = fx.pmf_values();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(relabel(fx, f.inverse()).codes(), inst.x.codes());
  }
}

TEST(ConstructionProperties, GeneratedSequencesConvergeInInformation) {
  InstanceGenerator gen(304);
  for (int i = 0; i < 100; ++i) {
    const auto inst = gen.sequence();
    const auto report = check_weak_convergence(inst.sequence(), inst.limit(), 1e-2,
                                               std::max<std::uint64_t>(1000, inst.stabilization_index));
    EXPECT_TRUE(report.within_tolerance);
    ASSERT_TRUE(report.probes.back().information_gap);
    EXPECT_LT(*report.probes.back().information_gap, 1e-2);
  }
}
