#include <gtest/gtest.h>

#include "infoax/corpus.hpp"
#include "infoax/io.hpp"

using namespace infoax;

TEST(InstanceGenerator, SameSeedSameInstances) {
  InstanceGenerator a(42);
  InstanceGenerator b(42);
  for (int i = 0; i < 50; ++i) {
    const auto pa = a.pair();
    const auto pb = b.pair();
    EXPECT_EQ(*pa.x.space(), *pb.x.space());
    EXPECT_EQ(pa.x.codes(), pb.x.codes());
    EXPECT_EQ(pa.y.alphabet(), pb.y.alphabet());
  }
}

TEST(InstanceGenerator, DifferentSeedsDiffer) {
  InstanceGenerator a(1);
  InstanceGenerator b(2);
  int differing = 0;
  for (int i = 0; i < 20; ++i) {
    const auto pa = a.pair();
    const auto pb = b.pair();
    if (!(*pa.x.space() == *pb.x.space()) || pa.x.codes() != pb.x.codes()) ++differing;
  }
  EXPECT_GT(differing, 10);
}

TEST(InstanceGenerator, RespectsBounds) {
  const CorpusBounds bounds;
  InstanceGenerator gen(9, bounds);
  for (int i = 0; i < 500; ++i) {
    const auto inst = gen.pair();
    EXPECT_LE(inst.x.space()->size(), bounds.max_outcomes);
    EXPECT_LE(inst.x.alphabet_size(), bounds.max_alphabet);
    EXPECT_LE(inst.y.alphabet_size(), bounds.max_alphabet);
    for (const auto& w : inst.x.space()->weights()) {
      EXPECT_LE(w.denominator(), bounds.max_denominator);
      EXPECT_FALSE(w.is_negative());
    }
  }
}

TEST(InstanceGenerator, WeightsSumToOne) {
  InstanceGenerator gen(10);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      Rational total;
      for (const auto& w : gen.weights(n, rep % 2 == 0)) total += w;
      EXPECT_EQ(total, Rational(1));
    }
  }
  for (const auto& w : gen.weights(6, false)) EXPECT_FALSE(w.is_zero());
}

TEST(InstanceGenerator, BijectionsAreBijective) {
  InstanceGenerator gen(11);
  const std::vector<Label> alphabet{"a", "b", "c", "d"};
  for (int i = 0; i < 50; ++i) {
    const auto f = gen.bijection(alphabet, "z");
    EXPECT_EQ(f.source_alphabet(), alphabet);
    EXPECT_EQ(f.target_alphabet().size(), alphabet.size());
  }
}

TEST(InstanceGenerator, SequencesHaveValidTermsAndLimits) {
  InstanceGenerator gen(12);
  int products = 0;
  for (int i = 0; i < 90; ++i) {
    const auto inst = gen.sequence();
    const auto limit = inst.limit();
    const auto seq = inst.sequence();
    EXPECT_NO_THROW(seq.generator(inst.stabilization_index));
    EXPECT_NO_THROW(seq.generator(1'000'000));
    const auto rows = limit.row_marginal();
    const auto cols = limit.col_marginal();
    bool product = true;
    for (std::size_t r = 0; r < limit.rows().size(); ++r) {
      for (std::size_t c = 0; c < limit.cols().size(); ++c) {
        product = product && limit.at(r, c) == rows.at(limit.rows()[r]) * cols.at(limit.cols()[c]);
      }
    }
    products += product;
  }
  EXPECT_GE(products, 20);
}

TEST(InstanceGenerator, SerializedCorpusIsReproducible) {
  auto dump = [](std::uint64_t seed) {
    InstanceGenerator gen(seed);
    std::string out;
    for (int i = 0; i < 20; ++i) {
      const auto p = gen.pair();
      out += io::to_json(io::make_document({{"X", p.x}, {"Y", p.y}})).dump();
      out += io::to_json(gen.sequence()).dump();
    }
    return out;
  };
  EXPECT_EQ(dump(5), dump(5));
}
