// Copyright 2026 The subpar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "subpar/subpar.h"

namespace subpar {
namespace {

using testing::K2;

TEST(SubsetTest, MembershipAndSetAlgebra) {
  Subset s(70);
  s.Insert(0);
  s.Insert(65);
  EXPECT_TRUE(s.Contains(65));
  EXPECT_FALSE(s.Contains(64));
  EXPECT_EQ(s.Count(), 2);
  EXPECT_EQ(s.Members(), (std::vector<ElementId>{0, 65}));
  EXPECT_EQ(s.With(3).Count(), 3);
  EXPECT_EQ(s.Without(0).Members(), (std::vector<ElementId>{65}));
  EXPECT_TRUE(s.IsSubsetOf(Subset::Full(70)));
  EXPECT_FALSE(Subset::Full(70).IsSubsetOf(s));
  EXPECT_EQ(Subset::Full(70).Minus(s).Count(), 68);
  EXPECT_EQ(Subset::FromMembers(3, {0, 2}).ToString(), "{0,2}");
}

TEST(SubsetTest, FullSetHasNoStrayBits) {
  for (int n : {1, 63, 64, 65, 128}) {
    const Subset full = Subset::Full(n);
    EXPECT_EQ(full.Count(), n);
    EXPECT_TRUE(full.view().IsValid());
  }
}

TEST(SubsetTest, OutOfRangeElementsAreRejected) {
  Subset s(4);
  EXPECT_THROW(s.Insert(4), Error);
  EXPECT_THROW(s.Insert(-1), Error);
  try {
    Subset::FromMask(3, 0b1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidElement);
  }
}

TEST(QueryBatchTest, PackedQueriesRoundTrip) {
  QueryBatch batch(3);
  batch.Append(Subset::FromMembers(3, {1}));
  const std::size_t q = batch.AppendEmpty();
  batch.Insert(q, 2);
  batch.AppendMask(0b101);
  ASSERT_EQ(batch.size(), 3u);
  EXPECT_EQ(batch[0].Members(), (std::vector<ElementId>{1}));
  EXPECT_EQ(batch[1].Members(), (std::vector<ElementId>{2}));
  EXPECT_EQ(batch[2].Members(), (std::vector<ElementId>{0, 2}));
  batch.Erase(2, 0);
  EXPECT_EQ(batch[2].Members(), (std::vector<ElementId>{2}));
  EXPECT_THROW(batch.Append(Subset(4)), Error);
}

TEST(SetOracleTest, K2BatchValuesAndAccounting) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  QueryBatch batch(2);
  for (std::uint64_t m : {0b00, 0b01, 0b10, 0b11}) batch.AppendMask(m);
  EXPECT_EQ(oracle.EvalBatch(batch), (std::vector<double>{0, 1, 1, 0}));
  EXPECT_EQ(oracle.accounting().rounds, 1);
  EXPECT_EQ(oracle.accounting().queries, 4);
}

TEST(SetOracleTest, SingleQueryIsOneRound) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  EXPECT_EQ(oracle.EvalSingle(Subset(2)), 0.0);
  EXPECT_EQ(oracle.EvalSingle(Subset::FromMembers(2, {0})), 1.0);
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{2, 2}));
}

TEST(SetOracleTest, SequentialBatchesAccumulate) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  QueryBatch three(2);
  QueryBatch five(2);
  for (int i = 0; i < 3; ++i) three.AppendEmpty();
  for (int i = 0; i < 5; ++i) five.AppendMask(static_cast<std::uint64_t>(i % 4));
  oracle.EvalBatch(three);
  oracle.EvalBatch(five);
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{2, 8}));
}

TEST(SetOracleTest, ResetIsIdempotent) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  oracle.EvalSingle(Subset(2));
  oracle.ResetAccounting();
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{0, 0}));
  oracle.ResetAccounting();
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{0, 0}));
  QueryBatch two(2);
  two.AppendEmpty();
  two.AppendEmpty();
  oracle.EvalBatch(two);
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{1, 2}));
}

TEST(SetOracleTest, RejectsEmptyAndInvalidBatches) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  QueryBatch empty(2);
  EXPECT_THROW(oracle.EvalBatch(empty), Error);
  QueryBatch stray(2);
  stray.AppendMask(0b100);
  try {
    oracle.EvalBatch(stray);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidElement);
  }
  QueryBatch wrong_n(3);
  wrong_n.AppendEmpty();
  EXPECT_THROW(oracle.EvalBatch(wrong_n), Error);
  EXPECT_EQ(oracle.accounting(), (OracleAccounting{0, 0}));
}

TEST(SetOracleTest, ObserverSeesEveryBatch) {
  const CutInstance k2 = K2();
  SetOracle oracle(k2);
  std::vector<std::size_t> sizes;
  oracle.SetBatchObserver([&](std::size_t size) { sizes.push_back(size); });
  oracle.EvalSingle(Subset(2));
  QueryBatch b(2);
  b.AppendEmpty();
  b.AppendEmpty();
  oracle.EvalBatch(b);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2}));
}

// Results do not depend on the number of worker threads.
TEST(SetOracleTest, ThreadCountDoesNotChangeResults) {
  const CoverageInstance cov = GenerateCoverage(12, 3);
  QueryBatch batch(12);
  for (std::uint64_t m = 0; m < 4096; ++m) batch.AppendMask(m);
  SetOracle one(cov, 1);
  SetOracle four(cov, 4);
  EXPECT_EQ(one.EvalBatch(batch), four.EvalBatch(batch));
}

TEST(ParallelForTest, VisitsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(5000);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(ParallelFor(5000, 4,
                           [](std::size_t i) {
                             if (i == 4321) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

TEST(RandomTest, SubStreamsAreReproducibleAndDistinct) {
  Rng a = SubStream(5, {1, 2});
  Rng b = SubStream(5, {1, 2});
  Rng c = SubStream(5, {2, 1});
  Rng d = SubStream(6, {1, 2});
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

TEST(FractionalPointTest, ClampsWithinToleranceOnly) {
  const FractionalPoint p({-1e-13, 1.0 + 1e-13, 0.5});
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);
  try {
    FractionalPoint({1.0 + 1e-9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfBox);
  }
  EXPECT_THROW(FractionalPoint({std::nan("")}), Error);
}

TEST(FractionalPointTest, JoinAndMeetWithElement) {
  const FractionalPoint p({0.3, 0.6});
  EXPECT_EQ(p.JoinElement(0).vector(), (std::vector<double>{1.0, 0.6}));
  EXPECT_EQ(p.MeetComplement(1).vector(), (std::vector<double>{0.3, 0.0}));
  EXPECT_TRUE(p.LessEq(FractionalPoint({0.3, 0.7})));
  EXPECT_FALSE(p.LessEq(FractionalPoint({0.2, 0.7})));
}

}  // namespace
}  // namespace subpar
