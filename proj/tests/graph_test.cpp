#include <gtest/gtest.h>

#include "pmcdse/graph.h"
#include "test_support.h"

namespace pmcdse {
namespace {

// 0 -> 1 <-> 2, 0 -> 3 (absorbing), 4 isolated self-loop
SparseMatrix sample() {
    return SparseMatrix::fromTriplets(5, 5,
                                      {{{0, 1}, 0.5},
                                       {{0, 3}, 0.5},
                                       {{1, 2}, 1.0},
                                       {{2, 1}, 1.0},
                                       {{3, 3}, 1.0},
                                       {{4, 4}, 1.0}});
}

TEST(GraphTest, StronglyConnectedComponents) {
    auto sccs = stronglyConnectedComponents(sample());
    std::vector<std::vector<StateId>> sorted(sccs.begin(), sccs.end());
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::vector<StateId>>{{0}, {1, 2}, {3}, {4}}));
}

TEST(GraphTest, BottomComponentsSortedBySmallestMember) {
    auto bsccs = bottomSccs(sample());
    ASSERT_EQ(bsccs.size(), 3u);
    EXPECT_EQ(bsccs[0].members(), (std::vector<StateId>{1, 2}));
    EXPECT_EQ(bsccs[1].members(), (std::vector<StateId>{3}));
    EXPECT_EQ(bsccs[2].members(), (std::vector<StateId>{4}));
}

TEST(GraphTest, TransientStateWithoutSelfLoopIsNotBottom) {
    auto m = SparseMatrix::fromTriplets(2, 2, {{{0, 1}, 1.0}, {{1, 1}, 1.0}});
    auto bsccs = bottomSccs(m);
    ASSERT_EQ(bsccs.size(), 1u);
    EXPECT_EQ(bsccs[0].members(), (std::vector<StateId>{1}));
}

TEST(GraphTest, ReachabilityBothDirections) {
    auto m = sample();
    EXPECT_EQ(forwardReachable(m, StateSet::of(5, {0})).members(), (std::vector<StateId>{0, 1, 2, 3}));
    auto back = backwardReachable(m.transpose(), StateSet::of(5, {3}), StateSet(5, true));
    EXPECT_EQ(back.members(), (std::vector<StateId>{0, 3}));
}

TEST(GraphTest, QualitativeUntilSplitsCertainStates) {
    auto m = sample();
    auto split = qualitativeUntil(m, StateSet(5, true), StateSet::of(5, {3}));
    EXPECT_EQ(split.prob0.members(), (std::vector<StateId>{1, 2, 4}));
    EXPECT_EQ(split.prob1.members(), (std::vector<StateId>{3}));

    auto viaCycle = qualitativeUntil(m, StateSet(5, true), StateSet::of(5, {1}));
    EXPECT_EQ(viaCycle.prob1.members(), (std::vector<StateId>{1, 2}));
    EXPECT_TRUE(viaCycle.prob0.contains(3));
    EXPECT_FALSE(viaCycle.prob0.contains(0));
}

TEST(GraphTest, ReferenceChainIsIrreducible) {
    auto b = testing::loadReference();
    for (std::size_t theta = 1; theta <= 12; ++theta) {
        auto chain = testing::referenceChain(b, theta);
        auto bsccs = bsccDecomposition(chain);
        ASSERT_EQ(bsccs.size(), 1u);
        EXPECT_EQ(bsccs[0].count(), chain.stateCount());
    }
}

}  // namespace
}  // namespace pmcdse
