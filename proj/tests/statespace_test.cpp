#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lrmp/errors.hpp"
#include "lrmp/statespace.hpp"

using namespace lrmp;

TEST(Enumerate, ThreeSitesTwoParticles) {
  const StateSpace space = enumerate(3, 2);
  const auto all = space.configurations();
  ASSERT_EQ(all.size(), 6u);
  for (const Configuration& eta : {Configuration{2, 0, 0}, Configuration{1, 1, 0},
                                   Configuration{0, 1, 1}}) {
    EXPECT_NE(std::find(all.begin(), all.end(), eta), all.end());
  }
}

TEST(Enumerate, SingleSite) {
  const auto all = enumerate(1, 5).configurations();
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], (Configuration{5}));
}

TEST(Enumerate, SizeMatchesBinomial) {
  EXPECT_EQ(enumerate(5, 6).size(), 210u);
  EXPECT_EQ(enumerate(5, 6).configurations().size(), 210u);
  EXPECT_EQ(enumerate(4, 0).size(), 1u);
}

TEST(Enumerate, ZeroSitesRejected) { EXPECT_THROW(enumerate(0, 3), InvalidLatticeError); }

TEST(Enumerate, ColexOrder) {
  const auto all = enumerate(2, 2).configurations();
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0], (Configuration{2, 0}));
  EXPECT_EQ(all[1], (Configuration{1, 1}));
  EXPECT_EQ(all[2], (Configuration{0, 2}));
}

TEST(Enumerate, CapacityOverflow) { EXPECT_THROW(StateSpace(200, 200), CapacityError); }

TEST(Rank, RoundTripAndDistinct) {
  const StateSpace space(4, 5);
  std::set<std::vector<int>> seen;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const Configuration eta = space.unrank(i);
    EXPECT_EQ(eta.total(), 5);
    EXPECT_EQ(space.rank(eta), i);
    seen.insert(eta.vector());
  }
  EXPECT_EQ(seen.size(), space.size());
}

TEST(Rank, ForeignConfigurationRejected) {
  const StateSpace space(3, 2);
  EXPECT_FALSE(space.contains(Configuration{1, 1, 1}));
  EXPECT_FALSE(space.contains(Configuration{1, 1}));
  EXPECT_THROW(space.unrank(space.size()), InvalidInput);
}

TEST(ApplyMove, Examples) {
  const Configuration eta{0, 3, 1, 0, 2};
  EXPECT_EQ(apply_move(eta, 1, 4), (Configuration{0, 2, 1, 0, 3}));
  EXPECT_EQ(apply_move(eta, 2, 3), (Configuration{0, 3, 0, 1, 2}));
}

TEST(ApplyMove, Errors) {
  EXPECT_THROW(apply_move(Configuration{1, 0}, 1, 0), EmptyDepartureError);
  EXPECT_THROW(apply_move(Configuration{1, 0}, 0, 0), SelfMoveError);
}

TEST(AddParticle, Examples) {
  EXPECT_EQ(add_particle(Configuration{0, 3, 1, 0, 2, 0}, 1), (Configuration{0, 4, 1, 0, 2, 0}));
  EXPECT_EQ(add_particle(Configuration{0, 0}, 0), (Configuration{1, 0}));
  EXPECT_EQ(add_particle(Configuration{2, 1}, 1), (Configuration{2, 2}));
}

TEST(OccupiedSites, Examples) {
  EXPECT_EQ(occupied_sites(Configuration{0, 3, 1, 0, 2, 0}), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_TRUE(occupied_sites(Configuration{0, 0, 0}).empty());
  EXPECT_EQ(occupied_sites(Configuration{1, 1, 1}), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Compress, Examples) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const auto c = compress(Configuration{0, 3, 2, 0, 1, 0}, x);
  EXPECT_EQ(c.configuration, (Configuration{3, 2, 1}));
  EXPECT_EQ(c.x, (std::vector<double>{2, 3, 5}));
  EXPECT_EQ(compress(Configuration{4}).configuration, (Configuration{4}));
  EXPECT_EQ(compress(Configuration{0, 0, 7}).configuration, (Configuration{7}));
  EXPECT_THROW(compress(Configuration{0, 0}), InvalidInput);
}

TEST(CompressWithEmpty, Examples) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const auto c = compress_with_empty(Configuration{0, 3, 2, 0, 1, 0}, x);
  EXPECT_EQ(c.configuration, (Configuration{3, 2, 1, 0}));
  EXPECT_EQ(c.x, (std::vector<double>{2, 3, 5, 6}));
  EXPECT_EQ(compress_with_empty(Configuration{1, 0}).configuration, (Configuration{1, 0}));
  EXPECT_THROW(compress_with_empty(Configuration{2, 3}), PreconditionError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(Configuration{0, 3, 1, 0, 2}), (Configuration{2, 0, 3, 1, 0}));
  EXPECT_EQ(shift(Configuration{5}), (Configuration{5}));
  Configuration eta{0, 3, 1, 0, 2};
  for (int i = 0; i < 5; ++i) eta = shift(eta);
  EXPECT_EQ(eta, (Configuration{0, 3, 1, 0, 2}));
}

TEST(NextConfiguration, WalksWholeSpace) {
  std::vector<int> occ{3, 0, 0};
  std::size_t count = 1;
  while (next_configuration(occ)) ++count;
  EXPECT_EQ(count, 10u);
  EXPECT_EQ(occ, (std::vector<int>{0, 0, 3}));
}

TEST(Configuration, NegativeEntriesRejected) {
  EXPECT_THROW(Configuration({1, -1}), InvalidInput);
}
