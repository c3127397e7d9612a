#include <gtest/gtest.h>

#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hpoly/parallel.hpp"
#include "hpoly/rng.hpp"

namespace hpoly {
namespace {

TEST(CounterRng, OutputDependsOnlyOnKeyAndIndex) {
  CounterRng a(42);
  const CounterRng b(42);
  for (std::uint64_t k = 0; k < 100; ++k) EXPECT_EQ(a(), b.at(k));
  EXPECT_NE(CounterRng(42).at(0), CounterRng(43).at(0));
}

TEST(CounterRng, ReferenceValuesArePinned) {
  static_assert(mix64(0) == 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(CounterRng(0).at(0), mix64(mix64(0)));
}

TEST(CounterRng, UniformIsInUnitInterval) {
  CounterRng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  const double v = rng.uniform(-3.0, -1.0);
  EXPECT_GE(v, -3.0);
  EXPECT_LT(v, -1.0);
}

TEST(CounterRng, SignsAreBalanced) {
  const CounterRng rng(9);
  long sum = 0;
  for (std::uint64_t k = 0; k < 100000; ++k) sum += rng.sign_at(k);
  EXPECT_LT(std::abs(sum), 1500);  // about 4.7 sigma
}

TEST(DeriveSeed, PathOrderAndLengthMatter) {
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(1, {2, 0}));
  EXPECT_NE(derive_seed(1, {}), derive_seed(2, {}));
  EXPECT_EQ(derive_seed(5, {4, 8, 1}), derive_seed(5, {4, 8, 1}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t n = 0; n < 64; ++n) {
    for (std::uint64_t s = 0; s < 64; ++s) seen.insert(derive_seed(0, {n, s}));
  }
  EXPECT_EQ(seen.size(), 64u * 64u);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (unsigned workers : {1u, 2u, 4u, 0u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    EXPECT_EQ(std::accumulate(hits.begin(), hits.end(), 0), 1000);
    EXPECT_EQ(*std::min_element(hits.begin(), hits.end()), 1);
  }
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  for (unsigned workers : {1u, 4u}) {
    try {
      parallel_for(100, workers, [](std::size_t i) {
        if (i == 37 || i == 80) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "37");
    }
  }
}

TEST(ParallelFor, StopPreventsNewItems) {
  std::stop_source stop;
  stop.request_stop();
  std::atomic<int> ran{0};
  parallel_for(100, 4, [&](std::size_t) { ++ran; }, stop.get_token());
  EXPECT_EQ(ran.load(), 0);

  std::stop_source later;
  std::atomic<int> done{0};
  parallel_for(1000, 1, [&](std::size_t i) {
    ++done;
    if (i == 9) later.request_stop();
  }, later.get_token());
  EXPECT_EQ(done.load(), 10);
}

}  // namespace
}  // namespace hpoly
