#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "hmfa/group.hpp"
#include "hmfa/scan.hpp"

using namespace hmfa;

TEST_CASE("blocked_sum is bit-identical across thread counts") {
  auto f = [](std::int64_t i) { return scan::u01(42, static_cast<std::uint64_t>(i)) - 0.5; };
  const std::int64_t n = 1'000'000;
  const double ref = scan::serial::blocked_sum(n, f);
  for (int t : {1, 2, 4, 8}) {
    scan::set_thread_count(t);
    CHECK(scan::blocked_sum(n, f) == ref);
  }
}

TEST_CASE("count_if is bit-identical across thread counts") {
  auto pred = [](std::int64_t i) { return scan::u01(7, static_cast<std::uint64_t>(i)) < 0.25; };
  const std::int64_t n = 2'000'000;
  const std::int64_t ref = scan::serial::count_if(n, pred);
  for (int t : {1, 3, 8}) {
    scan::set_thread_count(t);
    CHECK(scan::count_if(n, pred) == ref);
  }
}

TEST_CASE("min_reduce matches serial") {
  auto f = [](std::int64_t i) { return scan::u01(99, static_cast<std::uint64_t>(i)); };
  const std::int64_t n = 500'000;
  const double ref = scan::serial::min_reduce(n, f);
  for (int t : {1, 2, 8}) {
    scan::set_thread_count(t);
    CHECK(scan::min_reduce(n, f) == ref);
  }
}

TEST_CASE("u01 is deterministic and in [0,1)") {
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    const double v = scan::u01(3, i);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    CHECK(scan::u01(3, i) == v);
  }
  CHECK(scan::u01(3, 5) != scan::u01(4, 5));
}

TEST_CASE("MC ball volume parallel equals serial bitwise") {
  const std::int64_t n = 1'000'000;
  const double ser = mc_unit_ball_volume_serial(n, 11);
  for (int t : {1, 2, 4}) {
    scan::set_thread_count(t);
    CHECK(mc_unit_ball_volume(n, 11) == ser);
  }
}

TEST_CASE("pairwise_fold sums exactly for powers of two layouts") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(scan::pairwise_fold(v) == ((1.0 + 2.0) + (3.0 + 4.0)) + 5.0);
}
