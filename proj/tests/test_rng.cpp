#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "mfrb/rng.hpp"

using namespace mfrb;

TEST_CASE("streams are reproducible and keyed by the full triple") {
  RngStream a(42, 1, 7), b(42, 1, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream base(42, 1, 7), other_index(42, 1, 8), other_salt(42, 2, 7), other_seed(43, 1, 7);
  std::set<std::uint64_t> firsts{RngStream(42, 1, 7).next_u64(), other_index.next_u64(),
                                 other_salt.next_u64(), other_seed.next_u64()};
  CHECK(firsts.size() == 4);
  (void)base;
}

TEST_CASE("next_double stays in [0,1) and looks uniform") {
  RngStream rng(1, 2, 3);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  // mean of U[0,1): sd of the sample mean is 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("next_below respects the bound and hits every residue") {
  RngStream rng(9, 9, 9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.next_below(7);
    REQUIRE(x < 7);
    ++counts[x];
  }
  for (const int c : counts) CHECK(c > 800);  // ~1000 expected, loose 6-sigma band
}
