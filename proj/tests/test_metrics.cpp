#include <doctest.h>

#include <cmath>

#include "spineneck/metrics.hpp"
#include "spineneck/random.hpp"

using namespace spineneck;

TEST_CASE("mae examples") {
  const std::vector<GridPoint> u{{0, 0}, {1, 0}};
  CHECK(mae(u, u) == 0.0);
  CHECK(mae(std::vector<GridPoint>{{0, 0}}, std::vector<GridPoint>{{3, 4}}) == 10.0);
  CHECK(mae(u, std::vector<GridPoint>{{0, 0}}) == 0.5);
  CHECK(mae(PointSet2D{u, "u"}, PointSet2D{{{0, 0}}, "v"}) == 0.5);
}

TEST_CASE("mae rejects empty sets") {
  try {
    mae(std::vector<GridPoint>{}, std::vector<GridPoint>{{1, 1}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySet);
  }
}

TEST_CASE("mae is symmetric, translation invariant and zero only on equal sets") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GridPoint> u(1 + rng.below(30)), v(1 + rng.below(30));
    for (auto& p : u) p = {100 * rng.uniform(), 100 * rng.uniform()};
    for (auto& p : v) p = {100 * rng.uniform(), 100 * rng.uniform()};
    const double d = mae(u, v);
    CHECK(d == mae(v, u));
    CHECK(d > 0.0);
    const GridPoint shift{500 * rng.uniform() - 250, 500 * rng.uniform() - 250};
    auto us = u, vs = v;
    for (auto& p : us) p = p + shift;
    for (auto& p : vs) p = p + shift;
    CHECK(std::abs(mae(us, vs) - d) <= 1e-9);
    auto sub = u;
    sub.resize(1 + sub.size() / 2);
    auto super = u;
    super.insert(super.end(), sub.begin(), sub.end());
    CHECK(mae(u, super) == 0.0);
  }
}

TEST_CASE("densify bounds segment length") {
  const auto d = densify({{0, 0}, {3, 4}, {3, 4}, {3, 5.5}}, 1.0);
  CHECK(d.front() == GridPoint{0, 0});
  CHECK(d.back() == GridPoint{3, 5.5});
  for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(distance(d[i], d[i + 1]) <= 1.0 + 1e-12);
  CHECK(densify({{2, 2}}).size() == 1);
  CHECK(centerline_mae({{0, 0}, {10, 0}}, {{0, 0}, {10, 0}}) == 0.0);
}
