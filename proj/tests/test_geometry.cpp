#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "driftknn/geometry.hpp"
#include "driftknn/rng.hpp"
#include "support/oracles.hpp"

using namespace driftknn;

namespace {

SourceDataset three_points() {
    return SourceDataset({{{0.1, 0.1}, 1}, {{0.9, 0.9}, 0}, {{0.2, 0.2}, 1}},
                         "P");
}

} // namespace

TEST_CASE("euclidean distance on hand fixtures") {
    CHECK(euclidean_distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(euclidean_distance({1.0}, {1.0}) == 0.0);
    CHECK(euclidean_distance({0.0, 0.0}, {1.0, 1.0}) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("euclidean distance rejects bad input") {
    CHECK_THROWS_AS(euclidean_distance({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(euclidean_distance({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("k_nearest picks the brute-force neighbor set") {
    const SourceDataset data = three_points();
    const FeatureVector query{0.0, 0.0};
    const auto two = k_nearest(data, query, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].index == 0);
    CHECK(two[1].index == 2);
    CHECK(two[0].distance <= two[1].distance);
}

TEST_CASE("k_nearest validates k") {
    const SourceDataset data = three_points();
    CHECK_THROWS_AS(k_nearest(data, {0.0, 0.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(k_nearest(data, {0.0, 0.0}, 4), std::invalid_argument);
}

TEST_CASE("distance ties break toward the smaller index") {
    const SourceDataset data({{{0.5, 0.5}, 0}, {{0.5, 0.5}, 1}, {{0.5, 0.5}, 0}},
                             "P");
    const auto order = rank_all(data, {0.0, 0.0});
    REQUIRE(order.size() == 3);
    CHECK(order[0].index == 0);
    CHECK(order[1].index == 1);
    CHECK(order[2].index == 2);
}

TEST_CASE("rank_all equals k_nearest at full k and matches the sort oracle") {
    Sampler sampler(20240817);
    for (int instance = 0; instance < 50; ++instance) {
        const std::size_t d = 1 + static_cast<std::size_t>(sampler.uniform01() * 3.0);
        const std::size_t n = 1 + static_cast<std::size_t>(sampler.uniform01() * 40.0);
        const SourceDataset data = oracles::random_dataset(sampler, n, d, "P");
        const FeatureVector query = oracles::random_query(sampler, d);

        const auto full = rank_all(data, query);
        const auto same = k_nearest(data, query, n);
        REQUIRE(full.size() == n);
        const auto expected = oracles::neighbor_order(data, query);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(full[i].index == expected[i]);
            CHECK(full[i].index == same[i].index);
            CHECK(full[i].distance == same[i].distance);
            if (i > 0) CHECK(full[i - 1].distance <= full[i].distance);
        }

        // Prefix property: the top-k list is a prefix of the full ranking.
        const std::size_t k = 1 + static_cast<std::size_t>(
                                      sampler.uniform01() * static_cast<double>(n));
        const auto top = k_nearest(data, query, k);
        for (std::size_t i = 0; i < k; ++i) CHECK(top[i].index == full[i].index);
    }
}
