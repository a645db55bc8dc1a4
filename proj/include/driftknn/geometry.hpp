#pragma once

#include <cstddef>
#include <vector>

#include "driftknn/types.hpp"

namespace driftknn {

//! Index of a training sample together with its distance to a query point.
struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

//! Euclidean distance between two vectors of equal dimension.
//!
//! Throws std::invalid_argument on dimension mismatch or empty input.
double euclidean_distance(const FeatureVector& a, const FeatureVector& b);

//! The k nearest samples to `query`, ordered by (distance, index) ascending.
//!
//! Ties in distance are broken by the smaller dataset index, making the
//! result a total order independent of any internal permutation. Requires
//! 1 <= k <= data.size() and matching dimensions.
std::vector<Neighbor> k_nearest(const SourceDataset& data,
                                const FeatureVector& query, std::size_t k);

//! All samples ordered by (distance, index) ascending; equivalent to
//! k_nearest(data, query, data.size()) but named for prefix scans.
std::vector<Neighbor> rank_all(const SourceDataset& data,
                               const FeatureVector& query);

} // namespace driftknn
