#include "driftknn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftknn {

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("euclidean_distance: empty vector");
    }
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        ss += diff * diff;
    }
    return std::sqrt(ss);
}

namespace {

bool neighbor_less(const Neighbor& lhs, const Neighbor& rhs) {
    if (lhs.distance != rhs.distance) return lhs.distance < rhs.distance;
    return lhs.index < rhs.index;
}

std::vector<Neighbor> rank(const SourceDataset& data, const FeatureVector& query,
                           std::size_t k) {
    std::vector<Neighbor> all(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        all[i] = Neighbor{i, euclidean_distance(data[i].x, query)};
    }
    if (k < data.size()) {
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k),
                          all.end(), neighbor_less);
        all.resize(k);
    } else {
        std::sort(all.begin(), all.end(), neighbor_less);
    }
    return all;
}

} // namespace

std::vector<Neighbor> k_nearest(const SourceDataset& data,
                                const FeatureVector& query, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k_nearest: k must be positive");
    if (k > data.size()) {
        throw std::invalid_argument("k_nearest: k exceeds dataset size");
    }
    return rank(data, query, k);
}

std::vector<Neighbor> rank_all(const SourceDataset& data,
                               const FeatureVector& query) {
    return rank(data, query, data.size());
}

} // namespace driftknn
