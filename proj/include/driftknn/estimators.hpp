#pragma once

#include <cstddef>
#include <vector>

#include "driftknn/types.hpp"

namespace driftknn {

//! Per-source ingredient of a weighted posterior estimate.
struct SourceEstimate {
    std::size_t k = 0;   // neighbor count used
    double eta_hat = 0;  // kNN regression estimate in [0,1]
    double weight = 1.0; // aggregation weight, > 0
};

//! A weighted posterior value together with its per-source ingredients.
struct WeightedEstimate {
    double value = 0.0;
    std::vector<SourceEstimate> per_source;
};

//! Closed-form tuning of bandwidth scale, weights and neighbor counts for the
//! two-sample weighted kNN classifier.
struct TuningPlan {
    double delta = 0.0;           // bandwidth scale, > 0
    std::vector<double> weights;  // per source (P first, then Q)
    std::vector<std::size_t> ks;  // per source, each <= its source size
};

struct RateParams; // defined in theory.hpp

//! kNN regression estimate: the fraction of 1-labels among the k nearest
//! neighbors of `query`. Requires 1 <= k <= dataset size.
double knn_regress(const SourceDataset& data, const FeatureVector& query,
                   std::size_t k);

//! Weighted aggregate sum(w_j k_j eta_j) / sum(w_j k_j) over the sources.
//! Entries with k = 0 contribute nothing; requires at least one k > 0 and
//! all weights positive.
double weighted_posterior(const std::vector<SourceEstimate>& per_source);

//! Plug-in rule: label 1 iff eta_hat >= 1/2 (threshold inclusive).
int plug_in_classify(double eta_hat);

//! Weighted kNN classifier with fixed per-source neighbor counts and weights
//! from `plan`. Returns the label and the full estimate for diagnostics.
std::pair<int, WeightedEstimate> fixed_weighted_knn(
    const std::vector<SourceDataset>& sources, const TuningPlan& plan,
    const FeatureVector& query);

//! Rate-optimal closed-form choice of (delta, w_P, w_Q, k_P, k_Q) for given
//! sample sizes and distribution-class parameters, with all proportionality
//! constants set to 1. Real-valued k is rounded to nearest, then clamped to
//! [1, n]; k is 0 only for an empty source.
TuningPlan rate_optimal_tuning(std::size_t n_p, std::size_t n_q,
                               const RateParams& params);

} // namespace driftknn
