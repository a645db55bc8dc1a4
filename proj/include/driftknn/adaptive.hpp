#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "driftknn/types.hpp"

namespace driftknn {

enum class StopReason { threshold_crossed, exhausted };

std::string to_string(StopReason reason);

//! Outcome of an adaptive neighbor-count scan.
//!
//! `ks` and `eta_hats` are indexed in the caller's source order. The final
//! label is recomputable from this record alone via the sign rule
//! 1[sum_j k_j (eta_hat_j - 1/2) >= 0].
struct AdaptiveSelection {
    std::vector<std::size_t> ks;  // chosen neighbor count per source
    std::vector<double> eta_hats; // estimate at the chosen counts (1/2 if k=0)
    double r_final = 0.0;         // signal-to-noise statistic at termination
    double threshold = 0.0;       // stopping threshold used (inf if n_total < 2)
    std::size_t iterations = 0;   // outer-loop passes (attempts)
    StopReason stop_reason = StopReason::exhausted;
};

//! Per-source input to the signal-to-noise statistic.
struct RTerm {
    std::size_t k = 0;
    double eta_hat = 0.5;
};

//! Stopping threshold sqrt((d + ln n) * ln n), natural logarithm.
//! Requires n_total >= 2 so the logarithm is positive.
double stopping_threshold(std::size_t d, std::size_t n_total);

//! Aggregated signal-to-noise statistic max(r+, r-) where r+ collects
//! sqrt(sum k_j (eta_j - 1/2)^2) over sources with eta_j >= 1/2 and r- the
//! analogue below 1/2. Entries with k = 0 are ignored; at least one k must
//! be positive. For two sources this reproduces the classical case split:
//! the root-sum when the estimates agree in sign, the larger single-source
//! statistic when they disagree.
double signal_to_noise_r(const std::vector<RTerm>& estimates);

//! Pointwise-adaptive kNN classification with source data only: scan
//! k = 1..n, stop at the first k whose statistic sqrt(k)|eta_hat - 1/2|
//! exceeds the stopping threshold, else exhaust.
std::pair<int, AdaptiveSelection> adaptive_single_source(
    const SourceDataset& p, const FeatureVector& query);

//! Pointwise-adaptive kNN classification over a source/target pair. The
//! larger sample drives the outer loop; the smaller one follows via
//! k_small = floor(k_large * n_small / n_large). Selection fields are in
//! (P, Q) order.
std::pair<int, AdaptiveSelection> adaptive_two_source(
    const SourceDataset& p, const SourceDataset& q, const FeatureVector& query);

//! Pointwise-adaptive kNN classification over m sources. Internally the
//! sources are ranked by descending size (stable, so the given order breaks
//! ties); selection fields come back in the caller's order.
std::pair<int, AdaptiveSelection> adaptive_multi_source(
    const std::vector<SourceDataset>& sources, const FeatureVector& query);

//! Number of outer-loop passes the scan spent; by construction at most
//! max_j n_j.
std::size_t attempt_count(const AdaptiveSelection& selection);

} // namespace driftknn
