#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "driftknn/adaptive.hpp"
#include "driftknn/synth.hpp"
#include "driftknn/types.hpp"

namespace driftknn {

//! The competitor classifiers of the benchmark harness.
enum class Classifier { adaptive, pooled_adaptive, knn_q, knn_all };

std::string to_string(Classifier c);
Classifier classifier_from_string(const std::string& name);

//! Deterministic baseline neighbor count round(n^(2/(2+d))), clamped to
//! [1, n]. The rate-optimal fixed choice for a smoothness-1 plug-in rule.
std::size_t baseline_k(std::size_t n, std::size_t d);

//! Fixed-k kNN plug-in classifier on target data only.
int knn_q_baseline(const SourceDataset& q, const FeatureVector& query);

//! Fixed-k kNN plug-in classifier on the pooled data (P rows first, then Q;
//! ties in distance break toward the earlier pooled row).
int knn_all_baseline(const SourceDataset& p, const SourceDataset& q,
                     const FeatureVector& query);

//! Outcome of the pooled-prefix adaptive scan.
struct PooledScan {
    int label = 0;
    std::size_t attempts = 0; // prefix lengths tried, <= n_P + n_Q
    std::size_t k_p = 0;      // P members of the final prefix
    std::size_t k_q = 0;      // Q members of the final prefix
    double r_final = 0.0;
    double threshold = 0.0;
    StopReason stop_reason = StopReason::exhausted;
};

//! Attempt-count-faithful stand-in for the exhaustive pooled selection rule:
//! scans prefixes of the pooled neighbor ordering (each prefix length is one
//! attempt, up to n_P + n_Q of them), splitting every prefix by source and
//! applying the same signal-to-noise statistic and stopping threshold as the
//! adaptive scan.
PooledScan pooled_adaptive_classify(const SourceDataset& p,
                                    const SourceDataset& q,
                                    const FeatureVector& query);

//! One Monte Carlo experiment: replicated trials of fresh data, scored
//! against the oracle labeler.
struct ExperimentConfig {
    DgpConfig dgp;
    std::size_t n_p = 0;
    std::size_t n_q = 0;
    std::size_t trials = 1;
    std::size_t test_points = 200;
    std::vector<Classifier> classifiers;
    std::uint64_t master_seed = 0;
};

//! Raw per-classifier tallies of one trial (indexed like config.classifiers).
struct ClassifierTally {
    std::size_t agreements = 0; // queries where label == oracle label
    std::size_t attempts = 0;   // summed over queries
    double seconds = 0.0;       // wall time around classifier calls only
};

struct TrialResult {
    std::vector<ClassifierTally> per_classifier;
};

struct ClassifierSummary {
    Classifier classifier = Classifier::adaptive;
    double accuracy = 0.0;
    double accuracy_stderr = 0.0;
    double mean_attempts = 0.0;
    double wall_time_seconds = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ClassifierSummary> per_classifier;
};

//! One trial: fresh P/Q draws and fresh query covariates, all derived from
//! (master_seed, trial_index); deterministic and independent of scheduling.
TrialResult run_trial(const ExperimentConfig& config, std::size_t trial_index);

//! Aggregate `config.trials` trials. `threads` = 0 picks the hardware
//! concurrency; any thread count yields identical aggregates (wall times
//! excepted, as they measure the run itself).
ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::size_t threads = 1);

} // namespace driftknn
