#include "driftknn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "driftknn/estimators.hpp"
#include "driftknn/geometry.hpp"
#include "driftknn/rng.hpp"
#include "internal/parallel.hpp"

namespace driftknn {

std::string to_string(Classifier c) {
    switch (c) {
        case Classifier::adaptive: return "adaptive";
        case Classifier::pooled_adaptive: return "pooled_adaptive";
        case Classifier::knn_q: return "knn_q";
        case Classifier::knn_all: return "knn_all";
    }
    return "adaptive";
}

Classifier classifier_from_string(const std::string& name) {
    if (name == "adaptive") return Classifier::adaptive;
    if (name == "pooled_adaptive") return Classifier::pooled_adaptive;
    if (name == "knn_q") return Classifier::knn_q;
    if (name == "knn_all") return Classifier::knn_all;
    throw std::invalid_argument("unknown classifier '" + name + "'");
}

std::size_t baseline_k(std::size_t n, std::size_t d) {
    if (n == 0) throw std::invalid_argument("baseline_k: n must be >= 1");
    if (d == 0) throw std::invalid_argument("baseline_k: d must be >= 1");
    const double raw = std::pow(static_cast<double>(n),
                                2.0 / (2.0 + static_cast<double>(d)));
    const auto rounded = static_cast<std::size_t>(std::llround(raw));
    return std::min(std::max<std::size_t>(rounded, 1), n);
}

int knn_q_baseline(const SourceDataset& q, const FeatureVector& query) {
    if (q.empty()) throw std::invalid_argument("knn_q_baseline: dataset is empty");
    const std::size_t k = baseline_k(q.size(), q.dimension());
    return plug_in_classify(knn_regress(q, query, k));
}

namespace {

SourceDataset pool_sources(const SourceDataset& p, const SourceDataset& q) {
    std::vector<LabeledSample> pooled;
    pooled.reserve(p.size() + q.size());
    pooled.insert(pooled.end(), p.samples().begin(), p.samples().end());
    pooled.insert(pooled.end(), q.samples().begin(), q.samples().end());
    return SourceDataset(std::move(pooled), "ALL");
}

double threshold_or_inf(std::size_t d, std::size_t n_total) {
    if (n_total < 2) return std::numeric_limits<double>::infinity();
    return stopping_threshold(d, n_total);
}

} // namespace

int knn_all_baseline(const SourceDataset& p, const SourceDataset& q,
                     const FeatureVector& query) {
    if (p.empty() && q.empty()) {
        throw std::invalid_argument("knn_all_baseline: both datasets are empty");
    }
    const SourceDataset pooled = pool_sources(p, q);
    const std::size_t k = baseline_k(pooled.size(), pooled.dimension());
    return plug_in_classify(knn_regress(pooled, query, k));
}

PooledScan pooled_adaptive_classify(const SourceDataset& p,
                                    const SourceDataset& q,
                                    const FeatureVector& query) {
    if (p.empty() && q.empty()) {
        throw std::invalid_argument("pooled_adaptive_classify: both datasets are empty");
    }
    const std::size_t n_p = p.size();
    const std::size_t total = n_p + q.size();

    // Pooled neighbor ordering: P rows take pooled indices 0..n_P-1, Q rows
    // follow, and ties in distance break toward the smaller pooled index.
    struct Entry {
        double distance;
        std::size_t pooled_index;
        int label;
    };
    std::vector<Entry> entries;
    entries.reserve(total);
    for (std::size_t i = 0; i < n_p; ++i) {
        entries.push_back(Entry{euclidean_distance(p[i].x, query), i, p[i].y});
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        entries.push_back(
            Entry{euclidean_distance(q[i].x, query), n_p + i, q[i].y});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.pooled_index < b.pooled_index;
    });

    PooledScan scan;
    scan.threshold = threshold_or_inf(query.size(), total);
    scan.stop_reason = StopReason::exhausted;
    std::size_t ones_p = 0;
    std::size_t ones_q = 0;
    double eta_p = 0.5;
    double eta_q = 0.5;
    for (std::size_t prefix = 1; prefix <= total; ++prefix) {
        const Entry& added = entries[prefix - 1];
        if (added.pooled_index < n_p) {
            ++scan.k_p;
            ones_p += static_cast<std::size_t>(added.label);
        } else {
            ++scan.k_q;
            ones_q += static_cast<std::size_t>(added.label);
        }
        eta_p = scan.k_p == 0
                    ? 0.5
                    : static_cast<double>(ones_p) / static_cast<double>(scan.k_p);
        eta_q = scan.k_q == 0
                    ? 0.5
                    : static_cast<double>(ones_q) / static_cast<double>(scan.k_q);
        scan.attempts = prefix;
        scan.r_final =
            signal_to_noise_r({RTerm{scan.k_p, eta_p}, RTerm{scan.k_q, eta_q}});
        if (scan.r_final > scan.threshold) {
            scan.stop_reason = StopReason::threshold_crossed;
            break;
        }
    }
    const double vote = static_cast<double>(scan.k_p) * (eta_p - 0.5) +
                        static_cast<double>(scan.k_q) * (eta_q - 0.5);
    scan.label = vote >= 0.0 ? 1 : 0;
    return scan;
}

namespace {

void validate(const ExperimentConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    }
    if (config.test_points < 1) {
        throw std::invalid_argument("ExperimentConfig: test_points must be >= 1");
    }
    if (config.classifiers.empty()) {
        throw std::invalid_argument("ExperimentConfig: no classifiers enabled");
    }
    for (Classifier c : config.classifiers) {
        if (c == Classifier::knn_q && config.n_q == 0) {
            throw std::invalid_argument(
                "ExperimentConfig: knn_q requires target data (n_q >= 1)");
        }
        if (config.n_p + config.n_q == 0) {
            throw std::invalid_argument("ExperimentConfig: n_p + n_q must be >= 1");
        }
    }
}

} // namespace

TrialResult run_trial(const ExperimentConfig& config, std::size_t trial_index) {
    validate(config);
    const std::uint64_t trial_seed = mix_seed(config.master_seed, trial_index);
    const SourceDataset p_data =
        sample_dataset(config.dgp, SourceRole::P, config.n_p, mix_seed(trial_seed, 1));
    const SourceDataset q_data =
        sample_dataset(config.dgp, SourceRole::Q, config.n_q, mix_seed(trial_seed, 2));
    Sampler query_sampler(mix_seed(trial_seed, 3));

    const bool wants_pool =
        std::find(config.classifiers.begin(), config.classifiers.end(),
                  Classifier::knn_all) != config.classifiers.end();
    const SourceDataset pooled =
        wants_pool ? pool_sources(p_data, q_data) : SourceDataset();
    const std::size_t pooled_k =
        wants_pool ? baseline_k(pooled.size(), pooled.dimension()) : 0;
    const std::size_t q_k =
        q_data.empty() ? 0 : baseline_k(q_data.size(), q_data.dimension());

    TrialResult result;
    result.per_classifier.assign(config.classifiers.size(), ClassifierTally{});

    using clock = std::chrono::steady_clock;
    FeatureVector query(config.dgp.d);
    for (std::size_t qi = 0; qi < config.test_points; ++qi) {
        for (std::size_t j = 0; j < config.dgp.d; ++j) {
            query[j] = query_sampler.uniform01();
        }
        const int oracle = bayes_label(config.dgp, query);
        for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
            ClassifierTally& tally = result.per_classifier[ci];
            int label = 0;
            std::size_t attempts = 1;
            const auto start = clock::now();
            switch (config.classifiers[ci]) {
                case Classifier::adaptive: {
                    const auto [lab, sel] = adaptive_two_source(p_data, q_data, query);
                    label = lab;
                    attempts = attempt_count(sel);
                    break;
                }
                case Classifier::pooled_adaptive: {
                    const PooledScan scan =
                        pooled_adaptive_classify(p_data, q_data, query);
                    label = scan.label;
                    attempts = scan.attempts;
                    break;
                }
                case Classifier::knn_q:
                    label = plug_in_classify(knn_regress(q_data, query, q_k));
                    break;
                case Classifier::knn_all:
                    label = plug_in_classify(knn_regress(pooled, query, pooled_k));
                    break;
            }
            tally.seconds +=
                std::chrono::duration<double>(clock::now() - start).count();
            tally.attempts += attempts;
            if (label == oracle) ++tally.agreements;
        }
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::size_t threads) {
    validate(config);
    std::vector<TrialResult> trials(config.trials);
    internal::parallel_for_index(config.trials, threads, [&](std::size_t t) {
        trials[t] = run_trial(config, t);
    });

    ExperimentResult result;
    result.config = config;
    const double denom =
        static_cast<double>(config.trials) * static_cast<double>(config.test_points);
    for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
        std::size_t agreements = 0;
        std::size_t attempts = 0;
        double seconds = 0.0;
        for (const TrialResult& trial : trials) { // fixed order: by trial index
            agreements += trial.per_classifier[ci].agreements;
            attempts += trial.per_classifier[ci].attempts;
            seconds += trial.per_classifier[ci].seconds;
        }
        ClassifierSummary summary;
        summary.classifier = config.classifiers[ci];
        summary.accuracy = static_cast<double>(agreements) / denom;
        summary.accuracy_stderr =
            std::sqrt(summary.accuracy * (1.0 - summary.accuracy) / denom);
        summary.mean_attempts = static_cast<double>(attempts) / denom;
        summary.wall_time_seconds = seconds;
        result.per_classifier.push_back(summary);
    }
    return result;
}

} // namespace driftknn
