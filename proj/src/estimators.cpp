#include "driftknn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftknn/geometry.hpp"
#include "driftknn/theory.hpp"

namespace driftknn {

double knn_regress(const SourceDataset& data, const FeatureVector& query,
                   std::size_t k) {
    const std::vector<Neighbor> neighbors = k_nearest(data, query, k);
    std::size_t ones = 0;
    for (const Neighbor& nb : neighbors) ones += static_cast<std::size_t>(data[nb.index].y);
    return static_cast<double>(ones) / static_cast<double>(k);
}

double weighted_posterior(const std::vector<SourceEstimate>& per_source) {
    if (per_source.empty()) {
        throw std::invalid_argument("weighted_posterior: no sources given");
    }
    double numerator = 0.0;
    double mass = 0.0;
    for (const SourceEstimate& s : per_source) {
        if (!(s.weight > 0.0)) {
            throw std::invalid_argument("weighted_posterior: weights must be > 0");
        }
        if (s.k == 0) continue; // zero neighbors: no mass, estimate irrelevant
        const double km = s.weight * static_cast<double>(s.k);
        numerator += km * s.eta_hat;
        mass += km;
    }
    if (mass == 0.0) {
        throw std::invalid_argument("weighted_posterior: every source has k = 0");
    }
    return numerator / mass;
}

int plug_in_classify(double eta_hat) {
    if (!(eta_hat >= 0.0 && eta_hat <= 1.0)) {
        throw std::invalid_argument("plug_in_classify: estimate must lie in [0,1]");
    }
    return eta_hat >= 0.5 ? 1 : 0;
}

std::pair<int, WeightedEstimate> fixed_weighted_knn(
    const std::vector<SourceDataset>& sources, const TuningPlan& plan,
    const FeatureVector& query) {
    if (sources.empty()) {
        throw std::invalid_argument("fixed_weighted_knn: no sources given");
    }
    if (plan.ks.size() != sources.size() || plan.weights.size() != sources.size()) {
        throw std::invalid_argument(
            "fixed_weighted_knn: plan arity does not match source count");
    }
    WeightedEstimate estimate;
    estimate.per_source.reserve(sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j) {
        const std::size_t k = plan.ks[j];
        if (k > sources[j].size()) {
            throw std::invalid_argument("fixed_weighted_knn: k exceeds source size");
        }
        // A 0-k source carries zero mass in the aggregate; 0.5 is a placeholder.
        const double eta = k == 0 ? 0.5 : knn_regress(sources[j], query, k);
        estimate.per_source.push_back(SourceEstimate{k, eta, plan.weights[j]});
    }
    estimate.value = weighted_posterior(estimate.per_source);
    return {plug_in_classify(estimate.value), estimate};
}

TuningPlan rate_optimal_tuning(std::size_t n_p, std::size_t n_q,
                               const RateParams& params) {
    // Revalidate through the branch predicate helper.
    const bool strong = strong_transfer_branch(params);
    if (n_p + n_q < 1) {
        throw std::invalid_argument("rate_optimal_tuning: n_p + n_q must be >= 1");
    }
    const double d = static_cast<double>(params.d);
    const double np = static_cast<double>(n_p);
    const double nq = static_cast<double>(n_q);

    double delta = 0.0;
    double k_exponent = 0.0; // k_j = round(n_j * delta^k_exponent)
    if (strong) {
        const double bp = params.beta_p; // > 0 in this branch
        const double inner = (2.0 * bp + params.gamma * d) /
                             (params.gamma * (2.0 * bp + d));
        delta = std::pow(std::pow(np, inner) + nq, -bp / (2.0 * bp + params.gamma * d));
        k_exponent = params.gamma * d / bp;
    } else {
        if (params.beta_q == 0.0) {
            throw std::invalid_argument(
                "rate_optimal_tuning: beta_q must be > 0 in this branch");
        }
        const double bq = params.beta_q;
        const double inner = (2.0 * bq + d) / (2.0 * params.gamma * bq + d);
        delta = std::pow(std::pow(np, inner) + nq, -bq / (2.0 * bq + d));
        k_exponent = d / bq;
    }

    const double shrink = std::pow(delta, k_exponent);
    auto choose_k = [&](std::size_t n) -> std::size_t {
        if (n == 0) return 0;
        const double raw = static_cast<double>(n) * shrink;
        const auto rounded = static_cast<std::size_t>(std::llround(raw));
        return std::min(std::max<std::size_t>(rounded, 1), n);
    };

    TuningPlan plan;
    plan.delta = delta;
    plan.weights = {std::pow(delta, params.gamma), delta}; // (w_P, w_Q)
    plan.ks = {choose_k(n_p), choose_k(n_q)};
    return plan;
}

} // namespace driftknn
