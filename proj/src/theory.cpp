#include "driftknn/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftknn {

namespace {

void validate(const RateParams& p) {
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) {
        throw std::invalid_argument("RateParams: alpha must be finite and >= 0");
    }
    if (!(p.beta_p >= 0.0 && p.beta_p <= 1.0) ||
        !(p.beta_q >= 0.0 && p.beta_q <= 1.0)) {
        throw std::invalid_argument("RateParams: beta_p, beta_q must lie in [0,1]");
    }
    if (p.beta_p == 0.0 && p.beta_q == 0.0) {
        throw std::invalid_argument("RateParams: max(beta_p, beta_q) must be > 0");
    }
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
        throw std::invalid_argument("RateParams: gamma must be finite and > 0");
    }
    if (p.d < 1) throw std::invalid_argument("RateParams: d must be >= 1");
}

void validate(const MultiSourceParams& p) {
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) {
        throw std::invalid_argument("MultiSourceParams: alpha must be finite and >= 0");
    }
    if (!(p.beta_q >= 0.0 && p.beta_q <= 1.0)) {
        throw std::invalid_argument("MultiSourceParams: beta_q must lie in [0,1]");
    }
    if (p.d < 1) throw std::invalid_argument("MultiSourceParams: d must be >= 1");
    if (p.sources.empty()) {
        throw std::invalid_argument("MultiSourceParams: at least one source required");
    }
    for (const MultiSourceTerm& s : p.sources) {
        if (!(s.beta >= 0.0 && s.beta <= 1.0)) {
            throw std::invalid_argument("MultiSourceParams: source beta must lie in [0,1]");
        }
        if (!(s.gamma > 0.0) || !std::isfinite(s.gamma)) {
            throw std::invalid_argument("MultiSourceParams: source gamma must be > 0");
        }
    }
}

} // namespace

std::string to_string(RegimeClass regime) {
    switch (regime) {
        case RegimeClass::Nonparametric: return "Nonparametric";
        case RegimeClass::Fast: return "Fast";
        case RegimeClass::SuperFast: return "SuperFast";
    }
    return "Nonparametric";
}

bool strong_transfer_branch(const RateParams& params) {
    validate(params);
    return params.beta_p > params.gamma * params.beta_q;
}

ExponentReport minimax_exponent_single(const RateParams& params) {
    validate(params);
    if (params.n_q != 0) {
        throw std::invalid_argument(
            "minimax_exponent_single: defined for the source-only setting (n_q = 0)");
    }
    const double d = static_cast<double>(params.d);
    ExponentReport report;
    report.strong_transfer = params.beta_p > params.gamma * params.beta_q;
    if (report.strong_transfer) {
        // beta_p > gamma*beta_q >= 0 guarantees beta_p > 0 here.
        report.exponent = (1.0 + params.alpha) * params.beta_p /
                          (params.gamma * (2.0 * params.beta_p + d));
        report.exact = params.alpha * params.beta_p <= params.gamma * d;
    } else {
        if (params.beta_q == 0.0) {
            throw std::invalid_argument(
                "minimax_exponent_single: beta_q must be > 0 in this branch");
        }
        report.exponent = (1.0 + params.alpha) * params.beta_q /
                          (2.0 * params.gamma * params.beta_q + d);
        report.exact = params.alpha * params.beta_q <= d;
    }
    return report;
}

double minimax_rate_general(const RateParams& params) {
    validate(params);
    if (params.n_p + params.n_q < 1) {
        throw std::invalid_argument("minimax_rate_general: n_p + n_q must be >= 1");
    }
    const double d = static_cast<double>(params.d);
    const double np = static_cast<double>(params.n_p);
    const double nq = static_cast<double>(params.n_q);
    if (params.beta_p > params.gamma * params.beta_q) {
        const double bp = params.beta_p;
        const double inner = (2.0 * bp + params.gamma * d) /
                             (params.gamma * (2.0 * bp + d));
        const double outer = bp * (1.0 + params.alpha) / (2.0 * bp + params.gamma * d);
        return std::pow(std::pow(np, inner) + nq, -outer);
    }
    if (params.beta_q == 0.0) {
        throw std::invalid_argument("minimax_rate_general: beta_q must be > 0 in this branch");
    }
    const double bq = params.beta_q;
    const double inner = (2.0 * bq + d) / (2.0 * params.gamma * bq + d);
    const double outer = bq * (1.0 + params.alpha) / (2.0 * bq + d);
    return std::pow(std::pow(np, inner) + nq, -outer);
}

double suboptimal_upper_bound(const RateParams& params) {
    validate(params);
    if (!(params.beta_p > params.gamma * params.beta_q)) {
        throw std::invalid_argument(
            "suboptimal_upper_bound: requires beta_p > gamma * beta_q");
    }
    if (params.beta_q == 0.0) {
        throw std::invalid_argument("suboptimal_upper_bound: requires beta_q > 0");
    }
    if (params.n_p + params.n_q < 1) {
        throw std::invalid_argument("suboptimal_upper_bound: n_p + n_q must be >= 1");
    }
    const double d = static_cast<double>(params.d);
    const double np = static_cast<double>(params.n_p);
    const double nq = static_cast<double>(params.n_q);
    const double inner = (2.0 * params.beta_q + d) * params.beta_p /
                         (params.gamma * (2.0 * params.beta_p + d) * params.beta_q);
    const double outer = params.beta_q * (1.0 + params.alpha) /
                         (2.0 * params.beta_q + d);
    return std::pow(std::pow(np, inner) + nq, -outer);
}

double multi_source_rate(const MultiSourceParams& params) {
    validate(params);
    double beta_star = params.beta_q;
    for (const MultiSourceTerm& s : params.sources) {
        beta_star = std::min(beta_star, s.beta / s.gamma);
    }
    if (!(beta_star > 0.0)) {
        throw std::invalid_argument("multi_source_rate: beta* must be > 0");
    }
    std::size_t n_total = 0;
    for (const MultiSourceTerm& s : params.sources) n_total += s.n;
    if (n_total < 1) {
        throw std::invalid_argument("multi_source_rate: total sample size must be >= 1");
    }
    const double d = static_cast<double>(params.d);
    double sum = 0.0;
    for (const MultiSourceTerm& s : params.sources) {
        const double inner = (2.0 * beta_star + d) / (2.0 * s.gamma * beta_star + d);
        sum += std::pow(static_cast<double>(s.n), inner);
    }
    const double outer = beta_star * (1.0 + params.alpha) / (2.0 * beta_star + d);
    return std::pow(sum, -outer);
}

RegimeClass classify_regime(const RateParams& params) {
    const double e = minimax_exponent_single(params).exponent;
    if (e >= 1.0) return RegimeClass::SuperFast;
    if (e >= 0.5) return RegimeClass::Fast;
    return RegimeClass::Nonparametric;
}

double attempt_ratio(const std::vector<std::size_t>& sample_sizes) {
    if (sample_sizes.empty()) {
        throw std::invalid_argument("attempt_ratio: no sample sizes given");
    }
    std::size_t total = 0;
    std::size_t largest = 0;
    for (std::size_t n : sample_sizes) {
        total += n;
        largest = std::max(largest, n);
    }
    if (largest == 0) {
        throw std::invalid_argument("attempt_ratio: all sample sizes are zero");
    }
    return static_cast<double>(total) / static_cast<double>(largest);
}

} // namespace driftknn
