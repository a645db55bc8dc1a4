#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace driftknn {

//! Parameters of the two-sample distribution class.
struct RateParams {
    double alpha = 0.0;  // margin (noise) exponent, >= 0
    double beta_p = 1.0; // source smoothness order, in [0,1]
    double beta_q = 1.0; // target smoothness order, in [0,1]; max(beta) > 0
    double gamma = 1.0;  // relative signal exponent, > 0
    std::size_t d = 2;   // covariate dimension, >= 1
    std::size_t n_p = 0; // source sample size
    std::size_t n_q = 0; // target sample size
};

//! One source's parameters in the multi-source class.
struct MultiSourceTerm {
    double beta = 1.0;  // smoothness order in [0,1]
    double gamma = 1.0; // relative signal exponent > 0
    std::size_t n = 0;  // sample size
};

struct MultiSourceParams {
    double alpha = 0.0;
    double beta_q = 1.0;
    std::size_t d = 2;
    std::vector<MultiSourceTerm> sources;
};

//! Convergence-speed regime of the source-only excess risk (exponent e in
//! risk ~ n_P^{-e}): Nonparametric e < 1/2, Fast 1/2 <= e < 1, SuperFast
//! e >= 1 (boundaries inclusive upward).
enum class RegimeClass { Nonparametric, Fast, SuperFast };

std::string to_string(RegimeClass regime);

//! Minimax exponent report for the source-only setting.
struct ExponentReport {
    double exponent = 0.0;    // e with risk ~ n_P^{-e}
    bool exact = false;       // lower-bound side condition holds
    bool strong_transfer = false; // true iff beta_P > gamma * beta_Q
};

//! True iff the strong-transfer branch beta_P > gamma * beta_Q is active.
bool strong_transfer_branch(const RateParams& params);

//! Minimax excess-risk exponent when only source data is available
//! (requires n_q = 0). Reports whether the matching lower bound's side
//! condition holds, i.e. whether the exponent is exact rather than only an
//! upper bound.
ExponentReport minimax_exponent_single(const RateParams& params);

//! Value of the general two-sample minimax excess-risk bound at
//! (n_p, n_q), with constant 1.
double minimax_rate_general(const RateParams& params);

//! The weaker upper bound available in the strong-transfer branch
//! (requires beta_p > gamma * beta_q and beta_q > 0); never tighter than
//! minimax_rate_general.
double suboptimal_upper_bound(const RateParams& params);

//! Multi-source minimax excess-risk bound with
//! beta* = min{beta_1/gamma_1, ..., beta_m/gamma_m, beta_Q}.
double multi_source_rate(const MultiSourceParams& params);

//! Regime classification from minimax_exponent_single (requires n_q = 0).
RegimeClass classify_regime(const RateParams& params);

//! Attempt-count ratio sum(n_j) / max(n_j) of an exhaustive pooled scan
//! relative to the adaptive scan; at least one size must be positive.
double attempt_ratio(const std::vector<std::size_t>& sample_sizes);

} // namespace driftknn
