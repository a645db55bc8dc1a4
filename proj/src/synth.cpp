#include "driftknn/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "driftknn/rng.hpp"

namespace driftknn {

namespace {

void validate(const DgpConfig& dgp) {
    if (!(dgp.kappa >= 0.0 && dgp.kappa <= 1.0)) {
        throw std::invalid_argument("DgpConfig: kappa must lie in [0,1]");
    }
    if (!(dgp.gamma > 0.0) || !std::isfinite(dgp.gamma)) {
        throw std::invalid_argument("DgpConfig: gamma must be finite and > 0");
    }
    if (dgp.d < 1) throw std::invalid_argument("DgpConfig: d must be >= 1");
}

double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

//! Signed power signal sign(s) * (kappa_eff * |s|)^gamma-style term used by
//! the source formulas: sign(s) * kappa_eff^gamma * |s|^gamma.
double signed_power_signal(double kappa_eff, double gamma, double s) {
    const double magnitude =
        std::pow(kappa_eff, gamma) * std::pow(std::abs(s), gamma);
    return s >= 0.0 ? magnitude : -magnitude;
}

} // namespace

double radial_coordinate(const FeatureVector& x) {
    if (x.empty()) {
        throw std::invalid_argument("radial_coordinate: empty vector");
    }
    double ss = 0.0;
    for (double v : x) ss += v * v;
    return std::sqrt(ss) / std::sqrt(2.0);
}

bool parity_digit_even(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("parity_digit_even: v must be finite and >= 0");
    }
    const auto scaled = static_cast<std::uint64_t>(std::floor(v * 1e10));
    return (scaled % 10) % 2 == 0;
}

double eta_at_radius(const DgpConfig& dgp, SourceRole role, double t) {
    validate(dgp);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("eta_at_radius: t must be finite and >= 0");
    }
    const double s = t - 0.5;
    const bool even = parity_digit_even(t);
    double value = 0.5;
    if (dgp.dgp_id == DgpId::DGP1) {
        if (role == SourceRole::Q) {
            const double slope = even ? dgp.kappa : std::pow(dgp.kappa, dgp.gamma);
            value = 0.5 + slope * s;
        } else {
            value = 0.5 + signed_power_signal(dgp.kappa, dgp.gamma, s);
        }
    } else { // DGP2
        if (role == SourceRole::Q) {
            value = 0.5 + dgp.kappa * s;
        } else {
            const double kappa_eff = even ? dgp.kappa : 1.2 * dgp.kappa;
            value = 0.5 + signed_power_signal(kappa_eff, dgp.gamma, s);
        }
    }
    return clamp_unit(value);
}

double eta(const DgpConfig& dgp, SourceRole role, const FeatureVector& x) {
    return eta_at_radius(dgp, role, radial_coordinate(x));
}

int bayes_label(const DgpConfig& dgp, const FeatureVector& x) {
    validate(dgp);
    return radial_coordinate(x) >= 0.5 ? 1 : 0;
}

SourceDataset sample_dataset(const DgpConfig& dgp, SourceRole role,
                             std::size_t n, std::uint64_t seed) {
    validate(dgp);
    Sampler sampler(seed);
    std::vector<LabeledSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector x(dgp.d);
        for (std::size_t j = 0; j < dgp.d; ++j) x[j] = sampler.uniform01();
        const int y = sampler.bernoulli(eta(dgp, role, x));
        samples.push_back(LabeledSample{std::move(x), y});
    }
    return SourceDataset(std::move(samples), role == SourceRole::P ? "P" : "Q");
}

} // namespace driftknn
