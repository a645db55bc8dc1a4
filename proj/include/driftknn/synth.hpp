#pragma once

#include <cstddef>
#include <cstdint>

#include "driftknn/types.hpp"

namespace driftknn {

enum class DgpId { DGP1, DGP2 };
enum class SourceRole { P, Q };

//! Configuration of the synthetic data-generating processes.
struct DgpConfig {
    DgpId dgp_id = DgpId::DGP1;
    double kappa = 0.5; // signal strength, in [0,1]
    double gamma = 0.6; // relative signal exponent, > 0
    std::size_t d = 2;  // covariate dimension
};

//! Normalized radius t = ||x|| / sqrt(2), in [0,1] for x in [0,1]^2.
double radial_coordinate(const FeatureVector& x);

//! Parity of the decimal digit in the ten-billionths (1e-10) place of v,
//! extracted as floor(v * 1e10) mod 10. Returns true for even.
bool parity_digit_even(double v);

//! Conditional label probability eta_role(x) for the given process, clamped
//! to [0,1] (the raw source formulas can exceed 1 for large kappa).
double eta(const DgpConfig& dgp, SourceRole role, const FeatureVector& x);

//! eta as a function of the normalized radius t = radial_coordinate(x);
//! eta(dgp, role, x) == eta_at_radius(dgp, role, radial_coordinate(x)).
//! Exposed so radius-level fixtures avoid rounding in the norm.
double eta_at_radius(const DgpConfig& dgp, SourceRole role, double t);

//! Oracle label 1[eta_Q(x) >= 1/2]; for both processes this reduces to
//! 1[t >= 1/2] with t the normalized radius.
int bayes_label(const DgpConfig& dgp, const FeatureVector& x);

//! Draw n labeled samples: covariates uniform on [0,1]^d, labels
//! Bernoulli(eta_role(x)). Fully determined by the seed.
SourceDataset sample_dataset(const DgpConfig& dgp, SourceRole role,
                             std::size_t n, std::uint64_t seed);

} // namespace driftknn
