#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "driftknn/rng.hpp"
#include "driftknn/synth.hpp"
#include "driftknn/types.hpp"

using namespace driftknn;

namespace {

DgpConfig config(DgpId id, double kappa, double gamma) {
    DgpConfig dgp;
    dgp.dgp_id = id;
    dgp.kappa = kappa;
    dgp.gamma = gamma;
    dgp.d = 2;
    return dgp;
}

// A radius whose ten-billionths digit is odd (floor(t * 1e10) = 7500000001),
// placed half a digit-step past the boundary so the extraction is stable.
constexpr double kOddRadius = 0.75000000015;

} // namespace

TEST_CASE("normalized radius on hand fixtures") {
    CHECK(radial_coordinate({0.0, 0.0}) == 0.0);
    CHECK(radial_coordinate({1.0, 1.0}) == 1.0);
    CHECK(radial_coordinate({0.6, 0.8}) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-15));
    // Half of sqrt(2) lands exactly on the decision boundary.
    CHECK(radial_coordinate({0.7071067811865476, 0.0}) == 0.5);
    CHECK_THROWS_AS(radial_coordinate({}), std::invalid_argument);
}

TEST_CASE("ten-billionths digit parity on hand fixtures") {
    CHECK(parity_digit_even(0.5));      // digit 0
    CHECK(parity_digit_even(0.0));      // all digits zero
    CHECK_FALSE(parity_digit_even(1.5e-10)); // floor gives 1
    CHECK(parity_digit_even(0.75));     // digit 0
    CHECK_FALSE(parity_digit_even(kOddRadius)); // floor gives ...001
    CHECK(parity_digit_even(1.0));
    CHECK_THROWS_AS(parity_digit_even(-0.1), std::invalid_argument);
}

TEST_CASE("label probability is 1/2 on the boundary for every process") {
    for (DgpId id : {DgpId::DGP1, DgpId::DGP2}) {
        for (SourceRole role : {SourceRole::P, SourceRole::Q}) {
            CHECK(eta_at_radius(config(id, 0.7, 0.6), role, 0.5) == 0.5);
        }
    }
}

TEST_CASE("first process: target branch values at both parities") {
    const DgpConfig dgp = config(DgpId::DGP1, 0.2, 0.6);
    // Even-parity radius: linear slope kappa.
    CHECK(eta_at_radius(dgp, SourceRole::Q, 0.75) == 0.55);
    // Odd-parity radius: steeper slope kappa^gamma = 0.38073...
    CHECK(eta_at_radius(dgp, SourceRole::Q, kOddRadius) ==
          doctest::Approx(0.5951826969929035).epsilon(1e-13));
}

TEST_CASE("first process: source curve is parity-independent") {
    const DgpConfig dgp = config(DgpId::DGP1, 0.2, 0.6);
    CHECK(eta_at_radius(dgp, SourceRole::P, 0.75) ==
          doctest::Approx(0.6657227008669994).epsilon(1e-13));
    CHECK(eta_at_radius(dgp, SourceRole::P, kOddRadius) ==
          doctest::Approx(0.6657227009266595).epsilon(1e-13));
    // Below the boundary the signal flips sign symmetrically.
    CHECK(eta_at_radius(dgp, SourceRole::P, 0.25) ==
          doctest::Approx(0.33427729913300064).epsilon(1e-13));
}

TEST_CASE("second process: linear target and parity-kinked source") {
    const DgpConfig dgp = config(DgpId::DGP2, 0.5, 0.6);
    CHECK(eta_at_radius(dgp, SourceRole::Q, 0.75) == 0.625);
    CHECK(eta_at_radius(dgp, SourceRole::Q, kOddRadius) ==
          doctest::Approx(0.625).epsilon(1e-9)); // parity does not move Q
    CHECK(eta_at_radius(dgp, SourceRole::P, 0.75) ==
          doctest::Approx(0.7871745887492587).epsilon(1e-13));
    CHECK(eta_at_radius(dgp, SourceRole::P, kOddRadius) ==
          doctest::Approx(0.8203721498690146).epsilon(1e-13));
}

TEST_CASE("label probability is clamped into the unit interval") {
    // kappa = 0.9 pushes the raw source value to 1.11933... at the far corner.
    const DgpConfig dgp = config(DgpId::DGP1, 0.9, 0.6);
    CHECK(eta_at_radius(dgp, SourceRole::P, 1.0) == 1.0);
    CHECK(eta(dgp, SourceRole::P, {1.0, 1.0}) == 1.0);

    // And every value over a dense radius sweep stays in [0,1].
    for (int i = 0; i <= 2000; ++i) {
        const double t = static_cast<double>(i) / 2000.0;
        for (DgpId id : {DgpId::DGP1, DgpId::DGP2}) {
            for (SourceRole role : {SourceRole::P, SourceRole::Q}) {
                const double value = eta_at_radius(config(id, 0.9, 0.6), role, t);
                CHECK(value >= 0.0);
                CHECK(value <= 1.0);
            }
        }
    }
}

TEST_CASE("point-level and radius-level probabilities agree") {
    Sampler sampler(mix_seed(0x5A5A5A5Aull, 1));
    const DgpConfig dgp = config(DgpId::DGP2, 0.5, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
        const FeatureVector x{sampler.uniform01(), sampler.uniform01()};
        CHECK(eta(dgp, SourceRole::P, x) ==
              eta_at_radius(dgp, SourceRole::P, radial_coordinate(x)));
    }
}

TEST_CASE("configuration and radius validation") {
    CHECK_THROWS_AS(eta_at_radius(config(DgpId::DGP1, 1.5, 0.6), SourceRole::Q, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(eta_at_radius(config(DgpId::DGP1, -0.1, 0.6), SourceRole::Q, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(eta_at_radius(config(DgpId::DGP1, 0.5, 0.0), SourceRole::Q, 0.3),
                    std::invalid_argument);
    DgpConfig flat = config(DgpId::DGP1, 0.5, 0.6);
    flat.d = 0;
    CHECK_THROWS_AS(eta_at_radius(flat, SourceRole::Q, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(eta_at_radius(config(DgpId::DGP1, 0.5, 0.6), SourceRole::Q, -0.2),
                    std::invalid_argument);
}

TEST_CASE("mutual relative-signal envelope holds off the clamped region") {
    // For the first process the source deviation |eta_P - 1/2| is pinched
    // between kappa^{gamma(1-gamma)} |eta_Q - 1/2|^gamma and |eta_Q - 1/2|^gamma.
    const double gamma = 0.6;
    for (double kappa : {0.2, 0.5, 0.9}) {
        const DgpConfig dgp = config(DgpId::DGP1, kappa, gamma);
        const double floor_factor = std::pow(kappa, gamma * (1.0 - gamma));
        for (int i = 0; i <= 2000; ++i) {
            const double t = static_cast<double>(i) / 2000.0;
            const double eta_p = eta_at_radius(dgp, SourceRole::P, t);
            if (eta_p <= 0.0 || eta_p >= 1.0) continue; // clamp exercised
            const double dev_p = std::abs(eta_p - 0.5);
            const double dev_q =
                std::abs(eta_at_radius(dgp, SourceRole::Q, t) - 0.5);
            const double envelope = std::pow(dev_q, gamma);
            CHECK(dev_p <= envelope + 1e-12);
            CHECK(dev_p >= floor_factor * envelope - 1e-12);
        }
    }
}

TEST_CASE("source and target signals never disagree in sign") {
    for (DgpId id : {DgpId::DGP1, DgpId::DGP2}) {
        for (double kappa : {0.5, 0.9}) {
            const DgpConfig dgp = config(id, kappa, 0.6);
            for (int i = 0; i <= 2000; ++i) {
                const double t = static_cast<double>(i) / 2000.0;
                const double dev_p = eta_at_radius(dgp, SourceRole::P, t) - 0.5;
                const double dev_q = eta_at_radius(dgp, SourceRole::Q, t) - 0.5;
                CHECK(dev_p * dev_q >= 0.0);
            }
        }
    }
}

TEST_CASE("oracle label thresholds the normalized radius inclusively") {
    const DgpConfig one = config(DgpId::DGP1, 0.5, 0.6);
    const DgpConfig two = config(DgpId::DGP2, 0.5, 0.6);

    CHECK(bayes_label(one, {0.9, 0.9}) == 1);  // t = 0.9
    CHECK(bayes_label(one, {0.1, 0.1}) == 0);  // t = 0.1
    CHECK(bayes_label(one, {0.7071067811865476, 0.0}) == 1); // t = 0.5 exactly

    Sampler sampler(mix_seed(0x5A5A5A5Aull, 2));
    for (int trial = 0; trial < 100; ++trial) {
        const FeatureVector x{sampler.uniform01(), sampler.uniform01()};
        const int label = bayes_label(one, x);
        CHECK(label == bayes_label(two, x)); // process-independent
        CHECK(label == (radial_coordinate(x) >= 0.5 ? 1 : 0));
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const DgpConfig dgp = config(DgpId::DGP1, 0.5, 0.6);
    const SourceDataset a = sample_dataset(dgp, SourceRole::P, 50, 12345);
    const SourceDataset b = sample_dataset(dgp, SourceRole::P, 50, 12345);
    REQUIRE(a.size() == 50);
    REQUIRE(b.size() == 50);
    CHECK(a.tag() == "P");
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x); // bitwise
        CHECK(a[i].y == b[i].y);
    }

    const SourceDataset c = sample_dataset(dgp, SourceRole::Q, 50, 54321);
    CHECK(c.tag() == "Q");
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size() && !any_difference; ++i) {
        any_difference = a[i].x != c[i].x || a[i].y != c[i].y;
    }
    CHECK(any_difference);
}

TEST_CASE("sampling an empty dataset is allowed") {
    const SourceDataset empty =
        sample_dataset(config(DgpId::DGP2, 0.3, 0.6), SourceRole::Q, 0, 7);
    CHECK(empty.empty());
}

TEST_CASE("zero signal strength produces fair-coin labels") {
    const std::size_t n = 4000;
    for (SourceRole role : {SourceRole::P, SourceRole::Q}) {
        const SourceDataset data =
            sample_dataset(config(DgpId::DGP1, 0.0, 0.6), role, n, 9001);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data[i].y;
        mean /= static_cast<double>(n);
        CHECK(std::abs(mean - 0.5) <= 3.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("labels are Bernoulli draws from the stated probabilities") {
    // With unit slope the target probability equals the radius itself, so the
    // empirical label mean over any region must track the empirical mean of
    // eta over the same region.
    const DgpConfig dgp = config(DgpId::DGP1, 1.0, 1.0);
    const std::size_t n = 20000;
    const SourceDataset data = sample_dataset(dgp, SourceRole::Q, n, 424242);

    double label_mean = 0.0;
    double eta_mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (radial_coordinate(data[i].x) <= 0.5) continue;
        label_mean += data[i].y;
        eta_mean += eta(dgp, SourceRole::Q, data[i].x);
        ++count;
    }
    REQUIRE(count > 8000);
    label_mean /= static_cast<double>(count);
    eta_mean /= static_cast<double>(count);
    CHECK(std::abs(label_mean - eta_mean) <= 0.02);
}
