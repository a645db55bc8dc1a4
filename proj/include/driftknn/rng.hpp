#pragma once

#include <cstdint>
#include <random>

namespace driftknn {

//! Derive a child seed from a parent seed and a stream index.
//!
//! Uses the splitmix64 output finalizer over parent + phi64 * (stream + 1),
//! so distinct (parent, stream) pairs map to well-separated seeds even when
//! the inputs are small consecutive integers.
inline std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t stream) {
    std::uint64_t z = parent + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

//! Deterministic uniform sampler.
//!
//! Wraps mt19937_64 with an explicit bits-to-double mapping instead of
//! std::uniform_real_distribution, whose output is implementation defined.
//! Identical seeds therefore give identical streams on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    //! Uniform draw in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    //! Bernoulli draw: 1 with probability p.
    int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

private:
    std::mt19937_64 gen_;
};

} // namespace driftknn
