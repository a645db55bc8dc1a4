#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace driftknn {

//! Covariate vector with coordinates in [0,1]. Dimension is fixed per dataset.
using FeatureVector = std::vector<double>;

//! One training observation: covariates plus a binary label.
struct LabeledSample {
    FeatureVector x;
    int y = 0; // 0 or 1
};

//! Ordered, immutable collection of labeled samples from one distribution.
//!
//! Construction validates that labels are binary and that all covariate
//! vectors share one dimension. An empty dataset is permitted (dimension 0).
class SourceDataset {
public:
    SourceDataset() = default;

    SourceDataset(std::vector<LabeledSample> samples, std::string tag)
        : samples_(std::move(samples)), tag_(std::move(tag)) {
        for (const LabeledSample& s : samples_) {
            if (s.y != 0 && s.y != 1) {
                throw std::invalid_argument("SourceDataset '" + tag_ +
                                            "': label must be 0 or 1");
            }
            if (s.x.empty()) {
                throw std::invalid_argument("SourceDataset '" + tag_ +
                                            "': empty covariate vector");
            }
            if (s.x.size() != samples_.front().x.size()) {
                throw std::invalid_argument("SourceDataset '" + tag_ +
                                            "': inconsistent dimension");
            }
        }
    }

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    //! Covariate dimension; 0 for an empty dataset.
    std::size_t dimension() const {
        return samples_.empty() ? 0 : samples_.front().x.size();
    }

    const LabeledSample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<LabeledSample>& samples() const { return samples_; }
    const std::string& tag() const { return tag_; }

private:
    std::vector<LabeledSample> samples_;
    std::string tag_;
};

} // namespace driftknn
