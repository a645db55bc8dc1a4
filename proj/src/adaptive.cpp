#include "driftknn/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "driftknn/geometry.hpp"
#include "driftknn/estimators.hpp"

namespace driftknn {

std::string to_string(StopReason reason) {
    return reason == StopReason::threshold_crossed ? "threshold_crossed"
                                                   : "exhausted";
}

double stopping_threshold(std::size_t d, std::size_t n_total) {
    if (d < 1) throw std::invalid_argument("stopping_threshold: d must be >= 1");
    if (n_total < 2) {
        throw std::invalid_argument("stopping_threshold: n_total must be >= 2");
    }
    const double lg = std::log(static_cast<double>(n_total));
    return std::sqrt((static_cast<double>(d) + lg) * lg);
}

double signal_to_noise_r(const std::vector<RTerm>& estimates) {
    double above = 0.0; // mass of sources with eta_hat >= 1/2
    double below = 0.0; // mass of sources with eta_hat <  1/2
    bool any = false;
    for (const RTerm& t : estimates) {
        if (t.k == 0) continue;
        any = true;
        const double dev = t.eta_hat - 0.5;
        const double term = static_cast<double>(t.k) * dev * dev;
        if (dev >= 0.0) {
            above += term;
        } else {
            below += term;
        }
    }
    if (!any) {
        throw std::invalid_argument("signal_to_noise_r: every entry has k = 0");
    }
    return std::max(std::sqrt(above), std::sqrt(below));
}

namespace {

//! A source's full neighbor ordering around one query, reduced to prefix
//! counts of 1-labels so eta_hat at any k is an O(1) lookup.
struct RankedSource {
    std::size_t n = 0;
    std::vector<std::size_t> ones_prefix; // ones_prefix[k] over k nearest
};

RankedSource rank_source(const SourceDataset& data, const FeatureVector& query) {
    RankedSource ranked;
    ranked.n = data.size();
    ranked.ones_prefix.assign(data.size() + 1, 0);
    if (!data.empty()) {
        const std::vector<Neighbor> order = rank_all(data, query);
        for (std::size_t i = 0; i < order.size(); ++i) {
            ranked.ones_prefix[i + 1] =
                ranked.ones_prefix[i] + static_cast<std::size_t>(data[order[i].index].y);
        }
    }
    return ranked;
}

double eta_at(const RankedSource& ranked, std::size_t k) {
    // The k = 0 convention used inside the adaptive loop: no evidence, 1/2.
    if (k == 0) return 0.5;
    return static_cast<double>(ranked.ones_prefix[k]) / static_cast<double>(k);
}

//! Threshold used by the scan; the public stopping_threshold requires
//! n >= 2, while a scan over a single sample simply can never cross.
double threshold_or_inf(std::size_t d, std::size_t n_total) {
    if (n_total < 2) return std::numeric_limits<double>::infinity();
    return stopping_threshold(d, n_total);
}

} // namespace

std::pair<int, AdaptiveSelection> adaptive_single_source(
    const SourceDataset& p, const FeatureVector& query) {
    if (p.empty()) {
        throw std::invalid_argument("adaptive_single_source: dataset is empty");
    }
    const RankedSource ranked = rank_source(p, query);
    const double threshold = threshold_or_inf(query.size(), p.size());

    AdaptiveSelection sel;
    sel.threshold = threshold;
    sel.stop_reason = StopReason::exhausted;
    std::size_t k = 1;
    double eta = 0.5;
    for (;; ++k) {
        eta = eta_at(ranked, k);
        sel.r_final = signal_to_noise_r({RTerm{k, eta}});
        if (sel.r_final > threshold) {
            sel.stop_reason = StopReason::threshold_crossed;
            break;
        }
        if (k == p.size()) break;
    }
    sel.ks = {k};
    sel.eta_hats = {eta};
    sel.iterations = k;
    return {plug_in_classify(eta), sel};
}

std::pair<int, AdaptiveSelection> adaptive_two_source(
    const SourceDataset& p, const SourceDataset& q, const FeatureVector& query) {
    if (p.empty() && q.empty()) {
        throw std::invalid_argument("adaptive_two_source: both datasets are empty");
    }
    // The larger sample drives the outer loop; the smaller one follows.
    const bool p_leads = p.size() >= q.size();
    const SourceDataset& lead = p_leads ? p : q;
    const SourceDataset& trail = p_leads ? q : p;
    const RankedSource ranked_lead = rank_source(lead, query);
    const RankedSource ranked_trail = rank_source(trail, query);
    const std::size_t n_lead = lead.size();
    const std::size_t n_trail = trail.size();
    const double threshold = threshold_or_inf(query.size(), n_lead + n_trail);

    AdaptiveSelection sel;
    sel.threshold = threshold;
    sel.stop_reason = StopReason::exhausted;
    std::size_t k_lead = 1;
    std::size_t k_trail = 0;
    double eta_lead = 0.5;
    double eta_trail = 0.5;
    for (;; ++k_lead) {
        k_trail = k_lead * n_trail / n_lead;
        eta_lead = eta_at(ranked_lead, k_lead);
        eta_trail = eta_at(ranked_trail, k_trail);
        sel.r_final = signal_to_noise_r(
            {RTerm{k_lead, eta_lead}, RTerm{k_trail, eta_trail}});
        if (sel.r_final > threshold) {
            sel.stop_reason = StopReason::threshold_crossed;
            break;
        }
        if (k_lead == n_lead) break;
    }
    const double vote = static_cast<double>(k_lead) * (eta_lead - 0.5) +
                        static_cast<double>(k_trail) * (eta_trail - 0.5);
    const int label = vote >= 0.0 ? 1 : 0;
    if (p_leads) {
        sel.ks = {k_lead, k_trail};
        sel.eta_hats = {eta_lead, eta_trail};
    } else {
        sel.ks = {k_trail, k_lead};
        sel.eta_hats = {eta_trail, eta_lead};
    }
    sel.iterations = k_lead;
    return {label, sel};
}

std::pair<int, AdaptiveSelection> adaptive_multi_source(
    const std::vector<SourceDataset>& sources, const FeatureVector& query) {
    if (sources.empty()) {
        throw std::invalid_argument("adaptive_multi_source: no sources given");
    }
    std::vector<std::size_t> order(sources.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sources[a].size() > sources[b].size();
    });
    const std::size_t n_1 = sources[order[0]].size();
    if (n_1 == 0) {
        throw std::invalid_argument("adaptive_multi_source: every source is empty");
    }
    std::size_t n_total = 0;
    std::vector<RankedSource> ranked(sources.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const SourceDataset& src = sources[order[pos]];
        n_total += src.size();
        ranked[pos] = rank_source(src, query);
    }
    const double threshold = threshold_or_inf(query.size(), n_total);

    AdaptiveSelection sel;
    sel.threshold = threshold;
    sel.stop_reason = StopReason::exhausted;
    const std::size_t m = sources.size();
    std::vector<RTerm> terms(m);
    std::size_t k_1 = 1;
    for (;; ++k_1) {
        for (std::size_t pos = 0; pos < m; ++pos) {
            const std::size_t k_j = k_1 * ranked[pos].n / n_1;
            terms[pos] = RTerm{k_j, eta_at(ranked[pos], k_j)};
        }
        sel.r_final = signal_to_noise_r(terms);
        if (sel.r_final > threshold) {
            sel.stop_reason = StopReason::threshold_crossed;
            break;
        }
        if (k_1 == n_1) break;
    }
    double vote = 0.0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        vote += static_cast<double>(terms[pos].k) * (terms[pos].eta_hat - 0.5);
    }
    const int label = vote >= 0.0 ? 1 : 0;
    sel.ks.assign(m, 0);
    sel.eta_hats.assign(m, 0.5);
    for (std::size_t pos = 0; pos < m; ++pos) {
        sel.ks[order[pos]] = terms[pos].k;
        sel.eta_hats[order[pos]] = terms[pos].eta_hat;
    }
    sel.iterations = k_1;
    return {label, sel};
}

std::size_t attempt_count(const AdaptiveSelection& selection) {
    return selection.iterations;
}

} // namespace driftknn
