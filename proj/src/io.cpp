#include "driftknn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "driftknn/estimators.hpp"
#include "driftknn/rng.hpp"

namespace driftknn {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    try {
        std::size_t consumed = 0;
        out = std::stod(text, &consumed);
        return consumed == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

int require_binary(double v, const std::string& what) {
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw std::invalid_argument(what + " must be 0 or 1, found " +
                                std::to_string(v));
}

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

} // namespace

TabularDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::vector<std::string>& feature_columns,
                        const std::string& split_column) {
    if (feature_columns.empty()) {
        throw std::invalid_argument("load_csv: no feature columns named");
    }
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw std::invalid_argument("load_csv: empty file: " + path);

    const std::vector<std::string> header = split_fields(lines.front());
    auto column_index = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::invalid_argument("load_csv: column '" + name +
                                        "' not found in " + path);
        }
        return static_cast<std::size_t>(it - header.begin());
    };

    std::vector<std::size_t> feature_idx;
    feature_idx.reserve(feature_columns.size());
    for (const std::string& name : feature_columns) {
        feature_idx.push_back(column_index(name));
    }
    const std::size_t label_idx = column_index(label_column);
    const bool has_split = !split_column.empty();
    const std::size_t split_idx = has_split ? column_index(split_column) : 0;

    TabularDataset dataset;
    dataset.feature_names = feature_columns;
    if (has_split) dataset.split.emplace();
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[row]);
        std::vector<double> values(feature_idx.size());
        double label_value = 0.0;
        double split_value = 0.0;
        bool ok = fields.size() > label_idx &&
                  parse_double(fields[label_idx], label_value);
        if (ok && has_split) {
            ok = fields.size() > split_idx && parse_double(fields[split_idx], split_value);
        }
        for (std::size_t j = 0; ok && j < feature_idx.size(); ++j) {
            ok = fields.size() > feature_idx[j] &&
                 parse_double(fields[feature_idx[j]], values[j]);
        }
        if (!ok) {
            ++dataset.dropped_rows;
            continue;
        }
        dataset.labels.push_back(require_binary(label_value, "load_csv: label"));
        if (has_split) {
            dataset.split->push_back(
                require_binary(split_value, "load_csv: split value"));
        }
        dataset.features.push_back(std::move(values));
    }
    if (dataset.features.empty()) {
        throw std::invalid_argument("load_csv: no usable rows in " + path);
    }
    return dataset;
}

TabularDataset normalize_minmax(const TabularDataset& dataset) {
    TabularDataset out = dataset;
    if (out.features.empty()) return out;
    const std::size_t width = out.features.front().size();
    for (std::size_t j = 0; j < width; ++j) {
        double lo = out.features.front()[j];
        double hi = lo;
        for (const std::vector<double>& row : out.features) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        const double range = hi - lo;
        for (std::vector<double>& row : out.features) {
            row[j] = range == 0.0 ? 0.0 : (row[j] - lo) / range;
        }
    }
    return out;
}

std::pair<SourceDataset, SourceDataset> split_by_binary(
    const TabularDataset& dataset) {
    if (!dataset.split.has_value()) {
        throw std::invalid_argument("split_by_binary: no split column designated");
    }
    std::vector<LabeledSample> p_rows;
    std::vector<LabeledSample> q_rows;
    for (std::size_t i = 0; i < dataset.features.size(); ++i) {
        LabeledSample sample{dataset.features[i], dataset.labels[i]};
        if ((*dataset.split)[i] == 1) {
            p_rows.push_back(std::move(sample));
        } else {
            q_rows.push_back(std::move(sample));
        }
    }
    return {SourceDataset(std::move(p_rows), "P"),
            SourceDataset(std::move(q_rows), "Q")};
}

SourceDataset to_source_dataset(const TabularDataset& dataset,
                                const std::string& tag) {
    std::vector<LabeledSample> rows;
    rows.reserve(dataset.features.size());
    for (std::size_t i = 0; i < dataset.features.size(); ++i) {
        rows.push_back(LabeledSample{dataset.features[i], dataset.labels[i]});
    }
    return SourceDataset(std::move(rows), tag);
}

RealDataReport real_data_protocol(const SourceDataset& p, const SourceDataset& q,
                                  std::size_t n_q_train, std::size_t replications,
                                  std::uint64_t seed) {
    if (n_q_train >= q.size()) {
        throw std::invalid_argument(
            "real_data_protocol: n_q_train must be smaller than the target data");
    }
    if (n_q_train == 0) {
        throw std::invalid_argument("real_data_protocol: n_q_train must be >= 1");
    }
    if (replications == 0) {
        throw std::invalid_argument("real_data_protocol: replications must be >= 1");
    }

    RealDataReport report;
    report.classifiers = {Classifier::adaptive, Classifier::pooled_adaptive,
                          Classifier::knn_q, Classifier::knn_all};
    report.accuracy.assign(report.classifiers.size(), 0.0);
    report.n_q_train = n_q_train;
    report.test_size = q.size() - n_q_train;
    report.replications = replications;

    std::vector<std::size_t> correct(report.classifiers.size(), 0);
    std::vector<std::size_t> indices(q.size());
    for (std::size_t rep = 0; rep < replications; ++rep) {
        Sampler sampler(mix_seed(seed, rep));
        std::iota(indices.begin(), indices.end(), std::size_t{0});
        // Partial Fisher-Yates: the first n_q_train slots become training rows.
        for (std::size_t i = 0; i < n_q_train; ++i) {
            const std::size_t remaining = indices.size() - i;
            const auto offset = std::min<std::size_t>(
                static_cast<std::size_t>(sampler.uniform01() *
                                         static_cast<double>(remaining)),
                remaining - 1);
            std::swap(indices[i], indices[i + offset]);
        }
        std::vector<LabeledSample> train_rows;
        train_rows.reserve(n_q_train);
        for (std::size_t i = 0; i < n_q_train; ++i) {
            train_rows.push_back(q[indices[i]]);
        }
        const SourceDataset q_train(std::move(train_rows), "Q");

        for (std::size_t i = n_q_train; i < indices.size(); ++i) {
            const LabeledSample& test = q[indices[i]];
            for (std::size_t ci = 0; ci < report.classifiers.size(); ++ci) {
                int label = 0;
                switch (report.classifiers[ci]) {
                    case Classifier::adaptive:
                        label = adaptive_two_source(p, q_train, test.x).first;
                        break;
                    case Classifier::pooled_adaptive:
                        label = pooled_adaptive_classify(p, q_train, test.x).label;
                        break;
                    case Classifier::knn_q:
                        label = knn_q_baseline(q_train, test.x);
                        break;
                    case Classifier::knn_all:
                        label = knn_all_baseline(p, q_train, test.x);
                        break;
                }
                if (label == test.y) ++correct[ci];
            }
        }
    }
    const double denom = static_cast<double>(replications) *
                         static_cast<double>(report.test_size);
    for (std::size_t ci = 0; ci < report.classifiers.size(); ++ci) {
        report.accuracy[ci] = static_cast<double>(correct[ci]) / denom;
    }
    return report;
}

void write_dataset_csv(std::ostream& out, const SourceDataset& dataset,
                       std::size_t dimension) {
    const std::size_t d = dataset.empty() ? dimension : dataset.dimension();
    if (d == 0) {
        throw std::invalid_argument(
            "write_dataset_csv: dimension required for an empty dataset");
    }
    for (std::size_t j = 0; j < d; ++j) out << "f" << j << ",";
    out << "y\n";
    for (const LabeledSample& s : dataset.samples()) {
        for (double v : s.x) out << format_double(v) << ",";
        out << s.y << "\n";
    }
}

void write_dataset_csv(const std::string& path, const SourceDataset& dataset,
                       std::size_t dimension) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    write_dataset_csv(out, dataset, dimension);
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

//! Validate a header of the form f0..f{d-1}[,y]; returns (d, has_label).
std::pair<std::size_t, bool> parse_dataset_header(
    const std::vector<std::string>& header, const std::string& path) {
    std::size_t d = header.size();
    bool has_label = false;
    if (!header.empty() && header.back() == "y") {
        has_label = true;
        --d;
    }
    if (d == 0) {
        throw std::invalid_argument("dataset CSV needs at least one feature column: " +
                                    path);
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (header[j] != "f" + std::to_string(j)) {
            throw std::invalid_argument("dataset CSV header must be f0..f{d-1}[,y]: " +
                                        path);
        }
    }
    return {d, has_label};
}

} // namespace

SourceDataset load_dataset_csv(const std::string& path, const std::string& tag) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw std::invalid_argument("empty dataset file: " + path);
    const auto [d, has_label] = parse_dataset_header(split_fields(lines.front()), path);
    if (!has_label) {
        throw std::invalid_argument("dataset CSV is missing the y column: " + path);
    }
    std::vector<LabeledSample> samples;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[row]);
        if (fields.size() != d + 1) {
            throw std::invalid_argument("dataset CSV row " + std::to_string(row) +
                                        " has wrong arity: " + path);
        }
        LabeledSample sample;
        sample.x.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (!parse_double(fields[j], sample.x[j])) {
                throw std::invalid_argument("dataset CSV row " + std::to_string(row) +
                                            " is not numeric: " + path);
            }
        }
        double label = 0.0;
        if (!parse_double(fields[d], label)) {
            throw std::invalid_argument("dataset CSV row " + std::to_string(row) +
                                        " has a bad label: " + path);
        }
        sample.y = require_binary(label, "dataset CSV label");
        samples.push_back(std::move(sample));
    }
    return SourceDataset(std::move(samples), tag);
}

std::vector<FeatureVector> load_queries_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw std::invalid_argument("empty query file: " + path);
    const auto [d, has_label] = parse_dataset_header(split_fields(lines.front()), path);
    std::vector<FeatureVector> queries;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[row]);
        const std::size_t expected = d + (has_label ? 1 : 0);
        if (fields.size() != expected) {
            throw std::invalid_argument("query CSV row " + std::to_string(row) +
                                        " has wrong arity: " + path);
        }
        FeatureVector x(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (!parse_double(fields[j], x[j])) {
                throw std::invalid_argument("query CSV row " + std::to_string(row) +
                                            " is not numeric: " + path);
            }
        }
        queries.push_back(std::move(x));
    }
    if (queries.empty()) {
        throw std::invalid_argument("query CSV has no rows: " + path);
    }
    return queries;
}

} // namespace driftknn
