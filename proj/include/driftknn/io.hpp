#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driftknn/bench.hpp"
#include "driftknn/types.hpp"

namespace driftknn {

//! Rectangular numeric table selected out of a CSV file: feature columns,
//! a binary label column, and optionally a binary split column.
struct TabularDataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> features; // row-major, rows x features
    std::vector<int> labels;                   // binary
    std::optional<std::vector<int>> split;     // binary, if a split column was named
    std::size_t dropped_rows = 0;              // rows removed during ingestion
};

//! Parse a headered CSV, keeping the named columns. Rows with missing or
//! non-numeric entries in any selected column are dropped (counted in
//! dropped_rows); a numeric but non-binary label or split value is an error,
//! as are a missing file, a missing column, and an empty result.
TabularDataset load_csv(const std::string& path, const std::string& label_column,
                        const std::vector<std::string>& feature_columns,
                        const std::string& split_column = "");

//! Per-column min-max rescaling of the features into [0,1]; a constant
//! column maps to all zeros. Labels and split values pass through.
TabularDataset normalize_minmax(const TabularDataset& dataset);

//! Split rows by the designated binary column: value 1 rows become the
//! P-data, value 0 rows the Q-data, original order preserved within each.
std::pair<SourceDataset, SourceDataset> split_by_binary(
    const TabularDataset& dataset);

//! All rows as one SourceDataset (no split).
SourceDataset to_source_dataset(const TabularDataset& dataset,
                                const std::string& tag);

//! Repeated-random-split evaluation on real data: per replication, draw
//! n_q_train target rows (without replacement) as training data, score the
//! four classifiers on the remaining target rows against observed labels.
struct RealDataReport {
    std::vector<Classifier> classifiers;
    std::vector<double> accuracy; // aligned with classifiers
    std::size_t n_q_train = 0;
    std::size_t test_size = 0; // per replication
    std::size_t replications = 0;
};

RealDataReport real_data_protocol(const SourceDataset& p, const SourceDataset& q,
                                  std::size_t n_q_train, std::size_t replications,
                                  std::uint64_t seed);

//! Write a labeled dataset as CSV with header f0..f{d-1},y. Doubles are
//! printed with 17 significant digits so reloading is bit-exact. For an
//! empty dataset, pass the dimension explicitly to get a valid header.
void write_dataset_csv(const std::string& path, const SourceDataset& dataset,
                       std::size_t dimension = 0);
void write_dataset_csv(std::ostream& out, const SourceDataset& dataset,
                       std::size_t dimension = 0);

//! Read a dataset written by write_dataset_csv (header f0..f{d-1},y).
SourceDataset load_dataset_csv(const std::string& path, const std::string& tag);

//! Read query points: header f0..f{d-1}, with an optional trailing y column
//! that is ignored (so dataset files double as query files).
std::vector<FeatureVector> load_queries_csv(const std::string& path);

} // namespace driftknn
