#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranksel/rng.hpp"
#include "ranksel/sample.hpp"

namespace ranksel {

// Feature matrix with one binary label per row. Columns are features.
struct DatasetMatrix {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> columns;  // p columns, each of length n
    std::vector<std::uint8_t> labels;          // length n

    std::int64_t n_rows() const { return static_cast<std::int64_t>(labels.size()); }
    std::int64_t n_features() const { return static_cast<std::int64_t>(columns.size()); }

    LabeledSample feature_sample(std::int64_t j) const;
    // Restriction to a subset of rows (fold data).
    DatasetMatrix rows_subset(const std::vector<std::int32_t>& rows) const;

    void validate() const;
};

// Reads an RFC-4180-style CSV (quoted fields, embedded delimiters/newlines,
// doubled quotes). The header row is required; `label_column` names the
// binary label column. Throws ParseError naming the 1-based row/column on
// any malformed cell, non-binary label, or non-finite value.
DatasetMatrix ingest_csv(const std::string& path, const std::string& label_column,
                         char delimiter = ',');

// Writes a dataset back out (label column first), mainly for `synth`.
void write_dataset_csv(const DatasetMatrix& data, const std::string& path,
                       const std::string& label_column = "label");

// Two balanced classes; feature values N(0,1). The first n_nonnull features
// get their class-1 rows shifted by `shift` standard deviations. The first
// rho_block features additionally share a per-row factor giving pairwise
// equicorrelation rho.
struct SyntheticSpec {
    std::int64_t n = 100;
    std::int64_t p = 50;
    std::int64_t n_nonnull = 0;
    double shift = 0.0;
    double rho = 0.0;
    std::int64_t rho_block = 0;
    StreamKey key;
};

DatasetMatrix generate_synthetic(const SyntheticSpec& spec);

}  // namespace ranksel
