#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ranksel/dataset.hpp"
#include "ranksel/fdr.hpp"
#include "ranksel/stability.hpp"
#include "ranksel/stats.hpp"

namespace ranksel {

enum class PValueMode { Exact, MonteCarlo };

struct RunConfig {
    bool use_xi = false;        // statistic: AUC (false) or xi (true)
    bool resampled = false;
    std::int32_t m = 50;
    std::int64_t ell = 100;
    std::int64_t n_perm = 100000;
    double alpha = 0.15;
    FdrProcedure fdr = FdrProcedure::BenjaminiYekutieli;
    PValueMode pvalue_mode = PValueMode::MonteCarlo;
    std::int32_t folds = 4;
    std::uint64_t seed = 0;
    std::int32_t threads = 1;

    // Throws std::domain_error on out-of-domain fields or the invalid
    // combination exact + resampled.
    void validate(std::int64_t n_rows) const;

    RankingConfig ranking() const;
    std::string statistic_name() const;
};

struct FeatureReport {
    std::string name;
    double statistic = 0.0;
    double pvalue = 1.0;
    double adjusted = 1.0;
    bool selected = false;
};

struct SelectionOutput {
    std::vector<FeatureReport> reports;  // input column order
    SelectionResult selection;
};

// Step 1: one p-value per feature from (Y_col, X), every feature sharing the
// same subsample design; step 2: FDR selection at alpha. Deterministic for a
// fixed seed whatever config.threads is.
SelectionOutput run_selection(const DatasetMatrix& data, const RunConfig& config);

// Stability curve across k cross-validation folds. k = 1 means a single
// fold holding all rows.
StabilityCurve run_stability(const DatasetMatrix& data, const RunConfig& config,
                             std::int32_t k, std::span<const std::int32_t> s_grid);

struct EllSweepRow {
    std::int32_t fold = 0;
    std::int64_t ell = 0;
    std::int32_t rejections = 0;
};

// Resampled-xi selection rerun for each ell in the grid on each fold's data;
// records the rejection count per (fold, ell).
std::vector<EllSweepRow> run_ell_sweep(const DatasetMatrix& data, const RunConfig& config,
                                       std::span<const std::int64_t> ell_grid, double alpha);

// Writers. Fixed column order and row order, "%.10g" numbers; identical
// inputs produce byte-identical files.
std::string format_feature_reports(const SelectionOutput& output);
void write_feature_reports(const SelectionOutput& output, const std::string& path);
std::string format_stability_curve(const StabilityCurve& curve);
void write_stability_curve(const StabilityCurve& curve, const std::string& path);
std::string format_ell_sweep(const std::vector<EllSweepRow>& rows);
void write_ell_sweep(const std::vector<EllSweepRow>& rows, const std::string& path);

}  // namespace ranksel
