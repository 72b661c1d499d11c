#pragma once

#include <cstdint>
#include <vector>

#include "ranksel/rng.hpp"

namespace ranksel {

enum class FdrProcedure { BenjaminiYekutieli, BenjaminiHochberg };

struct PValueVector {
    std::vector<double> values;            // in (0, 1]
    std::vector<std::int32_t> feature_ids; // same length; defaults to 0..p-1

    explicit PValueVector(std::vector<double> v);
    PValueVector(std::vector<double> v, std::vector<std::int32_t> ids);
};

struct SelectionResult {
    std::vector<std::int32_t> selected;  // feature ids, ascending
    double alpha = 0.0;
    std::vector<double> adjusted;        // aligned with the input positions
    FdrProcedure procedure = FdrProcedure::BenjaminiYekutieli;

    bool is_selected(std::int32_t id) const;
};

// Step-up selection at level alpha. BY uses the harmonic correction
// c(p) = sum 1/k and so controls the FDR under arbitrary dependence; BH is
// the same rule with c(p) = 1. Comparison with the threshold is inclusive.
SelectionResult by_select(const PValueVector& pvalues, double alpha);
SelectionResult bh_select(const PValueVector& pvalues, double alpha);
SelectionResult fdr_select(const PValueVector& pvalues, double alpha,
                           FdrProcedure procedure);

// Realized FDR (mean of V / max(R,1)) on synthetic two-class data with exact
// AUC p-values per feature.
struct FdrSimConfig {
    std::int64_t p = 200;
    std::int64_t n_nonnull = 20;
    double effect = 1.5;       // class shift in standard deviations
    double alpha = 0.15;
    std::int64_t reps = 200;
    StreamKey key;
    std::int64_t n = 60;       // rows per replication (balanced classes)
    FdrProcedure procedure = FdrProcedure::BenjaminiYekutieli;
    double rho = 0.0;          // optional equicorrelation of all features
};

struct FdrSimResult {
    double fdr = 0.0;          // mean of V / max(R, 1)
    double se = 0.0;           // standard error of that mean
    double mean_rejections = 0.0;
};

FdrSimResult fdr_simulation(const FdrSimConfig& config);

}  // namespace ranksel
