#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ranksel/sample.hpp"
#include "ranksel/stats.hpp"
#include "ranksel/subsample.hpp"
#include "ranksel/tau_dist.hpp"

// Brute-force reference implementations. Everything here enumerates label
// arrangements or index subsets directly and shares nothing with the
// closed-form modules beyond jump_count and the ordered-label kernels, so
// the two paths can check each other.
namespace ranksel::oracle {

struct EnumerationBudget {
    std::int64_t max_states = 1000000;
};

// Visits every binary sequence with n0 zeros and n1 ones exactly once, in
// lexicographic order. Throws BudgetExceededError when C(n, n0) exceeds the
// budget. Returns the number of sequences visited.
std::int64_t enumerate_binary_sequences(
    int n0, int n1, const std::function<void(std::span<const std::uint8_t>)>& visit,
    EnumerationBudget budget = {});

// Histogram of jump counts over the full enumeration, normalized.
TauDistribution brute_tau_pmf(int n0, int n1, EnumerationBudget budget = {});

// Direct loop over all C(n,m) index subsets; values ordered by (value,
// index), which matches the rank order whenever values are distinct.
double brute_u_statistic(const LabeledSample& sample, std::int32_t m, Kernel kernel,
                         EnumerationBudget budget = {});

// Exact permutation p-value: the fraction of label arrangements whose
// statistic is at least as extreme as the observed one (ties inclusive).
double brute_permutation_pvalue(
    const std::function<double(std::span<const std::uint8_t>)>& statistic,
    const LabeledSample& sample, Alternative alternative, double center,
    EnumerationBudget budget = {});

// Cross-checks the closed-form modules against the oracles above; prints
// one line per check to stdout. Returns the number of failed checks.
// Backs the CLI `verify` subcommand.
int run_verify_suite();

}  // namespace ranksel::oracle
