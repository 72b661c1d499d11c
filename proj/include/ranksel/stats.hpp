#pragma once

#include <cstdint>
#include <span>

#include "ranksel/sample.hpp"

namespace ranksel {

enum class Alternative { TwoSided, Greater, Less };

// Mann-Whitney U: number of (group-0, group-1) pairs in which the group-0
// value is larger; equals -n0(n0+1)/2 + sum of group-0 ranks. Requires both
// groups nonempty (DegenerateGroupError otherwise). Range [0, n0*n1].
double mann_whitney_u(const LabeledSample& sample, const RankPermutation& perm);

// U / (n0*n1), in [0,1]. Same degenerate-group error as mann_whitney_u;
// resampling callers substitute the uninformative value 0.5 themselves.
double auc(const LabeledSample& sample, const RankPermutation& perm);

// Chatterjee's xi specialized to binary labels:
//   xi = 1 - n * tau / (2*n0*n1)
// where tau is the jump count of the labels rearranged into value order.
// Defined as 0 when either group is empty.
double xi_binary(const LabeledSample& sample, const RankPermutation& perm);

// Kernels on a label sequence already arranged in value order. These back
// the subsample evaluators; degenerate sequences take the uninformative
// value (0.5 for AUC, 0 for xi) instead of erroring.
double auc_of_ordered_labels(std::span<const std::uint8_t> ordered_labels);
double xi_of_ordered_labels(std::span<const std::uint8_t> ordered_labels);

}  // namespace ranksel
