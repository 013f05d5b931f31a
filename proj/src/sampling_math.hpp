#pragma once

#include <cstdint>

namespace ssp {

struct SampleSizeSpec {
    double p;               // confidence in (0,1)
    double alpha;           // percentile in (0,100]
    std::uint32_t xi;       // minimum candidate count
    double achieved_prob;   // probability reached at xi candidates
};

// P(|sample ∩ top| >= k) when drawing `draw` nodes without replacement from a
// population of size `population` containing `top` marked nodes. Exact
// hypergeometric tail, accumulated in log space so it stays finite for
// populations around 1e8.
double prob_overlap_at_least(std::uint64_t population, std::uint64_t top, std::uint64_t draw,
                             std::uint64_t k);

// With-replacement approximation for k = 1: 1 - (1 - alpha/100)^draw.
double prob_at_least_one(double alpha, std::uint64_t draw);

// Smallest candidate count xi such that a draw of xi nodes contains at least
// one node of the top alpha% with probability >= p (floored at 1).
SampleSizeSpec min_candidate_size(double p, double alpha);

// Lower bound on the expected fraction of the optimum covered by the union of
// per-round candidate sets when alpha = oversample * 100K/|V| per round:
// 1 - exp(-oversample * p).
double cover_ratio_lower_bound(double p, double oversample = 1.0);

}  // namespace ssp
