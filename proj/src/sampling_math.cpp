#include "sampling_math.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace ssp {

namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double prob_overlap_at_least(std::uint64_t population, std::uint64_t top, std::uint64_t draw,
                             std::uint64_t k) {
    if (top > population) throw param_error("top set larger than population");
    if (draw > population) throw param_error("draw larger than population");
    if (k == 0) return 1.0;
    const std::uint64_t hi = std::min(top, draw);
    if (k > hi) return 0.0;
    // i ranges over feasible overlaps: draw - i must fit in the non-top pool.
    const std::uint64_t pool = population - top;
    const std::uint64_t lo = std::max(k, draw > pool ? draw - pool : 0);
    const double log_total = log_choose(population, draw);
    double sum = 0.0;
    for (std::uint64_t i = lo; i <= hi; ++i) {
        sum += std::exp(log_choose(top, i) + log_choose(pool, draw - i) - log_total);
    }
    return std::min(sum, 1.0);
}

double prob_at_least_one(double alpha, std::uint64_t draw) {
    if (alpha <= 0.0 || alpha > 100.0) throw param_error("alpha must be in (0, 100]");
    if (draw == 0) return 0.0;
    return 1.0 - std::pow(1.0 - alpha / 100.0, static_cast<double>(draw));
}

SampleSizeSpec min_candidate_size(double p, double alpha) {
    if (!(p > 0.0 && p < 1.0)) throw param_error("confidence p must be in (0, 1)");
    if (alpha <= 0.0 || alpha > 100.0) throw param_error("alpha must be in (0, 100]");
    std::uint32_t xi = 1;
    if (alpha < 100.0) {
        const double ratio = std::log1p(-p) / std::log1p(-alpha / 100.0);
        // Guard against the quotient landing an ulp above an integer.
        const double ceiled = std::ceil(ratio - 1e-9);
        xi = static_cast<std::uint32_t>(std::max(1.0, ceiled));
    }
    return {p, alpha, xi, prob_at_least_one(alpha, xi)};
}

double cover_ratio_lower_bound(double p, double oversample) {
    if (!(p > 0.0 && p <= 1.0)) throw param_error("confidence p must be in (0, 1]");
    if (oversample <= 0.0) throw param_error("oversample factor must be positive");
    return 1.0 - std::exp(-oversample * p);
}

}  // namespace ssp
