#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ssp {

// All randomness in the library flows through this wrapper around
// std::mt19937_64. The engine itself is fully specified by the C++ standard;
// the draw formulas below are spelled out here instead of relying on
// std::*_distribution (whose output is implementation-defined), so a given
// 64-bit seed produces the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n) via rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    std::size_t pick_index(std::size_t n) { return static_cast<std::size_t>(next_below(n)); }

    // Fisher-Yates, explicit so the permutation is seed-portable.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = pick_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Geometric delay on {1, 2, ...} with success probability q:
    // P(k) = q * (1-q)^(k-1), drawn by inversion.
    std::uint64_t geometric_from_one(double q) {
        if (q >= 1.0) return 1;
        const double u = next_double();
        return 1 + static_cast<std::uint64_t>(std::floor(std::log1p(-u) / std::log1p(-q)));
    }

    // Index into a non-empty cumulative-weight vector (last entry = total).
    std::size_t weighted_index(const std::vector<double>& cumulative) {
        const double x = next_double() * cumulative.back();
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative[mid] <= x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    // Deterministic sub-stream seed, splitmix64 over seed and salt. Used to
    // give replications and cascades independent streams from one master seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ssp
