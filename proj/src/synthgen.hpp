#pragma once

#include <cstdint>
#include <vector>

#include "cascades.hpp"
#include "graph.hpp"

namespace ssp {

// Power-law degree target: P(degree = d) proportional to d^(-exponent) over
// d in [1, max_degree]. Realized via the configuration model so the degree
// distribution matches the target directly.
struct PowerLawSpec {
    std::uint32_t node_count = 0;
    double exponent = 2.5;       // > 1
    std::uint32_t max_degree = 100;
    std::uint64_t seed = 0;
};

enum class SeedRule { Uniform, DegreeBiased };

// Independent-cascade style diffusion with geometric hop delays, used only to
// fabricate reproducible cascade logs.
struct DiffusionSpec {
    std::uint32_t cascade_count = 0;
    SeedRule seed_rule = SeedRule::Uniform;
    double transmit_prob = 0.1;  // per-edge transmission probability in [0,1]
    double delay_q = 0.5;        // geometric delay parameter in (0,1]
    Tick horizon = 1000;         // max tick; events beyond are dropped
    std::uint64_t seed = 0;
};

// Configuration-model wiring of a degree sequence sampled from the power-law
// target. Self-loops and duplicate edges are re-paired a bounded number of
// times, then dropped.
Graph generate_graph(const PowerLawSpec& spec);

// One cascade per seed draw: the seed participates at a uniform start tick,
// then infection spreads across edges with transmit_prob and geometric
// per-hop delays. Every cascade has at least its seed.
CascadeLog generate_cascades(const Graph& graph, const DiffusionSpec& spec);

// Activity attribute derived from realized participation counts, so activity
// bias is meaningful on synthetic data.
std::vector<double> participation_activity(const Graph& graph, const CascadeLog& log);

// Mean degree seen by uniform vertex sampling under the ideal power law:
// sum d^(1-a) / Z with Z = sum d^(-a), d in [1, M].
double expected_degree_uvs(const PowerLawSpec& spec);

// Mean degree seen by a stationary uniform random walk under the ideal power
// law: sum d^(2-a) / (Z * mean degree).
double expected_degree_urw(const PowerLawSpec& spec);

// Same quantities for an empirical degree histogram (index = degree).
double expected_degree_uvs(const std::vector<double>& degree_fraction);
double expected_degree_urw(const std::vector<double>& degree_fraction);

}  // namespace ssp
