#pragma once

// Shared hand-built instances used across the test suites.

#include <vector>

#include "cascades.hpp"
#include "graph.hpp"

namespace fixtures {

// Nodes a=0, b=1, d=2 with cascades
//   c1 = {a@0, b@2, d@5}   (size 3, starts at 0)
//   c2 = {b@10, d@11}      (size 2, starts at 10)
// Hand-worked values: F({a}) = F({b}) = 3, delta_b({a}) = 2, delta_d({a}) = 1.
struct TwoCascade {
    ssp::Graph graph;
    ssp::CascadeLog log;

    TwoCascade() {
        graph = ssp::Graph::build({0, 1, 2}, {{0, 1}, {1, 2}}, {}, false);
        log = ssp::CascadeLog::build(graph, {
                                                {1, 0, 0},
                                                {1, 1, 2},
                                                {1, 2, 5},
                                                {2, 1, 10},
                                                {2, 2, 11},
                                            });
    }
};

// Star: center 0, leaves 1..5; every cascade starts at the center.
struct Star {
    ssp::Graph graph;
    ssp::CascadeLog log;

    Star() {
        std::vector<std::pair<ssp::ExternalId, ssp::ExternalId>> edges;
        for (ssp::ExternalId leaf = 1; leaf <= 5; ++leaf) edges.emplace_back(0, leaf);
        graph = ssp::Graph::build({}, edges, {}, false);
        std::vector<ssp::CascadeRecord> records;
        for (std::uint64_t c = 0; c < 4; ++c) {
            records.push_back({c, 0, c});           // center first
            records.push_back({c, 1 + c % 5, c + 3});  // one leaf later
        }
        log = ssp::CascadeLog::build(graph, std::move(records));
    }
};

}  // namespace fixtures
