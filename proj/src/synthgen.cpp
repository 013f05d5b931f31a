#include "synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace ssp {

namespace {

void check_powerlaw(const PowerLawSpec& spec) {
    if (spec.node_count < 2) throw param_error("node count must be >= 2");
    if (!(spec.exponent > 1.0)) throw param_error("power-law exponent must be > 1");
    if (spec.max_degree < 1 || spec.max_degree > spec.node_count - 1)
        throw param_error("max degree must be in [1, node_count-1]");
}

std::vector<std::uint32_t> sample_degree_sequence(const PowerLawSpec& spec, Rng& rng) {
    std::vector<double> cumulative(spec.max_degree);
    double z = 0.0;
    for (std::uint32_t d = 1; d <= spec.max_degree; ++d) {
        z += std::pow(static_cast<double>(d), -spec.exponent);
        cumulative[d - 1] = z;
    }
    std::vector<std::uint32_t> degrees(spec.node_count);
    std::uint64_t total = 0;
    for (auto& d : degrees) {
        d = static_cast<std::uint32_t>(rng.weighted_index(cumulative)) + 1;
        total += d;
    }
    if (total % 2 != 0) {
        // adjust one stub: bump any node below the cap
        for (auto& d : degrees) {
            if (d < spec.max_degree) {
                ++d;
                return degrees;
            }
        }
        --degrees.front();
    }
    return degrees;
}

}  // namespace

Graph generate_graph(const PowerLawSpec& spec) {
    check_powerlaw(spec);
    Rng rng(spec.seed);
    const std::vector<std::uint32_t> degrees = sample_degree_sequence(spec, rng);

    std::vector<NodeId> stubs;
    for (NodeId u = 0; u < spec.node_count; ++u)
        stubs.insert(stubs.end(), degrees[u], u);

    std::set<std::pair<NodeId, NodeId>> edge_set;
    auto try_pair = [&](NodeId a, NodeId b) {
        if (a == b) return false;
        return edge_set.emplace(std::min(a, b), std::max(a, b)).second;
    };

    rng.shuffle(stubs);
    std::vector<NodeId> leftover;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        if (!try_pair(stubs[i], stubs[i + 1])) {
            leftover.push_back(stubs[i]);
            leftover.push_back(stubs[i + 1]);
        }
    }
    // re-pair rejected stubs a few times, then drop what remains
    for (int retry = 0; retry < 10 && leftover.size() >= 2; ++retry) {
        rng.shuffle(leftover);
        std::vector<NodeId> next;
        for (std::size_t i = 0; i + 1 < leftover.size(); i += 2) {
            if (!try_pair(leftover[i], leftover[i + 1])) {
                next.push_back(leftover[i]);
                next.push_back(leftover[i + 1]);
            }
        }
        if (leftover.size() % 2 == 1) next.push_back(leftover.back());
        leftover = std::move(next);
    }

    std::vector<ExternalId> nodes(spec.node_count);
    for (NodeId u = 0; u < spec.node_count; ++u) nodes[u] = u;
    std::vector<std::pair<ExternalId, ExternalId>> edges;
    edges.reserve(edge_set.size());
    for (const auto& [a, b] : edge_set) edges.emplace_back(a, b);
    return Graph::build(std::move(nodes), edges, {}, /*directed=*/false);
}

CascadeLog generate_cascades(const Graph& graph, const DiffusionSpec& spec) {
    if (spec.cascade_count < 1) throw param_error("cascade count must be >= 1");
    if (spec.transmit_prob < 0.0 || spec.transmit_prob > 1.0)
        throw param_error("transmit probability must be in [0, 1]");
    if (!(spec.delay_q > 0.0 && spec.delay_q <= 1.0))
        throw param_error("delay parameter must be in (0, 1]");
    if (graph.node_count() == 0) throw param_error("empty graph");

    std::vector<double> seed_cumulative;
    if (spec.seed_rule == SeedRule::DegreeBiased) {
        double acc = 0.0;
        seed_cumulative.reserve(graph.node_count());
        for (NodeId u = 0; u < graph.node_count(); ++u) {
            acc += static_cast<double>(graph.degree(u)) + 1.0;  // +1 keeps isolated nodes possible
            seed_cumulative.push_back(acc);
        }
    }

    std::vector<CascadeRecord> records;
    for (std::uint32_t c = 0; c < spec.cascade_count; ++c) {
        // independent per-cascade stream so cascades are order-insensitive
        Rng rng(Rng::derive(spec.seed, c));
        const NodeId seed_node =
            spec.seed_rule == SeedRule::Uniform
                ? static_cast<NodeId>(rng.pick_index(graph.node_count()))
                : static_cast<NodeId>(rng.weighted_index(seed_cumulative));
        const Tick start = rng.next_below(spec.horizon + 1);

        // earliest-arrival propagation; draws happen in pop order, neighbors ascending
        using Item = std::pair<Tick, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
        std::vector<bool> done(graph.node_count(), false);
        frontier.emplace(start, seed_node);
        while (!frontier.empty()) {
            const auto [t, u] = frontier.top();
            frontier.pop();
            if (done[u]) continue;
            done[u] = true;
            records.push_back({c, graph.external_id(u), t});
            for (NodeId v : graph.neighbors(u)) {
                if (done[v]) continue;
                const bool transmit = rng.next_double() < spec.transmit_prob;
                if (!transmit) continue;
                const Tick delay = rng.geometric_from_one(spec.delay_q);
                const Tick arrival = t + delay;
                if (arrival <= spec.horizon) frontier.emplace(arrival, v);
            }
        }
    }
    return CascadeLog::build(graph, std::move(records));
}

std::vector<double> participation_activity(const Graph& graph, const CascadeLog& log) {
    std::vector<double> activity(graph.node_count(), 0.0);
    for (NodeId u = 0; u < graph.node_count(); ++u)
        activity[u] = static_cast<double>(log.participations(u).size());
    return activity;
}

double expected_degree_uvs(const PowerLawSpec& spec) {
    check_powerlaw(spec);
    double z = 0.0, sum = 0.0;
    for (std::uint32_t d = 1; d <= spec.max_degree; ++d) {
        const double dd = static_cast<double>(d);
        z += std::pow(dd, -spec.exponent);
        sum += std::pow(dd, 1.0 - spec.exponent);
    }
    return sum / z;
}

double expected_degree_urw(const PowerLawSpec& spec) {
    check_powerlaw(spec);
    double z = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::uint32_t d = 1; d <= spec.max_degree; ++d) {
        const double dd = static_cast<double>(d);
        z += std::pow(dd, -spec.exponent);
        s1 += std::pow(dd, 1.0 - spec.exponent);
        s2 += std::pow(dd, 2.0 - spec.exponent);
    }
    const double d_avg = s1 / z;
    return s2 / (z * d_avg);
}

double expected_degree_uvs(const std::vector<double>& degree_fraction) {
    double total = 0.0, mean = 0.0;
    for (std::size_t d = 0; d < degree_fraction.size(); ++d) {
        total += degree_fraction[d];
        mean += static_cast<double>(d) * degree_fraction[d];
    }
    if (total <= 0.0) throw param_error("empty degree distribution");
    return mean / total;
}

double expected_degree_urw(const std::vector<double>& degree_fraction) {
    double total = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t d = 0; d < degree_fraction.size(); ++d) {
        const double dd = static_cast<double>(d);
        total += degree_fraction[d];
        m1 += dd * degree_fraction[d];
        m2 += dd * dd * degree_fraction[d];
    }
    if (total <= 0.0 || m1 <= 0.0) throw param_error("degenerate degree distribution");
    return m2 / m1;
}

}  // namespace ssp
