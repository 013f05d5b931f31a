#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ssp {

// Dense internal node id in [0, node_count). Input files may use arbitrary
// non-negative ids; they are remapped on load and the map is kept on the
// graph. Internal ids are assigned in ascending external-id order, so
// "lowest NodeId" tie-breaks are stable across runs and input orderings.
using NodeId = std::uint32_t;
using ExternalId = std::uint64_t;

struct GraphLoadStats {
    std::uint64_t self_loops_skipped = 0;
    std::uint64_t duplicate_edges = 0;
};

// Immutable node/edge store with per-node activity. Neighbor lists are
// deduplicated and sorted ascending. For undirected graphs each edge appears
// in both adjacency lists but is counted once by edge_count().
class Graph {
public:
    Graph() = default;

    // nodes: external ids to include even if isolated (may repeat).
    // edges: external endpoint pairs; self-loops are skipped and counted,
    // duplicates collapse. activity defaults to 0 for unlisted nodes.
    static Graph build(std::vector<ExternalId> nodes,
                       const std::vector<std::pair<ExternalId, ExternalId>>& edges,
                       const std::vector<std::pair<ExternalId, double>>& activity,
                       bool directed, GraphLoadStats* stats = nullptr);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(external_.size()); }
    std::uint64_t edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    std::uint32_t degree(NodeId u) const {
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }
    double activity(NodeId u) const { return activity_[u]; }
    double mean_degree() const;

    ExternalId external_id(NodeId u) const { return external_[u]; }
    std::optional<NodeId> find(ExternalId ext) const;
    const std::vector<ExternalId>& id_map() const { return external_; }

    // Returns a copy of this graph with the activity attribute replaced.
    Graph with_activity(std::vector<double> activity) const;

    void write_tsv(const std::string& edge_path, const std::string& attr_path) const;

private:
    std::vector<ExternalId> external_;      // dense id -> external id, ascending
    std::unordered_map<ExternalId, NodeId> lookup_;
    std::vector<std::size_t> offsets_;      // CSR offsets, size node_count+1
    std::vector<NodeId> adj_;               // flat neighbor array
    std::vector<double> activity_;
    std::uint64_t edge_count_ = 0;
    bool directed_ = false;
};

// Reads "src \t dst" lines (and optionally "node \t activity" lines).
// Lines starting with '#' are ignored. Malformed lines raise input_error
// naming the line number; self-loops are skipped and counted in stats.
Graph load_graph(const std::string& edge_path, const std::optional<std::string>& attr_path,
                 bool directed, GraphLoadStats* stats = nullptr);

}  // namespace ssp
